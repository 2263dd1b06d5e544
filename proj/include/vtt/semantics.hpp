#pragma once

// Logical reading of absence-loaded glyphs: literal conjunctions, denotation
// over finite models, refinement, equivalence, family enumeration and the
// inverse map from conjunctions back to glyphs.

#include <cstdint>
#include <iterator>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "vtt/model.hpp"
#include "vtt/registry.hpp"

namespace vtt {

/// Baseline literals of the radical lineage, one literal per marked region,
/// the literals added by applied rules and those of embedded sub-glyphs.
/// Absent regions contribute nothing.
LiteralConjunction constraint_of(const Glyph& glyph, const Registry& registry);

/// Elements of the carrier satisfying every literal.
std::set<std::string> denote(const LiteralConjunction& literals, const UniverseModel& model);
std::set<std::string> denote(const Glyph& glyph, const UniverseModel& model,
                             const Registry& registry);

/// Lineage roots a glyph is built on: its radical's root plus those of
/// embedded sub-glyphs.
std::set<std::string> lineage_roots(const Glyph& glyph, const Registry& registry);

/// Literal-set inclusion between glyphs on compatible lineages; nullopt when
/// the lineages are unrelated and the pair is unordered.
std::optional<bool> refines(const Glyph& g1, const Glyph& g2, const Registry& registry);

bool equivalent(const Glyph& g1, const Glyph& g2, const Registry& registry);

inline constexpr std::uint64_t kDefaultEnumerationCeiling = 10'000'000;

struct EnumerationOptions {
  /// Mark ids to use; all registry marks when unset.
  std::optional<std::vector<std::string>> marks;
  std::uint64_t ceiling = kDefaultEnumerationCeiling;
};

/// Every mark assignment on one radical, produced lazily in mixed-radix
/// order (first region varies slowest). Each region offers "absent" plus the
/// admissible marks: negative marks only where the constraint is negatable.
class GlyphFamily {
 public:
  GlyphFamily(std::string radical, std::vector<std::string> regions,
              std::vector<std::vector<std::optional<std::string>>> choices);

  std::uint64_t size() const { return size_; }
  Glyph at(std::uint64_t index) const;

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Glyph;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = Glyph;

    iterator() = default;
    iterator(const GlyphFamily* family, std::uint64_t index) : family_(family), index_(index) {}
    Glyph operator*() const { return family_->at(index_); }
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto copy = *this;
      ++index_;
      return copy;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }

   private:
    const GlyphFamily* family_ = nullptr;
    std::uint64_t index_ = 0;
  };

  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size_}; }

 private:
  std::string radical_;
  std::vector<std::string> regions_;
  std::vector<std::vector<std::optional<std::string>>> choices_;
  std::uint64_t size_ = 1;
};

/// Throws Error(enumeration_refused) when the family would exceed the ceiling
/// and Error(invalid_definition) for an empty schema.
GlyphFamily enumerate_family(const Registry& registry, std::string_view radical_id,
                             const EnumerationOptions& options = {});

/// Canonical glyph on `radical_id` whose constraint_of equals `target`.
/// Throws Error(unexpressible) when no region mark or available rule can
/// carry some literal, or when the radical's baseline is not part of target.
Glyph invert(const LiteralConjunction& target, std::string_view radical_id,
             const Registry& registry);

/// The concept bound to the glyph's meaning form, or nullptr when unbound.
const Concept* lookup_concept(const Glyph& glyph, const Registry& registry);

}  // namespace vtt
