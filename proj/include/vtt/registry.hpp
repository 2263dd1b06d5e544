#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vtt/model.hpp"

namespace vtt {

struct BuildOptions {
  /// When false, bindings of one glyph to several concepts are kept so the
  /// validator can report them instead of construction failing.
  bool enforce_meaning_map = true;
};

/// The compiled visual type theory: every entity plus the meaning map from
/// canonical glyphs to concepts. Immutable once built.
class Registry {
 public:
  Registry() = default;

  /// Throws Error(duplicate_id | dangling_reference | invalid_definition |
  /// meaning_map_conflict | ...) naming the offending id in `subject()`.
  static Registry build(DefinitionSet defs, BuildOptions options = {});

  const DefinitionSet& definitions() const { return defs_; }
  std::span<const Constraint> constraints() const { return defs_.constraints; }
  std::span<const Mark> marks() const { return defs_.marks; }
  std::span<const Radical> radicals() const { return defs_.radicals; }
  std::span<const DerivationRule> rules() const { return defs_.rules; }
  std::span<const Concept> concepts() const { return defs_.concepts; }
  /// Bindings with canonical glyphs, in declaration order.
  std::span<const Binding> bindings() const { return defs_.bindings; }

  const Constraint* find_constraint(std::string_view id) const;
  const Mark* find_mark(std::string_view id) const;
  const Radical* find_radical(std::string_view id) const;
  const DerivationRule* find_rule(std::string_view id) const;
  const Concept* find_concept(std::string_view id) const;

  /// Throwing variants (Error(not_found)).
  const Radical& radical(std::string_view id) const;
  const DerivationRule& rule(std::string_view id) const;
  const Mark& mark(std::string_view id) const;

  /// The mark with the given polarity, if the vocabulary has one.
  const Mark* mark_for(Polarity polarity) const;

  /// Radical ids from `id` up to its lineage root (inclusive, self first).
  std::vector<std::string> lineage(std::string_view radical_id) const;
  const std::string& root_of(std::string_view radical_id) const;
  /// Baseline literals of a radical including everything its bases add.
  const LiteralConjunction& baseline(std::string_view radical_id) const;

  /// Position of a rule in the fixed dependency order used by canonical forms.
  std::size_t rule_rank(std::string_view rule_id) const;

  /// Indices into bindings() whose glyph has this meaning key. More than one
  /// distinct concept can only occur in lenient registries.
  std::span<const std::size_t> bindings_for_key(const std::string& key) const;
  /// Indices into bindings() for a concept, in declaration order.
  std::vector<std::size_t> bindings_of(std::string_view concept_id) const;

  bool operator==(const Registry& other) const { return defs_ == other.defs_; }

 private:
  DefinitionSet defs_;
  std::map<std::string, std::size_t, std::less<>> constraint_index_;
  std::map<std::string, std::size_t, std::less<>> mark_index_;
  std::map<std::string, std::size_t, std::less<>> radical_index_;
  std::map<std::string, std::size_t, std::less<>> rule_index_;
  std::map<std::string, std::size_t, std::less<>> concept_index_;
  std::map<std::string, LiteralConjunction, std::less<>> baselines_;
  std::map<std::string, std::string, std::less<>> roots_;
  std::map<std::string, std::size_t, std::less<>> rule_ranks_;
  std::map<std::string, std::vector<std::size_t>> meaning_map_;
};

enum class EntityKind { constraint, mark, radical, rule, concept_ };

std::string_view to_string(EntityKind kind);
std::optional<EntityKind> parse_entity_kind(std::string_view text);

struct GetResult {
  enum class Status { found, not_found, malformed_id };
  Status status = Status::not_found;
  std::variant<std::monostate, const Constraint*, const Mark*, const Radical*,
               const DerivationRule*, const Concept*>
      entity;

  bool found() const { return status == Status::found; }
  template <class T>
  const T* as() const {
    auto* p = std::get_if<const T*>(&entity);
    return p ? *p : nullptr;
  }
};

/// Kind-directed lookup. Never throws; a syntactically invalid id is reported
/// as malformed rather than not-found.
GetResult get(const Registry& registry, EntityKind kind, std::string_view id);

}  // namespace vtt
