#pragma once

// Design-principle lints over a registry: meaning-map functionality,
// density scores and coverage of the basic radical table.

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vtt/model.hpp"
#include "vtt/registry.hpp"

namespace vtt {

enum class Severity { error, warning, info };

std::string_view to_string(Severity severity);

struct Finding {
  Severity severity = Severity::info;
  std::string code;
  std::string message;
  std::vector<std::string> subjects;

  bool operator==(const Finding&) const = default;
};

struct LintReport {
  std::vector<Finding> findings;
  std::map<std::string, double> density_table;  // canonical glyph id -> score

  bool ok() const { return count(Severity::error) == 0; }
  std::size_t count(Severity severity) const;
  std::size_t count(std::string_view code) const;
  void merge(LintReport other);

  std::string to_json() const;
  std::string to_text() const;

  bool operator==(const LintReport&) const = default;
};

/// Errors: overloaded-glyph (one meaning form bound to two concepts),
/// missing-precedence / multiple-precedence (per cryptomorphism group with
/// bindings). Warnings: unbound-concept. Info: injectivity.
LintReport check_meaning_map(const Registry& registry);

/// (marked regions x log2(marks + 1) + rule-added literals) / strokes after
/// edits, counting sub-glyphs and limit-file strokes. Throws
/// Error(malformed_glyph) for a glyph without strokes.
double density(const Glyph& glyph, const Registry& registry);

/// The 23 keys of the basic radical table.
const std::vector<std::string>& table1_keys();

/// Info: table1-present / table1-absent per key. Warning: orphan-radical for
/// structure radicals whose lineage does not reach set or category.
LintReport check_universality(const Registry& registry);

/// All checks plus a density table over the bound glyphs.
LintReport validate_registry(const Registry& registry);

}  // namespace vtt
