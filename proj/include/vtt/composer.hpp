#pragma once

// Glyph construction. Every operation returns a new glyph and leaves its
// input untouched.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vtt/model.hpp"
#include "vtt/registry.hpp"

namespace vtt {

/// Throws the first violation of the glyph invariants against `registry`:
/// unknown radical/region/mark/rule, inadmissible negative marks, rule
/// preconditions, literal conflicts, embedding depth and region scaling.
void validate_glyph(const Glyph& glyph, const Registry& registry);

/// Sets (or clears, with nullopt) the mark in one region. Replacing an
/// existing mark is last-write-wins.
Glyph place_mark(const Glyph& glyph, std::string_view region,
                 const std::optional<std::string>& mark, const Registry& registry);

/// Whether `rule`'s source accepts glyphs rooted at `radical` (lineage or
/// family match). Literal requirements are checked separately.
bool rule_source_matches(const DerivationRule& rule, const Radical& radical,
                         const Registry& registry);

/// Records a derivation rule. Rejects source mismatches, unmet required
/// literals, re-application, literal conflicts and rules that add nothing new.
Glyph apply_derivation(const Glyph& glyph, std::string_view rule_id, const Registry& registry);

/// Embeds a structure-family glyph into a topological radical. The target is
/// the radical's first expandable region unless `region` names another one,
/// in which case the result is irregular.
Glyph combine(const Glyph& structure, std::string_view topological_radical,
              const Registry& registry, const std::optional<std::string>& region = std::nullopt);

/// True when some embedded sub-glyph sits outside an expandable region.
bool is_irregular(const Glyph& glyph, const Registry& registry);

/// Toggle limit-file suppression. Both require the radical to declare a limit
/// file; expanding an expanded glyph is the identity.
Glyph abbreviate(const Glyph& glyph, const Registry& registry);
Glyph expand(const Glyph& glyph, const Registry& registry);

/// Scales an expandable region's extent (multiplying any earlier factor).
Glyph expand_region(const Glyph& glyph, std::string_view region, double scale,
                    const Registry& registry);

/// Drops absent entries and unit scales, orders marks and scales by schema
/// region order and derivations by rule rank, recursively. Idempotent.
Glyph canonicalize(const Glyph& glyph, const Registry& registry);

/// Canonical form without the visual-only state (abbreviation, region
/// scales); this is what the meaning map is keyed on.
Glyph meaning_form(const Glyph& glyph, const Registry& registry);

std::string canonical_id(const Glyph& glyph, const Registry& registry);
std::string meaning_key(const Glyph& glyph, const Registry& registry);

/// Radical strokes with every applied derivation's edits, in canonical rule
/// order. Limit-file strokes are dropped when `honour_abbreviation` is set
/// and the glyph is abbreviated.
std::vector<Stroke> glyph_strokes(const Glyph& glyph, const Registry& registry,
                                  bool honour_abbreviation = true);

/// Applies schematic edits to a stroke list. Throws Error(layout) for edits
/// whose target group is missing.
std::vector<Stroke> apply_edits(std::vector<Stroke> strokes, std::span<const StrokeEdit> edits);

}  // namespace vtt
