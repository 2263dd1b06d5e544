#include "vtt/composer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "analysis.hpp"
#include "vtt/error.hpp"
#include "vtt/syntax.hpp"

namespace vtt {
namespace detail {
namespace {

const Radical& radical_of(const Glyph& glyph, const Registry& registry) {
  const auto* r = registry.find_radical(glyph.radical);
  if (!r) {
    throw Error(ErrorCode::not_found, "unknown radical '" + glyph.radical + "'", glyph.radical);
  }
  return *r;
}

void check_admissible(const Mark& mark, const Region& region, const Registry& registry) {
  if (mark.polarity != Polarity::negative) return;
  const auto* c = registry.find_constraint(region.constraint);
  if (c && !c->negatable) {
    throw Error(ErrorCode::inadmissible_mark,
                "negative mark '" + mark.id + "' in region '" + region.name +
                    "' whose constraint '" + region.constraint + "' is not negatable",
                region.name);
  }
}

void check_scales(const Glyph& glyph, const Radical& radical) {
  std::set<std::string> seen;
  for (const auto& s : glyph.scales) {
    const auto* region = radical.schema.find(s.region);
    if (!region) {
      throw Error(ErrorCode::unknown_region,
                  "radical '" + radical.id + "' has no region '" + s.region + "'", s.region);
    }
    if (!region->expandable) {
      throw Error(ErrorCode::not_expandable, "region '" + s.region + "' is not expandable",
                  s.region);
    }
    if (!(s.factor > 0) || !std::isfinite(s.factor)) {
      throw Error(ErrorCode::invalid_definition, "scale factor must be positive", s.region);
    }
    if (!seen.insert(s.region).second) {
      throw Error(ErrorCode::malformed_glyph, "region '" + s.region + "' scaled twice", s.region);
    }
  }
  const auto& regions = radical.schema.regions;
  for (const auto& s : glyph.scales) {
    const Region& scaled = *radical.schema.find(s.region);
    const Rect rect = region_rect(scaled, s.factor);
    for (const auto& other : regions) {
      if (other.name == scaled.name) continue;
      if (rect.overlaps(region_rect(other, glyph.scale_of(other.name)))) {
        throw Error(ErrorCode::region_overlap,
                    "expanded region '" + scaled.name + "' overlaps region '" + other.name + "'",
                    other.name);
      }
    }
    if (!rect.inside_unit_box()) {
      throw Error(ErrorCode::region_overlap,
                  "expanded region '" + scaled.name + "' leaves the bounding box", scaled.name);
    }
  }
}

LiteralConjunction analyze(const Glyph& glyph, const Registry& registry, int depth) {
  if (depth > kMaxNestingDepth) {
    throw Error(ErrorCode::depth_exceeded,
                "sub-glyphs nest deeper than " + std::to_string(kMaxNestingDepth), glyph.radical);
  }
  const Radical& radical = radical_of(glyph, registry);
  LiteralConjunction lits = registry.baseline(radical.id);

  std::set<std::string> assigned;
  for (const auto& a : glyph.assignment) {
    const Region* region = radical.schema.find(a.region);
    if (!region) {
      throw Error(ErrorCode::unknown_region,
                  "radical '" + radical.id + "' has no region '" + a.region + "'", a.region);
    }
    if (!assigned.insert(a.region).second) {
      throw Error(ErrorCode::malformed_glyph, "region '" + a.region + "' assigned twice",
                  a.region);
    }
    if (const auto* mark_id = mark_of(a.fill)) {
      const Mark& mark = registry.mark(*mark_id);
      check_admissible(mark, *region, registry);
      lits.insert({region->constraint, mark.polarity});
    } else if (const Glyph* sub = embedded_of(a.fill)) {
      lits.merge(analyze(*sub, registry, depth + 1));
    }
  }

  check_scales(glyph, radical);

  if (glyph.abbreviated && !radical.limit_file) {
    throw Error(ErrorCode::no_limit_file, "radical '" + radical.id + "' has no limit file",
                radical.id);
  }

  std::vector<const DerivationRule*> rules;
  std::set<std::string> applied;
  for (const auto& id : glyph.derivations) {
    rules.push_back(&registry.rule(id));
    if (!applied.insert(id).second) {
      throw Error(ErrorCode::already_applied, "rule '" + id + "' applied twice", id);
    }
  }
  std::stable_sort(rules.begin(), rules.end(), [&](const auto* a, const auto* b) {
    return registry.rule_rank(a->id) < registry.rule_rank(b->id);
  });
  for (const auto* rule : rules) {
    if (!rule_source_matches(*rule, radical, registry)) {
      throw Error(ErrorCode::precondition_mismatch,
                  "rule '" + rule->id + "' does not apply to radical '" + radical.id + "'",
                  rule->id);
    }
    for (const auto& req : rule->requires_literals) {
      if (!lits.contains(req)) {
        throw Error(ErrorCode::precondition_mismatch,
                    "rule '" + rule->id + "' requires " + to_string(req), rule->id);
      }
    }
    bool adds_new = rule->adds.empty();
    for (const auto& lit : rule->adds) {
      if (!lits.contains(lit)) adds_new = true;
      lits.insert(lit);
    }
    if (!adds_new) {
      throw Error(ErrorCode::redundant_derivation,
                  "rule '" + rule->id + "' adds no literal the glyph does not already carry",
                  rule->id);
    }
  }
  return lits;
}

}  // namespace

LiteralConjunction analyze_glyph(const Glyph& glyph, const Registry& registry) {
  return analyze(glyph, registry, 0);
}

}  // namespace detail

// ---------------------------------------------------------------------------

void validate_glyph(const Glyph& glyph, const Registry& registry) {
  (void)detail::analyze_glyph(glyph, registry);
}

Glyph place_mark(const Glyph& glyph, std::string_view region_name,
                 const std::optional<std::string>& mark, const Registry& registry) {
  const Radical& radical = registry.radical(glyph.radical);
  const Region* region = radical.schema.find(region_name);
  if (!region) {
    throw Error(ErrorCode::unknown_region,
                "radical '" + radical.id + "' has no region '" + std::string(region_name) + "'",
                std::string(region_name));
  }
  if (mark) detail::check_admissible(registry.mark(*mark), *region, registry);

  Glyph out = glyph;
  auto it = std::find_if(out.assignment.begin(), out.assignment.end(),
                         [&](const Assignment& a) { return a.region == region_name; });
  if (it != out.assignment.end()) {
    it->fill = mark ? Fill(*mark) : Fill(Absent{});
  } else if (mark) {
    out.assignment.push_back({std::string(region_name), *mark});
  }
  validate_glyph(out, registry);
  return out;
}

bool rule_source_matches(const DerivationRule& rule, const Radical& radical,
                         const Registry& registry) {
  if (rule.source.kind == RuleSource::Kind::family) return radical.family == rule.source.family;
  const auto chain = registry.lineage(radical.id);
  return std::find(chain.begin(), chain.end(), rule.source.radical) != chain.end();
}

Glyph apply_derivation(const Glyph& glyph, std::string_view rule_id, const Registry& registry) {
  const DerivationRule& rule = registry.rule(rule_id);
  const Radical& radical = registry.radical(glyph.radical);
  if (std::find(glyph.derivations.begin(), glyph.derivations.end(), rule.id) !=
      glyph.derivations.end()) {
    throw Error(ErrorCode::already_applied, "rule '" + rule.id + "' is already applied", rule.id);
  }
  if (!rule_source_matches(rule, radical, registry)) {
    throw Error(ErrorCode::precondition_mismatch,
                "rule '" + rule.id + "' does not apply to radical '" + radical.id + "'", rule.id);
  }
  const LiteralConjunction current = detail::analyze_glyph(glyph, registry);
  for (const auto& req : rule.requires_literals) {
    if (!current.contains(req)) {
      throw Error(ErrorCode::precondition_mismatch,
                  "rule '" + rule.id + "' requires " + to_string(req), rule.id);
    }
  }
  bool adds_new = rule.adds.empty();
  for (const auto& lit : rule.adds) {
    if (current.contains(lit.negated())) {
      throw Error(ErrorCode::literal_conflict,
                  "rule '" + rule.id + "' adds " + to_string(lit) + " but the glyph carries " +
                      to_string(lit.negated()),
                  lit.constraint);
    }
    if (!current.contains(lit)) adds_new = true;
  }
  if (!adds_new) {
    throw Error(ErrorCode::redundant_derivation,
                "rule '" + rule.id + "' adds no literal the glyph does not already carry",
                rule.id);
  }
  Glyph out = glyph;
  out.derivations.push_back(rule.id);
  validate_glyph(out, registry);
  return out;
}

Glyph combine(const Glyph& structure, std::string_view topological_radical,
              const Registry& registry, const std::optional<std::string>& region) {
  validate_glyph(structure, registry);
  const Radical& inner = registry.radical(structure.radical);
  if (inner.family != Family::structure) {
    throw Error(ErrorCode::family_mismatch,
                "combine needs a structure-family glyph, '" + inner.id + "' is " +
                    std::string(to_string(inner.family)),
                inner.id);
  }
  const Radical& outer = registry.radical(topological_radical);
  if (outer.family != Family::topological) {
    throw Error(ErrorCode::family_mismatch,
                "combine needs a topological radical, '" + outer.id + "' is " +
                    std::string(to_string(outer.family)),
                outer.id);
  }
  const auto algebraic = std::find_if(outer.schema.regions.begin(), outer.schema.regions.end(),
                                      [](const Region& r) { return r.expandable; });
  if (algebraic == outer.schema.regions.end()) {
    throw Error(ErrorCode::missing_region,
                "radical '" + outer.id + "' has no expandable algebraic region", outer.id);
  }
  std::string target = algebraic->name;
  if (region) {
    if (!outer.schema.find(*region)) {
      throw Error(ErrorCode::unknown_region,
                  "radical '" + outer.id + "' has no region '" + *region + "'", *region);
    }
    target = *region;
  }
  if (structure.depth() + 1 > kMaxNestingDepth) {
    throw Error(ErrorCode::depth_exceeded,
                "embedding would nest deeper than " + std::to_string(kMaxNestingDepth),
                structure.radical);
  }
  Glyph out = Glyph::bare(outer.id);
  out.assignment.push_back({target, Box<Glyph>(canonicalize(structure, registry))});
  validate_glyph(out, registry);
  return out;
}

bool is_irregular(const Glyph& glyph, const Registry& registry) {
  const Radical& radical = registry.radical(glyph.radical);
  for (const auto& a : glyph.assignment) {
    const Glyph* sub = embedded_of(a.fill);
    if (!sub) continue;
    const Region* region = radical.schema.find(a.region);
    if (!region || !region->expandable) return true;
    if (is_irregular(*sub, registry)) return true;
  }
  return false;
}

namespace {

const Radical& require_limit_file(const Glyph& glyph, const Registry& registry) {
  const Radical& radical = registry.radical(glyph.radical);
  if (!radical.limit_file) {
    throw Error(ErrorCode::no_limit_file, "radical '" + radical.id + "' has no limit file",
                radical.id);
  }
  return radical;
}

}  // namespace

Glyph abbreviate(const Glyph& glyph, const Registry& registry) {
  require_limit_file(glyph, registry);
  Glyph out = glyph;
  out.abbreviated = true;
  return out;
}

Glyph expand(const Glyph& glyph, const Registry& registry) {
  require_limit_file(glyph, registry);
  Glyph out = glyph;
  out.abbreviated = false;
  return out;
}

Glyph expand_region(const Glyph& glyph, std::string_view region_name, double scale,
                    const Registry& registry) {
  const Radical& radical = registry.radical(glyph.radical);
  const Region* region = radical.schema.find(region_name);
  if (!region) {
    throw Error(ErrorCode::unknown_region,
                "radical '" + radical.id + "' has no region '" + std::string(region_name) + "'",
                std::string(region_name));
  }
  if (!region->expandable) {
    throw Error(ErrorCode::not_expandable,
                "region '" + region->name + "' of '" + radical.id + "' is not expandable",
                region->name);
  }
  if (!(scale > 0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::invalid_definition, "scale must be a positive number", region->name);
  }
  Glyph out = glyph;
  const double factor = glyph.scale_of(region->name) * scale;
  std::erase_if(out.scales, [&](const RegionScale& s) { return s.region == region->name; });
  if (factor != 1.0) out.scales.push_back({region->name, factor});
  validate_glyph(out, registry);
  return out;
}

namespace {

Glyph canonical(const Glyph& glyph, const Registry& registry, bool keep_visual) {
  Glyph out;
  out.radical = glyph.radical;
  out.abbreviated = keep_visual && glyph.abbreviated;
  const Radical* radical = registry.find_radical(glyph.radical);
  auto order = [&](const std::string& region) {
    return radical ? radical->schema.index_of(region) : std::size_t{0};
  };

  for (const auto& a : glyph.assignment) {
    if (is_absent(a.fill)) continue;
    if (const Glyph* sub = embedded_of(a.fill)) {
      out.assignment.push_back({a.region, Box<Glyph>(canonical(*sub, registry, keep_visual))});
    } else {
      out.assignment.push_back(a);
    }
  }
  std::stable_sort(out.assignment.begin(), out.assignment.end(),
                   [&](const Assignment& x, const Assignment& y) {
                     const auto ox = order(x.region), oy = order(y.region);
                     return ox != oy ? ox < oy : x.region < y.region;
                   });

  out.derivations = glyph.derivations;
  std::sort(out.derivations.begin(), out.derivations.end(),
            [&](const std::string& x, const std::string& y) {
              const auto rx = registry.rule_rank(x), ry = registry.rule_rank(y);
              return rx != ry ? rx < ry : x < y;
            });

  if (keep_visual) {
    for (const auto& s : glyph.scales) {
      if (s.factor != 1.0) out.scales.push_back(s);
    }
    std::stable_sort(out.scales.begin(), out.scales.end(),
                     [&](const RegionScale& x, const RegionScale& y) {
                       const auto ox = order(x.region), oy = order(y.region);
                       return ox != oy ? ox < oy : x.region < y.region;
                     });
  }
  return out;
}

}  // namespace

Glyph canonicalize(const Glyph& glyph, const Registry& registry) {
  return canonical(glyph, registry, true);
}

Glyph meaning_form(const Glyph& glyph, const Registry& registry) {
  return canonical(glyph, registry, false);
}

std::string canonical_id(const Glyph& glyph, const Registry& registry) {
  return format_glyph(canonicalize(glyph, registry));
}

std::string meaning_key(const Glyph& glyph, const Registry& registry) {
  return format_glyph(meaning_form(glyph, registry));
}

// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void malformed_edit(const StrokeEdit& edit, const std::string& why) {
  throw Error(ErrorCode::layout, "malformed stroke edit " + format_edit(edit) + ": " + why,
              edit.group);
}

}  // namespace

std::vector<Stroke> apply_edits(std::vector<Stroke> strokes, std::span<const StrokeEdit> edits) {
  for (const auto& edit : edits) {
    auto in_group = [&](const Stroke& s) { return s.group == edit.group; };
    switch (edit.kind) {
      case EditKind::extend_stroke: {
        bool any = false;
        for (auto& s : strokes) {
          if (!in_group(s)) continue;
          any = true;
          if (s.kind != StrokeKind::dot && s.kind != StrokeKind::line) {
            malformed_edit(edit, "only dots and lines can be extended");
          }
          const Point from = s.points.back();
          // Horizontal extension mirrors about the vertical centre line.
          const double dx = from.x < 0.5 ? -edit.delta.x : edit.delta.x;
          const Point to{from.x + dx, from.y + edit.delta.y};
          if (s.kind == StrokeKind::dot) {
            s.kind = StrokeKind::line;
            s.radius = 0;
            s.points = {from, to};
          } else {
            s.points.push_back(to);
          }
        }
        if (!any) malformed_edit(edit, "no stroke in group '" + edit.group + "'");
        break;
      }
      case EditKind::add_stroke:
        strokes.push_back(edit.strokes.at(0));
        break;
      case EditKind::replace_strokes: {
        auto first = std::find_if(strokes.begin(), strokes.end(), in_group);
        if (first == strokes.end()) malformed_edit(edit, "no stroke in group '" + edit.group + "'");
        const auto at = static_cast<std::size_t>(first - strokes.begin());
        std::erase_if(strokes, in_group);
        strokes.insert(strokes.begin() + static_cast<std::ptrdiff_t>(at), edit.strokes.begin(),
                       edit.strokes.end());
        break;
      }
      case EditKind::add_center_circle: {
        Stroke c;
        c.kind = StrokeKind::circle;
        c.points = {{0.5, 0.5}};
        c.radius = edit.radius;
        strokes.push_back(std::move(c));
        break;
      }
      case EditKind::cross_transform: {
        auto first = std::find_if(strokes.begin(), strokes.end(), in_group);
        if (first == strokes.end()) malformed_edit(edit, "no stroke in group '" + edit.group + "'");
        const auto at = static_cast<std::size_t>(first - strokes.begin());
        double lo = std::numeric_limits<double>::max(), hi = std::numeric_limits<double>::lowest();
        for (const auto& s : strokes) {
          if (!in_group(s)) continue;
          for (const auto& p : s.points) {
            lo = std::min(lo, p.x - s.radius);
            hi = std::max(hi, p.x + s.radius);
          }
        }
        std::erase_if(strokes, in_group);
        Stroke bar;
        bar.kind = StrokeKind::line;
        bar.points = {{lo, 0.5}, {hi, 0.5}};
        bar.group = edit.group;
        strokes.insert(strokes.begin() + static_cast<std::ptrdiff_t>(at), std::move(bar));
        break;
      }
    }
  }
  return strokes;
}

std::vector<Stroke> glyph_strokes(const Glyph& glyph, const Registry& registry,
                                  bool honour_abbreviation) {
  const Radical& radical = registry.radical(glyph.radical);
  std::vector<Stroke> strokes = radical.strokes;
  const Glyph canon = canonicalize(glyph, registry);
  for (const auto& id : canon.derivations) {
    strokes = apply_edits(std::move(strokes), registry.rule(id).edits);
  }
  if (honour_abbreviation && glyph.abbreviated && radical.limit_file) {
    std::erase_if(strokes, [&](const Stroke& s) { return s.group == *radical.limit_file; });
  }
  return strokes;
}

}  // namespace vtt
