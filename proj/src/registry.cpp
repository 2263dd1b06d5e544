#include "vtt/registry.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vtt/composer.hpp"
#include "vtt/error.hpp"
#include "vtt/syntax.hpp"

namespace vtt {
namespace {

using Index = std::map<std::string, std::size_t, std::less<>>;

template <class T>
Index index_entities(const std::vector<T>& items, std::string_view kind) {
  Index index;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& id = items[i].id;
    if (!is_valid_identifier(id)) {
      throw Error(ErrorCode::invalid_definition,
                  std::string(kind) + " id '" + id + "' is not a valid identifier", id)
          .with_origin(std::string(kind), i);
    }
    if (!index.emplace(id, i).second) {
      throw Error(ErrorCode::duplicate_id, "duplicate " + std::string(kind) + " id '" + id + "'",
                  id)
          .with_origin(std::string(kind), i);
    }
  }
  return index;
}

template <class F>
void owned(std::string_view kind, std::size_t index, F&& check) {
  try {
    check();
  } catch (const Error& e) {
    throw e.with_origin(std::string(kind), index);
  }
}

template <class T>
const T* lookup(const Index& index, const std::vector<T>& items, std::string_view id) {
  auto it = index.find(id);
  return it == index.end() ? nullptr : &items[it->second];
}

[[noreturn]] void dangling(std::string_view owner_kind, const std::string& owner,
                           std::string_view target_kind, const std::string& target) {
  throw Error(ErrorCode::dangling_reference,
              std::string(owner_kind) + " '" + owner + "' references unknown " +
                  std::string(target_kind) + " '" + target + "'",
              target);
}

bool in_unit(double v) { return v >= 0 && v <= 1 && std::isfinite(v); }

void check_stroke(const Stroke& s, const std::string& owner) {
  auto bad = [&](const std::string& why) {
    throw Error(ErrorCode::invalid_definition,
                "stroke " + format_stroke(s) + " of '" + owner + "': " + why, owner);
  };
  if (s.kind == StrokeKind::line) {
    if (s.points.size() < 2) bad("a line needs at least two points");
  } else {
    if (s.points.size() != 1) bad("expected exactly one centre point");
    if (!(s.radius > 0)) bad("radius must be positive");
  }
  for (const auto& p : s.points) {
    if (!in_unit(p.x) || !in_unit(p.y)) bad("point outside the unit bounding box");
  }
  if (s.kind == StrokeKind::dot || s.kind == StrokeKind::circle) {
    const auto& c = s.points.front();
    if (c.x - s.radius < 0 || c.x + s.radius > 1 || c.y - s.radius < 0 || c.y + s.radius > 1) {
      bad("extends outside the unit bounding box");
    }
  }
  if (s.kind == StrokeKind::arc) {
    const Rect r = arc_bounds(s.points.front(), s.radius, s.start_deg, s.end_deg);
    if (r.x0 < -1e-9 || r.y0 < -1e-9 || r.x1 > 1 + 1e-9 || r.y1 > 1 + 1e-9) {
      bad("extends outside the unit bounding box");
    }
  }
}

void check_literals(const std::vector<Literal>& lits, const Index& constraints,
                    std::string_view owner_kind, const std::string& owner) {
  LiteralConjunction seen;
  for (const auto& lit : lits) {
    if (!constraints.count(lit.constraint)) dangling(owner_kind, owner, "constraint", lit.constraint);
    try {
      seen.insert(lit);
    } catch (const Error&) {
      throw Error(ErrorCode::literal_conflict,
                  std::string(owner_kind) + " '" + owner + "' asserts '" + lit.constraint +
                      "' with both signs",
                  owner);
    }
  }
}

}  // namespace

Registry Registry::build(DefinitionSet defs, BuildOptions options) {
  Registry reg;
  reg.defs_ = std::move(defs);
  auto& d = reg.defs_;

  reg.constraint_index_ = index_entities(d.constraints, "constraint");
  reg.mark_index_ = index_entities(d.marks, "mark");
  reg.radical_index_ = index_entities(d.radicals, "radical");
  reg.rule_index_ = index_entities(d.rules, "rule");
  reg.concept_index_ = index_entities(d.concepts, "concept");

  for (std::size_t idx = 0; idx < d.constraints.size(); ++idx) {
    const auto& c = d.constraints[idx];
    owned("constraint", idx, [&] {
    if (c.name.empty()) {
      throw Error(ErrorCode::invalid_definition, "constraint '" + c.id + "' has an empty name", c.id);
    }
  });
  }

  {
    std::set<Polarity> polarities;
    std::set<std::string> shapes;
    for (std::size_t idx = 0; idx < d.marks.size(); ++idx) {
    const auto& m = d.marks[idx];
    owned("mark", idx, [&] {
      if (!polarities.insert(m.polarity).second) {
        throw Error(ErrorCode::invalid_definition,
                    "mark '" + m.id + "': a " + std::string(to_string(m.polarity)) +
                        " mark is already declared",
                    m.id);
      }
      if (!is_known_mark_shape(m.printable)) {
        throw Error(ErrorCode::invalid_definition,
                    "mark '" + m.id + "' uses unknown shape '" + m.printable + "'", m.id);
      }
      if (!shapes.insert(m.printable).second) {
        throw Error(ErrorCode::invalid_definition,
                    "mark '" + m.id + "' reuses shape '" + m.printable + "'", m.id);
      }
    });
  }
  }

  for (std::size_t idx = 0; idx < d.radicals.size(); ++idx) {
    const auto& r = d.radicals[idx];
    owned("radical", idx, [&] {
    if (r.strokes.empty()) {
      throw Error(ErrorCode::invalid_definition, "radical '" + r.id + "' has no strokes", r.id);
    }
    for (const auto& s : r.strokes) check_stroke(s, r.id);
    std::set<std::string> names, bound;
    for (const auto& region : r.schema.regions) {
      if (!is_valid_identifier(region.name)) {
        throw Error(ErrorCode::invalid_definition,
                    "radical '" + r.id + "': invalid region name '" + region.name + "'", r.id);
      }
      if (!names.insert(region.name).second) {
        throw Error(ErrorCode::duplicate_id,
                    "radical '" + r.id + "' declares region '" + region.name + "' twice",
                    region.name);
      }
      if (!reg.constraint_index_.count(region.constraint)) {
        dangling("radical", r.id, "constraint", region.constraint);
      }
      if (!bound.insert(region.constraint).second) {
        throw Error(ErrorCode::invalid_definition,
                    "radical '" + r.id + "' loads constraint '" + region.constraint +
                        "' into more than one region",
                    region.constraint);
      }
      if (!(region.width > 0) || !(region.height > 0)) {
        throw Error(ErrorCode::invalid_definition,
                    "region '" + region.name + "' of '" + r.id + "' has an empty extent",
                    region.name);
      }
      if (!region_rect(region).inside_unit_box()) {
        throw Error(ErrorCode::invalid_definition,
                    "region '" + region.name + "' of '" + r.id +
                        "' extends outside the unit bounding box",
                    region.name);
      }
    }
    const auto& regions = r.schema.regions;
    for (std::size_t i = 0; i < regions.size(); ++i) {
      for (std::size_t j = i + 1; j < regions.size(); ++j) {
        if (region_rect(regions[i]).overlaps(region_rect(regions[j]))) {
          throw Error(ErrorCode::region_overlap,
                      "radical '" + r.id + "': regions '" + regions[i].name + "' and '" +
                          regions[j].name + "' overlap",
                      regions[j].name);
        }
      }
    }
    if (r.limit_file) {
      const bool present = std::any_of(r.strokes.begin(), r.strokes.end(),
                                       [&](const Stroke& s) { return s.group == *r.limit_file; });
      if (!present) {
        throw Error(ErrorCode::invalid_definition,
                    "radical '" + r.id + "' names limit file '" + *r.limit_file +
                        "' but no stroke carries that group",
                    r.id);
      }
    }
    if (r.base && !reg.radical_index_.count(*r.base)) dangling("radical", r.id, "radical", *r.base);
    check_literals(r.adds, reg.constraint_index_, "radical", r.id);
  });
  }

  // Lineage: roots and accumulated baseline literals; bases must be acyclic.
  for (std::size_t idx = 0; idx < d.radicals.size(); ++idx) {
    const auto& r = d.radicals[idx];
    owned("radical", idx, [&] {
    std::vector<const Radical*> chain;
    std::set<std::string> visited;
    const Radical* cur = &r;
    for (;;) {
      if (!visited.insert(cur->id).second) {
        throw Error(ErrorCode::invalid_definition,
                    "radical '" + r.id + "' has a cyclic base chain", r.id);
      }
      chain.push_back(cur);
      if (!cur->base) break;
      cur = &d.radicals[reg.radical_index_.at(*cur->base)];
    }
    LiteralConjunction baseline;
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      for (const auto& lit : (*it)->adds) {
        try {
          baseline.insert(lit);
        } catch (const Error&) {
          throw Error(ErrorCode::literal_conflict,
                      "radical '" + r.id + "' inherits '" + lit.constraint + "' with both signs",
                      r.id);
        }
      }
    }
    reg.baselines_.emplace(r.id, std::move(baseline));
    reg.roots_.emplace(r.id, chain.back()->id);
  });
  }

  for (std::size_t idx = 0; idx < d.rules.size(); ++idx) {
    const auto& rule = d.rules[idx];
    owned("rule", idx, [&] {
    if (rule.source.kind == RuleSource::Kind::radical &&
        !reg.radical_index_.count(rule.source.radical)) {
      dangling("rule", rule.id, "radical", rule.source.radical);
    }
    check_literals(rule.requires_literals, reg.constraint_index_, "rule", rule.id);
    check_literals(rule.adds, reg.constraint_index_, "rule", rule.id);
    if (rule.edits.empty() && rule.adds.empty()) {
      throw Error(ErrorCode::invalid_definition,
                  "rule '" + rule.id + "' has neither stroke edits nor literals", rule.id);
    }
    for (const auto& e : rule.edits) {
      const bool ok = (e.kind == EditKind::add_stroke && e.strokes.size() == 1) ||
                      (e.kind == EditKind::replace_strokes && !e.group.empty()) ||
                      (e.kind == EditKind::add_center_circle && e.radius > 0) ||
                      ((e.kind == EditKind::extend_stroke || e.kind == EditKind::cross_transform) &&
                       !e.group.empty());
      if (!ok) {
        throw Error(ErrorCode::invalid_definition,
                    "rule '" + rule.id + "' has a malformed edit " + format_edit(e), rule.id);
      }
      for (const auto& s : e.strokes) check_stroke(s, rule.id);
    }
    if (rule.target_concept && !reg.concept_index_.count(*rule.target_concept)) {
      dangling("rule", rule.id, "concept", *rule.target_concept);
    }
  });
  }

  // Rule dependency order: a rule whose required literals another rule adds
  // comes after it; ties and cycles fall back to declaration order.
  {
    const auto n = d.rules.size();
    std::vector<std::set<std::size_t>> preds(n);
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t a = 0; a < n; ++a) {
        if (a == b) continue;
        for (const auto& req : d.rules[b].requires_literals) {
          if (std::find(d.rules[a].adds.begin(), d.rules[a].adds.end(), req) !=
              d.rules[a].adds.end()) {
            preds[b].insert(a);
          }
        }
      }
    }
    std::vector<bool> placed(n, false);
    std::size_t rank = 0;
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (placed[i]) continue;
        const bool ready = std::all_of(preds[i].begin(), preds[i].end(),
                                       [&](std::size_t p) { return placed[p]; });
        if (ready) {
          placed[i] = true;
          reg.rule_ranks_.emplace(d.rules[i].id, rank++);
          progress = true;
          break;  // restart so the earliest ready declaration wins
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!placed[i]) reg.rule_ranks_.emplace(d.rules[i].id, rank++);
    }
  }

  for (std::size_t idx = 0; idx < d.concepts.size(); ++idx) {
    const auto& c = d.concepts[idx];
    owned("concept", idx, [&] {
    if (c.name.empty()) {
      throw Error(ErrorCode::invalid_definition, "concept '" + c.id + "' has an empty name", c.id);
    }
  });
  }

  for (std::size_t i = 0; i < d.bindings.size(); ++i) {
    owned("binding", i, [&] {
    auto& b = d.bindings[i];
    if (!reg.concept_index_.count(b.concept_id)) {
      dangling("binding", format_glyph(b.glyph), "concept", b.concept_id);
    }
    validate_glyph(b.glyph, reg);
    b.glyph = canonicalize(b.glyph, reg);
    const std::string key = meaning_key(b.glyph, reg);
    auto& slot = reg.meaning_map_[key];
    if (options.enforce_meaning_map) {
      for (std::size_t other : slot) {
        if (d.bindings[other].concept_id != b.concept_id) {
          throw Error(ErrorCode::meaning_map_conflict,
                      "glyph " + key + " is bound to both '" + d.bindings[other].concept_id +
                          "' and '" + b.concept_id + "'",
                      key);
        }
      }
    }
    slot.push_back(i);
  });
  }

  return reg;
}

const Constraint* Registry::find_constraint(std::string_view id) const {
  return lookup(constraint_index_, defs_.constraints, id);
}
const Mark* Registry::find_mark(std::string_view id) const {
  return lookup(mark_index_, defs_.marks, id);
}
const Radical* Registry::find_radical(std::string_view id) const {
  return lookup(radical_index_, defs_.radicals, id);
}
const DerivationRule* Registry::find_rule(std::string_view id) const {
  return lookup(rule_index_, defs_.rules, id);
}
const Concept* Registry::find_concept(std::string_view id) const {
  return lookup(concept_index_, defs_.concepts, id);
}

const Radical& Registry::radical(std::string_view id) const {
  if (const auto* r = find_radical(id)) return *r;
  throw Error(ErrorCode::not_found, "unknown radical '" + std::string(id) + "'", std::string(id));
}

const DerivationRule& Registry::rule(std::string_view id) const {
  if (const auto* r = find_rule(id)) return *r;
  throw Error(ErrorCode::not_found, "unknown rule '" + std::string(id) + "'", std::string(id));
}

const Mark& Registry::mark(std::string_view id) const {
  if (const auto* m = find_mark(id)) return *m;
  throw Error(ErrorCode::unknown_mark, "unknown mark '" + std::string(id) + "'", std::string(id));
}

const Mark* Registry::mark_for(Polarity polarity) const {
  for (const auto& m : defs_.marks) {
    if (m.polarity == polarity) return &m;
  }
  return nullptr;
}

std::vector<std::string> Registry::lineage(std::string_view radical_id) const {
  std::vector<std::string> out;
  const Radical* cur = &radical(radical_id);
  for (;;) {
    out.push_back(cur->id);
    if (!cur->base) break;
    cur = &radical(*cur->base);
  }
  return out;
}

const std::string& Registry::root_of(std::string_view radical_id) const {
  auto it = roots_.find(radical_id);
  if (it == roots_.end()) radical(radical_id);  // throws
  return it->second;
}

const LiteralConjunction& Registry::baseline(std::string_view radical_id) const {
  auto it = baselines_.find(radical_id);
  if (it == baselines_.end()) radical(radical_id);  // throws
  return it->second;
}

std::size_t Registry::rule_rank(std::string_view rule_id) const {
  auto it = rule_ranks_.find(rule_id);
  return it == rule_ranks_.end() ? rule_ranks_.size() : it->second;
}

std::span<const std::size_t> Registry::bindings_for_key(const std::string& key) const {
  auto it = meaning_map_.find(key);
  if (it == meaning_map_.end()) return {};
  return it->second;
}

std::vector<std::size_t> Registry::bindings_of(std::string_view concept_id) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < defs_.bindings.size(); ++i) {
    if (defs_.bindings[i].concept_id == concept_id) out.push_back(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(EntityKind kind) {
  switch (kind) {
    case EntityKind::constraint: return "constraint";
    case EntityKind::mark: return "mark";
    case EntityKind::radical: return "radical";
    case EntityKind::rule: return "rule";
    case EntityKind::concept_: return "concept";
  }
  return "constraint";
}

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
  for (auto k : {EntityKind::constraint, EntityKind::mark, EntityKind::radical, EntityKind::rule,
                 EntityKind::concept_}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

GetResult get(const Registry& registry, EntityKind kind, std::string_view id) {
  GetResult out;
  if (!is_valid_identifier(id)) {
    out.status = GetResult::Status::malformed_id;
    return out;
  }
  auto fill = [&](const auto* p) {
    if (p) {
      out.status = GetResult::Status::found;
      out.entity = p;
    }
  };
  switch (kind) {
    case EntityKind::constraint: fill(registry.find_constraint(id)); break;
    case EntityKind::mark: fill(registry.find_mark(id)); break;
    case EntityKind::radical: fill(registry.find_radical(id)); break;
    case EntityKind::rule: fill(registry.find_rule(id)); break;
    case EntityKind::concept_: fill(registry.find_concept(id)); break;
  }
  return out;
}

}  // namespace vtt
