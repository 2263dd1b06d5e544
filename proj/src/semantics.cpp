#include "vtt/semantics.hpp"

#include <algorithm>

#include "analysis.hpp"
#include "vtt/composer.hpp"
#include "vtt/error.hpp"

namespace vtt {

LiteralConjunction constraint_of(const Glyph& glyph, const Registry& registry) {
  return detail::analyze_glyph(glyph, registry);
}

std::set<std::string> denote(const LiteralConjunction& literals, const UniverseModel& model) {
  std::set<std::string> out = model.carrier;
  for (const auto& lit : literals) {
    auto it = model.valuation.find(lit.constraint);
    if (it == model.valuation.end()) {
      throw Error(ErrorCode::missing_valuation,
                  "model has no valuation for constraint '" + lit.constraint + "'",
                  lit.constraint);
    }
    const auto& holds = it->second;
    std::erase_if(out, [&](const std::string& x) {
      return holds.contains(x) != (lit.sign == Polarity::positive);
    });
  }
  return out;
}

std::set<std::string> denote(const Glyph& glyph, const UniverseModel& model,
                             const Registry& registry) {
  return denote(constraint_of(glyph, registry), model);
}

std::set<std::string> lineage_roots(const Glyph& glyph, const Registry& registry) {
  std::set<std::string> roots{registry.root_of(glyph.radical)};
  for (const auto& a : glyph.assignment) {
    if (const Glyph* sub = embedded_of(a.fill)) roots.merge(lineage_roots(*sub, registry));
  }
  return roots;
}

std::optional<bool> refines(const Glyph& g1, const Glyph& g2, const Registry& registry) {
  const auto c1 = constraint_of(g1, registry);
  const auto c2 = constraint_of(g2, registry);
  const auto r1 = lineage_roots(g1, registry);
  const auto r2 = lineage_roots(g2, registry);
  const bool ordered = std::includes(r1.begin(), r1.end(), r2.begin(), r2.end()) ||
                       std::includes(r2.begin(), r2.end(), r1.begin(), r1.end());
  if (!ordered) return std::nullopt;
  return c1.includes(c2);
}

bool equivalent(const Glyph& g1, const Glyph& g2, const Registry& registry) {
  auto a = refines(g1, g2, registry);
  auto b = refines(g2, g1, registry);
  return a && b && *a && *b;
}

// ---------------------------------------------------------------------------

GlyphFamily::GlyphFamily(std::string radical, std::vector<std::string> regions,
                         std::vector<std::vector<std::optional<std::string>>> choices)
    : radical_(std::move(radical)), regions_(std::move(regions)), choices_(std::move(choices)) {
  for (const auto& c : choices_) size_ *= c.size();
}

Glyph GlyphFamily::at(std::uint64_t index) const {
  Glyph g = Glyph::bare(radical_);
  std::vector<std::size_t> digits(regions_.size());
  for (std::size_t i = regions_.size(); i-- > 0;) {
    const auto base = choices_[i].size();
    digits[i] = static_cast<std::size_t>(index % base);
    index /= base;
  }
  for (std::size_t i = 0; i < regions_.size(); ++i) {
    const auto& choice = choices_[i][digits[i]];
    if (choice) g.assignment.push_back({regions_[i], *choice});
  }
  return g;
}

GlyphFamily enumerate_family(const Registry& registry, std::string_view radical_id,
                             const EnumerationOptions& options) {
  const Radical& radical = registry.radical(radical_id);
  if (radical.schema.empty()) {
    throw Error(ErrorCode::invalid_definition, "radical '" + radical.id + "' has no regions",
                radical.id);
  }
  std::vector<const Mark*> marks;
  if (options.marks) {
    for (const auto& id : *options.marks) marks.push_back(&registry.mark(id));
  } else {
    for (const auto& m : registry.marks()) marks.push_back(&m);
  }

  std::vector<std::string> names;
  std::vector<std::vector<std::optional<std::string>>> choices;
  std::uint64_t total = 1;
  for (const auto& region : radical.schema.regions) {
    const auto* c = registry.find_constraint(region.constraint);
    const bool negatable = !c || c->negatable;
    std::vector<std::optional<std::string>> opts{std::nullopt};
    for (const auto* m : marks) {
      if (m->polarity == Polarity::negative && !negatable) continue;
      opts.emplace_back(m->id);
    }
    if (total > options.ceiling / opts.size()) {
      throw Error(ErrorCode::enumeration_refused,
                  "family of '" + radical.id + "' exceeds the ceiling of " +
                      std::to_string(options.ceiling) + " glyphs",
                  radical.id);
    }
    total *= opts.size();
    names.push_back(region.name);
    choices.push_back(std::move(opts));
  }
  return GlyphFamily(radical.id, std::move(names), std::move(choices));
}

// ---------------------------------------------------------------------------

Glyph invert(const LiteralConjunction& target, std::string_view radical_id,
             const Registry& registry) {
  const Radical& radical = registry.radical(radical_id);
  const auto& base = registry.baseline(radical.id);
  if (!target.includes(base)) {
    throw Error(ErrorCode::unexpressible,
                "target does not contain the baseline of radical '" + radical.id + "'",
                radical.id);
  }
  std::vector<Literal> remaining;
  for (const auto& lit : target) {
    if (!base.contains(lit)) remaining.push_back(lit);
  }
  auto take = [&](const Literal& lit) { std::erase(remaining, lit); };
  auto pending = [&](const Literal& lit) {
    return std::find(remaining.begin(), remaining.end(), lit) != remaining.end();
  };

  Glyph g = Glyph::bare(radical.id);
  for (const auto& region : radical.schema.regions) {
    const auto sign = target.sign_of(region.constraint);
    if (!sign) continue;
    const Mark* mark = registry.mark_for(*sign);
    if (!mark) continue;
    if (*sign == Polarity::negative) {
      const auto* c = registry.find_constraint(region.constraint);
      if (c && !c->negatable) continue;
    }
    const Literal lit{region.constraint, *sign};
    if (!pending(lit)) continue;
    g.assignment.push_back({region.name, mark->id});
    take(lit);
  }

  std::vector<const DerivationRule*> rules;
  for (const auto& r : registry.rules()) rules.push_back(&r);
  std::stable_sort(rules.begin(), rules.end(), [&](const auto* a, const auto* b) {
    return registry.rule_rank(a->id) < registry.rule_rank(b->id);
  });
  LiteralConjunction current = constraint_of(g, registry);
  for (bool progress = true; progress && !remaining.empty();) {
    progress = false;
    for (const auto* rule : rules) {
      if (rule->adds.empty() || !rule_source_matches(*rule, radical, registry)) continue;
      if (std::find(g.derivations.begin(), g.derivations.end(), rule->id) != g.derivations.end())
        continue;
      const bool fits = std::all_of(rule->adds.begin(), rule->adds.end(),
                                    [&](const Literal& l) { return target.contains(l); });
      const bool met = std::all_of(rule->requires_literals.begin(), rule->requires_literals.end(),
                                   [&](const Literal& l) { return current.contains(l); });
      const bool useful =
          std::any_of(rule->adds.begin(), rule->adds.end(), [&](const Literal& l) { return pending(l); });
      if (!fits || !met || !useful) continue;
      g.derivations.push_back(rule->id);
      for (const auto& l : rule->adds) {
        take(l);
        current.insert(l);
      }
      progress = true;
    }
  }
  if (!remaining.empty()) {
    throw Error(ErrorCode::unexpressible,
                "no region or rule of '" + radical.id + "' carries " + to_string(remaining.front()),
                remaining.front().constraint);
  }
  Glyph out = canonicalize(g, registry);
  if (constraint_of(out, registry) != target) {
    throw Error(ErrorCode::unexpressible,
                "target cannot be expressed exactly on radical '" + radical.id + "'", radical.id);
  }
  return out;
}

const Concept* lookup_concept(const Glyph& glyph, const Registry& registry) {
  const auto hits = registry.bindings_for_key(meaning_key(glyph, registry));
  if (hits.empty()) return nullptr;
  return registry.find_concept(registry.bindings()[hits.front()].concept_id);
}

}  // namespace vtt
