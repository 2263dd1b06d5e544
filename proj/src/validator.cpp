#include "vtt/validator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "vtt/composer.hpp"
#include "vtt/error.hpp"

namespace vtt {

std::string_view to_string(Severity severity) {
  switch (severity) {
    case Severity::error: return "error";
    case Severity::warning: return "warning";
    case Severity::info: return "info";
  }
  return "info";
}

std::size_t LintReport::count(Severity severity) const {
  return static_cast<std::size_t>(std::count_if(
      findings.begin(), findings.end(), [&](const Finding& f) { return f.severity == severity; }));
}

std::size_t LintReport::count(std::string_view code) const {
  return static_cast<std::size_t>(std::count_if(
      findings.begin(), findings.end(), [&](const Finding& f) { return f.code == code; }));
}

void LintReport::merge(LintReport other) {
  findings.insert(findings.end(), std::make_move_iterator(other.findings.begin()),
                  std::make_move_iterator(other.findings.end()));
  density_table.merge(other.density_table);
}

std::string LintReport::to_json() const {
  nlohmann::ordered_json j;
  j["ok"] = ok();
  j["errors"] = count(Severity::error);
  j["warnings"] = count(Severity::warning);
  auto arr = nlohmann::ordered_json::array();
  for (const auto& f : findings) {
    arr.push_back({{"severity", to_string(f.severity)},
                   {"code", f.code},
                   {"message", f.message},
                   {"subjects", f.subjects}});
  }
  j["findings"] = std::move(arr);
  auto dens = nlohmann::ordered_json::object();
  for (const auto& [id, score] : density_table) dens[id] = std::round(score * 1e6) / 1e6;
  j["density"] = std::move(dens);
  return j.dump(2) + "\n";
}

std::string LintReport::to_text() const {
  std::ostringstream out;
  for (const auto& f : findings) {
    out << to_string(f.severity) << ' ' << f.code << ": " << f.message << '\n';
  }
  if (!density_table.empty()) {
    out << "density:\n";
    out.setf(std::ios::fixed);
    out.precision(3);
    for (const auto& [id, score] : density_table) out << "  " << score << "  " << id << '\n';
  }
  out << count(Severity::error) << " error(s), " << count(Severity::warning) << " warning(s)\n";
  return out.str();
}

// ---------------------------------------------------------------------------

LintReport check_meaning_map(const Registry& registry) {
  LintReport report;
  const auto bindings = registry.bindings();

  // One meaning form, several concepts.
  std::map<std::string, std::set<std::string>> by_key;
  std::vector<std::string> key_order;
  for (const auto& b : bindings) {
    const auto key = meaning_key(b.glyph, registry);
    if (!by_key.count(key)) key_order.push_back(key);
    by_key[key].insert(b.concept_id);
  }
  for (const auto& key : key_order) {
    const auto& concepts = by_key[key];
    if (concepts.size() < 2) continue;
    std::vector<std::string> subjects(concepts.begin(), concepts.end());
    std::string names;
    for (const auto& c : subjects) names += (names.empty() ? "" : ", ") + c;
    subjects.insert(subjects.begin(), key);
    report.findings.push_back({Severity::error, "overloaded-glyph",
                               "glyph " + key + " is bound to several concepts: " + names,
                               std::move(subjects)});
  }

  // Precedence within cryptomorphism groups.
  std::vector<std::string> groups;
  for (const auto& c : registry.concepts()) {
    if (c.cryptomorphism_group &&
        std::find(groups.begin(), groups.end(), *c.cryptomorphism_group) == groups.end()) {
      groups.push_back(*c.cryptomorphism_group);
    }
  }
  for (const auto& group : groups) {
    std::size_t bound = 0, preferred = 0;
    std::vector<std::string> members;
    for (const auto& c : registry.concepts()) {
      if (c.cryptomorphism_group != group) continue;
      members.push_back(c.id);
      for (auto i : registry.bindings_of(c.id)) {
        ++bound;
        if (bindings[i].precedence) ++preferred;
      }
    }
    if (bound == 0 || preferred == 1) continue;
    members.insert(members.begin(), group);
    if (preferred == 0) {
      report.findings.push_back({Severity::error, "missing-precedence",
                                 "cryptomorphism group '" + group +
                                     "' has no binding marked precedence",
                                 members});
    } else {
      report.findings.push_back({Severity::error, "multiple-precedence",
                                 "cryptomorphism group '" + group + "' has " +
                                     std::to_string(preferred) + " bindings marked precedence",
                                 members});
    }
  }

  std::set<std::string> bound_concepts;
  for (const auto& b : bindings) bound_concepts.insert(b.concept_id);
  for (const auto& c : registry.concepts()) {
    if (!bound_concepts.count(c.id)) {
      report.findings.push_back(
          {Severity::warning, "unbound-concept", "concept '" + c.id + "' has no glyph", {c.id}});
    }
  }

  if (!by_key.empty()) {
    std::ostringstream msg;
    msg.setf(std::ios::fixed);
    msg.precision(3);
    msg << bound_concepts.size() << " bound concepts over " << by_key.size()
        << " distinct glyphs (ratio "
        << static_cast<double>(bound_concepts.size()) / static_cast<double>(by_key.size())
        << ")";
    report.findings.push_back({Severity::info, "injectivity", msg.str(), {}});
  }
  return report;
}

namespace {

struct DensityParts {
  std::size_t marked = 0;
  std::set<Literal> rule_literals;
  std::size_t strokes = 0;
};

void collect(const Glyph& glyph, const Registry& registry, DensityParts& parts) {
  parts.strokes += glyph_strokes(glyph, registry, /*honour_abbreviation=*/false).size();
  for (const auto& id : glyph.derivations) {
    for (const auto& lit : registry.rule(id).adds) parts.rule_literals.insert(lit);
  }
  for (const auto& a : glyph.assignment) {
    if (mark_of(a.fill)) ++parts.marked;
    if (const Glyph* sub = embedded_of(a.fill)) collect(*sub, registry, parts);
  }
}

}  // namespace

double density(const Glyph& glyph, const Registry& registry) {
  validate_glyph(glyph, registry);
  DensityParts parts;
  collect(glyph, registry, parts);
  if (parts.strokes == 0) {
    throw Error(ErrorCode::malformed_glyph, "glyph has no strokes", glyph.radical);
  }
  const double bits = std::log2(static_cast<double>(registry.marks().size()) + 1.0);
  return (static_cast<double>(parts.marked) * bits +
          static_cast<double>(parts.rule_literals.size())) /
         static_cast<double>(parts.strokes);
}

const std::vector<std::string>& table1_keys() {
  static const std::vector<std::string> keys = {
      "set",
      "kolmogorov-space",
      "hausdorff-space",
      "ring-field-algebra",
      "module-vector-space",
      "pairs-extensions",
      "group",
      "topological-group",
      "lie-algebra",
      "manifold-bundle",
      "classical-variety",
      "sheaf-geometric",
      "dynamical-system",
      "process",
      "topological-vector-space",
      "cw-complex",
      "simplicial-set",
      "category",
      "globular-set",
      "enriched-category",
      "order-lattice",
      "deduction-system-graph",
      "lambda-calculus",
  };
  return keys;
}

LintReport check_universality(const Registry& registry) {
  LintReport report;
  std::map<std::string, std::string> present;  // key -> radical id
  for (const auto& r : registry.radicals()) {
    if (r.table1_key) present.emplace(*r.table1_key, r.id);
  }
  for (const auto& key : table1_keys()) {
    auto it = present.find(key);
    if (it != present.end()) {
      report.findings.push_back({Severity::info, "table1-present",
                                 "basic radical '" + key + "' is provided by '" + it->second + "'",
                                 {key, it->second}});
    } else {
      report.findings.push_back(
          {Severity::info, "table1-absent", "basic radical '" + key + "' is missing", {key}});
    }
  }
  for (const auto& r : registry.radicals()) {
    if (r.family != Family::structure) continue;
    const Radical& root = registry.radical(registry.root_of(r.id));
    const std::string key = root.table1_key.value_or(root.id);
    if (key != "set" && key != "category") {
      report.findings.push_back({Severity::warning, "orphan-radical",
                                 "structure radical '" + r.id +
                                     "' has no lineage to the set or category radical",
                                 {r.id}});
    }
  }
  return report;
}

LintReport validate_registry(const Registry& registry) {
  LintReport report = check_meaning_map(registry);
  report.merge(check_universality(registry));
  for (const auto& b : registry.bindings()) {
    report.density_table.emplace(canonical_id(b.glyph, registry), density(b.glyph, registry));
  }
  return report;
}

}  // namespace vtt
