// One pass/fail line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "support.hpp"
#include "vtt/composer.hpp"
#include "vtt/dsl.hpp"
#include "vtt/error.hpp"
#include "vtt/interchange.hpp"
#include "vtt/renderer.hpp"
#include "vtt/semantics.hpp"
#include "vtt/syntax.hpp"
#include "vtt/validator.hpp"

using namespace vtt;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Oracle: an element satisfies a region mark when its membership in the
// constraint's set matches the mark's sign. Read straight off the assignment.
bool satisfies(const Glyph& g, const Registry& reg, const UniverseModel& m, const std::string& e) {
  const Radical& r = reg.radical(g.radical);
  for (const auto& a : g.assignment) {
    const auto* mark = mark_of(a.fill);
    if (!mark) continue;
    const auto& constraint = r.schema.find(a.region)->constraint;
    const bool member = m.valuation.at(constraint).count(e) > 0;
    const bool positive = reg.mark(*mark).polarity == Polarity::positive;
    if (member != positive) return false;
  }
  return true;
}

std::set<std::string> brute_denote(const Glyph& g, const Registry& reg, const UniverseModel& m) {
  std::set<std::string> out;
  for (const auto& e : m.carrier) {
    if (satisfies(g, reg, m, e)) out.insert(e);
  }
  return out;
}

std::set<std::string> minus(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

std::set<std::string> meet(const std::set<std::string>& a, const std::set<std::string>& b) {
  std::set<std::string> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

Glyph marked(const std::string& radical, std::vector<std::pair<std::string, std::string>> marks) {
  Glyph g = Glyph::bare(radical);
  for (auto& [region, mark] : marks) g.assignment.push_back({region, mark});
  return g;
}

std::vector<Glyph> all_glyphs(const Registry& reg, const std::string& radical) {
  const auto fam = enumerate_family(reg, radical);
  return {fam.begin(), fam.end()};
}

std::vector<std::string> constraints_of_radical(const Registry& reg, const std::string& radical) {
  std::vector<std::string> out;
  for (const auto& region : reg.radical(radical).schema.regions) out.push_back(region.constraint);
  return out;
}

// --------------------------------------------------------------------------

Outcome enumeration_count() {
  Outcome o;
  const auto& reg = test::fixtures();
  const auto t0 = Clock::now();
  const auto fam = enumerate_family(reg, "bar7", {.marks = std::vector<std::string>{"dot", "circle"}});
  if (fam.size() != 2187) o.fail("family size " + std::to_string(fam.size()));

  // Oracle: the signed literal set read directly off the assignment.
  std::set<std::set<std::pair<std::string, std::string>>> oracle_keys;
  std::set<std::string> canonical;
  std::vector<Glyph> glyphs;
  for (const auto& g : fam) {
    std::set<std::pair<std::string, std::string>> key;
    for (const auto& a : g.assignment) {
      if (const auto* m = mark_of(a.fill)) key.insert({a.region, *m});
    }
    oracle_keys.insert(key);
    canonical.insert(to_string(constraint_of(g, reg)));
    glyphs.push_back(g);
  }
  if (glyphs.size() != 2187) o.fail("iterated " + std::to_string(glyphs.size()));
  if (oracle_keys.size() != 2187) o.fail("oracle found duplicate assignments");
  if (canonical.size() != 2187) o.fail("only " + std::to_string(canonical.size()) + " distinct meanings");

  // Pairwise non-equivalence, by exhaustive check on the literal sets and by
  // the equivalence relation itself over a deterministic sample.
  std::vector<LiteralConjunction> lits;
  for (const auto& g : glyphs) lits.push_back(constraint_of(g, reg));
  for (std::size_t i = 0; i < lits.size() && o.pass; ++i) {
    for (std::size_t j = i + 1; j < lits.size(); ++j) {
      if (lits[i].includes(lits[j]) && lits[j].includes(lits[i])) {
        o.fail("glyphs " + std::to_string(i) + " and " + std::to_string(j) + " are equivalent");
        break;
      }
    }
  }
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, glyphs.size() - 1);
  for (int k = 0; k < 20000 && o.pass; ++k) {
    const auto i = pick(rng), j = pick(rng);
    if (i != j && equivalent(glyphs[i], glyphs[j], reg)) o.fail("equivalent() holds on a distinct pair");
  }
  const double secs = seconds_since(t0);
  if (secs >= 5) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    std::ostringstream ss;
    ss << "2187 glyphs, pairwise non-equivalent, " << std::fixed;
    ss.precision(2);
    ss << secs << " s";
    o.detail = ss.str();
  }
  return o;
}

Outcome four_class_semantics() {
  Outcome o;
  const auto& reg = test::fixtures();
  const Glyph only_b = marked("bar", {{"a", "circle"}, {"b", "dot"}});
  const Glyph only_a = marked("bar", {{"a", "dot"}, {"b", "circle"}});
  const Glyph both = marked("bar", {{"a", "dot"}, {"b", "dot"}});
  const Glyph neither = marked("bar", {{"a", "circle"}, {"b", "circle"}});

  std::mt19937 rng(20261018);
  const int kModels = 200;
  for (int trial = 0; trial < kModels && o.pass; ++trial) {
    UniverseModel m;
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    std::bernoulli_distribution coin(0.5);
    for (int i = 0; i < n; ++i) {
      const std::string e = "e" + std::to_string(i);
      m.carrier.insert(e);
      if (coin(rng)) m.valuation["in-a"].insert(e);
      if (coin(rng)) m.valuation["in-b"].insert(e);
    }
    m.valuation["in-a"];
    m.valuation["in-b"];
    const auto& A = m.valuation["in-a"];
    const auto& B = m.valuation["in-b"];
    const auto& U = m.carrier;

    const std::vector<std::pair<const Glyph*, std::set<std::string>>> cases = {
        {&only_b, minus(B, A)},
        {&only_a, minus(A, B)},
        {&both, meet(A, B)},
        {&neither, minus(minus(U, A), B)},
    };
    std::set<std::string> all;
    std::size_t total = 0;
    for (const auto& [g, expected] : cases) {
      const auto got = denote(*g, m, reg);
      if (got != expected) o.fail("set algebra mismatch for " + format_glyph(*g));
      if (got != brute_denote(*g, reg, m)) o.fail("oracle mismatch for " + format_glyph(*g));
      total += got.size();
      all.insert(got.begin(), got.end());
    }
    if (total != all.size()) o.fail("classes overlap");
    if (all != U) o.fail("classes do not cover the carrier");
  }
  if (o.pass) o.detail = std::to_string(kModels) + " random models, classes exact, disjoint and covering";
  return o;
}

Outcome refinement_soundness() {
  Outcome o;
  const auto& reg = test::fixtures();
  const auto t0 = Clock::now();
  std::size_t pairs = 0, models = 0;
  for (const std::string radical : {"bar1", "bar", "bar3"}) {
    const auto glyphs = all_glyphs(reg, radical);
    const auto cs = constraints_of_radical(reg, radical);

    // Every valuation over a 2-element carrier: each constraint picks one of
    // the 4 subsets of {x, y}.
    std::vector<UniverseModel> small;
    const std::size_t combos = std::size_t{1} << (2 * cs.size());
    for (std::size_t code = 0; code < combos; ++code) {
      UniverseModel m;
      m.carrier = {"x", "y"};
      for (std::size_t i = 0; i < cs.size(); ++i) {
        const auto bits = (code >> (2 * i)) & 3;
        auto& set = m.valuation[cs[i]];
        if (bits & 1) set.insert("x");
        if (bits & 2) set.insert("y");
      }
      small.push_back(std::move(m));
    }
    models += small.size();

    // Free model: one element per combination of constraint truth values.
    UniverseModel free;
    for (std::size_t code = 0; code < (std::size_t{1} << cs.size()); ++code) {
      const std::string e = "v" + std::to_string(code);
      free.carrier.insert(e);
      for (std::size_t i = 0; i < cs.size(); ++i) {
        auto& set = free.valuation[cs[i]];
        if (code >> i & 1) set.insert(e);
      }
    }

    std::vector<std::vector<std::set<std::string>>> den(glyphs.size());
    std::vector<std::set<std::string>> free_den;
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
      for (const auto& m : small) den[i].push_back(brute_denote(glyphs[i], reg, m));
      free_den.push_back(brute_denote(glyphs[i], reg, free));
    }
    for (std::size_t i = 0; i < glyphs.size(); ++i) {
      for (std::size_t j = 0; j < glyphs.size(); ++j) {
        ++pairs;
        const auto r = refines(glyphs[i], glyphs[j], reg);
        if (!r) {
          o.fail("refines undefined on one radical");
          continue;
        }
        if (*r) {
          for (std::size_t k = 0; k < small.size(); ++k) {
            if (!std::includes(den[j][k].begin(), den[j][k].end(), den[i][k].begin(), den[i][k].end())) {
              o.fail(format_glyph(glyphs[i]) + " refines " + format_glyph(glyphs[j]) +
                     " but denotes more");
            }
          }
        }
        const bool included = std::includes(free_den[j].begin(), free_den[j].end(),
                                            free_den[i].begin(), free_den[i].end());
        if (included && !*r) {
          o.fail(format_glyph(glyphs[i]) + " is included in " + format_glyph(glyphs[j]) +
                 " on the free model but does not refine it");
        }
        if (!included && *r) o.fail("refinement without free-model inclusion");
      }
    }
  }
  const double secs = seconds_since(t0);
  if (secs >= 60) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) {
    o.detail = std::to_string(pairs) + " pairs over " + std::to_string(models) + " small models";
  }
  return o;
}

Outcome seed_registry() {
  Outcome o;
  Registry reg;
  try {
    reg = test::compile_seed();
  } catch (const Error& e) {
    o.fail(std::string("seed does not compile: ") + e.what());
    return o;
  }
  std::size_t table1 = 0;
  std::set<std::string> keys;
  for (const auto& r : reg.radicals()) {
    if (r.table1_key) keys.insert(*r.table1_key);
  }
  for (const auto& k : table1_keys()) table1 += keys.count(k);
  if (table1 < 23) o.fail(std::to_string(table1) + " table radicals present");

  auto expect = [&](const std::string& literal, const std::string& concept_id) -> Glyph {
    Glyph g;
    try {
      g = parse_glyph(literal);
      validate_glyph(g, reg);
    } catch (const Error& e) {
      o.fail(literal + ": " + e.what());
      return g;
    }
    const Concept* c = lookup_concept(g, reg);
    if (!c || c->id != concept_id) o.fail(literal + " does not denote " + concept_id);
    return g;
  };

  // Built step by step with the composer, not read from the bindings.
  Glyph g = Glyph::bare("set");
  try {
    g = apply_derivation(g, "group-structure", reg);
    expect(format_glyph(g), "group");
    g = apply_derivation(g, "abelian", reg);
    expect(format_glyph(g), "abelian-group");
    const Glyph module = apply_derivation(g, "module", reg);
    expect(format_glyph(module), "module");
    const Glyph vs = apply_derivation(g, "vector-space", reg);
    expect(format_glyph(vs), "vector-space");
    const Glyph tvs = combine(vs, "hausdorff-space", reg);
    expect(format_glyph(tvs), "topological-vector-space");
    const Glyph banach = apply_derivation(tvs, "banach", reg);
    expect(format_glyph(banach), "banach-space");
    expect(format_glyph(apply_derivation(banach, "hilbert", reg)), "hilbert-space");
    expect(format_glyph(apply_derivation(banach, "c-star", reg)), "c-star-algebra");
    expect(format_glyph(apply_derivation(Glyph::bare("category"), "groupoid", reg)), "groupoid");
    expect(format_glyph(place_mark(Glyph::bare("hausdorff-space"), "center", "dot", reg)),
           "compact-hausdorff");
    const Glyph topos = apply_derivation(Glyph::bare("category"), "topos", reg);
    const Glyph short_topos = abbreviate(topos, reg);
    expect(format_glyph(topos), "elementary-topos");
    expect(format_glyph(short_topos), "elementary-topos");
    if (!short_topos.abbreviated) o.fail("abbreviated topos lost its flag");
    if (render_svg(topos, reg) == render_svg(short_topos, reg)) {
      o.fail("abbreviation did not change the topos drawing");
    }
    const Glyph groth =
        combine(Glyph::bare("category"), "kolmogorov-space", reg, std::string("geometric"));
    expect(format_glyph(groth), "grothendieck-topos");
    if (!is_irregular(groth, reg)) o.fail("Grothendieck topos glyph is not irregular");
    Glyph heyting = Glyph::bare("order-lattice");
    for (const char* rule : {"lattice-operations", "distributive", "heyting"}) {
      heyting = apply_derivation(heyting, rule, reg);
    }
    expect(format_glyph(heyting), "heyting-algebra");
  } catch (const Error& e) {
    o.fail(std::string("derivation chain broke: ") + e.what());
  }

  const auto report = validate_registry(reg);
  const auto mm = check_meaning_map(reg);
  if (mm.count(Severity::error) != 0) {
    o.fail(std::to_string(mm.count(Severity::error)) + " meaning-map errors");
  }
  if (!report.ok()) o.fail("validator reports errors");
  if (o.pass) {
    o.detail = std::to_string(table1) + " table radicals, derivation chain complete, " +
               std::to_string(report.count(Severity::error)) + " errors, " +
               std::to_string(report.count(Severity::warning)) + " warnings";
  }
  return o;
}

// Random small registry: one radical, distinct glyphs bound to concepts,
// some concepts grouped as cryptomorphisms with exactly one precedence.
struct RandomRegistry {
  DefinitionSet defs;
  std::vector<std::string> crypto_groups;
};

RandomRegistry random_registry(std::mt19937& rng) {
  RandomRegistry out;
  auto& d = out.defs;
  d.marks = {{"dot", Polarity::positive, "filled-dot"}, {"circle", Polarity::negative, "open-circle"}};
  const int regions = std::uniform_int_distribution<int>(2, 4)(rng);
  Radical r;
  r.id = "r";
  r.name = "r";
  r.strokes = {Stroke{StrokeKind::line, {{0.1, 0.5}, {0.9, 0.5}}}};
  for (int i = 0; i < regions; ++i) {
    const std::string c = "k" + std::to_string(i);
    d.constraints.push_back({c, c, "", true});
    r.schema.regions.push_back({"g" + std::to_string(i), c, {0.15 + 0.2 * i, 0.25}, 0.1, 0.1});
  }
  d.radicals.push_back(r);

  // Distinct glyphs: a random sample of mark assignments.
  std::vector<Glyph> pool;
  std::size_t total = 1;
  for (int i = 0; i < regions; ++i) total *= 3;
  std::vector<std::size_t> codes(total);
  std::iota(codes.begin(), codes.end(), 0);
  std::shuffle(codes.begin(), codes.end(), rng);
  const int concepts = std::uniform_int_distribution<int>(3, 8)(rng);
  const int groups = std::uniform_int_distribution<int>(1, 2)(rng);
  for (int g = 0; g < groups; ++g) out.crypto_groups.push_back("grp" + std::to_string(g));
  for (int c = 0; c < concepts; ++c) {
    Concept k;
    k.id = "c" + std::to_string(c);
    k.name = k.id;
    k.area = "test";
    if (c < groups) k.cryptomorphism_group = "grp" + std::to_string(c);
    else if (std::bernoulli_distribution(0.3)(rng)) k.cryptomorphism_group = out.crypto_groups[0];
    d.concepts.push_back(k);
  }
  std::size_t next = 0;
  std::map<std::string, bool> has_precedence;
  for (const auto& k : d.concepts) {
    const int n = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int j = 0; j < n && next < codes.size(); ++j) {
      auto code = codes[next++];
      Glyph g = Glyph::bare("r");
      for (int i = 0; i < regions; ++i, code /= 3) {
        if (code % 3 == 1) g.assignment.push_back({"g" + std::to_string(i), std::string("dot")});
        if (code % 3 == 2) g.assignment.push_back({"g" + std::to_string(i), std::string("circle")});
      }
      Binding b{g, k.id, false};
      if (k.cryptomorphism_group && !has_precedence[*k.cryptomorphism_group]) {
        b.precedence = true;
        has_precedence[*k.cryptomorphism_group] = true;
      }
      d.bindings.push_back(b);
    }
  }
  std::shuffle(d.bindings.begin(), d.bindings.end(), rng);
  return out;
}

Outcome violation_detection() {
  Outcome o;
  std::mt19937 rng(424242);
  int overloads = 0, precedences = 0, flagged = 0, clean_errors = 0, cleans = 0;
  const BuildOptions lenient{.enforce_meaning_map = false};
  for (int i = 0; i < 1000; ++i) {
    auto rr = random_registry(rng);
    const auto clean = check_meaning_map(Registry::build(rr.defs, lenient));
    ++cleans;
    if (clean.count(Severity::error) != 0) ++clean_errors;

    auto defs = rr.defs;
    std::string expected_code;
    if (i % 2 == 0) {
      // Rebind an existing glyph to another concept, written with its
      // assignment reversed and an explicit absent entry.
      std::uniform_int_distribution<std::size_t> pick(0, defs.bindings.size() - 1);
      Binding b = defs.bindings[pick(rng)];
      std::reverse(b.glyph.assignment.begin(), b.glyph.assignment.end());
      if (!b.glyph.find("g0")) b.glyph.assignment.push_back({"g0", Absent{}});
      std::vector<std::string> others;
      for (const auto& c : defs.concepts) {
        if (c.id != b.concept_id) others.push_back(c.id);
      }
      b.concept_id = others[std::uniform_int_distribution<std::size_t>(0, others.size() - 1)(rng)];
      b.precedence = false;
      defs.bindings.insert(defs.bindings.begin() + pick(rng), b);
      expected_code = "overloaded-glyph";
      ++overloads;
    } else {
      // Drop the precedence flag of one cryptomorphism group.
      std::vector<std::size_t> flagged_bindings;
      for (std::size_t k = 0; k < defs.bindings.size(); ++k) {
        if (defs.bindings[k].precedence) flagged_bindings.push_back(k);
      }
      const auto k = flagged_bindings[std::uniform_int_distribution<std::size_t>(
          0, flagged_bindings.size() - 1)(rng)];
      defs.bindings[k].precedence = false;
      expected_code = "missing-precedence";
      ++precedences;
    }
    const auto report = check_meaning_map(Registry::build(defs, lenient));
    if (report.count(expected_code) > 0 && report.count(Severity::error) > 0) ++flagged;
  }
  if (flagged != 1000) o.fail(std::to_string(flagged) + "/1000 injections flagged");
  if (clean_errors != 0) o.fail(std::to_string(clean_errors) + " clean registries reported errors");
  if (!check_meaning_map(test::seed()).ok()) o.fail("seed registry reports errors");
  if (o.pass) {
    o.detail = std::to_string(flagged) + "/1000 flagged (" + std::to_string(overloads) +
               " overloads, " + std::to_string(precedences) + " missing precedence), " +
               std::to_string(cleans) + " clean registries error-free";
  }
  return o;
}

Outcome round_trips() {
  Outcome o;
  std::size_t docs = 0, inverted = 0;
  for (const std::string path : {VTT_SEED_FILE, VTT_FIXTURE_FILE}) {
    const auto doc = parse_document(test::read_text(path), path);
    const std::string printed = print_document(doc);
    const auto again = parse_document(printed, path);
    if (!(again == doc)) o.fail("parse(print(doc)) differs for " + path);
    if (print_document(again) != printed) o.fail("print is not stable for " + path);
    ++docs;
  }
  const auto& reg = test::fixtures();
  const auto exported = export_registry(reg);
  const auto imported = import_registry(exported);
  if (!(imported.definitions() == reg.definitions())) o.fail("import(export(reg)) differs");
  if (export_registry(imported) != exported) o.fail("export is not stable");

  for (const std::string radical : {"bar1", "bar", "bar3", "rigid"}) {
    for (const auto& g : all_glyphs(reg, radical)) {
      const auto lits = constraint_of(g, reg);
      try {
        const Glyph back = invert(lits, radical, reg);
        if (!equivalent(back, g, reg)) o.fail("invert(" + format_glyph(g) + ") not equivalent");
        if (canonical_id(back, reg) != canonical_id(g, reg)) {
          o.fail("invert(" + format_glyph(g) + ") = " + format_glyph(back));
        }
        if (constraint_of(back, reg) != lits) o.fail("constraint_of(invert) differs");
      } catch (const Error& e) {
        o.fail("invert failed on " + format_glyph(g) + ": " + e.what());
      }
      ++inverted;
    }
  }
  if (o.pass) {
    o.detail = std::to_string(docs) + " documents, interchange identical, " +
               std::to_string(inverted) + " glyphs inverted";
  }
  return o;
}

std::vector<Glyph> seed_glyphs(const Registry& reg) {
  std::vector<Glyph> out;
  for (const auto& r : reg.radicals()) out.push_back(Glyph::bare(r.id));
  for (const auto& b : reg.bindings()) out.push_back(b.glyph);
  return out;
}

Outcome rendering() {
  Outcome o;
  // Two registries compiled independently from the source text.
  const Registry first = test::compile_seed();
  const Registry second = test::compile_seed();
  const auto ga = seed_glyphs(first), gb = seed_glyphs(second);
  std::size_t rendered = 0;
  for (std::size_t i = 0; i < ga.size(); ++i) {
    try {
      if (render_svg(ga[i], first) != render_svg(gb[i], second)) {
        o.fail("non-deterministic SVG for " + format_glyph(ga[i]));
      }
      ++rendered;
    } catch (const Error& e) {
      o.fail("render failed for " + format_glyph(ga[i]) + ": " + e.what());
    }
  }

  const auto& reg = test::fixtures();
  std::set<std::string> docs;
  const auto bar3 = all_glyphs(reg, "bar3");
  for (const auto& g : bar3) docs.insert(render_svg(g, reg));
  if (bar3.size() != 27) o.fail(std::to_string(bar3.size()) + " three-region glyphs");
  if (docs.size() != bar3.size()) o.fail(std::to_string(docs.size()) + " distinct documents");

  auto unchanged = [&](const Glyph& a, const Glyph& b, const std::string& what) {
    if (constraint_of(a, reg) != constraint_of(b, reg)) o.fail(what + " changed the constraints");
    if (lookup_concept(a, reg) != lookup_concept(b, reg)) o.fail(what + " changed the concept");
  };
  try {
    const Glyph topos = apply_derivation(Glyph::bare("category"), "topos", reg);
    const Glyph short_topos = abbreviate(topos, reg);
    unchanged(topos, short_topos, "abbreviate");
    unchanged(topos, expand(short_topos, reg), "expand");
    const Glyph tvs = resolve_ref({"topological-vector-space", std::nullopt}, reg);
    unchanged(tvs, expand_region(tvs, "algebraic", 1.5, reg), "expand_region");
    const Glyph small_cat = place_mark(Glyph::bare("category"), "small", "dot", reg);
    unchanged(small_cat, abbreviate(small_cat, reg), "abbreviate");
  } catch (const Error& e) {
    o.fail(std::string("transform failed: ") + e.what());
  }
  if (o.pass) {
    o.detail = std::to_string(rendered) + " seed glyphs byte-identical, " +
               std::to_string(docs.size()) + " distinct three-region documents";
  }
  return o;
}

Outcome density_scores() {
  Outcome o;
  const auto& reg = test::fixtures();
  for (const auto& r : reg.radicals()) {
    const double d = density(Glyph::bare(r.id), reg);
    if (d != 0) o.fail("bare " + r.id + " scores " + std::to_string(d));
  }
  // Oracle: k marked regions x log2(3) bits over the single stroke.
  const std::vector<std::string> regions = {"r1", "r2", "r3", "r4", "r5", "r6", "r7"};
  double previous = -1;
  for (std::size_t k = 0; k <= regions.size(); ++k) {
    Glyph g = Glyph::bare("bar7");
    for (std::size_t i = 0; i < k; ++i) {
      g.assignment.push_back({regions[i], std::string(i % 2 ? "circle" : "dot")});
    }
    const double d = density(g, reg);
    const double expected = static_cast<double>(k) * std::log2(3.0) / 1.0;
    if (std::abs(d - expected) > 1e-9) o.fail("k=" + std::to_string(k) + " scores " + std::to_string(d));
    if (!(d > previous)) o.fail("not strictly increasing at k=" + std::to_string(k));
    previous = d;
  }
  const Glyph topos = apply_derivation(Glyph::bare("category"), "topos", reg);
  if (density(topos, reg) != density(abbreviate(topos, reg), reg)) o.fail("abbreviation changes density");
  const Glyph marked_cat = place_mark(topos, "complete", "dot", reg);
  if (density(marked_cat, reg) != density(abbreviate(marked_cat, reg), reg)) {
    o.fail("abbreviation changes density of a marked glyph");
  }
  if (o.pass) o.detail = "bare glyphs 0, monotone over 0..7 marked regions, abbreviation invariant";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"enumeration count", enumeration_count},
      {"four-class semantics", four_class_semantics},
      {"refinement soundness", refinement_soundness},
      {"seed registry", seed_registry},
      {"violation detection", violation_detection},
      {"round trips", round_trips},
      {"rendering determinism and distinctness", rendering},
      {"density", density_scores},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: "
              << (o.pass ? "PASS" : "FAIL") << " (" << o.detail << ")" << std::endl;
  }
  return failed;
}
