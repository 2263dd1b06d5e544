#include <gtest/gtest.h>

#include "support.hpp"
#include "vtt/composer.hpp"
#include "vtt/semantics.hpp"
#include "vtt/syntax.hpp"

using namespace vtt;

namespace {

const Registry& reg() { return test::fixtures(); }

Glyph lit(const char* text) { return parse_glyph(text); }

LiteralConjunction lits(std::initializer_list<const char*> texts) {
  LiteralConjunction out;
  for (const char* t : texts) out.insert(parse_literal(t));
  return out;
}

}  // namespace

TEST(Semantics, ConstraintOfCollectsEverySource) {
  EXPECT_EQ(constraint_of(Glyph::bare("set"), reg()), LiteralConjunction{});
  EXPECT_EQ(constraint_of(lit("bar(a=dot b=circle)"), reg()), lits({"in-a+", "in-b-"}));
  EXPECT_EQ(constraint_of(lit("set(; rules: group-structure abelian)"), reg()),
            lits({"group-op+", "commutative+"}));
  // Baseline from the lineage, then the center mark.
  EXPECT_EQ(constraint_of(lit("hausdorff-space(center=dot)"), reg()), lits({"t2+", "compact+"}));
  EXPECT_EQ(constraint_of(Glyph::bare("lie-algebra"), reg()),
            lits({"group-op+", "commutative+", "scalar-action+", "lie-bracket+"}));
  // Sub-glyph literals are merged in.
  EXPECT_TRUE(constraint_of(lit("hausdorff-space(algebraic=set(; rules: group-structure))"), reg())
                  .includes(lits({"t2+", "group-op+"})));
  // An embedded region carries no literal of its own.
  EXPECT_FALSE(constraint_of(lit("hausdorff-space(algebraic=set())"), reg()).sign_of("carries-algebra"));
}

TEST(Semantics, DenoteNeedsAValuationForEveryConstraint) {
  UniverseModel m;
  m.carrier = {"x", "y"};
  m.valuation["in-a"] = {"x"};
  EXPECT_EQ(denote(lits({"in-a+"}), m), (std::set<std::string>{"x"}));
  EXPECT_EQ(denote(lits({"in-a-"}), m), (std::set<std::string>{"y"}));
  EXPECT_EQ(denote(LiteralConjunction{}, m), m.carrier);
  EXPECT_VTT_ERROR(denote(lits({"in-b+"}), m), ErrorCode::missing_valuation);
  m.valuation["in-b"] = {"z"};
  EXPECT_VTT_ERROR(m.check(), ErrorCode::invalid_definition);
}

TEST(Semantics, RefinementIsLiteralInclusion) {
  const Glyph both = lit("bar(a=dot b=dot)");
  const Glyph a = lit("bar(a=dot)");
  EXPECT_EQ(refines(both, a, reg()), true);
  EXPECT_EQ(refines(a, both, reg()), false);
  EXPECT_EQ(refines(a, Glyph::bare("bar"), reg()), true);
  EXPECT_TRUE(equivalent(a, lit("bar(b=_ a=dot)"), reg()));
  EXPECT_FALSE(equivalent(a, both, reg()));
}

TEST(Semantics, RefinementAcrossLineages) {
  const Glyph vs = lit("set(; rules: group-structure abelian vector-space)");
  EXPECT_EQ(refines(vs, Glyph::bare("group"), reg()), true);
  EXPECT_EQ(refines(Glyph::bare("group"), vs, reg()), false);
  EXPECT_TRUE(equivalent(Glyph::bare("group"), lit("set(; rules: group-structure)"), reg()));
  // Unrelated lineages are unordered.
  EXPECT_EQ(refines(Glyph::bare("set"), Glyph::bare("category"), reg()), std::nullopt);
  EXPECT_EQ(refines(Glyph::bare("bar"), Glyph::bare("bar3"), reg()), std::nullopt);
  EXPECT_FALSE(equivalent(Glyph::bare("bar"), Glyph::bare("bar3"), reg()));
  // A topological vector space refines the bare Hausdorff space.
  EXPECT_EQ(refines(lit("hausdorff-space(algebraic=set(; rules: group-structure))"),
                    Glyph::bare("hausdorff-space"), reg()),
            true);
}

TEST(Semantics, LineageRoots) {
  EXPECT_EQ(lineage_roots(Glyph::bare("lie-algebra"), reg()), (std::set<std::string>{"set"}));
  EXPECT_EQ(lineage_roots(lit("kolmogorov-space(geometric=category())"), reg()),
            (std::set<std::string>{"kolmogorov-space", "category"}));
}

TEST(Enumeration, MixedRadixOrder) {
  const auto fam = enumerate_family(reg(), "bar");
  ASSERT_EQ(fam.size(), 9u);
  std::vector<std::string> ids;
  for (const auto& g : fam) ids.push_back(canonical_id(g, reg()));
  EXPECT_EQ(ids.front(), "bar()");
  EXPECT_EQ(ids[1], "bar(b=dot)");
  EXPECT_EQ(ids[2], "bar(b=circle)");
  EXPECT_EQ(ids[3], "bar(a=dot)");
  EXPECT_EQ(ids.back(), "bar(a=circle b=circle)");
  EXPECT_EQ(canonical_id(fam.at(4), reg()), "bar(a=dot b=dot)");
}

TEST(Enumeration, NegativeMarksOnlyWhereNegatable) {
  // "fixed" is not negatable: 2 choices there, 3 on the other region.
  EXPECT_EQ(enumerate_family(reg(), "rigid").size(), 6u);
  for (const auto& g : enumerate_family(reg(), "rigid")) EXPECT_NO_THROW(validate_glyph(g, reg()));
}

TEST(Enumeration, VocabularyAndCeiling) {
  EXPECT_EQ(enumerate_family(reg(), "bar7", {.marks = std::vector<std::string>{"dot"}}).size(), 128u);
  EXPECT_EQ(enumerate_family(reg(), "bar7").size(), 2187u);
  EXPECT_VTT_ERROR(enumerate_family(reg(), "bar7", {.ceiling = 1000}), ErrorCode::enumeration_refused);
  EXPECT_VTT_ERROR(enumerate_family(reg(), "nope"), ErrorCode::not_found);
}

TEST(Enumeration, EmptySchemaIsRefused) {
  Registry r = compile(parse_document(
      "mark dot positive filled-dot\nradical x family=other strokes=[line(0,0 1,1)] regions=[]\n"));
  EXPECT_VTT_ERROR(enumerate_family(r, "x"), ErrorCode::invalid_definition);
}

TEST(Invert, RegionMarksAndRules) {
  EXPECT_EQ(canonical_id(invert(lits({"in-a+", "in-b-"}), "bar", reg()), reg()), "bar(a=dot b=circle)");
  const Glyph vs = invert(lits({"group-op+", "commutative+", "scalar-action+", "field-scalars+"}), "set", reg());
  EXPECT_EQ(canonical_id(vs, reg()), "set(; rules: group-structure abelian vector-space)");
  const Glyph mixed = invert(lits({"group-op+", "finite+"}), "set", reg());
  EXPECT_EQ(canonical_id(mixed, reg()), "set(finite=dot; rules: group-structure)");
}

TEST(Invert, Unexpressible) {
  EXPECT_VTT_ERROR(invert(lits({"compact+"}), "bar", reg()), ErrorCode::unexpressible);
  // The baseline of a radical cannot be dropped.
  EXPECT_VTT_ERROR(invert(LiteralConjunction{}, "group", reg()), ErrorCode::unexpressible);
  // No rule adds the scalar action without field scalars on this radical.
  EXPECT_VTT_ERROR(invert(lits({"group-op+", "commutative+", "field-scalars+"}), "set", reg()),
                   ErrorCode::unexpressible);
  EXPECT_VTT_ERROR(invert(lits({"fixed-"}), "rigid", reg()), ErrorCode::unexpressible);
}

TEST(Lookup, ConceptsByMeaning) {
  ASSERT_NE(lookup_concept(lit("hausdorff-space(center=dot)"), reg()), nullptr);
  EXPECT_EQ(lookup_concept(lit("hausdorff-space(center=dot)"), reg())->name, "compact Hausdorff space");
  EXPECT_EQ(lookup_concept(lit("category(; rules: topos; abbreviated)"), reg())->id, "elementary-topos");
  EXPECT_EQ(lookup_concept(lit("hausdorff-space(center=circle)"), reg()), nullptr);
  EXPECT_EQ(lookup_concept(lit("set(; rules: abelian group-structure)"), reg())->id, "abelian-group");
}
