#include <gtest/gtest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "support.hpp"
#include "vtt/composer.hpp"
#include "vtt/interchange.hpp"
#include "vtt/syntax.hpp"
#include "vtt/validator.hpp"

using namespace vtt;
using json = nlohmann::json;

namespace {

std::string error_subject(const std::string& doc) {
  try {
    import_definitions(doc);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::schema_violation) << e.what();
    return e.subject();
  }
  ADD_FAILURE() << "accepted: " << doc;
  return {};
}

// Lenient registry built from DSL text.
Registry lenient(const std::string& text) {
  return compile(parse_document(text), nullptr, {.enforce_meaning_map = false});
}

const char* kBase = R"vtt(
constraint p negatable "p"
constraint q negatable "q"
mark dot positive filled-dot
mark circle negative open-circle
radical x family=other strokes=[line(0.1,0.5 0.9,0.5)] regions=[a:p@0.3,0.3:0.2x0.2 b:q@0.7,0.3:0.2x0.2]
)vtt";

}  // namespace

TEST(Interchange, TopLevelShape) {
  const json doc = json::parse(export_registry(test::seed()));
  std::vector<std::string> keys;
  for (auto it = doc.begin(); it != doc.end(); ++it) keys.push_back(it.key());
  // nlohmann::json sorts keys; the export itself keeps declaration order.
  EXPECT_EQ(keys, (std::vector<std::string>{"bindings", "concepts", "constraints", "marks", "radicals",
                                            "rules", "version"}));
  EXPECT_EQ(doc["version"], kInterchangeVersion);
  EXPECT_EQ(doc["radicals"].size(), test::seed().radicals().size());
  const std::string text = export_registry(test::seed());
  EXPECT_EQ(text.find("\"version\""), text.find('"'));
}

TEST(Interchange, RoundTrip) {
  const auto& reg = test::fixtures();
  const std::string text = export_registry(reg);
  EXPECT_EQ(import_definitions(text), reg.definitions());
  EXPECT_EQ(import_registry(text), reg);
  EXPECT_EQ(export_definitions(import_definitions(text)), text);
}

TEST(Interchange, RuleSources) {
  const json doc = json::parse(export_registry(test::seed()));
  bool radical_source = false, family_source = false;
  for (const auto& r : doc["rules"]) {
    radical_source = radical_source || r["from"].contains("radical");
    family_source = family_source || r["from"].contains("family");
  }
  EXPECT_TRUE(radical_source);
  json with_family = doc;
  with_family["rules"][0]["from"] = {{"family", "structure"}};
  const auto defs = import_definitions(with_family.dump());
  EXPECT_EQ(defs.rules[0].source.kind, RuleSource::Kind::family);
  EXPECT_EQ(defs.rules[0].source.family, Family::structure);
}

TEST(Interchange, StrictReader) {
  json doc = json::parse(export_registry(test::fixtures()));
  json bad = doc;
  bad["radicals"][2]["regions"][0]["width"] = "wide";
  EXPECT_EQ(error_subject(bad.dump()), "$.radicals[2].regions[0].width");

  bad = doc;
  bad["radicals"][0]["colour"] = "red";
  EXPECT_EQ(error_subject(bad.dump()), "$.radicals[0].colour");

  bad = doc;
  bad.erase("marks");
  EXPECT_EQ(error_subject(bad.dump()), "$.marks");

  bad = doc;
  bad["bindings"][0]["glyph"] = "set(";
  EXPECT_EQ(error_subject(bad.dump()), "$.bindings[0].glyph");

  EXPECT_EQ(error_subject("[1, 2]"), "$");
  EXPECT_VTT_ERROR(import_definitions("{not json"), ErrorCode::schema_violation);

  bad = doc;
  bad["version"] = 2;
  EXPECT_VTT_ERROR(import_definitions(bad.dump()), ErrorCode::version_mismatch);
}

TEST(Interchange, ImportBuildsAndChecksTheRegistry) {
  json doc = json::parse(export_registry(test::seed()));
  doc["bindings"].push_back({{"glyph", "set()"}, {"concept", "group"}, {"precedence", false}});
  EXPECT_VTT_ERROR(import_registry(doc.dump()), ErrorCode::meaning_map_conflict);
  EXPECT_NO_THROW(import_registry(doc.dump(), {.enforce_meaning_map = false}));
}

TEST(Validator, CleanSeed) {
  const LintReport report = validate_registry(test::seed());
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.count(Severity::warning), 0u);
  EXPECT_EQ(report.count("table1-present"), 23u);
  EXPECT_EQ(report.count("table1-absent"), 0u);
  EXPECT_EQ(report.count("injectivity"), 1u);
  EXPECT_EQ(report.density_table.size(), 40u);
}

TEST(Validator, OverloadedGlyph) {
  const Registry r = lenient(std::string(kBase) +
                             "concept c \"c\" area=t\nconcept d \"d\" area=t\n"
                             "bind x(a=dot) -> c\nbind x(b=_ a=dot) -> d\n");
  const LintReport report = check_meaning_map(r);
  EXPECT_FALSE(report.ok());
  ASSERT_EQ(report.count("overloaded-glyph"), 1u);
  for (const auto& f : report.findings) {
    if (f.code == "overloaded-glyph") {
      EXPECT_EQ(f.severity, Severity::error);
      EXPECT_EQ(f.subjects, (std::vector<std::string>{"x(a=dot)", "c", "d"}));
    }
  }
  // Binding the same glyph twice to one concept is not an overload.
  const Registry same = lenient(std::string(kBase) + "concept c \"c\" area=t\n"
                                                     "bind x(a=dot) -> c\nbind x(a=dot) -> c\n");
  EXPECT_EQ(check_meaning_map(same).count("overloaded-glyph"), 0u);
}

TEST(Validator, Cryptomorphisms) {
  const std::string concepts =
      "concept c \"c\" area=t crypto=k\nconcept d \"d\" area=t crypto=k\nconcept e \"e\" area=t crypto=m\n";
  const Registry none = lenient(std::string(kBase) + concepts + "bind x(a=dot) -> c\nbind x(b=dot) -> d\n");
  EXPECT_EQ(check_meaning_map(none).count("missing-precedence"), 1u);
  const Registry two = lenient(std::string(kBase) + concepts +
                               "bind x(a=dot) -> c precedence\nbind x(b=dot) -> d precedence\n");
  EXPECT_EQ(check_meaning_map(two).count("multiple-precedence"), 1u);
  const Registry one = lenient(std::string(kBase) + concepts +
                               "bind x(a=dot) -> c precedence\nbind x(b=dot) -> d\n");
  const LintReport ok = check_meaning_map(one);
  EXPECT_TRUE(ok.ok());
  // "e" is unbound; its group has no glyphs and needs no precedence.
  EXPECT_EQ(ok.count("unbound-concept"), 1u);
}

TEST(Validator, Density) {
  const auto& reg = test::fixtures();
  EXPECT_EQ(density(Glyph::bare("set"), reg), 0);
  // One marked region over three strokes with a two-mark vocabulary.
  EXPECT_DOUBLE_EQ(density(parse_glyph("set(finite=dot)"), reg), std::log2(3.0) / 3);
  // Rule literals count one each.
  EXPECT_DOUBLE_EQ(density(parse_glyph("set(; rules: group-structure abelian)"), reg), 2.0 / 2);
  const Glyph topos = parse_glyph("category(; rules: topos)");
  EXPECT_EQ(density(topos, reg), density(abbreviate(topos, reg), reg));
  Registry wiped = compile(parse_document(
      "constraint p \"p\"\nradical x family=other strokes=[line(0,0 1,1)#g] regions=[]\n"
      "rule wipe from=x edits=[replace-strokes(g;)] adds=[p+]\n"));
  EXPECT_VTT_ERROR(density(parse_glyph("x(; rules: wipe)"), wiped), ErrorCode::malformed_glyph);
}

TEST(Validator, Universality) {
  const Registry r = lenient(std::string(kBase) +
                             "radical s family=structure table1=set strokes=[line(0,0 1,1)] regions=[]\n"
                             "radical lone family=structure strokes=[line(0,0 1,1)] regions=[]\n");
  const LintReport report = check_universality(r);
  EXPECT_EQ(report.count("table1-present"), 1u);
  EXPECT_EQ(report.count("table1-absent"), 22u);
  EXPECT_EQ(report.count("orphan-radical"), 1u);
  EXPECT_EQ(table1_keys().size(), 23u);
}

TEST(Validator, ReportFormats) {
  const Registry r = lenient(std::string(kBase) +
                             "concept c \"c\" area=t\nconcept d \"d\" area=t\n"
                             "bind x(a=dot) -> c\nbind x(a=dot) -> d\n");
  const LintReport report = validate_registry(r);
  const json j = json::parse(report.to_json());
  EXPECT_FALSE(j["ok"].get<bool>());
  EXPECT_FALSE(j["findings"].empty());
  const std::string text = report.to_text();
  EXPECT_NE(text.find("error overloaded-glyph"), std::string::npos);
  EXPECT_NE(text.find("1 error(s)"), std::string::npos);
}
