#include "vtt/interchange.hpp"

#include <nlohmann/json.hpp>

#include "vtt/error.hpp"
#include "vtt/syntax.hpp"

namespace vtt {
namespace {

using json = nlohmann::ordered_json;

json literals_json(const std::vector<Literal>& lits) {
  json out = json::array();
  for (const auto& l : lits) out.push_back(format_literal(l));
  return out;
}

}  // namespace

std::string export_definitions(const DefinitionSet& d) {
  json doc;
  doc["version"] = kInterchangeVersion;

  json constraints = json::array();
  for (const auto& c : d.constraints) {
    json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["negatable"] = c.negatable;
    j["statement"] = c.statement;
    constraints.push_back(std::move(j));
  }
  doc["constraints"] = std::move(constraints);

  json marks = json::array();
  for (const auto& m : d.marks) {
    marks.push_back({{"id", m.id}, {"polarity", to_string(m.polarity)}, {"shape", m.printable}});
  }
  doc["marks"] = std::move(marks);

  json radicals = json::array();
  for (const auto& r : d.radicals) {
    json j;
    j["id"] = r.id;
    j["name"] = r.name;
    j["family"] = to_string(r.family);
    j["table1"] = r.table1_key ? json(*r.table1_key) : json(nullptr);
    j["base"] = r.base ? json(*r.base) : json(nullptr);
    j["adds"] = literals_json(r.adds);
    json strokes = json::array();
    for (const auto& s : r.strokes) strokes.push_back(format_stroke(s));
    j["strokes"] = std::move(strokes);
    json regions = json::array();
    for (const auto& g : r.schema.regions) {
      json rj;
      rj["name"] = g.name;
      rj["constraint"] = g.constraint;
      rj["anchor"] = {g.anchor.x, g.anchor.y};
      rj["width"] = g.width;
      rj["height"] = g.height;
      rj["expandable"] = g.expandable;
      regions.push_back(std::move(rj));
    }
    j["regions"] = std::move(regions);
    j["limit_file"] = r.limit_file ? json(*r.limit_file) : json(nullptr);
    radicals.push_back(std::move(j));
  }
  doc["radicals"] = std::move(radicals);

  json rules = json::array();
  for (const auto& rule : d.rules) {
    json j;
    j["id"] = rule.id;
    j["name"] = rule.name;
    if (rule.source.kind == RuleSource::Kind::family) {
      j["from"] = {{"family", to_string(rule.source.family)}};
    } else {
      j["from"] = {{"radical", rule.source.radical}};
    }
    j["requires"] = literals_json(rule.requires_literals);
    json edits = json::array();
    for (const auto& e : rule.edits) edits.push_back(format_edit(e));
    j["edits"] = std::move(edits);
    j["adds"] = literals_json(rule.adds);
    j["concept"] = rule.target_concept ? json(*rule.target_concept) : json(nullptr);
    rules.push_back(std::move(j));
  }
  doc["rules"] = std::move(rules);

  json concepts = json::array();
  for (const auto& c : d.concepts) {
    json j;
    j["id"] = c.id;
    j["name"] = c.name;
    j["area"] = c.area;
    j["crypto"] = c.cryptomorphism_group ? json(*c.cryptomorphism_group) : json(nullptr);
    j["aliases"] = c.aliases;
    concepts.push_back(std::move(j));
  }
  doc["concepts"] = std::move(concepts);

  json bindings = json::array();
  for (const auto& b : d.bindings) {
    bindings.push_back(
        {{"glyph", format_glyph(b.glyph)}, {"concept", b.concept_id}, {"precedence", b.precedence}});
  }
  doc["bindings"] = std::move(bindings);
  return doc.dump(2) + "\n";
}

std::string export_registry(const Registry& registry) {
  return export_definitions(registry.definitions());
}

namespace {

[[noreturn]] void violation(const std::string& path, const std::string& why) {
  throw Error(ErrorCode::schema_violation, path + ": " + why, path);
}

// Typed access to one JSON object with path-qualified diagnostics. Every key
// must be consumed; leftovers are reported as unknown.
class Object {
 public:
  Object(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) violation(path_, "expected an object");
  }

  std::string child(std::string_view key) const { return path_ + "." + std::string(key); }

  const json& at(std::string_view key) {
    used_.push_back(std::string(key));
    auto it = j_.find(std::string(key));
    if (it == j_.end()) violation(child(key), "missing");
    return *it;
  }
  bool has(std::string_view key) const { return j_.contains(std::string(key)); }

  std::string str(std::string_view key) {
    const json& v = at(key);
    if (!v.is_string()) violation(child(key), "expected a string");
    return v.get<std::string>();
  }
  std::optional<std::string> opt_str(std::string_view key) {
    if (!has(key)) {
      used_.push_back(std::string(key));
      return std::nullopt;
    }
    const json& v = at(key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_string()) violation(child(key), "expected a string or null");
    return v.get<std::string>();
  }
  bool boolean(std::string_view key) {
    const json& v = at(key);
    if (!v.is_boolean()) violation(child(key), "expected a boolean");
    return v.get<bool>();
  }
  double number(std::string_view key) {
    const json& v = at(key);
    if (!v.is_number()) violation(child(key), "expected a number");
    return v.get<double>();
  }
  const json& array(std::string_view key) {
    const json& v = at(key);
    if (!v.is_array()) violation(child(key), "expected an array");
    return v;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (std::find(used_.begin(), used_.end(), it.key()) == used_.end()) {
        violation(child(it.key()), "unknown key");
      }
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::vector<std::string> used_;
};

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

template <class T, class F>
T parse_text(const json& v, const std::string& path, F&& parse) {
  if (!v.is_string()) violation(path, "expected a string");
  try {
    return parse(v.get<std::string>());
  } catch (const Error& e) {
    violation(path, e.detail());
  }
}

std::vector<Literal> read_literals(Object& o, std::string_view key) {
  std::vector<Literal> out;
  const json& arr = o.array(key);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(parse_text<Literal>(arr[i], item(o.child(key), i),
                                      [](const std::string& s) { return parse_literal(s); }));
  }
  return out;
}

template <class F>
void each(Object& top, std::string_view key, F&& f) {
  const json& arr = top.array(key);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    Object o(arr[i], item(top.child(key), i));
    f(o);
    o.finish();
  }
}

}  // namespace

DefinitionSet import_definitions(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    violation("$", std::string("not valid JSON (") + e.what() + ")");
  }
  Object top(doc, "$");
  if (!top.has("version")) violation("$.version", "missing");
  const json& version = top.at("version");
  if (!version.is_number_integer()) violation("$.version", "expected an integer");
  if (version.get<long long>() != kInterchangeVersion) {
    throw Error(ErrorCode::version_mismatch,
                "document version " + version.dump() + " is not supported (expected " +
                    std::to_string(kInterchangeVersion) + ")",
                "$.version");
  }

  DefinitionSet d;
  each(top, "constraints", [&](Object& o) {
    Constraint c;
    c.id = o.str("id");
    c.name = o.str("name");
    c.negatable = o.boolean("negatable");
    c.statement = o.str("statement");
    d.constraints.push_back(std::move(c));
  });
  each(top, "marks", [&](Object& o) {
    Mark m;
    m.id = o.str("id");
    const auto pol = parse_polarity(o.str("polarity"));
    if (!pol) violation(o.child("polarity"), "expected positive or negative");
    m.polarity = *pol;
    m.printable = o.str("shape");
    d.marks.push_back(std::move(m));
  });
  each(top, "radicals", [&](Object& o) {
    Radical r;
    r.id = o.str("id");
    r.name = o.str("name");
    const auto fam = parse_family(o.str("family"));
    if (!fam) violation(o.child("family"), "expected structure, topological or other");
    r.family = *fam;
    r.table1_key = o.opt_str("table1");
    r.base = o.opt_str("base");
    r.adds = read_literals(o, "adds");
    const json& strokes = o.array("strokes");
    for (std::size_t i = 0; i < strokes.size(); ++i) {
      r.strokes.push_back(parse_text<Stroke>(strokes[i], item(o.child("strokes"), i),
                                             [](const std::string& s) { return parse_stroke(s); }));
    }
    each(o, "regions", [&](Object& ro) {
      Region g;
      g.name = ro.str("name");
      g.constraint = ro.str("constraint");
      const json& anchor = ro.array("anchor");
      if (anchor.size() != 2 || !anchor[0].is_number() || !anchor[1].is_number()) {
        violation(ro.child("anchor"), "expected [x, y]");
      }
      g.anchor = {anchor[0].get<double>(), anchor[1].get<double>()};
      g.width = ro.number("width");
      g.height = ro.number("height");
      g.expandable = ro.boolean("expandable");
      r.schema.regions.push_back(std::move(g));
    });
    r.limit_file = o.opt_str("limit_file");
    d.radicals.push_back(std::move(r));
  });
  each(top, "rules", [&](Object& o) {
    DerivationRule rule;
    rule.id = o.str("id");
    rule.name = o.str("name");
    {
      Object from(o.at("from"), o.child("from"));
      if (from.has("family")) {
        const auto fam = parse_family(from.str("family"));
        if (!fam) violation(from.child("family"), "expected structure, topological or other");
        rule.source.kind = RuleSource::Kind::family;
        rule.source.family = *fam;
      } else {
        rule.source.kind = RuleSource::Kind::radical;
        rule.source.radical = from.str("radical");
      }
      from.finish();
    }
    rule.requires_literals = read_literals(o, "requires");
    const json& edits = o.array("edits");
    for (std::size_t i = 0; i < edits.size(); ++i) {
      rule.edits.push_back(parse_text<StrokeEdit>(edits[i], item(o.child("edits"), i),
                                                  [](const std::string& s) { return parse_edit(s); }));
    }
    rule.adds = read_literals(o, "adds");
    rule.target_concept = o.opt_str("concept");
    d.rules.push_back(std::move(rule));
  });
  each(top, "concepts", [&](Object& o) {
    Concept c;
    c.id = o.str("id");
    c.name = o.str("name");
    c.area = o.str("area");
    c.cryptomorphism_group = o.opt_str("crypto");
    const json& aliases = o.array("aliases");
    for (std::size_t i = 0; i < aliases.size(); ++i) {
      if (!aliases[i].is_string()) violation(item(o.child("aliases"), i), "expected a string");
      c.aliases.push_back(aliases[i].get<std::string>());
    }
    d.concepts.push_back(std::move(c));
  });
  each(top, "bindings", [&](Object& o) {
    Binding b;
    b.glyph = parse_text<Glyph>(o.at("glyph"), o.child("glyph"),
                                [](const std::string& s) { return parse_glyph(s); });
    b.concept_id = o.str("concept");
    b.precedence = o.boolean("precedence");
    d.bindings.push_back(std::move(b));
  });
  top.finish();
  return d;
}

Registry import_registry(std::string_view document, BuildOptions options) {
  return Registry::build(import_definitions(document), options);
}

}  // namespace vtt
