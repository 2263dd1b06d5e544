#include "vtt/dsl.hpp"

#include <map>
#include <set>

#include "cursor.hpp"
#include "vtt/syntax.hpp"

namespace vtt {
namespace {

using detail::Cursor;

constexpr std::string_view kKindNames[] = {"constraint", "mark",    "radical", "rule",
                                           "concept",    "binding", "expr"};

std::string_view kind_of(const Declaration& d) { return kKindNames[d.index()]; }

const std::string* id_of(const Declaration& d) {
  return std::visit(
      [](const auto& node) -> const std::string* {
        using T = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<T, Binding> || std::is_same_v<T, Expression>) {
          return nullptr;
        } else {
          return &node.id;
        }
      },
      d);
}

void end_statement(Cursor& cur) {
  cur.skip_blanks();
  if (cur.peek() == '#') {
    while (!cur.at_line_end()) cur.advance();
  }
  if (!cur.at_line_end()) cur.fail_expected("end of line");
}

/// Reads `key=value` attributes up to the end of the line. `handle` returns
/// false for keys it does not know.
template <class F>
std::set<std::string> read_attributes(Cursor& cur, std::string_view owner, F&& handle,
                                      std::initializer_list<std::string_view> repeatable = {}) {
  std::set<std::string> seen;
  for (;;) {
    cur.skip_blanks();
    if (cur.at_line_end() || cur.peek() == '#') break;
    const auto at = cur.position();
    const std::string key = cur.identifier("attribute name");
    const bool repeats =
        std::find(repeatable.begin(), repeatable.end(), key) != repeatable.end();
    if (!seen.insert(key).second && !repeats) {
      throw Error(ErrorCode::syntax, "attribute '" + key + "' given twice", key, at);
    }
    cur.expect('=', "'=' after attribute name");
    if (!handle(key)) {
      throw Error(ErrorCode::syntax,
                  "unknown attribute '" + key + "' for " + std::string(owner), key, at);
    }
  }
  return seen;
}

void require(const std::set<std::string>& seen, std::string_view key, std::string_view owner,
             const SourcePos& pos) {
  if (!seen.count(std::string(key))) {
    throw Error(ErrorCode::syntax, std::string(owner) + " lacks " + std::string(key) + "=", {},
                pos);
  }
}

std::vector<Region> read_regions(Cursor& cur) {
  std::vector<Region> out;
  cur.expect('[');
  cur.skip_blanks_and_comments();
  while (!cur.accept(']')) {
    Region r = detail::read_region(cur);
    cur.skip_blanks();
    if (cur.starts_with("expandable") && !Cursor::ident_char(cur.peek(10)) &&
        cur.peek(10) != '-') {
      cur.expect("expandable");
      r.expandable = true;
    }
    out.push_back(std::move(r));
    cur.skip_blanks_and_comments();
  }
  return out;
}

Constraint read_constraint(Cursor& cur) {
  Constraint c;
  c.negatable = false;
  cur.skip_blanks();
  c.id = cur.identifier("constraint id");
  cur.skip_blanks();
  if (cur.starts_with("negatable")) {
    cur.expect("negatable");
    c.negatable = true;
    cur.skip_blanks();
  }
  c.name = cur.quoted("constraint name");
  read_attributes(cur, "constraint", [&](const std::string& key) {
    if (key != "statement") return false;
    c.statement = cur.quoted("statement text");
    return true;
  });
  return c;
}

Mark read_mark(Cursor& cur) {
  Mark m;
  cur.skip_blanks();
  m.id = cur.identifier("mark id");
  cur.skip_blanks();
  const auto at = cur.position();
  const auto polarity = parse_polarity(cur.identifier("polarity"));
  if (!polarity) throw Error(ErrorCode::syntax, "expected positive or negative", {}, at);
  m.polarity = *polarity;
  cur.skip_blanks();
  m.printable = cur.identifier("mark shape");
  return m;
}

Radical read_radical(Cursor& cur, const SourcePos& pos) {
  Radical r;
  cur.skip_blanks();
  r.id = cur.identifier("radical id");
  cur.skip_blanks();
  if (cur.at_quoted()) r.name = cur.quoted();
  const auto seen = read_attributes(cur, "radical", [&](const std::string& key) {
    if (key == "family") {
      const auto at = cur.position();
      const auto f = parse_family(cur.identifier("family"));
      if (!f) throw Error(ErrorCode::syntax, "expected structure, topological or other", {}, at);
      r.family = *f;
    } else if (key == "table1") {
      r.table1_key = cur.word("table key");
    } else if (key == "base") {
      r.base = cur.identifier("base radical id");
    } else if (key == "adds") {
      r.adds = detail::read_literal_list(cur);
    } else if (key == "strokes") {
      r.strokes = detail::read_stroke_list(cur);
    } else if (key == "regions") {
      r.schema.regions = read_regions(cur);
    } else if (key == "limitfile") {
      r.limit_file = cur.word("stroke group");
    } else {
      return false;
    }
    return true;
  });
  require(seen, "family", "radical '" + r.id + "'", pos);
  require(seen, "strokes", "radical '" + r.id + "'", pos);
  require(seen, "regions", "radical '" + r.id + "'", pos);
  return r;
}

DerivationRule read_rule(Cursor& cur, const SourcePos& pos) {
  DerivationRule rule;
  cur.skip_blanks();
  rule.id = cur.identifier("rule id");
  cur.skip_blanks();
  if (cur.at_quoted()) rule.name = cur.quoted();
  const auto seen = read_attributes(cur, "rule", [&](const std::string& key) {
    if (key == "from") {
      const std::string word = cur.identifier("radical id or family");
      if (auto f = parse_family(word)) {
        rule.source.kind = RuleSource::Kind::family;
        rule.source.family = *f;
      } else {
        rule.source.kind = RuleSource::Kind::radical;
        rule.source.radical = word;
      }
    } else if (key == "requires") {
      rule.requires_literals = detail::read_literal_list(cur);
    } else if (key == "edits") {
      rule.edits = detail::read_edit_list(cur);
    } else if (key == "adds") {
      rule.adds = detail::read_literal_list(cur);
    } else if (key == "concept") {
      rule.target_concept = cur.identifier("concept id");
    } else {
      return false;
    }
    return true;
  });
  require(seen, "from", "rule '" + rule.id + "'", pos);
  return rule;
}

Concept read_concept(Cursor& cur, const SourcePos& pos) {
  Concept c;
  cur.skip_blanks();
  c.id = cur.identifier("concept id");
  cur.skip_blanks();
  c.name = cur.quoted("concept name");
  const auto seen = read_attributes(
      cur, "concept",
      [&](const std::string& key) {
        if (key == "area") {
          c.area = cur.word("area tag");
        } else if (key == "crypto") {
          c.cryptomorphism_group = cur.identifier("cryptomorphism group");
        } else if (key == "alias") {
          c.aliases.push_back(cur.quoted("alias"));
        } else {
          return false;
        }
        return true;
      },
      {"alias"});
  require(seen, "area", "concept '" + c.id + "'", pos);
  return c;
}

Binding read_binding(Cursor& cur) {
  Binding b;
  cur.skip_blanks();
  b.glyph = detail::read_glyph(cur);
  cur.skip_blanks();
  cur.expect("->", "'->' between glyph and concept");
  cur.skip_blanks();
  b.concept_id = cur.identifier("concept id");
  cur.skip_blanks();
  if (cur.starts_with("precedence")) {
    cur.expect("precedence");
    b.precedence = true;
  }
  return b;
}

Expression read_expr_statement(Cursor& cur) {
  cur.skip_blanks();
  const auto at = cur.position();
  const std::string text = cur.quoted("quoted expression");
  Cursor inner(text, at.path, at.line, at.column + 1);
  Expression e = detail::read_expression(inner);
  inner.skip_blanks(true);
  if (!inner.at_end()) inner.fail_expected("end of expression");
  return e;
}

std::string join_literals(const std::vector<Literal>& lits) {
  std::string out = "[";
  for (std::size_t i = 0; i < lits.size(); ++i) out += (i ? " " : "") + format_literal(lits[i]);
  return out + "]";
}

std::string print(const Constraint& c) {
  std::string out = "constraint " + c.id;
  if (c.negatable) out += " negatable";
  out += " " + detail::escape_quoted(c.name);
  if (!c.statement.empty()) out += " statement=" + detail::escape_quoted(c.statement);
  return out;
}

std::string print(const Mark& m) {
  return "mark " + m.id + " " + std::string(to_string(m.polarity)) + " " + m.printable;
}

std::string print(const Radical& r) {
  std::string out = "radical " + r.id;
  if (!r.name.empty()) out += " " + detail::escape_quoted(r.name);
  out += " family=" + std::string(to_string(r.family));
  if (r.table1_key) out += " table1=" + *r.table1_key;
  if (r.base) out += " base=" + *r.base;
  if (!r.adds.empty()) out += " adds=" + join_literals(r.adds);
  out += " strokes=[";
  for (std::size_t i = 0; i < r.strokes.size(); ++i) {
    out += (i ? " " : "") + format_stroke(r.strokes[i]);
  }
  out += "] regions=[";
  for (std::size_t i = 0; i < r.schema.regions.size(); ++i) {
    out += (i ? " " : "") + format_region(r.schema.regions[i]);
  }
  out += "]";
  if (r.limit_file) out += " limitfile=" + *r.limit_file;
  return out;
}

std::string print(const DerivationRule& rule) {
  std::string out = "rule " + rule.id;
  if (!rule.name.empty()) out += " " + detail::escape_quoted(rule.name);
  out += " from=";
  out += rule.source.kind == RuleSource::Kind::family ? std::string(to_string(rule.source.family))
                                                      : rule.source.radical;
  if (!rule.requires_literals.empty()) out += " requires=" + join_literals(rule.requires_literals);
  out += " edits=[";
  for (std::size_t i = 0; i < rule.edits.size(); ++i) {
    out += (i ? " " : "") + format_edit(rule.edits[i]);
  }
  out += "] adds=" + join_literals(rule.adds);
  if (rule.target_concept) out += " concept=" + *rule.target_concept;
  return out;
}

std::string print(const Concept& c) {
  std::string out = "concept " + c.id + " " + detail::escape_quoted(c.name) + " area=" + c.area;
  if (c.cryptomorphism_group) out += " crypto=" + *c.cryptomorphism_group;
  for (const auto& a : c.aliases) out += " alias=" + detail::escape_quoted(a);
  return out;
}

std::string print(const Binding& b) {
  std::string out = "bind " + format_glyph(b.glyph) + " -> " + b.concept_id;
  if (b.precedence) out += " precedence";
  return out;
}

std::string print(const Expression& e) {
  return "expr " + detail::escape_quoted(format_expression(e));
}

}  // namespace

bool Document::operator==(const Document& other) const {
  if (statements.size() != other.statements.size()) return false;
  for (std::size_t i = 0; i < statements.size(); ++i) {
    if (!(statements[i].node == other.statements[i].node)) return false;
  }
  return true;
}

Document parse_document(std::string_view text, std::string path) {
  Document doc;
  Cursor cur(text, path);
  std::map<std::pair<std::string_view, std::string>, SourcePos> declared;
  for (;;) {
    cur.skip_blanks_and_comments();
    if (cur.at_end()) break;
    const SourcePos pos = cur.position();
    const std::string keyword = cur.identifier("declaration keyword");
    Statement st{Constraint{}, pos};
    if (keyword == "constraint") {
      st.node = read_constraint(cur);
    } else if (keyword == "mark") {
      st.node = read_mark(cur);
    } else if (keyword == "radical") {
      st.node = read_radical(cur, pos);
    } else if (keyword == "rule") {
      st.node = read_rule(cur, pos);
    } else if (keyword == "concept") {
      st.node = read_concept(cur, pos);
    } else if (keyword == "bind") {
      st.node = read_binding(cur);
    } else if (keyword == "expr") {
      st.node = read_expr_statement(cur);
    } else {
      throw Error(ErrorCode::syntax,
                  "unknown declaration '" + keyword +
                      "' (expected constraint, mark, radical, rule, concept, bind or expr)",
                  keyword, pos);
    }
    end_statement(cur);
    if (const std::string* id = id_of(st.node)) {
      const auto kind = kind_of(st.node);
      auto [it, fresh] = declared.emplace(std::pair{kind, *id}, pos);
      if (!fresh) {
        throw Error(ErrorCode::duplicate_id,
                    "duplicate " + std::string(kind) + " '" + *id + "' (first declared at " +
                        to_string(it->second) + ")",
                    *id, pos);
      }
    }
    doc.statements.push_back(std::move(st));
  }
  return doc;
}

std::string print_document(const Document& doc) {
  std::string out;
  for (const auto& st : doc.statements) {
    out += std::visit([](const auto& node) { return print(node); }, st.node);
    out += '\n';
  }
  return out;
}

DefinitionSet to_definitions(const Document& doc) {
  DefinitionSet defs;
  for (const auto& st : doc.statements) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, Constraint>) defs.constraints.push_back(node);
          else if constexpr (std::is_same_v<T, Mark>) defs.marks.push_back(node);
          else if constexpr (std::is_same_v<T, Radical>) defs.radicals.push_back(node);
          else if constexpr (std::is_same_v<T, DerivationRule>) defs.rules.push_back(node);
          else if constexpr (std::is_same_v<T, Concept>) defs.concepts.push_back(node);
          else if constexpr (std::is_same_v<T, Binding>) defs.bindings.push_back(node);
        },
        st.node);
  }
  return defs;
}

Document to_document(const DefinitionSet& defs) {
  Document doc;
  auto add = [&](const auto& items) {
    for (const auto& item : items) doc.statements.push_back({item, {}});
  };
  add(defs.constraints);
  add(defs.marks);
  add(defs.radicals);
  add(defs.rules);
  add(defs.concepts);
  add(defs.bindings);
  return doc;
}

std::vector<Expression> expressions(const Document& doc) {
  std::vector<Expression> out;
  for (const auto& st : doc.statements) {
    if (const auto* e = std::get_if<Expression>(&st.node)) out.push_back(*e);
  }
  return out;
}

Registry compile(const Document& doc, const Registry* base, BuildOptions options) {
  DefinitionSet defs = base ? base->definitions() : DefinitionSet{};
  const std::map<std::string_view, std::size_t> offsets{
      {"constraint", defs.constraints.size()}, {"mark", defs.marks.size()},
      {"radical", defs.radicals.size()},       {"rule", defs.rules.size()},
      {"concept", defs.concepts.size()},       {"binding", defs.bindings.size()}};
  DefinitionSet own = to_definitions(doc);
  auto append = [](auto& into, auto& from) {
    into.insert(into.end(), std::make_move_iterator(from.begin()),
                std::make_move_iterator(from.end()));
  };
  append(defs.constraints, own.constraints);
  append(defs.marks, own.marks);
  append(defs.radicals, own.radicals);
  append(defs.rules, own.rules);
  append(defs.concepts, own.concepts);
  append(defs.bindings, own.bindings);

  Registry registry;
  try {
    registry = Registry::build(std::move(defs), options);
  } catch (const Error& e) {
    if (!e.origin()) throw;
    const auto offset = offsets.find(e.origin()->kind);
    if (offset == offsets.end() || e.origin()->index < offset->second) throw;
    std::size_t nth = e.origin()->index - offset->second;
    for (const auto& st : doc.statements) {
      if (kind_of(st.node) != e.origin()->kind) continue;
      if (nth-- == 0) throw e.at(st.pos);
    }
    throw;
  }
  for (const auto& st : doc.statements) {
    const auto* expr = std::get_if<Expression>(&st.node);
    if (!expr) continue;
    try {
      check_expression(*expr, registry);
    } catch (const Error& e) {
      throw e.at(st.pos);
    }
  }
  return registry;
}

}  // namespace vtt
