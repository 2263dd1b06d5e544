#include "vtt/expression.hpp"

#include "cursor.hpp"
#include "vtt/composer.hpp"
#include "vtt/error.hpp"
#include "vtt/syntax.hpp"

namespace vtt {

std::string_view to_string(ArrowStyle style) {
  return style == ArrowStyle::dual ? "dual" : "plain";
}

ExpressionKind Expression::kind() const {
  if (right) return ExpressionKind::duality;
  if (std::holds_alternative<ArrowTerm>(left)) return ExpressionKind::arrow;
  if (std::holds_alternative<RelationTerm>(left)) return ExpressionKind::relation;
  return ExpressionKind::standalone;
}

namespace detail {
namespace {

GlyphRef read_ref(Cursor& cur, std::string_view what) {
  if (!cur.at_identifier()) cur.fail_expected(what);
  std::string id = cur.identifier(what);
  if (cur.peek() == '(') return GlyphRef{{}, read_glyph_after_radical(cur, std::move(id))};
  return GlyphRef{std::move(id), std::nullopt};
}

bool symbol_char(char c) {
  return c != '\0' && c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '/' && c != '(' &&
         c != ')';
}

bool at_keyword(const Cursor& cur, std::string_view kw) {
  if (!cur.starts_with(kw)) return false;
  const char next = cur.peek(kw.size());
  return next == '(' || next == '[';
}

Term read_term(Cursor& cur) {
  if (at_keyword(cur, "arrow")) {
    cur.expect("arrow");
    ArrowTerm arrow;
    if (cur.accept('[')) {
      cur.skip_blanks();
      const std::string style = cur.identifier("arrow style");
      if (style == "dual") {
        arrow.style = ArrowStyle::dual;
      } else if (style != "plain") {
        cur.fail("unsupported arrow style '" + style + "' (expected plain or dual)");
      }
      cur.skip_blanks();
      cur.expect(']');
    }
    cur.expect('(');
    cur.skip_blanks(true);
    arrow.objects = read_ref(cur, "objects glyph above the arrow");
    cur.skip_blanks(true);
    if (cur.accept('/')) {
      cur.skip_blanks(true);
      arrow.morphisms = read_ref(cur, "morphism glyph below the arrow");
      cur.skip_blanks(true);
    }
    cur.expect(')');
    return arrow;
  }
  if (at_keyword(cur, "rel")) {
    cur.expect("rel");
    RelationTerm rel;
    cur.expect('(');
    cur.skip_blanks(true);
    rel.left = read_ref(cur, "left operand");
    cur.skip_blanks(true);
    while (symbol_char(cur.peek())) rel.symbol += cur.advance();
    if (rel.symbol.empty()) cur.fail_expected("relation symbol");
    cur.skip_blanks(true);
    rel.right = read_ref(cur, "right operand");
    cur.skip_blanks(true);
    if (cur.accept('/')) {
      cur.skip_blanks(true);
      rel.annotation = read_ref(cur, "annotation glyph below the relation");
      cur.skip_blanks(true);
    }
    cur.expect(')');
    return rel;
  }
  return read_ref(cur, "glyph reference, arrow(...) or rel(...)");
}

}  // namespace

Expression read_expression(Cursor& cur) {
  Expression expr;
  cur.skip_blanks(true);
  expr.left = read_term(cur);
  cur.skip_blanks(true);
  if (cur.accept("≈") || cur.accept("~=")) {
    cur.skip_blanks(true);
    expr.right = read_term(cur);
  }
  return expr;
}

}  // namespace detail

Expression parse_expression(std::string_view text) {
  detail::Cursor cur(text);
  Expression expr = detail::read_expression(cur);
  cur.skip_blanks(true);
  if (!cur.at_end()) cur.fail_expected("end of expression");
  return expr;
}

std::string format_ref(const GlyphRef& ref) {
  return ref.literal ? format_glyph(*ref.literal) : ref.id;
}

namespace {

std::string format_term(const Term& term) {
  if (const auto* ref = std::get_if<GlyphRef>(&term)) return format_ref(*ref);
  if (const auto* arrow = std::get_if<ArrowTerm>(&term)) {
    std::string out = "arrow";
    if (arrow->style != ArrowStyle::plain) out += "[" + std::string(to_string(arrow->style)) + "]";
    out += "(" + format_ref(arrow->objects);
    if (arrow->morphisms) out += " / " + format_ref(*arrow->morphisms);
    return out + ")";
  }
  const auto& rel = std::get<RelationTerm>(term);
  std::string out = "rel(" + format_ref(rel.left) + " " + rel.symbol + " " + format_ref(rel.right);
  if (rel.annotation) out += " / " + format_ref(*rel.annotation);
  return out + ")";
}

template <class F>
void for_each_ref(const Term& term, F&& f) {
  if (const auto* ref = std::get_if<GlyphRef>(&term)) {
    f(*ref);
  } else if (const auto* arrow = std::get_if<ArrowTerm>(&term)) {
    f(arrow->objects);
    if (arrow->morphisms) f(*arrow->morphisms);
  } else {
    const auto& rel = std::get<RelationTerm>(term);
    f(rel.left);
    f(rel.right);
    if (rel.annotation) f(*rel.annotation);
  }
}

}  // namespace

std::string format_expression(const Expression& expr) {
  std::string out = format_term(expr.left);
  if (expr.right) out += " ≈ " + format_term(*expr.right);
  return out;
}

Glyph resolve_ref(const GlyphRef& ref, const Registry& registry) {
  if (ref.literal) {
    validate_glyph(*ref.literal, registry);
    return canonicalize(*ref.literal, registry);
  }
  if (registry.find_concept(ref.id)) {
    const auto hits = registry.bindings_of(ref.id);
    if (!hits.empty()) {
      for (auto i : hits) {
        if (registry.bindings()[i].precedence) return registry.bindings()[i].glyph;
      }
      return registry.bindings()[hits.front()].glyph;
    }
  }
  if (registry.find_radical(ref.id)) return Glyph::bare(ref.id);
  throw Error(ErrorCode::unresolved_reference,
              "'" + ref.id + "' names no bound concept and no radical", ref.id);
}

void check_expression(const Expression& expr, const Registry& registry) {
  auto check = [&](const GlyphRef& ref) { (void)resolve_ref(ref, registry); };
  for_each_ref(expr.left, check);
  if (expr.right) for_each_ref(*expr.right, check);
}

}  // namespace vtt
