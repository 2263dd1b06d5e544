#pragma once

// Expression notation: glyphs standing alone, set above/below arrows, or
// around relation symbols, and two sides joined by the duality symbol.
//
//   expression := term ( ("≈" | "~=") term )?
//   term       := "arrow" ("[" style "]")? "(" ref ( "/" ref )? ")"
//               | "rel" "(" ref symbol ref ( "/" ref )? ")"
//               | ref
//   ref        := id | glyph-literal
//
// An id resolves to a concept's glyph (the precedence binding if any) or,
// failing that, to the bare glyph of a radical.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "vtt/model.hpp"
#include "vtt/registry.hpp"

namespace vtt {

struct GlyphRef {
  std::string id;
  std::optional<Glyph> literal;  // inline glyph; `id` is unused then

  bool operator==(const GlyphRef&) const = default;
};

enum class ArrowStyle { plain, dual };

std::string_view to_string(ArrowStyle style);

struct ArrowTerm {
  GlyphRef objects;
  std::optional<GlyphRef> morphisms;
  ArrowStyle style = ArrowStyle::plain;

  bool operator==(const ArrowTerm&) const = default;
};

struct RelationTerm {
  GlyphRef left;
  std::string symbol;
  GlyphRef right;
  std::optional<GlyphRef> annotation;

  bool operator==(const RelationTerm&) const = default;
};

using Term = std::variant<GlyphRef, ArrowTerm, RelationTerm>;

enum class ExpressionKind { standalone, arrow, relation, duality };

struct Expression {
  Term left;
  std::optional<Term> right;  // set for a duality

  ExpressionKind kind() const;
  bool operator==(const Expression&) const = default;
};

/// Throws Error(syntax) with the column of the offending character.
Expression parse_expression(std::string_view text);
std::string format_expression(const Expression& expr);
std::string format_ref(const GlyphRef& ref);

/// Throws Error(unresolved_reference) for an id that is neither a concept
/// nor a radical, and glyph validation errors for inline literals.
Glyph resolve_ref(const GlyphRef& ref, const Registry& registry);

/// Resolves every reference in the expression.
void check_expression(const Expression& expr, const Registry& registry);

namespace detail {
class Cursor;
Expression read_expression(Cursor& cur);
}  // namespace detail

}  // namespace vtt
