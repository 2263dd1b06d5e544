#pragma once

// Line-oriented definition language. One declaration per line; lists in
// brackets and parentheses may span lines; '#' starts a comment.
//
//   constraint <id> negatable? "<name>" statement="<text>"?
//   mark <id> positive|negative <shape>
//   radical <id> "<name>"? family=<family> table1=<key>? base=<radical>?
//           adds=[<lit> ...]? strokes=[<stroke> ...]
//           regions=[<name>:<constraint>@<x>,<y>:<w>x<h> expandable? ...]
//           limitfile=<group>?
//   rule <id> "<name>"? from=<radical|family> requires=[<lit> ...]?
//        edits=[<edit> ...] adds=[<lit> ...] concept=<concept>?
//   concept <id> "<name>" area=<tag> crypto=<group>? alias="<text>"*
//   bind <glyph-literal> -> <concept> precedence?
//   expr "<expression>"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vtt/error.hpp"
#include "vtt/expression.hpp"
#include "vtt/model.hpp"
#include "vtt/registry.hpp"

namespace vtt {

using Declaration =
    std::variant<Constraint, Mark, Radical, DerivationRule, Concept, Binding, Expression>;

struct Statement {
  Declaration node;
  SourcePos pos;
};

/// Parsed document in source order. Equality ignores source positions.
struct Document {
  std::vector<Statement> statements;

  bool operator==(const Document& other) const;
};

/// Throws Error(syntax) or Error(duplicate_id) for a second declaration of
/// the same kind and id, positioned at the offending token.
Document parse_document(std::string_view text, std::string path = {});

/// Canonical text; parse_document(print_document(d)) == d.
std::string print_document(const Document& doc);

DefinitionSet to_definitions(const Document& doc);
/// Declarations of `defs` in kind order (constraints, marks, radicals,
/// rules, concepts, bindings).
Document to_document(const DefinitionSet& defs);

std::vector<Expression> expressions(const Document& doc);

/// Builds a registry from the document, on top of `base` when given.
/// Construction errors are re-anchored at the declaration they concern;
/// expression statements must resolve against the result.
Registry compile(const Document& doc, const Registry* base = nullptr,
                 BuildOptions options = {});

}  // namespace vtt
