#pragma once

// Versioned JSON interchange document:
//   {version, constraints, marks, radicals, rules, concepts, bindings}
// Strokes, edits and literals use their definition-language text; glyphs
// are canonical glyph literals.

#include <string>
#include <string_view>

#include "vtt/registry.hpp"

namespace vtt {

inline constexpr int kInterchangeVersion = 1;

std::string export_registry(const Registry& registry);
std::string export_definitions(const DefinitionSet& defs);

/// Throws Error(schema_violation) with a JSON path such as
/// "$.radicals[2].regions[0].width", or Error(version_mismatch).
DefinitionSet import_definitions(std::string_view document);
Registry import_registry(std::string_view document, BuildOptions options = {});

}  // namespace vtt
