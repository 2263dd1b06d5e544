#pragma once

#include "vtt/model.hpp"
#include "vtt/registry.hpp"

namespace vtt::detail {

/// Validates `glyph` against the registry and returns its literal
/// conjunction. Shared by validate_glyph and constraint_of.
LiteralConjunction analyze_glyph(const Glyph& glyph, const Registry& registry);

}  // namespace vtt::detail
