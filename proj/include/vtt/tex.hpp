#pragma once

// TeX macro package: one macro per glyph, each pulling in the glyph's SVG
// artwork, plus an index mapping macro names to concept names.

#include <string>
#include <vector>

#include "vtt/registry.hpp"

namespace vtt {

struct TexArtwork {
  std::string file;  // "<macro>.svg"
  std::string svg;
};

struct TexPackage {
  std::string sty;
  std::string index;  // "<macro>\t<concept name>" per line after a header
  std::vector<TexArtwork> artwork;
};

/// "\vtt" followed by the CamelCased alphanumeric runs of the canonical id;
/// digits are spelled out so the name is a valid control word.
std::string tex_macro_name(const std::string& canonical_id);

/// Canonical ids of every distinct bound glyph, in binding order.
std::vector<std::string> default_tex_selection(const Registry& registry);

/// `selection` holds glyph literals. Throws Error(name_collision) naming both
/// ids when two glyphs sanitize to one macro name.
TexPackage emit_tex(const Registry& registry, const std::vector<std::string>& selection,
                    double size = 100, const std::string& package = "vtt");

}  // namespace vtt
