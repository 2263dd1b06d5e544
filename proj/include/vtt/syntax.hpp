#pragma once

// Text forms of the small syntactic pieces shared by the definition language,
// the interchange format, canonical glyph ids and the HTTP API.
//
//   literal        compact+ | compact-
//   stroke         line(x,y x,y ...) | dot(x,y[,r]) | circle(x,y,r)
//                  | arc(x,y,r,start,end), then optional :heavy and #group
//   edit           extend-stroke(group,dx,dy) | add-stroke(stroke)
//                  | replace-strokes(group; stroke ...) | add-center-circle(r)
//                  | cross-transform(group)
//   glyph literal  radical( region=mark|_|glyph ... ; rules: id ...
//                           ; scale: region*factor ... ; abbreviated )

#include <string>
#include <string_view>

#include "vtt/model.hpp"

namespace vtt {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

std::string format_literal(const Literal& lit);
std::string format_stroke(const Stroke& stroke);
std::string format_edit(const StrokeEdit& edit);
std::string format_region(const Region& region);
/// Glyph literal in storage order; on a canonical glyph this is its id.
std::string format_glyph(const Glyph& glyph);

// Each parser consumes the whole input (surrounding blanks allowed) and
// throws Error(syntax) with a 1-based column in `position()` otherwise.
Literal parse_literal(std::string_view text);
Stroke parse_stroke(std::string_view text);
StrokeEdit parse_edit(std::string_view text);
Glyph parse_glyph(std::string_view text);

}  // namespace vtt
