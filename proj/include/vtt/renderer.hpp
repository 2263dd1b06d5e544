#pragma once

// Deterministic layout of glyphs and expressions into vector geometry, and
// SVG serialization of that geometry.

#include <string>
#include <vector>

#include "vtt/expression.hpp"
#include "vtt/model.hpp"
#include "vtt/registry.hpp"

namespace vtt {

inline constexpr double kRegularWidth = 0.035;
inline constexpr double kHeavyWidth = 0.06;
inline constexpr double kDefaultSize = 100;

/// One drawn stroke in viewbox coordinates. Dots are filled circles.
struct PlacedStroke {
  StrokeKind kind = StrokeKind::line;
  std::vector<Point> points;
  double radius = 0;
  double start_deg = 0;
  double end_deg = 0;
  double width = 0;

  bool operator==(const PlacedStroke&) const = default;
};

struct PlacedMark {
  std::string shape;  // one of kMarkShapes
  Point center;
  double radius = 0;
  double width = 0;   // outline width for the open shapes
  std::string region;

  bool operator==(const PlacedMark&) const = default;
};

/// Frame of an embedded sub-glyph (not drawn).
struct PlacedFrame {
  double x = 0, y = 0, side = 0;
  int depth = 1;
  std::string region;

  bool operator==(const PlacedFrame&) const = default;
};

struct PlacedLabel {
  Point at;  // baseline centre
  double font_size = 0;
  std::string text;

  bool operator==(const PlacedLabel&) const = default;
};

struct Geometry {
  double width = 0;
  double height = 0;
  std::vector<PlacedStroke> strokes;
  std::vector<PlacedMark> marks;
  std::vector<PlacedFrame> frames;
  std::vector<PlacedLabel> labels;

  bool operator==(const Geometry&) const = default;
};

/// Viewbox is size x size. Coordinates are quantized to 3 decimals after
/// scaling. Throws Error(layout) for geometry escaping the viewbox and the
/// composer's errors for invalid glyphs.
Geometry layout(const Glyph& glyph, const Registry& registry, double size = kDefaultSize);

/// Arrow terms put the objects glyph above the shaft and the morphism glyph
/// below it; relations put the annotation glyph under the symbol; a duality
/// joins its sides with "≈". Throws Error(unresolved_reference).
Geometry render_expression(const Expression& expr, const Registry& registry,
                           double size = kDefaultSize);

/// Standalone SVG 1.1 document with fixed element and attribute order.
std::string to_svg(const Geometry& geometry);

std::string render_svg(const Glyph& glyph, const Registry& registry, double size = kDefaultSize);

/// Fixed 3-decimal text with trailing zeros removed ("12.5", "3", "0.035").
std::string format_coordinate(double value);

}  // namespace vtt
