#include <algorithm>
#include <cmath>

#include "vtt/composer.hpp"
#include "vtt/error.hpp"
#include "vtt/renderer.hpp"

namespace vtt {
namespace {

// Maps unit-box coordinates of one glyph body into the viewbox.
struct Frame {
  double ox = 0, oy = 0, scale = 1;
  Point map(const Point& p) const { return {ox + p.x * scale, oy + p.y * scale}; }
};

constexpr double kMarkRadius = 0.3;  // fraction of the region's short side
constexpr double kMarkWidth = 0.5 * kRegularWidth;

void place_glyph(Geometry& geo, const Glyph& glyph, const Registry& registry, const Frame& f,
                 int depth) {
  for (const auto& s : glyph_strokes(glyph, registry)) {
    PlacedStroke p;
    p.kind = s.kind;
    for (const auto& pt : s.points) p.points.push_back(f.map(pt));
    p.radius = s.radius * f.scale;
    p.start_deg = s.start_deg;
    p.end_deg = s.end_deg;
    p.width = (s.weight == Weight::heavy ? kHeavyWidth : kRegularWidth) * f.scale;
    geo.strokes.push_back(std::move(p));
  }
  const Radical& radical = registry.radical(glyph.radical);
  for (const auto& region : radical.schema.regions) {
    const Assignment* a = glyph.find(region.name);
    if (!a || is_absent(a->fill)) continue;
    const Rect rect = region_rect(region, glyph.scale_of(region.name));
    const double w = rect.x1 - rect.x0, h = rect.y1 - rect.y0;
    if (const auto* mark_id = mark_of(a->fill)) {
      PlacedMark m;
      m.shape = registry.mark(*mark_id).printable;
      m.center = f.map(region.anchor);
      m.radius = kMarkRadius * std::min(w, h) * f.scale;
      m.width = kMarkWidth * f.scale;
      m.region = region.name;
      geo.marks.push_back(std::move(m));
    } else if (const Glyph* sub = embedded_of(a->fill)) {
      const double side = std::min(w, h);
      const Point corner = f.map({region.anchor.x - side / 2, region.anchor.y - side / 2});
      geo.frames.push_back({corner.x, corner.y, side * f.scale, depth + 1, region.name});
      place_glyph(geo, *sub, registry, Frame{corner.x, corner.y, side * f.scale}, depth + 1);
    }
  }
}

double quantize(double v) {
  const double q = std::round(v * 1000.0) / 1000.0;
  return q == 0 ? 0.0 : q;  // no negative zero
}

void quantize(Point& p) {
  p.x = quantize(p.x);
  p.y = quantize(p.y);
}

void finish(Geometry& geo) {
  geo.width = quantize(geo.width);
  geo.height = quantize(geo.height);
  for (auto& s : geo.strokes) {
    for (auto& p : s.points) quantize(p);
    s.radius = quantize(s.radius);
    s.width = quantize(s.width);
  }
  for (auto& m : geo.marks) {
    quantize(m.center);
    m.radius = quantize(m.radius);
    m.width = quantize(m.width);
  }
  for (auto& fr : geo.frames) {
    fr.x = quantize(fr.x);
    fr.y = quantize(fr.y);
    fr.side = quantize(fr.side);
  }
  for (auto& l : geo.labels) {
    quantize(l.at);
    l.font_size = quantize(l.font_size);
  }

  auto inside = [&](const Point& p, double r) {
    constexpr double eps = 1e-3;  // quantization slack
    return p.x - r >= -eps && p.y - r >= -eps && p.x + r <= geo.width + eps &&
           p.y + r <= geo.height + eps;
  };
  for (const auto& s : geo.strokes) {
    bool ok = true;
    if (s.kind == StrokeKind::arc) {
      const Rect r = arc_bounds(s.points.front(), s.radius, s.start_deg, s.end_deg);
      ok = inside({r.x0, r.y0}, 0) && inside({r.x1, r.y1}, 0);
    } else {
      for (const auto& p : s.points) ok = ok && inside(p, s.kind == StrokeKind::line ? 0 : s.radius);
    }
    if (!ok) throw Error(ErrorCode::layout, "stroke leaves the viewbox");
  }
  for (const auto& m : geo.marks) {
    if (!inside(m.center, m.radius)) {
      throw Error(ErrorCode::layout, "mark in region '" + m.region + "' leaves the viewbox",
                  m.region);
    }
  }
}

void check_size(double size) {
  if (!(size > 0) || !std::isfinite(size)) {
    throw Error(ErrorCode::layout, "render size must be a positive number");
  }
}

// Expression layout, in multiples of the glyph size G.
constexpr double kTermHeight = 1.6;

struct ExpressionLayout {
  Geometry& geo;
  const Registry& registry;
  double g;

  void glyph_box(const GlyphRef& ref, double x, double y, double side) {
    const Glyph glyph = resolve_ref(ref, registry);
    place_glyph(geo, glyph, registry, Frame{x, y, side}, 0);
  }

  void line(Point a, Point b) {
    PlacedStroke s;
    s.kind = StrokeKind::line;
    s.points = {a, b};
    s.width = kRegularWidth * g;
    geo.strokes.push_back(std::move(s));
  }

  void arrow_head(Point tip, double dir) {
    line({tip.x - dir * 0.1 * g, tip.y - 0.08 * g}, tip);
    line({tip.x - dir * 0.1 * g, tip.y + 0.08 * g}, tip);
  }

  double term(const Term& t, double x) {
    if (const auto* ref = std::get_if<GlyphRef>(&t)) {
      glyph_box(*ref, x + 0.05 * g, 0.35 * g, 0.9 * g);
      return 1.0 * g;
    }
    if (const auto* arrow = std::get_if<ArrowTerm>(&t)) {
      glyph_box(arrow->objects, x + 0.45 * g, 0.05 * g, 0.6 * g);
      const Point tail{x + 0.1 * g, 0.8 * g}, tip{x + 1.4 * g, 0.8 * g};
      line(tail, tip);
      arrow_head(tip, 1);
      if (arrow->style == ArrowStyle::dual) arrow_head(tail, -1);
      if (arrow->morphisms) glyph_box(*arrow->morphisms, x + 0.45 * g, 0.95 * g, 0.6 * g);
      return 1.5 * g;
    }
    const auto& rel = std::get<RelationTerm>(t);
    glyph_box(rel.left, x + 0.05 * g, 0.05 * g, 0.9 * g);
    geo.labels.push_back({{x + 1.25 * g, 0.65 * g}, 0.5 * g, rel.symbol});
    glyph_box(rel.right, x + 1.55 * g, 0.05 * g, 0.9 * g);
    if (rel.annotation) glyph_box(*rel.annotation, x + 1.0 * g, 1.05 * g, 0.5 * g);
    return 2.5 * g;
  }
};

}  // namespace

Geometry layout(const Glyph& glyph, const Registry& registry, double size) {
  check_size(size);
  validate_glyph(glyph, registry);
  Geometry geo;
  geo.width = geo.height = size;
  place_glyph(geo, glyph, registry, Frame{0, 0, size}, 0);
  finish(geo);
  return geo;
}

Geometry render_expression(const Expression& expr, const Registry& registry, double size) {
  check_size(size);
  if (expr.kind() == ExpressionKind::standalone) {
    return layout(resolve_ref(std::get<GlyphRef>(expr.left), registry), registry, size);
  }
  Geometry geo;
  ExpressionLayout el{geo, registry, size};
  double x = el.term(expr.left, 0);
  if (expr.right) {
    geo.labels.push_back({{x + 0.3 * size, 0.95 * size}, 0.5 * size, "≈"});
    x += 0.6 * size;
    x += el.term(*expr.right, x);
  }
  geo.width = x;
  geo.height = kTermHeight * size;
  finish(geo);
  return geo;
}

}  // namespace vtt
