#include <array>
#include <charconv>
#include <cmath>
#include <numbers>

#include "vtt/renderer.hpp"

namespace vtt {

std::string format_coordinate(double value) {
  value = std::round(value * 1000.0) / 1000.0;
  if (value == 0) value = 0;
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                 std::chars_format::fixed, 3);
  std::string out(buf.data(), end);
  while (out.back() == '0') out.pop_back();
  if (out.back() == '.') out.pop_back();
  return out;
}

namespace {

std::string escape_xml(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Writer {
  std::string out;

  Writer& raw(std::string_view s) {
    out += s;
    return *this;
  }
  Writer& attr(std::string_view name, double v) {
    out += ' ';
    out += name;
    out += "=\"" + format_coordinate(v) + '"';
    return *this;
  }
  Writer& attr(std::string_view name, std::string_view v) {
    out += ' ';
    out += name;
    out += "=\"" + escape_xml(v) + '"';
    return *this;
  }
};

Point on_circle(const Point& c, double r, double deg) {
  const double a = deg * std::numbers::pi / 180.0;
  return {c.x + r * std::cos(a), c.y + r * std::sin(a)};
}

std::string pair(const Point& p) { return format_coordinate(p.x) + "," + format_coordinate(p.y); }

void write_stroke(Writer& w, const PlacedStroke& s) {
  switch (s.kind) {
    case StrokeKind::line: {
      std::string pts;
      for (std::size_t i = 0; i < s.points.size(); ++i) pts += (i ? " " : "") + pair(s.points[i]);
      w.raw("<polyline").attr("points", pts).attr("stroke-width", s.width).raw("/>\n");
      break;
    }
    case StrokeKind::dot:
      w.raw("<circle").attr("cx", s.points[0].x).attr("cy", s.points[0].y).attr("r", s.radius)
          .attr("fill", "#000").attr("stroke", "none").raw("/>\n");
      break;
    case StrokeKind::circle:
      w.raw("<circle").attr("cx", s.points[0].x).attr("cy", s.points[0].y).attr("r", s.radius)
          .attr("stroke-width", s.width).raw("/>\n");
      break;
    case StrokeKind::arc: {
      double sweep = std::fmod(s.end_deg - s.start_deg, 360.0);
      if (sweep < 0) sweep += 360.0;
      if (sweep == 0) {
        w.raw("<circle").attr("cx", s.points[0].x).attr("cy", s.points[0].y).attr("r", s.radius)
            .attr("stroke-width", s.width).raw("/>\n");
        break;
      }
      const Point a = on_circle(s.points[0], s.radius, s.start_deg);
      const Point b = on_circle(s.points[0], s.radius, s.end_deg);
      const std::string d = "M" + format_coordinate(a.x) + " " + format_coordinate(a.y) + " A" +
                            format_coordinate(s.radius) + " " + format_coordinate(s.radius) +
                            " 0 " + (sweep > 180 ? "1" : "0") + " 1 " + format_coordinate(b.x) +
                            " " + format_coordinate(b.y);
      w.raw("<path").attr("d", d).attr("stroke-width", s.width).raw("/>\n");
      break;
    }
  }
}

void write_mark(Writer& w, const PlacedMark& m) {
  const double x = m.center.x, y = m.center.y, r = m.radius;
  w.raw("<g").attr("class", "mark").attr("data-region", m.region).raw(">");
  if (m.shape == "filled-dot") {
    w.raw("<circle").attr("cx", x).attr("cy", y).attr("r", r).attr("fill", "#000")
        .attr("stroke", "none").raw("/>");
  } else if (m.shape == "open-circle") {
    w.raw("<circle").attr("cx", x).attr("cy", y).attr("r", r - m.width / 2)
        .attr("stroke-width", m.width).raw("/>");
  } else if (m.shape == "filled-square" || m.shape == "open-square") {
    const double h = r * 0.85;
    w.raw("<rect").attr("x", x - h).attr("y", y - h).attr("width", 2 * h).attr("height", 2 * h);
    if (m.shape == "filled-square") {
      w.attr("fill", "#000").attr("stroke", "none");
    } else {
      w.attr("stroke-width", m.width);
    }
    w.raw("/>");
  } else if (m.shape == "cross") {
    const double h = r * 0.75;
    const std::string d = "M" + format_coordinate(x - h) + " " + format_coordinate(y - h) + " L" +
                          format_coordinate(x + h) + " " + format_coordinate(y + h) + " M" +
                          format_coordinate(x - h) + " " + format_coordinate(y + h) + " L" +
                          format_coordinate(x + h) + " " + format_coordinate(y - h);
    w.raw("<path").attr("d", d).attr("stroke-width", m.width).raw("/>");
  } else if (m.shape == "bar") {
    w.raw("<polyline").attr("points", pair({x - r, y}) + " " + pair({x + r, y}))
        .attr("stroke-width", m.width * 2).raw("/>");
  } else {  // triangle
    const std::string pts = pair({x, y - r}) + " " + pair({x + r * 0.866, y + r * 0.5}) + " " +
                            pair({x - r * 0.866, y + r * 0.5});
    w.raw("<polygon").attr("points", pts).attr("fill", "#000").attr("stroke", "none").raw("/>");
  }
  w.raw("</g>\n");
}

}  // namespace

std::string to_svg(const Geometry& geo) {
  Writer w;
  const std::string vb = "0 0 " + format_coordinate(geo.width) + " " + format_coordinate(geo.height);
  w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
  w.raw("<svg").attr("xmlns", "http://www.w3.org/2000/svg").attr("version", "1.1")
      .attr("width", geo.width).attr("height", geo.height).attr("viewBox", vb).raw(">\n");
  w.raw("<g").attr("fill", "none").attr("stroke", "#000").attr("stroke-linecap", "round")
      .attr("stroke-linejoin", "round").raw(">\n");
  for (const auto& s : geo.strokes) write_stroke(w, s);
  for (const auto& m : geo.marks) write_mark(w, m);
  for (const auto& f : geo.frames) {
    w.raw("<rect").attr("class", "frame").attr("data-region", f.region).attr("x", f.x)
        .attr("y", f.y).attr("width", f.side).attr("height", f.side).attr("stroke", "none")
        .raw("/>\n");
  }
  w.raw("</g>\n");
  for (const auto& l : geo.labels) {
    w.raw("<text").attr("x", l.at.x).attr("y", l.at.y).attr("font-size", l.font_size)
        .attr("text-anchor", "middle").attr("font-family", "serif").raw(">")
        .raw(escape_xml(l.text)).raw("</text>\n");
  }
  w.raw("</svg>\n");
  return std::move(w.out);
}

std::string render_svg(const Glyph& glyph, const Registry& registry, double size) {
  return to_svg(layout(glyph, registry, size));
}

}  // namespace vtt
