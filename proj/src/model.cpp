#include "vtt/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vtt/error.hpp"

namespace vtt {

std::string_view to_string(Polarity p) {
  return p == Polarity::positive ? "positive" : "negative";
}

std::string_view to_string(Family f) {
  switch (f) {
    case Family::structure: return "structure";
    case Family::topological: return "topological";
    case Family::other: return "other";
  }
  return "other";
}

std::optional<Polarity> parse_polarity(std::string_view text) {
  if (text == "positive") return Polarity::positive;
  if (text == "negative") return Polarity::negative;
  return std::nullopt;
}

std::optional<Family> parse_family(std::string_view text) {
  if (text == "structure") return Family::structure;
  if (text == "topological") return Family::topological;
  if (text == "other") return Family::other;
  return std::nullopt;
}

std::string_view to_string(EditKind kind) {
  switch (kind) {
    case EditKind::extend_stroke: return "extend-stroke";
    case EditKind::add_stroke: return "add-stroke";
    case EditKind::replace_strokes: return "replace-strokes";
    case EditKind::add_center_circle: return "add-center-circle";
    case EditKind::cross_transform: return "cross-transform";
  }
  return "add-stroke";
}

bool is_known_mark_shape(std::string_view shape) {
  return std::find(std::begin(kMarkShapes), std::end(kMarkShapes), shape) !=
         std::end(kMarkShapes);
}

// ---------------------------------------------------------------------------

std::string to_string(const Literal& lit) {
  return lit.constraint + (lit.sign == Polarity::positive ? "+" : "-");
}

LiteralConjunction::LiteralConjunction(std::vector<Literal> literals) {
  for (const auto& lit : literals) insert(lit);
}

void LiteralConjunction::insert(const Literal& lit) {
  auto it = std::lower_bound(
      literals_.begin(), literals_.end(), lit.constraint,
      [](const Literal& l, const std::string& c) { return l.constraint < c; });
  if (it != literals_.end() && it->constraint == lit.constraint) {
    if (it->sign != lit.sign) {
      throw Error(ErrorCode::literal_conflict,
                  "constraint '" + lit.constraint + "' asserted with both signs",
                  lit.constraint);
    }
    return;
  }
  literals_.insert(it, lit);
}

void LiteralConjunction::merge(const LiteralConjunction& other) {
  for (const auto& lit : other) insert(lit);
}

bool LiteralConjunction::contains(const Literal& lit) const {
  return std::binary_search(literals_.begin(), literals_.end(), lit);
}

bool LiteralConjunction::includes(const LiteralConjunction& other) const {
  return std::includes(literals_.begin(), literals_.end(), other.literals_.begin(),
                       other.literals_.end());
}

std::optional<Polarity> LiteralConjunction::sign_of(std::string_view constraint) const {
  for (const auto& lit : literals_) {
    if (lit.constraint == constraint) return lit.sign;
  }
  return std::nullopt;
}

std::string to_string(const LiteralConjunction& lits) {
  std::string out = "{";
  bool first = true;
  for (const auto& lit : lits) {
    if (!first) out += ' ';
    first = false;
    out += to_string(lit);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

Rect region_rect(const Region& region, double scale) {
  const double hw = region.width * scale / 2;
  const double hh = region.height * scale / 2;
  return {region.anchor.x - hw, region.anchor.y - hh, region.anchor.x + hw,
          region.anchor.y + hh};
}

const Region* RegionSchema::find(std::string_view name) const {
  for (const auto& r : regions) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

std::size_t RegionSchema::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < regions.size(); ++i) {
    if (regions[i].name == name) return i;
  }
  return regions.size();
}

// ---------------------------------------------------------------------------

bool Assignment::operator==(const Assignment& other) const {
  return region == other.region && fill == other.fill;
}

bool Glyph::operator==(const Glyph& other) const {
  return radical == other.radical && assignment == other.assignment &&
         derivations == other.derivations && scales == other.scales &&
         abbreviated == other.abbreviated;
}

const Assignment* Glyph::find(std::string_view region) const {
  for (const auto& a : assignment) {
    if (a.region == region) return &a;
  }
  return nullptr;
}

double Glyph::scale_of(std::string_view region) const {
  for (const auto& s : scales) {
    if (s.region == region) return s.factor;
  }
  return 1.0;
}

int Glyph::depth() const {
  int deepest = 0;
  for (const auto& a : assignment) {
    if (const Glyph* sub = embedded_of(a.fill)) {
      deepest = std::max(deepest, 1 + sub->depth());
    }
  }
  return deepest;
}

// ---------------------------------------------------------------------------

void UniverseModel::check() const {
  for (const auto& [constraint, subset] : valuation) {
    for (const auto& element : subset) {
      if (!carrier.count(element)) {
        throw Error(ErrorCode::invalid_definition,
                    "valuation of '" + constraint + "' contains '" + element +
                        "' which is not in the carrier",
                    constraint);
      }
    }
  }
}

bool is_valid_identifier(std::string_view id) {
  if (id.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(id.front()) && id.front() != '_') return false;
  if (id.back() == '-') return false;
  for (std::size_t i = 0; i < id.size(); ++i) {
    const char c = id[i];
    if (alpha(c) || digit(c) || c == '_') continue;
    if (c == '-' && i + 1 < id.size() && id[i + 1] != '-') continue;
    return false;
  }
  return true;
}

Rect arc_bounds(Point centre, double radius, double start_deg, double end_deg) {
  double sweep = std::fmod(end_deg - start_deg, 360.0);
  if (sweep < 0) sweep += 360.0;
  if (sweep == 0) sweep = 360.0;
  auto at = [&](double deg) {
    const double a = deg * std::numbers::pi / 180.0;
    return Point{centre.x + radius * std::cos(a), centre.y + radius * std::sin(a)};
  };
  const Point a = at(start_deg), b = at(start_deg + sweep);
  Rect r{std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
  // Extremes are reached at the multiples of 90 degrees inside the sweep.
  const double first = std::ceil(start_deg / 90.0) * 90.0;
  for (double d = first; d < start_deg + sweep; d += 90.0) {
    const Point p = at(d);
    r.x0 = std::min(r.x0, p.x);
    r.y0 = std::min(r.y0, p.y);
    r.x1 = std::max(r.x1, p.x);
    r.y1 = std::max(r.y1, p.y);
  }
  return r;
}

}  // namespace vtt
