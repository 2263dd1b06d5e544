#include "vtt/syntax.hpp"

#include <charconv>
#include <cmath>

#include "cursor.hpp"

namespace vtt {
namespace detail {

char Cursor::advance() {
  if (at_end()) return '\0';
  const char c = text_[pos_++];
  if (c == '\n') {
    ++line_;
    column_ = 1;
  } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
    ++column_;  // count code points, not UTF-8 continuation bytes
  }
  return c;
}

void Cursor::skip_blanks(bool newlines) {
  while (!at_end()) {
    const char c = peek();
    if (c == ' ' || c == '\t' || (newlines && (c == '\n' || c == '\r'))) {
      advance();
    } else {
      break;
    }
  }
}

void Cursor::skip_blanks_and_comments() {
  for (;;) {
    skip_blanks(true);
    if (peek() != '#') return;
    while (!at_end() && peek() != '\n') advance();
  }
}

bool Cursor::accept(char c) {
  if (peek() != c || at_end()) return false;
  advance();
  return true;
}

bool Cursor::accept(std::string_view s) {
  if (!starts_with(s)) return false;
  for (std::size_t i = 0; i < s.size(); ++i) advance();
  return true;
}

void Cursor::expect(char c, std::string_view what) {
  if (!accept(c)) fail_expected(what.empty() ? std::string("'") + c + "'" : std::string(what));
}

void Cursor::expect(std::string_view s, std::string_view what) {
  if (!accept(s)) fail_expected(what.empty() ? "'" + std::string(s) + "'" : std::string(what));
}

bool Cursor::ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool Cursor::ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

std::string Cursor::identifier(std::string_view what) {
  if (!ident_start(peek())) fail_expected(what);
  std::string out;
  while (!at_end()) {
    const char c = peek();
    if (ident_char(c)) {
      out += advance();
    } else if (c == '-' && ident_char(peek(1))) {
      out += advance();
    } else {
      break;
    }
  }
  return out;
}

std::string Cursor::word(std::string_view what) {
  if (!ident_char(peek())) fail_expected(what);
  std::string out;
  while (!at_end()) {
    const char c = peek();
    if (ident_char(c) || (c == '-' && ident_char(peek(1)))) {
      out += advance();
    } else {
      break;
    }
  }
  return out;
}

bool Cursor::at_number() const {
  const char c = peek();
  if (c >= '0' && c <= '9') return true;
  if (c == '-' || c == '.') {
    const char n = peek(1);
    return (n >= '0' && n <= '9') || (c == '-' && n == '.');
  }
  return false;
}

double Cursor::number(std::string_view what) {
  if (!at_number()) fail_expected(what);
  const auto r = rest();
  double value = 0;
  auto [ptr, ec] = std::from_chars(r.data(), r.data() + r.size(), value);
  if (ec != std::errc() || !std::isfinite(value)) fail_expected(what);
  const auto consumed = static_cast<std::size_t>(ptr - r.data());
  for (std::size_t i = 0; i < consumed; ++i) advance();
  return value;
}

std::string Cursor::quoted(std::string_view what) {
  if (peek() != '"') fail_expected(what);
  advance();
  std::string out;
  for (;;) {
    if (at_end() || peek() == '\n') fail("unterminated string");
    const char c = advance();
    if (c == '"') break;
    if (c == '\\') {
      const char e = advance();
      if (e == '"' || e == '\\') {
        out += e;
      } else if (e == 'n') {
        out += '\n';
      } else {
        fail("unknown escape '\\" + std::string(1, e) + "'");
      }
      continue;
    }
    out += c;
  }
  return out;
}

void Cursor::fail(const std::string& message) const {
  throw Error(ErrorCode::syntax, message, {}, position());
}

void Cursor::fail_expected(std::string_view what) const {
  std::string found;
  if (at_end()) {
    found = "end of input";
  } else if (peek() == '\n') {
    found = "end of line";
  } else {
    std::size_t n = 0;
    while (pos_ + n < text_.size() && n < 12 && text_[pos_ + n] != '\n') ++n;
    found = "'" + std::string(text_.substr(pos_, n)) + "'";
  }
  fail("expected " + std::string(what) + ", found " + found);
}

// ---------------------------------------------------------------------------

Literal read_literal(Cursor& cur) {
  Literal lit;
  lit.constraint = cur.identifier("constraint id");
  if (cur.accept('+')) {
    lit.sign = Polarity::positive;
  } else if (cur.accept('-')) {
    lit.sign = Polarity::negative;
  } else {
    cur.fail_expected("'+' or '-' after constraint id");
  }
  return lit;
}

std::vector<Literal> read_literal_list(Cursor& cur) {
  std::vector<Literal> out;
  cur.expect('[');
  cur.skip_blanks_and_comments();
  while (!cur.accept(']')) {
    out.push_back(read_literal(cur));
    cur.skip_blanks_and_comments();
  }
  return out;
}

namespace {

Point read_point(Cursor& cur) {
  Point p;
  p.x = cur.number("x coordinate");
  cur.skip_blanks();
  cur.expect(',');
  cur.skip_blanks();
  p.y = cur.number("y coordinate");
  return p;
}

void read_comma(Cursor& cur) {
  cur.skip_blanks();
  cur.expect(',');
  cur.skip_blanks();
}

}  // namespace

Stroke read_stroke(Cursor& cur) {
  Stroke s;
  const auto start = cur.position();
  const std::string kind = cur.identifier("stroke kind");
  cur.expect('(');
  cur.skip_blanks(true);
  if (kind == "line") {
    s.kind = StrokeKind::line;
    while (cur.at_number()) {
      s.points.push_back(read_point(cur));
      cur.skip_blanks(true);
    }
    if (s.points.size() < 2) {
      throw Error(ErrorCode::syntax, "line stroke needs at least two points", {}, start);
    }
  } else if (kind == "dot") {
    s.kind = StrokeKind::dot;
    s.points.push_back(read_point(cur));
    s.radius = kDefaultDotRadius;
    cur.skip_blanks();
    if (cur.accept(',')) {
      cur.skip_blanks();
      s.radius = cur.number("dot radius");
    }
  } else if (kind == "circle") {
    s.kind = StrokeKind::circle;
    s.points.push_back(read_point(cur));
    read_comma(cur);
    s.radius = cur.number("circle radius");
  } else if (kind == "arc") {
    s.kind = StrokeKind::arc;
    s.points.push_back(read_point(cur));
    read_comma(cur);
    s.radius = cur.number("arc radius");
    read_comma(cur);
    s.start_deg = cur.number("start angle");
    read_comma(cur);
    s.end_deg = cur.number("end angle");
  } else {
    throw Error(ErrorCode::syntax,
                "unknown stroke kind '" + kind + "' (expected line, dot, circle or arc)",
                {}, start);
  }
  cur.skip_blanks(true);
  cur.expect(')');
  if (cur.accept(":heavy")) s.weight = Weight::heavy;
  if (cur.accept('#')) s.group = cur.word("stroke group");
  if (s.kind != StrokeKind::line && s.radius <= 0) {
    throw Error(ErrorCode::syntax, "stroke radius must be positive", {}, start);
  }
  return s;
}

std::vector<Stroke> read_stroke_list(Cursor& cur) {
  std::vector<Stroke> out;
  cur.expect('[');
  cur.skip_blanks_and_comments();
  while (!cur.accept(']')) {
    out.push_back(read_stroke(cur));
    cur.skip_blanks_and_comments();
  }
  return out;
}

StrokeEdit read_edit(Cursor& cur) {
  StrokeEdit e;
  const auto start = cur.position();
  const std::string kind = cur.identifier("edit kind");
  cur.expect('(');
  cur.skip_blanks(true);
  if (kind == "extend-stroke") {
    e.kind = EditKind::extend_stroke;
    e.group = cur.word("stroke group");
    read_comma(cur);
    e.delta = read_point(cur);
  } else if (kind == "add-stroke") {
    e.kind = EditKind::add_stroke;
    e.strokes.push_back(read_stroke(cur));
  } else if (kind == "replace-strokes") {
    e.kind = EditKind::replace_strokes;
    e.group = cur.word("stroke group");
    cur.skip_blanks();
    cur.expect(';');
    cur.skip_blanks(true);
    while (cur.at_identifier()) {
      e.strokes.push_back(read_stroke(cur));
      cur.skip_blanks(true);
    }
  } else if (kind == "add-center-circle") {
    e.kind = EditKind::add_center_circle;
    e.radius = cur.number("circle radius");
    if (e.radius <= 0) throw Error(ErrorCode::syntax, "circle radius must be positive", {}, start);
  } else if (kind == "cross-transform") {
    e.kind = EditKind::cross_transform;
    e.group = cur.word("stroke group");
  } else {
    throw Error(ErrorCode::syntax, "unknown stroke edit '" + kind + "'", {}, start);
  }
  cur.skip_blanks(true);
  cur.expect(')');
  return e;
}

std::vector<StrokeEdit> read_edit_list(Cursor& cur) {
  std::vector<StrokeEdit> out;
  cur.expect('[');
  cur.skip_blanks_and_comments();
  while (!cur.accept(']')) {
    out.push_back(read_edit(cur));
    cur.skip_blanks_and_comments();
  }
  return out;
}

Region read_region(Cursor& cur) {
  Region r;
  r.name = cur.identifier("region name");
  cur.expect(':');
  r.constraint = cur.identifier("constraint id");
  cur.expect('@');
  r.anchor = read_point(cur);
  cur.expect(':');
  r.width = cur.number("region width");
  cur.expect('x');
  r.height = cur.number("region height");
  return r;
}

Glyph read_glyph_after_radical(Cursor& cur, std::string radical) {
  Glyph g;
  g.radical = std::move(radical);
  cur.expect('(');
  cur.skip_blanks(true);
  // Assignments come first; sections are introduced by ';'.
  while (cur.at_identifier()) {
    const auto at = cur.position();
    Assignment a;
    a.region = cur.identifier("region name");
    if (g.find(a.region)) {
      throw Error(ErrorCode::syntax, "region '" + a.region + "' assigned twice", a.region, at);
    }
    cur.expect('=');
    if (cur.peek() == '_' && !Cursor::ident_char(cur.peek(1))) {
      cur.advance();
      a.fill = Absent{};
    } else {
      std::string id = cur.identifier("mark id, '_' or glyph literal");
      if (cur.peek() == '(') {
        a.fill = Box<Glyph>(read_glyph_after_radical(cur, std::move(id)));
      } else {
        a.fill = std::move(id);
      }
    }
    g.assignment.push_back(std::move(a));
    cur.skip_blanks(true);
  }
  bool seen_rules = false, seen_scale = false;
  while (cur.accept(';')) {
    cur.skip_blanks(true);
    if (cur.accept("rules:")) {
      if (seen_rules) cur.fail("duplicate 'rules:' section");
      seen_rules = true;
      cur.skip_blanks(true);
      while (cur.at_identifier()) {
        g.derivations.push_back(cur.identifier("rule id"));
        cur.skip_blanks(true);
      }
    } else if (cur.accept("scale:")) {
      if (seen_scale) cur.fail("duplicate 'scale:' section");
      seen_scale = true;
      cur.skip_blanks(true);
      while (cur.at_identifier()) {
        RegionScale s;
        s.region = cur.identifier("region name");
        cur.expect('*');
        s.factor = cur.number("scale factor");
        if (!(s.factor > 0)) cur.fail("scale factor must be positive");
        g.scales.push_back(std::move(s));
        cur.skip_blanks(true);
      }
    } else if (cur.accept("abbreviated")) {
      if (g.abbreviated) cur.fail("duplicate 'abbreviated' flag");
      g.abbreviated = true;
      cur.skip_blanks(true);
    } else {
      cur.fail_expected("'rules:', 'scale:' or 'abbreviated'");
    }
  }
  cur.expect(')', "')' closing the glyph literal");
  return g;
}

Glyph read_glyph(Cursor& cur) {
  std::string radical = cur.identifier("radical id");
  return read_glyph_after_radical(cur, std::move(radical));
}

std::string escape_quoted(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

}  // namespace detail

// ---------------------------------------------------------------------------

std::string format_number(double value) {
  if (value == 0) value = 0;  // drop the sign of -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) return "0";
  return std::string(buf, ptr);
}

std::string format_literal(const Literal& lit) { return to_string(lit); }

namespace {

std::string format_point(const Point& p) { return format_number(p.x) + "," + format_number(p.y); }

}  // namespace

std::string format_stroke(const Stroke& s) {
  std::string out;
  switch (s.kind) {
    case StrokeKind::line: {
      out = "line(";
      for (std::size_t i = 0; i < s.points.size(); ++i) {
        if (i) out += ' ';
        out += format_point(s.points[i]);
      }
      out += ')';
      break;
    }
    case StrokeKind::dot:
      out = "dot(" + format_point(s.points.at(0));
      if (s.radius != kDefaultDotRadius) out += "," + format_number(s.radius);
      out += ')';
      break;
    case StrokeKind::circle:
      out = "circle(" + format_point(s.points.at(0)) + "," + format_number(s.radius) + ")";
      break;
    case StrokeKind::arc:
      out = "arc(" + format_point(s.points.at(0)) + "," + format_number(s.radius) + "," +
            format_number(s.start_deg) + "," + format_number(s.end_deg) + ")";
      break;
  }
  if (s.weight == Weight::heavy) out += ":heavy";
  if (!s.group.empty()) out += "#" + s.group;
  return out;
}

std::string format_edit(const StrokeEdit& e) {
  std::string out(to_string(e.kind));
  out += '(';
  switch (e.kind) {
    case EditKind::extend_stroke:
      out += e.group + "," + format_point(e.delta);
      break;
    case EditKind::add_stroke:
      out += format_stroke(e.strokes.at(0));
      break;
    case EditKind::replace_strokes:
      out += e.group + ";";
      for (const auto& s : e.strokes) out += " " + format_stroke(s);
      break;
    case EditKind::add_center_circle:
      out += format_number(e.radius);
      break;
    case EditKind::cross_transform:
      out += e.group;
      break;
  }
  return out + ")";
}

std::string format_region(const Region& r) {
  std::string out = r.name + ":" + r.constraint + "@" + format_point(r.anchor) + ":" +
                    format_number(r.width) + "x" + format_number(r.height);
  if (r.expandable) out += " expandable";
  return out;
}

std::string format_glyph(const Glyph& g) {
  std::string out = g.radical + "(";
  bool first = true;
  for (const auto& a : g.assignment) {
    if (!first) out += ' ';
    first = false;
    out += a.region + "=";
    if (is_absent(a.fill)) {
      out += "_";
    } else if (const auto* m = mark_of(a.fill)) {
      out += *m;
    } else {
      out += format_glyph(*embedded_of(a.fill));
    }
  }
  if (!g.derivations.empty()) {
    out += "; rules:";
    for (const auto& r : g.derivations) out += " " + r;
  }
  if (!g.scales.empty()) {
    out += "; scale:";
    for (const auto& s : g.scales) out += " " + s.region + "*" + format_number(s.factor);
  }
  if (g.abbreviated) out += "; abbreviated";
  return out + ")";
}

namespace {

template <class F>
auto parse_whole(std::string_view text, F&& read) {
  detail::Cursor cur(text);
  cur.skip_blanks(true);
  auto value = read(cur);
  cur.skip_blanks(true);
  if (!cur.at_end()) cur.fail_expected("end of input");
  return value;
}

}  // namespace

Literal parse_literal(std::string_view text) { return parse_whole(text, detail::read_literal); }
Stroke parse_stroke(std::string_view text) { return parse_whole(text, detail::read_stroke); }
StrokeEdit parse_edit(std::string_view text) { return parse_whole(text, detail::read_edit); }
Glyph parse_glyph(std::string_view text) {
  return parse_whole(text, [](detail::Cursor& c) { return detail::read_glyph(c); });
}

}  // namespace vtt
