#pragma once

// Immutable domain vocabulary: constraints, marks, radicals and their region
// schemas, derivation rules, concepts, glyphs and finite universe models.
//
// Coordinates live in the unit bounding box [0,1]x[0,1] with y pointing down
// (the SVG convention), so a region "above" another has a smaller y.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace vtt {

enum class Polarity { positive, negative };
enum class Family { structure, topological, other };

std::string_view to_string(Polarity p);
std::string_view to_string(Family f);
std::optional<Polarity> parse_polarity(std::string_view text);
std::optional<Family> parse_family(std::string_view text);

/// A named logical constraint a region (or a rule) can be loaded with.
struct Constraint {
  std::string id;
  std::string name;
  std::string statement;
  bool negatable = true;

  bool operator==(const Constraint&) const = default;
};

/// Shape tags understood by the renderer.
inline constexpr std::string_view kMarkShapes[] = {
    "filled-dot", "open-circle", "filled-square", "open-square",
    "cross",      "bar",         "triangle"};

bool is_known_mark_shape(std::string_view shape);

struct Mark {
  std::string id;
  Polarity polarity = Polarity::positive;
  std::string printable;

  bool operator==(const Mark&) const = default;
};

// ---------------------------------------------------------------------------
// Literals

struct Literal {
  std::string constraint;
  Polarity sign = Polarity::positive;

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;

  Literal negated() const {
    return {constraint, sign == Polarity::positive ? Polarity::negative
                                                   : Polarity::positive};
  }
};

/// "compact+" / "compact-".
std::string to_string(const Literal& lit);

/// A set of signed constraints with no constraint appearing under both signs.
class LiteralConjunction {
 public:
  LiteralConjunction() = default;
  /// Throws Error(literal_conflict) when a constraint appears with both signs.
  explicit LiteralConjunction(std::vector<Literal> literals);

  /// Adds a literal; a duplicate is a no-op, an opposite sign throws.
  void insert(const Literal& lit);
  void merge(const LiteralConjunction& other);

  bool contains(const Literal& lit) const;
  /// Set inclusion: every literal of `other` is in *this.
  bool includes(const LiteralConjunction& other) const;
  /// The literal bound to `constraint`, if any.
  std::optional<Polarity> sign_of(std::string_view constraint) const;

  std::size_t size() const { return literals_.size(); }
  bool empty() const { return literals_.empty(); }
  auto begin() const { return literals_.begin(); }
  auto end() const { return literals_.end(); }
  const std::vector<Literal>& literals() const { return literals_; }

  bool operator==(const LiteralConjunction&) const = default;

 private:
  std::vector<Literal> literals_;  // sorted, unique
};

std::string to_string(const LiteralConjunction& lits);

// ---------------------------------------------------------------------------
// Stroke geometry

struct Point {
  double x = 0;
  double y = 0;
  bool operator==(const Point&) const = default;
};

enum class StrokeKind { line, dot, circle, arc };
enum class Weight { regular, heavy };

/// Schematic stroke in the unit box.
///   line:   polyline through `points` (at least two)
///   dot:    filled disc at points[0] with `radius`
///   circle: outlined circle at points[0] with `radius`
///   arc:    circle segment from `start_deg` to `end_deg` (clockwise on screen)
struct Stroke {
  StrokeKind kind = StrokeKind::line;
  std::vector<Point> points;
  double radius = 0;
  double start_deg = 0;
  double end_deg = 0;
  Weight weight = Weight::regular;
  std::string group;

  bool operator==(const Stroke&) const = default;
};

inline constexpr double kDefaultDotRadius = 0.04;

enum class EditKind { extend_stroke, add_stroke, replace_strokes, add_center_circle, cross_transform };

std::string_view to_string(EditKind kind);

/// A named schematic stroke edit carried by a derivation rule.
struct StrokeEdit {
  EditKind kind = EditKind::add_stroke;
  std::string group;            // extend/replace/cross target group
  Point delta;                  // extend_stroke
  double radius = 0;            // add_center_circle
  std::vector<Stroke> strokes;  // add_stroke (one) / replace_strokes

  bool operator==(const StrokeEdit&) const = default;
};

// ---------------------------------------------------------------------------
// Radicals

struct Region {
  std::string name;
  std::string constraint;
  Point anchor;  // centre of the region
  double width = 0;
  double height = 0;
  bool expandable = false;

  bool operator==(const Region&) const = default;
};

struct Rect {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  bool overlaps(const Rect& o) const {
    return x0 < o.x1 && o.x0 < x1 && y0 < o.y1 && o.y0 < y1;
  }
  bool inside_unit_box() const {
    return x0 >= 0 && y0 >= 0 && x1 <= 1 && y1 <= 1;
  }
};

Rect region_rect(const Region& region, double scale = 1.0);

/// Bounding box of the arc from `start_deg` to `end_deg` (clockwise on
/// screen, y down) around `centre`.
Rect arc_bounds(Point centre, double radius, double start_deg, double end_deg);

struct RegionSchema {
  std::vector<Region> regions;

  const Region* find(std::string_view name) const;
  /// Position of `name` in declaration order, or size() when absent.
  std::size_t index_of(std::string_view name) const;
  std::size_t size() const { return regions.size(); }
  bool empty() const { return regions.empty(); }

  bool operator==(const RegionSchema&) const = default;
};

struct Radical {
  std::string id;
  std::string name;
  Family family = Family::other;
  std::vector<Stroke> strokes;
  RegionSchema schema;
  std::optional<std::string> limit_file;  // stroke group suppressed when abbreviated
  std::optional<std::string> table1_key;
  std::optional<std::string> base;        // lineage parent
  std::vector<Literal> adds;              // baseline literals on top of the base

  bool operator==(const Radical&) const = default;
};

// ---------------------------------------------------------------------------
// Derivation rules

/// Where a rule may be applied: a radical (and everything deriving from it)
/// or any radical of a family.
struct RuleSource {
  enum class Kind { radical, family };
  Kind kind = Kind::radical;
  std::string radical;
  Family family = Family::other;

  bool operator==(const RuleSource&) const = default;
};

struct DerivationRule {
  std::string id;
  std::string name;
  RuleSource source;
  std::vector<Literal> requires_literals;
  std::vector<StrokeEdit> edits;
  std::vector<Literal> adds;
  std::optional<std::string> target_concept;

  bool operator==(const DerivationRule&) const = default;
};

// ---------------------------------------------------------------------------
// Concepts

struct Concept {
  std::string id;
  std::string name;
  std::vector<std::string> aliases;
  std::string area;
  std::optional<std::string> cryptomorphism_group;

  bool operator==(const Concept&) const = default;
};

// ---------------------------------------------------------------------------
// Glyphs

struct Glyph;

/// Value-semantic owning pointer, used for sub-glyphs embedded in a region.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other.ptr_);
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;

  const T& operator*() const { return *ptr_; }
  T& operator*() { return *ptr_; }
  const T* operator->() const { return ptr_.get(); }
  T* operator->() { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

struct Absent {
  bool operator==(const Absent&) const = default;
};

/// Content of one region: nothing, a mark id, or an embedded sub-glyph.
using Fill = std::variant<Absent, std::string, Box<Glyph>>;

struct Assignment {
  std::string region;
  Fill fill;

  bool operator==(const Assignment&) const;
};

struct RegionScale {
  std::string region;
  double factor = 1.0;
  bool operator==(const RegionScale&) const = default;
};

struct Glyph {
  std::string radical;
  std::vector<Assignment> assignment;  // storage order is not significant
  std::vector<std::string> derivations;
  std::vector<RegionScale> scales;
  bool abbreviated = false;

  bool operator==(const Glyph&) const;

  /// Entry for `region`, or nullptr.
  const Assignment* find(std::string_view region) const;
  /// Scale factor recorded for `region` (1.0 when none).
  double scale_of(std::string_view region) const;
  /// Nesting depth: 0 for a glyph without embedded sub-glyphs.
  int depth() const;

  static Glyph bare(std::string radical) {
    Glyph g;
    g.radical = std::move(radical);
    return g;
  }
};

inline constexpr int kMaxNestingDepth = 2;

inline bool is_absent(const Fill& f) { return std::holds_alternative<Absent>(f); }
inline const std::string* mark_of(const Fill& f) { return std::get_if<std::string>(&f); }
inline const Glyph* embedded_of(const Fill& f) {
  const auto* b = std::get_if<Box<Glyph>>(&f);
  return b ? &**b : nullptr;
}

struct Binding {
  Glyph glyph;
  std::string concept_id;
  bool precedence = false;

  bool operator==(const Binding&) const = default;
};

/// A finite carrier with one subset per constraint.
struct UniverseModel {
  std::set<std::string> carrier;
  std::map<std::string, std::set<std::string>> valuation;

  /// Throws Error(invalid_definition) when a valuation escapes the carrier.
  void check() const;
};

/// Everything a registry is built from, in declaration order.
struct DefinitionSet {
  std::vector<Constraint> constraints;
  std::vector<Mark> marks;
  std::vector<Radical> radicals;
  std::vector<DerivationRule> rules;
  std::vector<Concept> concepts;
  std::vector<Binding> bindings;

  bool operator==(const DefinitionSet&) const = default;
};

/// Identifier grammar shared by every entity kind: a letter or underscore,
/// then letters, digits, '_' and non-trailing '-'.
bool is_valid_identifier(std::string_view id);

}  // namespace vtt
