#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vtt {

enum class ErrorCode {
  dangling_reference,
  duplicate_id,
  not_found,
  malformed_id,
  invalid_definition,
  syntax,
  unknown_region,
  unknown_mark,
  inadmissible_mark,
  precondition_mismatch,
  already_applied,
  redundant_derivation,
  literal_conflict,
  no_limit_file,
  not_expandable,
  region_overlap,
  family_mismatch,
  missing_region,
  depth_exceeded,
  unexpressible,
  missing_valuation,
  enumeration_refused,
  meaning_map_conflict,
  name_collision,
  schema_violation,
  version_mismatch,
  malformed_glyph,
  layout,
  unresolved_reference,
  io,
};

/// Stable kebab-case spelling used in reports, HTTP bodies and CLI output.
std::string_view to_string(ErrorCode code);

/// 1-based line/column inside a definition document.
struct SourcePos {
  std::string path;
  int line = 0;
  int column = 0;

  bool operator==(const SourcePos&) const = default;
};

std::string to_string(const SourcePos& pos);

/// Definition a failed registry build was checking: entity kind
/// ("constraint", "mark", "radical", "rule", "concept", "binding") and its
/// index in declaration order.
struct ErrorOrigin {
  std::string kind;
  std::size_t index = 0;

  bool operator==(const ErrorOrigin&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string subject = {},
        std::optional<SourcePos> pos = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// Id of the entity (or region, literal) the error is about; may be empty.
  const std::string& subject() const noexcept { return subject_; }
  const std::optional<SourcePos>& position() const noexcept { return pos_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::optional<ErrorOrigin>& origin() const noexcept { return origin_; }

  /// Same error re-anchored at a source position (keeps the first position).
  Error at(SourcePos pos) const;
  /// Same error tagged with the definition it came from (keeps the first).
  Error with_origin(std::string kind, std::size_t index) const;

 private:
  ErrorCode code_;
  std::string subject_;
  std::optional<SourcePos> pos_;
  std::string detail_;
  std::optional<ErrorOrigin> origin_;
};

}  // namespace vtt
