#include "vtt/error.hpp"

namespace vtt {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::dangling_reference: return "dangling-reference";
    case ErrorCode::duplicate_id: return "duplicate-id";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::malformed_id: return "malformed-id";
    case ErrorCode::invalid_definition: return "invalid-definition";
    case ErrorCode::syntax: return "syntax-error";
    case ErrorCode::unknown_region: return "unknown-region";
    case ErrorCode::unknown_mark: return "unknown-mark";
    case ErrorCode::inadmissible_mark: return "inadmissible-mark";
    case ErrorCode::precondition_mismatch: return "precondition-mismatch";
    case ErrorCode::already_applied: return "already-applied";
    case ErrorCode::redundant_derivation: return "redundant-derivation";
    case ErrorCode::literal_conflict: return "literal-conflict";
    case ErrorCode::no_limit_file: return "no-limit-file";
    case ErrorCode::not_expandable: return "not-expandable";
    case ErrorCode::region_overlap: return "region-overlap";
    case ErrorCode::family_mismatch: return "family-mismatch";
    case ErrorCode::missing_region: return "missing-region";
    case ErrorCode::depth_exceeded: return "depth-exceeded";
    case ErrorCode::unexpressible: return "unexpressible";
    case ErrorCode::missing_valuation: return "missing-valuation";
    case ErrorCode::enumeration_refused: return "enumeration-refused";
    case ErrorCode::meaning_map_conflict: return "meaning-map-conflict";
    case ErrorCode::name_collision: return "name-collision";
    case ErrorCode::schema_violation: return "schema-violation";
    case ErrorCode::version_mismatch: return "version-mismatch";
    case ErrorCode::malformed_glyph: return "malformed-glyph";
    case ErrorCode::layout: return "layout-error";
    case ErrorCode::unresolved_reference: return "unresolved-reference";
    case ErrorCode::io: return "io-error";
  }
  return "error";
}

std::string to_string(const SourcePos& pos) {
  std::string out = pos.path.empty() ? std::string("<input>") : pos.path;
  out += ':' + std::to_string(pos.line) + ':' + std::to_string(pos.column);
  return out;
}

namespace {

std::string compose(ErrorCode code, const std::string& message,
                    const std::optional<SourcePos>& pos) {
  std::string out;
  if (pos) out = to_string(*pos) + ": ";
  out += std::string(to_string(code)) + ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::string subject,
             std::optional<SourcePos> pos)
    : std::runtime_error(compose(code, message, pos)),
      code_(code),
      subject_(std::move(subject)),
      pos_(std::move(pos)),
      detail_(std::move(message)) {}

Error Error::at(SourcePos pos) const {
  if (pos_) return *this;
  Error out(code_, detail_, subject_, std::move(pos));
  out.origin_ = origin_;
  return out;
}

Error Error::with_origin(std::string kind, std::size_t index) const {
  Error out = *this;
  if (!out.origin_) out.origin_ = ErrorOrigin{std::move(kind), index};
  return out;
}

}  // namespace vtt
