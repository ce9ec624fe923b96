#include "sml/error.h"

#include <array>
#include <utility>

namespace sml {

namespace {

constexpr std::array<std::pair<ErrorCode, std::string_view>, 28> kNames{{
    {ErrorCode::IO_NOT_FOUND, "IO_NOT_FOUND"},
    {ErrorCode::IO_ERROR, "IO_ERROR"},
    {ErrorCode::SYNTAX_ERROR, "SYNTAX_ERROR"},
    {ErrorCode::UNDEFINED_PREFIX, "UNDEFINED_PREFIX"},
    {ErrorCode::UNSUPPORTED_SYNTAX, "UNSUPPORTED_SYNTAX"},
    {ErrorCode::USAGE, "USAGE"},
    {ErrorCode::BOUND_EXCEEDED, "BOUND_EXCEEDED"},
    {ErrorCode::UNKNOWN_DATASET, "UNKNOWN_DATASET"},
    {ErrorCode::UNKNOWN_CLASS, "UNKNOWN_CLASS"},
    {ErrorCode::NO_ACTIVE_LINEAGE, "NO_ACTIVE_LINEAGE"},
    {ErrorCode::UNKNOWN_COLUMN, "UNKNOWN_COLUMN"},
    {ErrorCode::UNKNOWN_LINEAGE, "UNKNOWN_LINEAGE"},
    {ErrorCode::UNKNOWN_ATTRIBUTE, "UNKNOWN_ATTRIBUTE"},
    {ErrorCode::DUPLICATE_COLUMN, "DUPLICATE_COLUMN"},
    {ErrorCode::COLUMN_NAME_COLLISION, "COLUMN_NAME_COLLISION"},
    {ErrorCode::EXTRACTOR_KIND_MISMATCH, "EXTRACTOR_KIND_MISMATCH"},
    {ErrorCode::INTEGRATION_KIND_MISMATCH, "INTEGRATION_KIND_MISMATCH"},
    {ErrorCode::MISSING_SEED, "MISSING_SEED"},
    {ErrorCode::INVALID_PARAMETER, "INVALID_PARAMETER"},
    {ErrorCode::MALFORMED_DOCUMENT, "MALFORMED_DOCUMENT"},
    {ErrorCode::VERSION_MISMATCH, "VERSION_MISMATCH"},
    {ErrorCode::UNKNOWN_STEP_KIND, "UNKNOWN_STEP_KIND"},
    {ErrorCode::SOURCE_UNREACHABLE, "SOURCE_UNREACHABLE"},
    {ErrorCode::NOT_SUPPORTED, "NOT_SUPPORTED"},
    {ErrorCode::NOT_FOUND, "NOT_FOUND"},
    {ErrorCode::REVISION_CONFLICT, "REVISION_CONFLICT"},
    {ErrorCode::INVALID_SPEC, "INVALID_SPEC"},
    {ErrorCode::JOB_NOT_READY, "JOB_NOT_READY"},
}};

}  // namespace

std::string_view to_string(ErrorCode code) {
  for (const auto& [c, name] : kNames) {
    if (c == code) return name;
  }
  return "UNKNOWN";
}

std::optional<ErrorCode> error_code_from_string(std::string_view text) {
  for (const auto& [c, name] : kNames) {
    if (name == text) return c;
  }
  return std::nullopt;
}

std::string format(const Diagnostic& d) {
  std::string out;
  switch (d.severity) {
    case Severity::INFO: out = "info: "; break;
    case Severity::WARNING: out = "warning: "; break;
    case Severity::ERROR: out = "error: "; break;
  }
  out += d.message;
  if (!d.subject.empty()) out += " [" + d.subject + "]";
  return out;
}

}  // namespace sml
