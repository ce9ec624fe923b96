#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sml {

// Machine-readable error codes shared by every module, the CLI and the HTTP
// service. The string form (to_string) is the stable wire representation.
enum class ErrorCode : std::uint8_t {
  // I/O and syntax
  IO_NOT_FOUND,
  IO_ERROR,
  SYNTAX_ERROR,
  UNDEFINED_PREFIX,
  UNSUPPORTED_SYNTAX,
  USAGE,
  BOUND_EXCEEDED,
  // catalog lookups
  UNKNOWN_DATASET,
  UNKNOWN_CLASS,
  // specification type and reference errors
  NO_ACTIVE_LINEAGE,
  UNKNOWN_COLUMN,
  UNKNOWN_LINEAGE,
  UNKNOWN_ATTRIBUTE,
  DUPLICATE_COLUMN,
  COLUMN_NAME_COLLISION,
  EXTRACTOR_KIND_MISMATCH,
  INTEGRATION_KIND_MISMATCH,
  MISSING_SEED,
  INVALID_PARAMETER,
  // spec documents
  MALFORMED_DOCUMENT,
  VERSION_MISMATCH,
  UNKNOWN_STEP_KIND,
  // materialization
  SOURCE_UNREACHABLE,
  NOT_SUPPORTED,
  // service
  NOT_FOUND,
  REVISION_CONFLICT,
  INVALID_SPEC,
  JOB_NOT_READY,
};

std::string_view to_string(ErrorCode code);
std::optional<ErrorCode> error_code_from_string(std::string_view text);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

enum class Severity : std::uint8_t { INFO, WARNING, ERROR };

struct Diagnostic {
  Severity severity = Severity::WARNING;
  std::string message;
  // IRI, row number or column the diagnostic is about; may be empty.
  std::string subject;

  bool operator==(const Diagnostic&) const = default;
};

std::string format(const Diagnostic& d);

}  // namespace sml
