#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swb {

enum class ErrorCode {
  parse,
  duplicate_id,
  dangling_taxonomy,
  motion_mismatch,
  not_found,
  missing_variant,
  invalid_argument,
  out_of_bounds,
  dangling_ref,
  schema,
  render,
  empty_ink,
  empty_index,
  policy,
  validation,
  io,
};

std::string_view to_string(ErrorCode code);

/// A single finding attached to an error or returned by a validator.
struct Diagnostic {
  std::string code;     // e.g. "out-of-bounds", "dangling-ref", "policy-violation"
  std::string message;
  std::string subject;  // glyph ref, element name, rule id ...

  bool operator==(const Diagnostic&) const = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<Diagnostic> diagnostics = {})
      : std::runtime_error(message), code_(code), diagnostics_(std::move(diagnostics)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }

 private:
  ErrorCode code_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace swb
