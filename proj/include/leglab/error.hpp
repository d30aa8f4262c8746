#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace leglab {

enum class ErrorCode {
  not_tangent,
  degree,
  divide_by_zero_jet,
  domain,
  order,
  syntax,
  nonanalytic,
  param_constraint,
  validation,
  not_on_sphere,
  degenerate_metric,
  stencil_out_of_domain,
  grid,
  unsupported_surface,
  config,
};

/// Stable identifier, e.g. "ERR_NOT_TANGENT".
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct Diagnostic {
  std::size_t offset = 0;  // byte offset into the expression source
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

using Diagnostics = std::vector<Diagnostic>;

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message);

  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(Diagnostics diagnostics);

  const Diagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  Diagnostics diagnostics_;
};

}  // namespace leglab
