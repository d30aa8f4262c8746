#include "leglab/error.hpp"

namespace leglab {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_tangent: return "ERR_NOT_TANGENT";
    case ErrorCode::degree: return "ERR_DEGREE";
    case ErrorCode::divide_by_zero_jet: return "ERR_DIVIDE_BY_ZERO_JET";
    case ErrorCode::domain: return "ERR_DOMAIN";
    case ErrorCode::order: return "ERR_ORDER";
    case ErrorCode::syntax: return "ERR_SYNTAX";
    case ErrorCode::nonanalytic: return "ERR_NONANALYTIC";
    case ErrorCode::param_constraint: return "ERR_PARAM_CONSTRAINT";
    case ErrorCode::validation: return "ERR_VALIDATION";
    case ErrorCode::not_on_sphere: return "ERR_NOT_ON_SPHERE";
    case ErrorCode::degenerate_metric: return "ERR_DEGENERATE_METRIC";
    case ErrorCode::stencil_out_of_domain: return "ERR_STENCIL_OUT_OF_DOMAIN";
    case ErrorCode::grid: return "ERR_GRID";
    case ErrorCode::unsupported_surface: return "ERR_UNSUPPORTED_SURFACE";
    case ErrorCode::config: return "ERR_CONFIG";
  }
  return "ERR_UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

SyntaxError::SyntaxError(std::size_t offset, const std::string& message)
    : Error(ErrorCode::syntax,
            "at byte " + std::to_string(offset) + ": " + message),
      offset_(offset),
      detail_(message) {}

namespace {

std::string join_diagnostics(const Diagnostics& diagnostics) {
  std::string out;
  for (const auto& d : diagnostics) {
    if (!out.empty()) out += "; ";
    out += "byte " + std::to_string(d.offset) + ": " + d.message;
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(Diagnostics diagnostics)
    : Error(ErrorCode::validation, join_diagnostics(diagnostics)),
      diagnostics_(std::move(diagnostics)) {}

}  // namespace leglab
