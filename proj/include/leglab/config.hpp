#pragma once

// Run configuration: INI-style config files and surface expression files.
//
// Config file (CLI flags override file values):
//
//   # comment
//   [surface]
//   name = mironov            ; calabi | mironov | geodesic_sphere
//   params = a=1, b=2, c=1
//   expr_file = my_surface.expr
//   [grid]
//   size = 32x32              ; or nx = 32 / ny = 32
//   [tolerances]
//   csl = 1e-7                ; any check name
//   [output]
//   format = json             ; text | json
//   [run]
//   seed = 7
//   workers = 1
//   sample_points = 16
//   [ambient]
//   reeb_sign = minus_i       ; minus_i (R = -iF) | plus_i (R = iF)
//
// Expression file:
//
//   param a = 1
//   F1 = sqrt(c/(a+c))*sin(x)*exp(i*a*y)
//   F2 = ...
//   F3 = ...
//   x_range = 0, 2*pi
//   y_range = 0, 2*pi
//   periodic = true, true

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "leglab/ambient.hpp"
#include "leglab/expr.hpp"
#include "leglab/surfaces.hpp"

namespace leglab {

enum class OutputFormat { text, json };

struct GridSpec {
  int nx = 32;
  int ny = 32;
};

struct RunConfig {
  std::string surface = "calabi";
  ParamTable params;  // overrides of the catalog defaults
  std::optional<std::string> expr_file;
  std::optional<GridSpec> grid;  // command default when absent
  std::map<std::string, double> tolerances;
  OutputFormat format = OutputFormat::text;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  std::size_t sample_points = 16;
  ReebSign reeb = ReebSign::minus_i;
};

/// Applies an INI-style config text to `cfg`; ERR_CONFIG with the line
/// number on malformed input.
void apply_config_text(RunConfig& cfg, std::string_view text,
                       std::string_view origin = "config");
/// Reads and applies a config file; ERR_CONFIG when unreadable.
void apply_config_file(RunConfig& cfg, const std::string& path);

/// "k=v,k=v" -> table; ERR_CONFIG on malformed entries.
ParamTable parse_param_list(std::string_view text);
/// "NXxNY" -> grid; ERR_CONFIG when malformed, ERR_GRID when below 4.
GridSpec parse_grid(std::string_view text);

/// Parses an expression file. Throws SyntaxError (offset relative to the
/// offending expression), ValidationError or ERR_CONFIG. `diagnostic`
/// receives a human-readable location for syntax and validation errors.
ImmersionSpec parse_expr_file(std::string_view text, std::string_view label,
                              std::string* diagnostic = nullptr);

/// Surface selected by the config: expression file or catalog entry.
ImmersionSpec build_surface(const RunConfig& cfg,
                            std::string* diagnostic = nullptr);

std::string read_text_file(const std::string& path);

}  // namespace leglab
