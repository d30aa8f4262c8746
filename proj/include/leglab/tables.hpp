#pragma once

// Closed-form quantities of the Calabi and Mironov families next to the
// values computed by the geometry pipeline.

#include <string>
#include <vector>

#include "leglab/surfaces.hpp"

namespace leglab {

struct TableRow {
  std::string quantity;  // e.g. "g_yy"
  std::string formula;   // closed form as text
  double x = 0.0, y = 0.0;  // where the worst deviation occurred
  double expected = 0.0;
  double computed = 0.0;
  double deviation = 0.0;   // max |computed - expected| over the points
};

/// Calabi rows: grid maxima over an nx x ny grid.
std::vector<TableRow> calabi_table(const ImmersionSpec& spec, int nx = 32,
                                   int ny = 32);
/// Mironov rows at x in {0, pi/6, pi/4} (y in {0, 1}).
std::vector<TableRow> mironov_table(const ImmersionSpec& spec);
/// Dispatch on the surface kind; ERR_UNSUPPORTED_SURFACE otherwise.
std::vector<TableRow> closed_form_table(const ImmersionSpec& spec,
                                        int nx = 32, int ny = 32);

}  // namespace leglab
