#pragma once

// Judging residual series against tolerances and rendering run reports as
// text or JSON.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "leglab/operators.hpp"
#include "leglab/tables.hpp"

namespace leglab {

enum class CheckStatus { pass, fail, skip, info };
std::string_view status_name(CheckStatus s);

inline constexpr double kMinimalThreshold = 1e-10;

struct JudgeOptions {
  std::map<std::string, double> overrides;  // by check name
  double scale = 1.0;                       // multiplies every tolerance
};

struct CheckOutcome {
  std::string name;
  std::string formula;
  double value = 0.0;  // grid max
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::skip;
  Aggregates aggregates;
};

/// One outcome per catalog check. The Willmore-Legendrian row is a
/// consistency check: a non-minimal chart must not solve the equation.
std::vector<CheckOutcome> judge(const ResidualReport& report,
                                const JudgeOptions& opts = {});

/// Everything that identifies a run.
struct RunHeader {
  std::string command;
  const ImmersionSpec* surface = nullptr;
  int nx = 0, ny = 0;
  std::size_t sample_points = 0;
  std::uint64_t seed = 0;
  double tolerance_scale = 1.0;
  ReebSign reeb = ReebSign::minus_i;
};

struct ClassLabel {
  std::string property;
  bool holds = false;
  std::string evidence;  // quantity compared
  double value = 0.0;
  double threshold = 0.0;
};

using Json = nlohmann::ordered_json;

Json header_json(const RunHeader& h);
Json checks_json(const std::vector<CheckOutcome>& checks);
Json skipped_json(const ResidualReport& report);
Json table_json(const std::vector<TableRow>& rows, double tolerance);
Json classify_json(const std::vector<ClassLabel>& labels);
Json point_frame_json(const PointFrame& pf);

std::string header_text(const RunHeader& h);
std::string checks_text(const std::vector<CheckOutcome>& checks);
std::string table_text(const std::vector<TableRow>& rows, double tolerance);
std::string classify_text(const std::vector<ClassLabel>& labels);

/// Fixed-width scientific notation, e.g. "1.234e-05".
std::string sci(double v);

}  // namespace leglab
