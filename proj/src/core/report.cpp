#include "core/report.hpp"

#include <cmath>

#include "core/error.hpp"

namespace fcv {

namespace {
constexpr std::size_t kReferenceIntervals = 64;
}

Ladder default_ladder() { return {64, 128, 256, 512}; }

void validate_ladder(const Ladder& ladder, std::size_t min_levels) {
  if (ladder.size() < min_levels) {
    throw Error(ErrorKind::Domain, "ladder needs at least " +
                                       std::to_string(min_levels) + " levels");
  }
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] < 2) {
      throw Error(ErrorKind::Domain, "grid levels must be >= 2");
    }
    if (i > 0 && ladder[i] <= ladder[i - 1]) {
      throw Error(ErrorKind::Domain, "ladder must be strictly increasing");
    }
  }
}

std::optional<double> estimate_order(const Ladder& levels,
                                     const std::vector<double>& errors,
                                     double roundoff_floor) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < levels.size() && i < errors.size(); ++i) {
    if (!(errors[i] > roundoff_floor)) continue;
    const double lx = -std::log(static_cast<double>(levels[i]));  // log h + c
    const double ly = std::log(errors[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double n = static_cast<double>(count);
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (n * sxy - sx * sy) / denom;
}

Report finalize(Report report) {
  const auto& t = report.thresholds;
  report.estimated_order =
      estimate_order(report.grid_levels, report.errors, t.roundoff_floor);
  bool ok = false;
  if (!report.errors.empty()) {
    const double finest = report.errors.back();
    if (finest <= t.roundoff_floor) {
      ok = true;
    } else if (report.estimated_order) {
      ok = *report.estimated_order >= t.min_order && finest <= t.error_ceiling;
    }
  }
  report.passed = ok && report.constraints_ok;
  return report;
}

std::size_t endpoint_exclusion(std::size_t intervals, std::size_t base_nodes) {
  const std::size_t scaled =
      (base_nodes * intervals + kReferenceIntervals - 1) / kReferenceIntervals;
  return scaled > base_nodes ? scaled : base_nodes;
}

bool non_increasing(const std::vector<double>& values, double roundoff_floor) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] + roundoff_floor) return false;
  }
  return true;
}

}  // namespace fcv
