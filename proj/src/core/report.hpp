#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace fcv {

/// Grid levels (numbers of intervals) of a refinement study.
using Ladder = std::vector<std::size_t>;

/// 64, 128, 256, 512.
Ladder default_ladder();

/// Throws Error(Domain) unless the ladder is strictly increasing, every level
/// is >= 2 and there are at least min_levels levels.
void validate_ladder(const Ladder& ladder, std::size_t min_levels);

struct Thresholds {
  double min_order = 1.0;
  double error_ceiling = 0.0;
  /// Errors at or below this are treated as exact (rounding only).
  double roundoff_floor = 1e-12;
  friend bool operator==(const Thresholds&, const Thresholds&) = default;
};

struct NamedSeries {
  std::string name;
  std::vector<double> values;
  friend bool operator==(const NamedSeries&, const NamedSeries&) = default;
};

/// Outcome of a refinement study: error per level, the least-squares slope of
/// log(error) against log(h), and a pass verdict derived from the thresholds.
struct Report {
  std::string name;
  Ladder grid_levels;
  std::vector<double> errors;
  /// Empty when fewer than two levels have errors above the roundoff floor.
  std::optional<double> estimated_order;
  Thresholds thresholds;
  /// Extra pass conditions a check may impose (e.g. a pointwise bound).
  bool constraints_ok = true;
  bool passed = false;
  /// Auxiliary per-level quantities (fitted constants, raw sides, ...).
  std::vector<NamedSeries> series;

  friend bool operator==(const Report&, const Report&) = default;
};

/// Least-squares slope of log(error) against log(1/N), using only levels
/// whose error exceeds the floor.
std::optional<double> estimate_order(const Ladder& levels,
                                     const std::vector<double>& errors,
                                     double roundoff_floor);

/// Fills estimated_order and passed. A report passes when its finest error
/// is at roundoff, or when the order reaches min_order and the finest error
/// is within error_ceiling; constraints_ok must hold in both cases.
Report finalize(Report report);

/// Nodes to drop next to a singular endpoint: base_nodes at 64 intervals,
/// scaled so the excluded width stays fixed under refinement (never fewer
/// than base_nodes).
std::size_t endpoint_exclusion(std::size_t intervals, std::size_t base_nodes);

/// True when values never increase by more than the floor from one level to
/// the next.
bool non_increasing(const std::vector<double>& values, double roundoff_floor);

}  // namespace fcv
