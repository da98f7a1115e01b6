#pragma once

// Runs the nearest neighbor rule from many starts under several tie-break
// policies and reports tour lengths against the optimum.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nnadv/instance.hpp"
#include "nnadv/nnr.hpp"
#include "nnadv/optimum.hpp"
#include "nnadv/parallel.hpp"

namespace nnadv {

struct SweepRow {
  std::optional<int> k;
  std::int64_t n = 0;
  std::string metric;
  std::string policy;
  std::size_t start = 0;
  double open_length = 0.0;
  double closed_length = 0.0;
  std::optional<double> opt_length;
  double ratio_open = std::numeric_limits<double>::quiet_NaN();
  double ratio_closed = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> chain;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  bool weak_valid = false;
  TourPath tour;
};

/// Optimum length for the sweep: n for full grids, Held-Karp when small,
/// otherwise unknown.
inline std::optional<double> sweep_optimum(const Instance& instance) {
  if (grid_columns(instance)) return perimeter_tour(instance).length.value();
  if (instance.size() <= 18) return exact_optimum(instance).value();
  return std::nullopt;
}

/// One row per (start, policy), ordered by start then by policy position.
/// An empty `starts` means every city.
inline std::vector<SweepRow> start_sweep(const Instance& instance, const std::vector<TieBreakPolicy>& policies,
                                         std::vector<std::size_t> starts = {}, unsigned threads = 1) {
  if (starts.empty()) {
    for (std::size_t s = 0; s < instance.size(); ++s) starts.push_back(s);
  }
  const std::optional<double> opt = sweep_optimum(instance);
  const Bounds b = bounds(std::max<std::int64_t>(2, static_cast<std::int64_t>(instance.size())), instance.family_k());

  return parallel_map(starts.size() * policies.size(), threads, [&](std::size_t cell) {
    const std::size_t start = starts[cell / policies.size()];
    const TieBreakPolicy& policy = policies[cell % policies.size()];
    const NnrRun run = run_nnr(instance, start, policy);

    SweepRow row;
    row.k = instance.family_k();
    row.n = static_cast<std::int64_t>(instance.size());
    row.metric = instance.metric().name();
    row.policy = policy.name();
    row.start = start;
    row.open_length = tour_length(instance, run.tour).value();
    row.closed_length = close_tour(instance, run.tour).length.value();
    row.opt_length = opt;
    if (opt && *opt > 0) {
      row.ratio_open = row.open_length / *opt;
      row.ratio_closed = row.closed_length / *opt;
    }
    row.chain = b.chain;
    row.lower_bound = b.lower;
    row.upper_bound = b.upper;
    row.weak_valid = validate_nnr(instance, run.tour, ValidationMode::weak).valid;
    row.tour = run.tour;
    return row;
  });
}

}  // namespace nnadv
