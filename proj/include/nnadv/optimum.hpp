#pragma once

// Optimum tour lengths and the approximation-ratio bound arithmetic.
//
// For 2 x m grids the optimum is n: the perimeter tour has n unit edges, and
// no closed tour on n cities with minimum pairwise distance 1 is shorter.
// The Held-Karp dynamic program confirms this independently on small grids.

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nnadv/adversarial.hpp"
#include "nnadv/error.hpp"
#include "nnadv/instance.hpp"
#include "nnadv/parallel.hpp"
#include "nnadv/tour.hpp"

namespace nnadv {

/// Closed tour along the bottom row left to right, then the top row right
/// to left. Rejects anything but a full 2 x m grid.
inline ClosedTour perimeter_tour(const Instance& instance) {
  const auto cols = grid_columns(instance);
  if (!cols) throw Error("perimeter tour needs a full 2 x m grid");
  ClosedTour out;
  out.tour.closed = true;
  for (std::int64_t x = 0; x < *cols; ++x) out.tour.order.push_back(grid_index(*cols, x, 0));
  for (std::int64_t x = *cols - 1; x >= 0; --x) out.tour.order.push_back(grid_index(*cols, x, 1));
  out.length = tour_length(instance, out.tour);
  return out;
}

namespace detail {

template <typename Weight>
Weight held_karp(std::size_t n, const std::vector<Weight>& w) {
  // dp[mask][j]: shortest path from city 0 through `mask` (over cities 1..n-1) ending at j.
  const std::size_t m = n - 1;
  const std::size_t full = (std::size_t{1} << m) - 1;
  const Weight inf = std::numeric_limits<Weight>::max() / 4;
  std::vector<Weight> dp((full + 1) * m, inf);
  auto at = [&](std::size_t mask, std::size_t j) -> Weight& { return dp[mask * m + j]; };
  for (std::size_t j = 0; j < m; ++j) at(std::size_t{1} << j, j) = w[j + 1];
  for (std::size_t mask = 1; mask <= full; ++mask) {
    for (std::size_t j = 0; j < m; ++j) {
      const Weight here = at(mask, j);
      if (!(mask >> j & 1U) || here >= inf) continue;
      for (std::size_t t = 0; t < m; ++t) {
        if (mask >> t & 1U) continue;
        const Weight cand = here + w[(j + 1) * n + (t + 1)];
        Weight& slot = at(mask | (std::size_t{1} << t), t);
        if (cand < slot) slot = cand;
      }
    }
  }
  Weight best = inf;
  for (std::size_t j = 0; j < m; ++j) {
    const Weight cand = at(full, j) + w[(j + 1) * n];
    if (cand < best) best = cand;
  }
  return best;
}

}  // namespace detail

/// Exact optimum closed-tour length by subset dynamic programming.
/// Refuses instances with more than `limit` cities.
inline Length exact_optimum(const Instance& instance, std::size_t limit = 18) {
  const std::size_t n = instance.size();
  if (n > limit) {
    throw Error("exact optimum refused: " + std::to_string(n) + " cities exceeds the limit of " +
                std::to_string(limit));
  }
  Length result;
  result.scale = instance.scale();
  if (n == 1) return result;

  std::vector<DistanceValue> table(n * n);
  bool all_exact = true;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table[i * n + j] = instance.distance(i, j);
      all_exact = all_exact && table[i * n + j].exact.has_value();
    }
  }
  if (all_exact) {
    std::vector<std::int64_t> w(n * n);
    for (std::size_t i = 0; i < n * n; ++i) w[i] = *table[i].exact;
    const std::int64_t best = n == 2 ? 2 * w[1] : detail::held_karp(n, w);
    result.exact = best;
    result.approx = static_cast<double>(best);
  } else {
    std::vector<double> w(n * n);
    for (std::size_t i = 0; i < n * n; ++i) w[i] = table[i].approx;
    result.exact.reset();
    result.approx = n == 2 ? 2 * w[1] : detail::held_karp(n, w);
  }
  return result;
}

inline int ceil_log2(std::uint64_t n) { return n <= 1 ? 0 : static_cast<int>(std::bit_width(n - 1)); }

struct Bounds {
  std::optional<double> chain;  // (3 + k) / 4
  double lower = 0.0;           // (log2 n - 1) / 4
  double upper = 0.0;           // ceil(log2 n) / 2 + 1/2
};

inline Bounds bounds(std::int64_t n, std::optional<int> k = std::nullopt) {
  if (n < 2) throw Error("bounds need n >= 2");
  Bounds b;
  if (k) b.chain = (3.0 + *k) / 4.0;
  b.lower = 0.25 * (std::log2(static_cast<double>(n)) - 1.0);
  b.upper = 0.5 * ceil_log2(static_cast<std::uint64_t>(n)) + 0.5;
  return b;
}

/// One line of the lower-bound table. Lengths are in true units.
struct RatioRow {
  std::optional<int> k;
  std::int64_t n = 0;
  std::string metric;
  double nnr_open_length = 0.0;
  double nnr_closed_length = 0.0;
  double opt_length = 0.0;
  double ratio_open = 0.0;
  double ratio_closed = 0.0;
  double chain_value = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::int64_t open_exact = 0;  // integer open length, for exact fraction checks
  std::int64_t opt_exact = 0;
  CertificationReport certification;
};

/// open / n >= (3 + k) / 4, decided on integers.
inline bool chain_holds_exact(std::int64_t open, std::int64_t n, int k) { return 4 * open >= (3 + k) * n; }

/// (3 + k) / 4 >= (log2 n - 1) / 4, i.e. 2^(k + 4) >= n, decided on integers.
inline bool log_bound_holds_exact(std::int64_t n, int k) { return (std::int64_t{1} << (k + 4)) >= n; }

class CertificationFailed : public Error {
 public:
  explicit CertificationFailed(CertificationReport report)
      : Error("certification failed for k=" + std::to_string(report.k) + " under " + report.metric +
              (report.failures.empty() ? std::string() : ": " + report.failures.front())),
        report_(std::move(report)) {}

  const CertificationReport& report() const { return report_; }

 private:
  CertificationReport report_;
};

/// Certified row for G_k under `metric`. `tour` replaces the constructed
/// adversarial tour when given.
inline RatioRow theorem_row(int k, const MetricSpec& metric, const std::optional<TourPath>& tour = std::nullopt) {
  const Instance instance = generate_gk(k, metric);
  const TourPath adversarial = tour ? *tour : build_adversarial_tour(k).tour;
  CertificationReport report = certify_tour(instance, adversarial, k);
  if (!report.passed()) throw CertificationFailed(std::move(report));

  const auto n = static_cast<std::int64_t>(instance.size());
  const Length perimeter = perimeter_tour(instance).length;
  if (!perimeter.exact || *perimeter.exact != n) throw Error("perimeter tour length differs from n");
  if (instance.size() <= 18) {
    const Length opt = exact_optimum(instance);
    if (std::abs(opt.value() - static_cast<double>(n)) > 1e-9) throw Error("exact optimum differs from n");
  }

  RatioRow row;
  row.k = k;
  row.n = n;
  row.metric = metric.name();
  row.open_exact = *report.measured.exact;
  row.opt_exact = n;
  row.nnr_open_length = report.measured.value();
  row.nnr_closed_length = close_tour(instance, adversarial).length.value();
  row.opt_length = static_cast<double>(n);
  row.ratio_open = row.nnr_open_length / row.opt_length;
  row.ratio_closed = row.nnr_closed_length / row.opt_length;
  const Bounds b = bounds(n, k);
  row.chain_value = *b.chain;
  row.lower_bound = b.lower;
  row.upper_bound = b.upper;
  row.certification = std::move(report);

  if (!chain_holds_exact(row.open_exact, n, k) || !log_bound_holds_exact(n, k)) {
    throw Error("ratio chain violated at k=" + std::to_string(k));
  }
  return row;
}

/// Rows for k = 0 .. k_max, in order of k.
inline std::vector<RatioRow> theorem_table(int k_max, const MetricSpec& metric, unsigned threads = 1) {
  if (k_max < 0) throw Error("k_max must be non-negative");
  return parallel_map(static_cast<std::size_t>(k_max) + 1, threads,
                      [&](std::size_t k) { return theorem_row(static_cast<int>(k), metric); });
}

}  // namespace nnadv
