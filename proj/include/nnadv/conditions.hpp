#pragma once

// Machine checks of the metric conditions the lower-bound construction relies
// on, plus a (sampled or exhaustive) triangle-inequality check.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "nnadv/instance.hpp"
#include "nnadv/metric.hpp"

namespace nnadv {

struct Violation {
  std::vector<std::size_t> cities;  // pair or triple
  std::vector<double> measured;     // true units
  std::string what;
};

struct ConditionReport {
  bool passed = true;
  std::vector<Violation> violations;

  void add(Violation v) {
    passed = false;
    violations.push_back(std::move(v));
  }
};

/// Checks, for every pair of cities:
///  - same x or same y: distance equals the euclidean distance exactly;
///  - otherwise: distance is at least |dx|.
/// `dist(i, j)` supplies the distance under test.
template <typename DistanceFn>
ConditionReport check_metric_conditions(std::span<const ScaledPoint> cities, std::int64_t scale,
                                        DistanceFn&& dist) {
  ConditionReport report;
  const double s = static_cast<double>(scale);
  for (std::size_t i = 0; i < cities.size(); ++i) {
    for (std::size_t j = i + 1; j < cities.size(); ++j) {
      const std::int64_t dx = std::abs(cities[i].x - cities[j].x);
      const std::int64_t dy = std::abs(cities[i].y - cities[j].y);
      const DistanceValue d = dist(i, j);
      if (dx == 0 || dy == 0) {
        if (compare_with_length(d, dx + dy) != Ordering::Equal) {
          report.add({{i, j}, {d.value(), static_cast<double>(dx + dy) / s}, "axis-aligned pair is not euclidean"});
        }
      } else if (compare_with_length(d, dx) == Ordering::Less) {
        report.add({{i, j}, {d.value(), static_cast<double>(dx) / s}, "diagonal pair shorter than |dx|"});
      }
    }
  }
  return report;
}

inline ConditionReport check_metric_conditions(const Instance& instance) {
  return check_metric_conditions(instance.cities(), instance.scale(),
                                 [&](std::size_t i, std::size_t j) { return instance.distance(i, j); });
}

namespace detail {

/// d(i,j) <= d(i,k) + d(k,j), exactly when all three are exact integers.
inline bool triangle_holds(const DistanceValue& ij, const DistanceValue& ik, const DistanceValue& kj) {
  if (ij.exact && ik.exact && kj.exact) return *ij.exact <= *ik.exact + *kj.exact;
  const double rhs = ik.approx + kj.approx;
  return ij.approx <= rhs + kRelativeTolerance * std::max(ij.approx, rhs);
}

}  // namespace detail

/// Tests d(i,j) <= d(i,k) + d(k,j). Exhaustive over all triples when n <= 40,
/// otherwise on `sample_size` random triples drawn deterministically from `seed`.
template <typename DistanceFn>
ConditionReport check_triangle_inequality(std::size_t n, std::int64_t scale, DistanceFn&& dist,
                                          std::size_t sample_size, std::uint64_t seed) {
  if (sample_size < 1) throw Error("sample size must be at least 1");
  ConditionReport report;
  const double s = static_cast<double>(scale);
  auto check = [&](std::size_t i, std::size_t j, std::size_t k) {
    const DistanceValue ij = dist(i, j), ik = dist(i, k), kj = dist(k, j);
    if (!detail::triangle_holds(ij, ik, kj)) {
      report.add({{i, j, k}, {ij.approx / s, ik.approx / s, kj.approx / s}, "triangle inequality violated"});
    }
  };
  if (n <= 40) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) check(i, j, k);
    return report;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::size_t t = 0; t < sample_size; ++t) {
    const std::size_t i = pick(rng), j = pick(rng), k = pick(rng);
    check(i, j, k);
  }
  return report;
}

inline ConditionReport check_triangle_inequality(const Instance& instance, std::size_t sample_size,
                                                 std::uint64_t seed) {
  return check_triangle_inequality(
      instance.size(), instance.scale(), [&](std::size_t i, std::size_t j) { return instance.distance(i, j); },
      sample_size, seed);
}

}  // namespace nnadv
