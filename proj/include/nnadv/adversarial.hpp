#pragma once

// The recursive partial NNR tour on G_k that starts at the lower-left
// landmark, ends at the top-middle landmark, and has length
// (12 + 4k) * 2^k - 3, together with its certification.
//
// Layout of G_{k+1}: left copy of G_k in columns [0, c), separating 2 x 3
// grid in columns c, c+1, c+2, right copy in columns [c+3, 2c+3), where
// c = 8 * 2^k - 3.

#include <cstdint>
#include <string>
#include <vector>

#include "nnadv/error.hpp"
#include "nnadv/instance.hpp"
#include "nnadv/nnr.hpp"
#include "nnadv/tour.hpp"

namespace nnadv {

/// (12 + 4k) * 2^k - 3.
constexpr std::int64_t predicted_length(int k) { return (12 + 4 * std::int64_t{k}) * (std::int64_t{1} << k) - 3; }

/// Length of each of the two long jumps added when going from level k to k+1.
constexpr std::int64_t long_jump_length(int k) { return 4 * (std::int64_t{1} << k) - 1; }

/// L(k+1) == 2 L(k) + 5 + (8 * 2^k - 2).
constexpr bool length_recurrence_holds(int k) {
  return predicted_length(k + 1) == 2 * predicted_length(k) + 5 + (8 * (std::int64_t{1} << k) - 2);
}

/// Coordinates of the level-k tour, before indexing into G_k.
inline std::vector<ScaledPoint> adversarial_coordinates(int k) {
  if (k < 0) throw Error("k must be non-negative");
  std::vector<ScaledPoint> tour = {{0, 0}, {0, 1}, {1, 1}, {1, 0}, {2, 0},
                                   {3, 0}, {4, 0}, {4, 1}, {3, 1}, {2, 1}};
  for (int level = 0; level < k; ++level) {
    const std::int64_t c = family_columns(level);
    std::vector<ScaledPoint> next;
    next.reserve(2 * tour.size() + 6);
    next.insert(next.end(), tour.begin(), tour.end());
    next.insert(next.end(), {{c, 1}, {c, 0}, {c + 1, 0}, {c + 2, 0}});
    for (ScaledPoint p : tour) next.push_back({p.x + c + 3, p.y});
    next.insert(next.end(), {{c + 2, 1}, {c + 1, 1}});
    tour = std::move(next);
  }
  return tour;
}

/// The 10-city tour of G_0 from l_0 = (0,0) to m_0 = (2,1).
inline TourPath base_tour_g0() {
  TourPath tour;
  for (ScaledPoint p : adversarial_coordinates(0)) tour.order.push_back(grid_index(family_columns(0), p.x, p.y));
  return tour;
}

struct ConstructionRecord {
  int k = 0;
  TourPath tour;  // indices into G_k, open
  std::int64_t predicted_length = 0;
  std::size_t start = 0;  // l_k
  std::size_t end = 0;    // m_k
};

inline ConstructionRecord build_adversarial_tour(int k) {
  if (k < 0) throw Error("k must be non-negative");
  const std::int64_t cols = family_columns(k);
  ConstructionRecord record;
  record.k = k;
  record.predicted_length = predicted_length(k);
  for (ScaledPoint p : adversarial_coordinates(k)) record.tour.order.push_back(grid_index(cols, p.x, p.y));
  record.start = grid_index(cols, 0, 0);
  record.end = grid_index(cols, (cols - 1) / 2, 1);
  return record;
}

/// Sub-verdicts: (a) permutation of all cities, (b) endpoints are the
/// landmarks, (c) exact length, (d) weak NNR validity in the whole instance.
struct CertificationReport {
  int k = 0;
  std::string metric;
  bool permutation = false;
  bool endpoints = false;
  bool length = false;
  bool nnr = false;
  Length measured;
  std::int64_t predicted = 0;
  NnrVerdict verdict;
  std::vector<std::string> failures;

  bool passed() const { return permutation && endpoints && length && nnr; }
};

/// Certifies an arbitrary open tour against the four sub-checks for G_k.
inline CertificationReport certify_tour(const Instance& instance, const TourPath& tour, int k) {
  CertificationReport report;
  report.k = k;
  report.metric = instance.metric().name();
  report.predicted = predicted_length(k);

  std::vector<char> seen(instance.size(), 0);
  report.permutation = tour.size() == instance.size();
  for (std::size_t c : tour.order) {
    if (c >= instance.size() || seen[c]) {
      report.permutation = false;
      break;
    }
    seen[c] = 1;
  }
  if (!report.permutation) {
    report.failures.push_back("(a) tour is not a permutation of the " + std::to_string(instance.size()) + " cities");
    return report;
  }

  report.endpoints = tour.order.front() == instance.landmark_l() && tour.order.back() == instance.landmark_m();
  if (!report.endpoints) {
    report.failures.push_back("(b) tour runs " + std::to_string(tour.order.front()) + " -> " +
                              std::to_string(tour.order.back()) + ", expected " +
                              std::to_string(instance.landmark_l()) + " -> " + std::to_string(instance.landmark_m()));
  }

  report.measured = tour_length(instance, tour);
  report.length = report.measured.exact && *report.measured.exact == report.predicted * instance.scale();
  if (!report.length) {
    report.failures.push_back("(c) measured length " + std::to_string(report.measured.value()) +
                              " != " + std::to_string(report.predicted));
  }

  report.verdict = validate_nnr(instance, tour, ValidationMode::weak);
  report.nnr = report.verdict.valid;
  if (!report.nnr) {
    report.failures.push_back("(d) not a nearest neighbor step at step " + std::to_string(*report.verdict.failed_step) +
                              " (" + std::to_string(tour.order[*report.verdict.failed_step - 1]) + " -> " +
                              std::to_string(tour.order[*report.verdict.failed_step]) + ")");
  }
  return report;
}

inline CertificationReport certify_lemma(int k, const MetricSpec& metric) {
  const Instance instance = generate_gk(k, metric);
  return certify_tour(instance, build_adversarial_tour(k).tour, k);
}

}  // namespace nnadv
