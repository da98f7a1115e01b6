#pragma once

// Nearest neighbor rule: an executor with explicit tie-breaking and an
// independent validator that certifies a given (partial) tour.
//
// The executor keeps an incrementally shrinking list of unvisited cities.
// The validator never touches that bookkeeping: it rebuilds the argmin set
// from a visited bitmap at every step.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nnadv/error.hpp"
#include "nnadv/instance.hpp"
#include "nnadv/metric.hpp"
#include "nnadv/tour.hpp"

namespace nnadv {

/// How the executor picks among equally near cities.
class TieBreakPolicy {
 public:
  enum class Kind { lexicographic, index_order, adversarial };

  /// Smallest (x, y).
  static TieBreakPolicy lexicographic() { return TieBreakPolicy(Kind::lexicographic); }
  /// Smallest city index.
  static TieBreakPolicy index_order() { return TieBreakPolicy(Kind::index_order); }
  /// Follow `target`; fail if it ever leaves the argmin set.
  static TieBreakPolicy adversarial(TourPath target) {
    if (target.empty()) throw Error("adversarial policy needs a non-empty target");
    TieBreakPolicy p(Kind::adversarial);
    p.target_ = std::move(target);
    return p;
  }

  /// `lexicographic` or `index` (alias `index_order`).
  static TieBreakPolicy parse(std::string_view name) {
    if (name == "lexicographic" || name == "lex") return lexicographic();
    if (name == "index" || name == "index_order") return index_order();
    throw ParseError("unknown tie-break policy '" + std::string(name) + "'");
  }

  Kind kind() const { return kind_; }
  const TourPath& target() const { return target_; }

  std::string name() const {
    switch (kind_) {
      case Kind::lexicographic: return "lexicographic";
      case Kind::index_order: return "index";
      case Kind::adversarial: return "adversarial";
    }
    return {};
  }

 private:
  explicit TieBreakPolicy(Kind kind) : kind_(kind) {}

  Kind kind_;
  TourPath target_;
};

struct NnrStep {
  std::size_t from = 0;
  std::size_t chosen = 0;
  DistanceValue distance;
  std::vector<std::size_t> tie_set;  // ascending city indices
};

struct NnrTrace {
  std::vector<NnrStep> steps;
};

struct NnrRun {
  TourPath tour;
  NnrTrace trace;
};

/// Runs the nearest neighbor rule from `start` over all cities. The returned
/// tour is open. Throws AdversarialTargetIllegal when an adversarial target
/// cannot be followed.
inline NnrRun run_nnr(const Instance& instance, std::size_t start, const TieBreakPolicy& policy) {
  const std::size_t n = instance.size();
  if (start >= n) throw Error("start city out of range");
  if (policy.kind() == TieBreakPolicy::Kind::adversarial) {
    const TourPath& target = policy.target();
    if (target.order.front() != start) throw Error("adversarial target must begin at the start city");
    if (target.size() != n) throw Error("adversarial target must visit every city");
  }

  NnrRun run;
  run.tour.order.reserve(n);
  run.tour.order.push_back(start);
  std::vector<std::size_t> unvisited;
  unvisited.reserve(n - 1);
  for (std::size_t c = 0; c < n; ++c) {
    if (c != start) unvisited.push_back(c);
  }
  const MetricSpec& metric = instance.metric();

  std::size_t current = start;
  std::vector<std::size_t> slots;  // positions in `unvisited` of the current tie set
  while (!unvisited.empty()) {
    const SourceView view = instance.from(current);
    std::optional<DistanceValue> best;
    slots.clear();
    for (std::size_t pos = 0; pos < unvisited.size(); ++pos) {
      DistanceValue d = view.to(unvisited[pos]);
      const Ordering ord = best ? compare(d, *best, metric) : Ordering::Less;
      if (ord == Ordering::Less) {
        best = std::move(d);
        slots.assign(1, pos);
      } else if (ord == Ordering::Equal) {
        slots.push_back(pos);
      }
    }

    const std::size_t step = run.tour.size();
    std::size_t pick = slots.front();
    switch (policy.kind()) {
      case TieBreakPolicy::Kind::lexicographic:
        for (std::size_t s : slots) {
          if (instance.city(unvisited[s]) < instance.city(unvisited[pick])) pick = s;
        }
        break;
      case TieBreakPolicy::Kind::index_order:
        for (std::size_t s : slots) {
          if (unvisited[s] < unvisited[pick]) pick = s;
        }
        break;
      case TieBreakPolicy::Kind::adversarial: {
        const std::size_t wanted = policy.target().order[step];
        auto hit = std::find_if(slots.begin(), slots.end(), [&](std::size_t s) { return unvisited[s] == wanted; });
        if (hit == slots.end()) throw AdversarialTargetIllegal(step);
        pick = *hit;
        break;
      }
    }

    NnrStep record;
    record.from = current;
    record.chosen = unvisited[pick];
    record.distance = view.to(record.chosen);
    for (std::size_t s : slots) record.tie_set.push_back(unvisited[s]);
    std::sort(record.tie_set.begin(), record.tie_set.end());
    run.trace.steps.push_back(std::move(record));

    current = unvisited[pick];
    run.tour.order.push_back(current);
    unvisited[pick] = unvisited.back();
    unvisited.pop_back();
  }
  return run;
}

enum class ValidationMode { weak, strict };

struct TieRecord {
  std::size_t step = 0;
  std::vector<std::size_t> tie_set;
};

/// Outcome of validate_nnr. Steps are numbered from 1: step s moves from
/// order[s - 1] to order[s].
struct NnrVerdict {
  bool valid = true;
  std::optional<std::size_t> failed_step;
  std::optional<DistanceValue> step_distance;
  std::optional<DistanceValue> minimum;
  std::vector<std::size_t> tie_set;  // argmin set at the failing step
  std::vector<TieRecord> ties;       // steps (before any failure) whose argmin set is not a singleton
  std::string reason;
};

/// Checks that every step of `tour` goes to a nearest unvisited city of the
/// whole instance (weak) or to the unique nearest one (strict).
inline NnrVerdict validate_nnr(const Instance& instance, const TourPath& tour, ValidationMode mode) {
  check_tour(instance, tour);
  NnrVerdict verdict;
  const std::size_t n = instance.size();
  const MetricSpec& metric = instance.metric();
  std::vector<char> visited(n, 0);
  std::vector<DistanceValue> row(n);
  if (!tour.empty()) visited[tour.order.front()] = 1;

  for (std::size_t step = 1; step < tour.size(); ++step) {
    const std::size_t from = tour.order[step - 1];
    const std::size_t chosen = tour.order[step];
    const SourceView view = instance.from(from);

    std::optional<std::size_t> argmin;
    for (std::size_t c = 0; c < n; ++c) {
      if (visited[c]) continue;
      row[c] = view.to(c);
      if (!argmin || compare(row[c], row[*argmin], metric) == Ordering::Less) argmin = c;
    }
    std::vector<std::size_t> tie_set;
    for (std::size_t c = 0; c < n; ++c) {
      if (!visited[c] && compare(row[c], row[*argmin], metric) == Ordering::Equal) tie_set.push_back(c);
    }

    const bool attains_min = compare(row[chosen], row[*argmin], metric) == Ordering::Equal;
    const bool unique = tie_set.size() == 1;
    if (!attains_min || (mode == ValidationMode::strict && !unique)) {
      verdict.valid = false;
      verdict.failed_step = step;
      verdict.step_distance = row[chosen];
      verdict.minimum = row[*argmin];
      verdict.tie_set = std::move(tie_set);
      verdict.reason = !attains_min ? "step is longer than the nearest unvisited city"
                                    : "nearest unvisited city is not unique";
      return verdict;
    }
    if (!unique) verdict.ties.push_back({step, std::move(tie_set)});
    visited[chosen] = 1;
  }
  return verdict;
}

struct ClosedTour {
  TourPath tour;
  Length length;
};

/// Appends the edge from the last city back to the first.
inline ClosedTour close_tour(const Instance& instance, const TourPath& open_tour) {
  check_tour(instance, open_tour);
  if (open_tour.size() != instance.size()) throw Error("cannot close a tour that misses cities");
  ClosedTour out;
  out.tour = open_tour;
  out.tour.closed = true;
  out.length = tour_length(instance, out.tour);
  return out;
}

}  // namespace nnadv
