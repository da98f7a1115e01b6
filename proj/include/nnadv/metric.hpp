#pragma once

// Distances under L^p norms and unit-grid graphic metrics.
//
// All comparisons that decide nearest-neighbor steps go through compare().
// L1, L-infinity and graphic distances compare as integers, L2 compares the
// squared integer length, and every other p falls back to a relative
// tolerance of 1e-9 unless both sides are exact (axis-aligned pairs).

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nnadv/error.hpp"

namespace nnadv {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
inline constexpr double kRelativeTolerance = 1e-9;

/// City coordinate on an integer lattice. The owning instance carries the
/// scale S; the true coordinate is (x / S, y / S).
struct ScaledPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const ScaledPoint&, const ScaledPoint&) = default;
};

enum class MetricKind { lp, graphic };

enum class Ordering { Less, Equal, Greater };

/// Identifies the distance function a value was produced under.
struct MetricTag {
  MetricKind kind = MetricKind::lp;
  double p = 2.0;

  friend bool operator==(const MetricTag&, const MetricTag&) = default;
};

/// A distance in lattice units (true distance times the scale).
///
/// `exact` is set whenever the lattice distance is an integer that the metric
/// can compare exactly; `squared_exact` is always set under L2.
struct DistanceValue {
  std::optional<std::int64_t> exact;
  double approx = 0.0;
  std::optional<std::int64_t> squared_exact;
  MetricTag tag;
  std::int64_t scale = 1;

  /// Distance in true units.
  double value() const { return approx / static_cast<double>(scale); }
};

namespace detail {

inline std::int64_t isqrt_exact_or_neg(std::int64_t v) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v ? r : -1;
}

inline Ordering order_of(std::int64_t a, std::int64_t b) {
  if (a < b) return Ordering::Less;
  if (a > b) return Ordering::Greater;
  return Ordering::Equal;
}

inline Ordering tolerant_order(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (std::abs(a - b) <= kRelativeTolerance * scale) return Ordering::Equal;
  return a < b ? Ordering::Less : Ordering::Greater;
}

}  // namespace detail

/// Distance between a and b under the L^p norm (p = kInfinity for the max norm).
inline DistanceValue lp_distance(double p, ScaledPoint a, ScaledPoint b, std::int64_t scale = 1) {
  if (!(p >= 1.0)) throw Error("L^p metric requires p >= 1");
  if (scale < 1) throw Error("scale must be a positive integer");
  const std::int64_t dx = std::abs(a.x - b.x);
  const std::int64_t dy = std::abs(a.y - b.y);
  DistanceValue d;
  d.tag = {MetricKind::lp, p};
  d.scale = scale;
  if (p == 1.0) {
    d.exact = dx + dy;
    d.approx = static_cast<double>(*d.exact);
  } else if (p == kInfinity) {
    d.exact = std::max(dx, dy);
    d.approx = static_cast<double>(*d.exact);
  } else if (p == 2.0) {
    d.squared_exact = dx * dx + dy * dy;
    const std::int64_t root = detail::isqrt_exact_or_neg(*d.squared_exact);
    if (root >= 0) d.exact = root;
    d.approx = std::hypot(static_cast<double>(dx), static_cast<double>(dy));
  } else if (dx == 0 || dy == 0) {
    d.exact = dx + dy;
    d.approx = static_cast<double>(*d.exact);
  } else {
    const double hi = static_cast<double>(std::max(dx, dy));
    const double lo = static_cast<double>(std::min(dx, dy));
    d.approx = hi * std::pow(1.0 + std::pow(lo / hi, p), 1.0 / p);
  }
  return d;
}

/// Undirected graph over city indices; edges join cities at unit distance.
class UnitGraph {
 public:
  UnitGraph() = default;
  explicit UnitGraph(std::size_t vertex_count) : adjacency_(vertex_count) {}

  void add_edge(std::size_t a, std::size_t b) {
    if (a >= size() || b >= size() || a == b) throw Error("invalid edge");
    adjacency_[a].push_back(b);
    adjacency_[b].push_back(a);
    ++edge_count_;
  }

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }

  /// Edges as (smaller, larger) pairs in ascending order.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < size(); ++a) {
      for (std::size_t b : adjacency_[a]) {
        if (a < b) out.emplace_back(a, b);
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Hop counts from source; -1 marks unreachable vertices.
  std::vector<std::int32_t> bfs(std::size_t source) const {
    std::vector<std::int32_t> dist(size(), -1);
    std::deque<std::size_t> queue{source};
    dist.at(source) = 0;
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t w : adjacency_[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
      }
    }
    return dist;
  }

  /// Some pair with no connecting path, or nullopt when connected.
  std::optional<std::pair<std::size_t, std::size_t>> unreachable_pair() const {
    if (size() == 0) return std::nullopt;
    const auto dist = bfs(0);
    for (std::size_t v = 0; v < size(); ++v) {
      if (dist[v] < 0) return std::make_pair(std::size_t{0}, v);
    }
    return std::nullopt;
  }

  bool connected() const { return !unreachable_pair().has_value(); }

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Hop distance between a and b. Throws DisconnectedGraph naming an
/// unreachable pair if the graph is not connected.
inline DistanceValue graphic_distance(const UnitGraph& graph, std::size_t a, std::size_t b) {
  if (a >= graph.size() || b >= graph.size()) throw Error("city index out of range");
  const auto dist = graph.bfs(a);
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] < 0) throw DisconnectedGraph(a, v);
  }
  DistanceValue d;
  d.tag = {MetricKind::graphic, 0.0};
  d.exact = dist[b];
  d.approx = static_cast<double>(dist[b]);
  return d;
}

/// Connected unit graph plus a per-source cache of breadth-first rows.
/// Rows are computed on first use; the cache is safe to share across threads.
class GraphicMetric {
 public:
  using Row = std::vector<std::int32_t>;

  explicit GraphicMetric(UnitGraph graph) : graph_(std::move(graph)), rows_(graph_.size()) {
    if (auto pair = graph_.unreachable_pair()) throw DisconnectedGraph(pair->first, pair->second);
  }

  const UnitGraph& graph() const { return graph_; }

  std::shared_ptr<const Row> row(std::size_t source) const {
    {
      std::lock_guard lock(mutex_);
      if (auto cached = rows_.at(source)) return cached;
    }
    auto fresh = std::make_shared<const Row>(graph_.bfs(source));
    std::lock_guard lock(mutex_);
    auto& slot = rows_[source];
    if (!slot) slot = std::move(fresh);
    return slot;
  }

 private:
  UnitGraph graph_;
  mutable std::mutex mutex_;
  mutable std::vector<std::shared_ptr<const Row>> rows_;
};

/// Which distance function governs an instance.
///
/// A graphic spec may be created unbound (no adjacency yet); instance
/// construction binds it to the unit graph of the city set.
class MetricSpec {
 public:
  static MetricSpec lp(double p) {
    if (!(p >= 1.0)) throw Error("L^p metric requires p >= 1");
    MetricSpec m;
    m.kind_ = MetricKind::lp;
    m.p_ = p;
    return m;
  }
  static MetricSpec l1() { return lp(1.0); }
  static MetricSpec l2() { return lp(2.0); }
  static MetricSpec linf() { return lp(kInfinity); }

  static MetricSpec graphic() {
    MetricSpec m;
    m.kind_ = MetricKind::graphic;
    m.p_ = 0.0;
    return m;
  }

  /// Throws DisconnectedGraph if the graph is not connected.
  static MetricSpec graphic(UnitGraph graph) {
    MetricSpec m = graphic();
    m.graph_ = std::make_shared<const GraphicMetric>(std::move(graph));
    return m;
  }

  /// Accepts `l1`, `l2`, `linf`, `l<p>` for any real p >= 1, and `graphic`.
  static MetricSpec parse(std::string_view text) {
    if (text == "graphic") return graphic();
    if (text == "linf" || text == "Linf" || text == "l-inf") return linf();
    if (text.size() < 2 || (text[0] != 'l' && text[0] != 'L')) {
      throw ParseError("unknown metric '" + std::string(text) + "'");
    }
    const std::string digits(text.substr(1));
    char* end = nullptr;
    const double p = std::strtod(digits.c_str(), &end);
    if (end != digits.c_str() + digits.size() || digits.empty() || !std::isfinite(p)) {
      throw ParseError("unknown metric '" + std::string(text) + "'");
    }
    if (p < 1.0) throw ParseError("metric '" + std::string(text) + "' has p < 1");
    return lp(p);
  }

  MetricKind kind() const { return kind_; }
  double p() const { return p_; }
  MetricTag tag() const { return {kind_, p_}; }
  bool is_graphic() const { return kind_ == MetricKind::graphic; }
  bool is_bound() const { return kind_ == MetricKind::lp || graph_ != nullptr; }

  /// True when every comparison under this metric is decided on integers.
  bool exact_comparison() const {
    return kind_ == MetricKind::graphic || p_ == 1.0 || p_ == 2.0 || p_ == kInfinity;
  }

  const GraphicMetric& graph() const {
    if (!graph_) throw Error("graphic metric has no adjacency bound");
    return *graph_;
  }

  std::string name() const {
    if (kind_ == MetricKind::graphic) return "graphic";
    if (p_ == kInfinity) return "linf";
    std::ostringstream out;
    out << 'l' << p_;
    return out.str();
  }

 private:
  MetricKind kind_ = MetricKind::lp;
  double p_ = 2.0;
  std::shared_ptr<const GraphicMetric> graph_;
};

/// Three-way comparison of two distances produced under `metric`.
/// Throws when either value was produced under another metric or scale.
inline Ordering compare(const DistanceValue& a, const DistanceValue& b, const MetricSpec& metric) {
  if (a.tag != metric.tag() || b.tag != metric.tag() || a.scale != b.scale) {
    throw Error("cannot compare distances produced under different metrics");
  }
  if (a.squared_exact && b.squared_exact) return detail::order_of(*a.squared_exact, *b.squared_exact);
  if (a.exact && b.exact) return detail::order_of(*a.exact, *b.exact);
  return detail::tolerant_order(a.approx, b.approx);
}

/// Compares a distance with an integer length given in lattice units.
inline Ordering compare_with_length(const DistanceValue& d, std::int64_t length) {
  if (d.squared_exact) return detail::order_of(*d.squared_exact, length * length);
  if (d.exact) return detail::order_of(*d.exact, length);
  return detail::tolerant_order(d.approx, static_cast<double>(length));
}

}  // namespace nnadv
