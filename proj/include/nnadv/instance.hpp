#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nnadv/error.hpp"
#include "nnadv/metric.hpp"

namespace nnadv {

/// Number of grid columns of G_k: 8 * 2^k - 3.
constexpr std::int64_t family_columns(int k) { return 8 * (std::int64_t{1} << k) - 3; }

/// Number of cities of G_k: 16 * 2^k - 6.
constexpr std::int64_t family_size(int k) { return 16 * (std::int64_t{1} << k) - 6; }

/// Index of grid cell (x, y) in a 2 x cols grid. Bottom row first.
constexpr std::size_t grid_index(std::int64_t cols, std::int64_t x, std::int64_t y) {
  return static_cast<std::size_t>(y * cols + x);
}

class Instance;

/// Distances from one fixed city. For graphic metrics the breadth-first row
/// is fetched once and reused for every lookup.
class SourceView {
 public:
  DistanceValue to(std::size_t target) const;
  std::size_t source() const { return source_; }

 private:
  friend class Instance;
  SourceView(const Instance& instance, std::size_t source);

  const Instance* instance_;
  std::size_t source_;
  std::shared_ptr<const GraphicMetric::Row> row_;
};

/// Immutable TSP instance: integer cities at a common scale, a metric, and
/// the two landmark cities l (lower left) and m (top middle).
class Instance {
 public:
  /// Throws on duplicate cities, bad landmarks, or a graphic metric whose
  /// unit graph cannot be built or is disconnected.
  Instance(std::vector<ScaledPoint> cities, std::int64_t scale, MetricSpec metric,
           std::size_t landmark_l, std::size_t landmark_m, std::optional<int> family_k = std::nullopt)
      : cities_(std::move(cities)),
        scale_(scale),
        metric_(std::move(metric)),
        landmark_l_(landmark_l),
        landmark_m_(landmark_m),
        family_k_(family_k) {
    if (scale_ < 1) throw Error("scale must be a positive integer");
    if (cities_.empty()) throw Error("instance needs at least one city");
    if (landmark_l_ >= cities_.size() || landmark_m_ >= cities_.size()) {
      throw Error("landmark index out of range");
    }
    lookup_.reserve(cities_.size());
    for (std::size_t i = 0; i < cities_.size(); ++i) lookup_.emplace_back(cities_[i], i);
    std::sort(lookup_.begin(), lookup_.end());
    for (std::size_t i = 1; i < lookup_.size(); ++i) {
      if (lookup_[i].first == lookup_[i - 1].first) {
        throw Error("cities " + std::to_string(lookup_[i - 1].second) + " and " +
                    std::to_string(lookup_[i].second) + " coincide");
      }
    }
    if (metric_.is_graphic()) {
      if (scale_ != 1) throw Error("graphic metric requires scale 1");
      if (!metric_.is_bound()) metric_ = MetricSpec::graphic(unit_graph());
      if (metric_.graph().graph().size() != cities_.size()) {
        throw Error("graphic adjacency does not match the city count");
      }
    }
  }

  std::size_t size() const { return cities_.size(); }
  std::span<const ScaledPoint> cities() const { return cities_; }
  const ScaledPoint& city(std::size_t i) const { return cities_.at(i); }
  std::int64_t scale() const { return scale_; }
  const MetricSpec& metric() const { return metric_; }
  std::size_t landmark_l() const { return landmark_l_; }
  std::size_t landmark_m() const { return landmark_m_; }
  std::optional<int> family_k() const { return family_k_; }

  std::optional<std::size_t> index_of(ScaledPoint p) const {
    auto it = std::lower_bound(lookup_.begin(), lookup_.end(), std::make_pair(p, std::size_t{0}));
    if (it != lookup_.end() && it->first == p) return it->second;
    return std::nullopt;
  }

  SourceView from(std::size_t source) const { return SourceView(*this, source); }

  DistanceValue distance(std::size_t a, std::size_t b) const { return from(a).to(b); }

  /// Edges between every pair of cities at euclidean distance exactly one
  /// (in true units). Only meaningful at scale 1.
  UnitGraph unit_graph() const {
    if (scale_ != 1) throw Error("unit graph requires scale 1");
    UnitGraph graph(cities_.size());
    for (std::size_t i = 0; i < cities_.size(); ++i) {
      const ScaledPoint c = cities_[i];
      for (ScaledPoint n : {ScaledPoint{c.x + 1, c.y}, ScaledPoint{c.x, c.y + 1}}) {
        if (auto j = index_of(n)) graph.add_edge(i, *j);
      }
    }
    return graph;
  }

  /// Equal cities, scale, metric, landmarks and family level. Graphic
  /// metrics must also agree on their edge sets.
  friend bool operator==(const Instance& a, const Instance& b) {
    if (a.cities_ != b.cities_ || a.scale_ != b.scale_ || a.metric_.tag() != b.metric_.tag() ||
        a.landmark_l_ != b.landmark_l_ || a.landmark_m_ != b.landmark_m_ || a.family_k_ != b.family_k_) {
      return false;
    }
    return !a.metric_.is_graphic() || a.metric_.graph().graph().edges() == b.metric_.graph().graph().edges();
  }

  /// Same cities and landmarks under another metric.
  Instance with_metric(MetricSpec metric) const {
    return Instance(cities_, scale_, std::move(metric), landmark_l_, landmark_m_, family_k_);
  }

 private:
  std::vector<ScaledPoint> cities_;
  std::int64_t scale_;
  MetricSpec metric_;
  std::size_t landmark_l_;
  std::size_t landmark_m_;
  std::optional<int> family_k_;
  std::vector<std::pair<ScaledPoint, std::size_t>> lookup_;
};

inline SourceView::SourceView(const Instance& instance, std::size_t source)
    : instance_(&instance), source_(source) {
  if (source >= instance.size()) throw Error("city index out of range");
  if (instance.metric().is_graphic()) row_ = instance.metric().graph().row(source);
}

inline DistanceValue SourceView::to(std::size_t target) const {
  if (row_) {
    DistanceValue d;
    d.tag = {MetricKind::graphic, 0.0};
    d.exact = row_->at(target);
    d.approx = static_cast<double>(*d.exact);
    return d;
  }
  return lp_distance(instance_->metric().p(), instance_->city(source_), instance_->city(target),
                     instance_->scale());
}

/// Result of building the unit-distance graph of an instance.
struct UnitGraphResult {
  UnitGraph graph;
  bool connected = false;
  std::optional<std::pair<std::size_t, std::size_t>> unreachable;
};

/// Unit-distance graph; disconnection is reported, not thrown.
inline UnitGraphResult build_unit_graph(const Instance& instance) {
  UnitGraphResult result;
  result.graph = instance.unit_graph();
  result.unreachable = result.graph.unreachable_pair();
  result.connected = !result.unreachable.has_value();
  return result;
}

/// Full 2 x cols grid at scale 1. Landmarks: l = (0, 0) and m = top middle,
/// with x rounded down for even column counts.
inline Instance generate_grid(std::int64_t cols, MetricSpec metric, std::optional<int> family_k = std::nullopt) {
  if (cols < 2) throw Error("grid needs at least 2 columns");
  std::vector<ScaledPoint> cities;
  cities.reserve(static_cast<std::size_t>(2 * cols));
  for (std::int64_t y = 0; y < 2; ++y) {
    for (std::int64_t x = 0; x < cols; ++x) cities.push_back({x, y});
  }
  const std::int64_t middle = (cols - 1) / 2;
  return Instance(std::move(cities), 1, std::move(metric), grid_index(cols, 0, 0),
                  grid_index(cols, middle, 1), family_k);
}

/// The hard instance G_k: a 2 x (8 * 2^k - 3) grid with n = 16 * 2^k - 6 cities.
inline Instance generate_gk(int k, MetricSpec metric) {
  if (k < 0) throw Error("k must be non-negative");
  if (k > 24) throw Error("k is too large");
  return generate_grid(family_columns(k), std::move(metric), k);
}

/// Column count when the instance is a full 2 x m grid of lattice step
/// `scale` anchored at the origin, in the layout generate_grid produces.
inline std::optional<std::int64_t> grid_columns(const Instance& instance) {
  const auto n = static_cast<std::int64_t>(instance.size());
  if (n < 4 || n % 2 != 0) return std::nullopt;
  const std::int64_t cols = n / 2;
  const std::int64_t s = instance.scale();
  for (std::int64_t y = 0; y < 2; ++y) {
    for (std::int64_t x = 0; x < cols; ++x) {
      if (instance.city(grid_index(cols, x, y)) != ScaledPoint{x * s, y * s}) return std::nullopt;
    }
  }
  return cols;
}

}  // namespace nnadv
