#include <gtest/gtest.h>

#include <set>

#include "nnadv/instance.hpp"

namespace nnadv {
namespace {

std::set<ScaledPoint> city_set(const Instance& instance) {
  return {instance.cities().begin(), instance.cities().end()};
}

TEST(GenerateGkTest, BaseInstance) {
  const Instance g0 = generate_gk(0, MetricSpec::l2());
  ASSERT_EQ(g0.size(), 10u);
  std::set<ScaledPoint> expected;
  for (std::int64_t x = 0; x <= 4; ++x)
    for (std::int64_t y = 0; y <= 1; ++y) expected.insert({x, y});
  EXPECT_EQ(city_set(g0), expected);
  EXPECT_EQ(g0.city(g0.landmark_l()), (ScaledPoint{0, 0}));
  EXPECT_EQ(g0.city(g0.landmark_m()), (ScaledPoint{2, 1}));
  EXPECT_EQ(g0.family_k(), 0);
  EXPECT_EQ(g0.scale(), 1);
}

TEST(GenerateGkTest, LevelOneAndThree) {
  const Instance g1 = generate_gk(1, MetricSpec::l1());
  EXPECT_EQ(g1.size(), 26u);
  EXPECT_EQ(g1.city(g1.landmark_m()), (ScaledPoint{6, 1}));
  std::int64_t max_x = 0;
  for (const auto& p : g1.cities()) max_x = std::max(max_x, p.x);
  EXPECT_EQ(max_x, 12);
  EXPECT_EQ(generate_gk(3, MetricSpec::l2()).size(), 122u);
}

TEST(GenerateGkTest, RejectsNegativeK) { EXPECT_THROW(generate_gk(-1, MetricSpec::l2()), Error); }

TEST(GenerateGkTest, CountingIdentities) {
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(family_size(k), 16 * (1 << k) - 6);
    EXPECT_EQ(family_size(k + 1), 2 * family_size(k) + 6);
    EXPECT_EQ(family_columns(k + 1), 2 * family_columns(k) + 3);
    const Instance g = generate_gk(k, MetricSpec::l1());
    EXPECT_EQ(static_cast<std::int64_t>(g.size()), family_size(k));
    EXPECT_EQ(g.city(g.landmark_m()).x, 4 * (1 << k) - 2);
    EXPECT_EQ(g.city(g.landmark_m()).y, 1);
    EXPECT_EQ(g.city(g.landmark_l()), (ScaledPoint{0, 0}));
  }
}

TEST(GenerateGridTest, SmallGrids) {
  EXPECT_EQ(city_set(generate_grid(5, MetricSpec::l2())), city_set(generate_gk(0, MetricSpec::l2())));
  EXPECT_EQ(generate_grid(2, MetricSpec::l2()).size(), 4u);
  const Instance g3 = generate_grid(3, MetricSpec::l2());
  EXPECT_EQ(g3.size(), 6u);
  EXPECT_EQ(g3.city(g3.landmark_m()), (ScaledPoint{1, 1}));
  const Instance g4 = generate_grid(4, MetricSpec::l2());
  EXPECT_EQ(g4.city(g4.landmark_m()), (ScaledPoint{1, 1}));
  EXPECT_THROW(generate_grid(1, MetricSpec::l2()), Error);
  EXPECT_EQ(grid_columns(g4), 4);
}

TEST(UnitGraphTest, EdgeCounts) {
  const Instance g0 = generate_gk(0, MetricSpec::l2());
  // Oracle: enumerate all pairs at euclidean distance 1.
  std::size_t unit_pairs = 0;
  for (std::size_t i = 0; i < g0.size(); ++i)
    for (std::size_t j = i + 1; j < g0.size(); ++j) {
      const auto dx = g0.city(i).x - g0.city(j).x, dy = g0.city(i).y - g0.city(j).y;
      unit_pairs += dx * dx + dy * dy == 1;
    }
  EXPECT_EQ(unit_pairs, 13u);
  const UnitGraphResult built = build_unit_graph(g0);
  EXPECT_EQ(built.graph.edge_count(), 13u);
  EXPECT_TRUE(built.connected);
  EXPECT_EQ(build_unit_graph(generate_grid(2, MetricSpec::l2())).graph.edge_count(), 4u);
}

TEST(UnitGraphTest, DisconnectedIsFlagged) {
  const Instance pair({{0, 0}, {2, 0}}, 1, MetricSpec::l2(), 0, 1);
  const UnitGraphResult built = build_unit_graph(pair);
  EXPECT_EQ(built.graph.edge_count(), 0u);
  EXPECT_FALSE(built.connected);
  ASSERT_TRUE(built.unreachable.has_value());
  EXPECT_THROW(pair.with_metric(MetricSpec::graphic()), DisconnectedGraph);
}

TEST(InstanceTest, RejectsMalformedInput) {
  EXPECT_THROW(Instance({{0, 0}, {0, 0}}, 1, MetricSpec::l2(), 0, 1), Error);
  EXPECT_THROW(Instance({{0, 0}, {1, 0}}, 1, MetricSpec::l2(), 0, 2), Error);
  EXPECT_THROW(Instance({{0, 0}, {1, 0}}, 0, MetricSpec::l2(), 0, 1), Error);
  EXPECT_THROW(Instance({{0, 0}, {4, 0}}, 4, MetricSpec::graphic(), 0, 1), Error);
  EXPECT_THROW(Instance({}, 1, MetricSpec::l2(), 0, 0), Error);
}

TEST(InstanceTest, IndexLookupAndLayout) {
  const Instance g1 = generate_gk(1, MetricSpec::l2());
  for (std::size_t i = 0; i < g1.size(); ++i) EXPECT_EQ(g1.index_of(g1.city(i)), i);
  EXPECT_FALSE(g1.index_of({99, 0}).has_value());
  EXPECT_EQ(g1.index_of({3, 1}), grid_index(13, 3, 1));
}

}  // namespace
}  // namespace nnadv
