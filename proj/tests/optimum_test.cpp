#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "nnadv/optimum.hpp"

namespace nnadv {
namespace {

// Brute force over all cyclic orders fixing city 0.
double brute_force_optimum(const Instance& instance) {
  std::vector<std::size_t> rest(instance.size() - 1);
  std::iota(rest.begin(), rest.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  do {
    double len = instance.distance(0, rest.front()).value() + instance.distance(rest.back(), 0).value();
    for (std::size_t i = 1; i < rest.size(); ++i) len += instance.distance(rest[i - 1], rest[i]).value();
    best = std::min(best, len);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return best;
}

TEST(PerimeterTourTest, SmallGrids) {
  EXPECT_EQ(perimeter_tour(generate_gk(0, MetricSpec::l2())).length.exact, 10);
  EXPECT_EQ(perimeter_tour(generate_gk(1, MetricSpec::l1())).length.exact, 26);
  EXPECT_EQ(perimeter_tour(generate_grid(2, MetricSpec::linf())).length.exact, 4);
}

TEST(PerimeterTourTest, LengthIsCityCount) {
  for (std::int64_t cols = 2; cols <= 2048; cols = cols < 16 ? cols + 1 : cols * 2) {
    const Instance g = generate_grid(cols, MetricSpec::l1());
    const ClosedTour t = perimeter_tour(g);
    EXPECT_EQ(t.tour.size(), g.size());
    EXPECT_EQ(t.length.exact, 2 * cols);
  }
  for (int k = 0; k <= 8; ++k) {
    const Instance g = generate_gk(k, MetricSpec::graphic());
    EXPECT_EQ(perimeter_tour(g).length.exact, family_size(k));
  }
  EXPECT_THROW(perimeter_tour(Instance({{0, 0}, {3, 1}}, 1, MetricSpec::l1(), 0, 1)), Error);
}

TEST(ExactOptimumTest, KnownValues) {
  for (const MetricSpec& m : {MetricSpec::l1(), MetricSpec::l2(), MetricSpec::linf(), MetricSpec::graphic()}) {
    EXPECT_DOUBLE_EQ(exact_optimum(generate_gk(0, m)).value(), 10.0) << m.name();
  }
  EXPECT_EQ(exact_optimum(generate_gk(0, MetricSpec::l1())).exact, 10);
  EXPECT_DOUBLE_EQ(exact_optimum(generate_grid(3, MetricSpec::l2())).value(), 6.0);
  const Instance pair({{0, 0}, {1, 2}}, 1, MetricSpec::l2(), 0, 1);
  EXPECT_NEAR(exact_optimum(pair).value(), 2 * std::sqrt(5.0), 1e-12);
  EXPECT_THROW(exact_optimum(generate_gk(1, MetricSpec::l1())), Error);
}

TEST(ExactOptimumTest, TwoRowGridsAreTwiceTheWidth) {
  for (const MetricSpec& m : {MetricSpec::l1(), MetricSpec::l2(), MetricSpec::linf(), MetricSpec::graphic()}) {
    for (std::int64_t cols = 2; cols <= 8; ++cols) {
      EXPECT_NEAR(exact_optimum(generate_grid(cols, m)).value(), 2.0 * cols, 1e-9) << m.name() << " " << cols;
    }
  }
}

TEST(ExactOptimumTest, AgreesWithBruteForceOnRandomPoints) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::int64_t> coord(0, 9);
  std::uniform_int_distribution<std::size_t> size(3, 8);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<ScaledPoint> pts;
    const std::size_t n = size(rng);
    while (pts.size() < n) {
      const ScaledPoint p{coord(rng), coord(rng)};
      if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
    }
    for (const MetricSpec& m : {MetricSpec::l1(), MetricSpec::l2(), MetricSpec::lp(3.0)}) {
      const Instance inst(pts, 1, m, 0, 1);
      EXPECT_NEAR(exact_optimum(inst).value(), brute_force_optimum(inst), 1e-9) << m.name();
    }
  }
}

TEST(BoundsTest, Examples) {
  const Bounds b0 = bounds(10, 0);
  EXPECT_DOUBLE_EQ(*b0.chain, 0.75);
  EXPECT_NEAR(b0.lower, 0.25 * (std::log2(10.0) - 1.0), 1e-15);
  EXPECT_NEAR(b0.lower, 0.5805, 1e-4);
  EXPECT_DOUBLE_EQ(b0.upper, 2.5);
  EXPECT_DOUBLE_EQ(*bounds(26, 1).chain, 1.0);
  const Bounds b2 = bounds(2);
  EXPECT_FALSE(b2.chain.has_value());
  EXPECT_DOUBLE_EQ(b2.lower, 0.0);
  EXPECT_DOUBLE_EQ(b2.upper, 1.0);
  EXPECT_THROW(bounds(1), Error);
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(16), 4);
  EXPECT_EQ(ceil_log2(17), 5);
}

TEST(TheoremTableTest, RowsMatchClosedForms) {
  const auto rows = theorem_table(8, MetricSpec::l2());
  ASSERT_EQ(rows.size(), 9u);
  EXPECT_EQ(rows[0].open_exact, 9);
  EXPECT_EQ(rows[0].n, 10);
  EXPECT_DOUBLE_EQ(rows[0].ratio_open, 0.9);
  EXPECT_NEAR(rows[0].ratio_closed, (9 + std::sqrt(5.0)) / 10, 1e-12);
  EXPECT_EQ(rows[5].open_exact, 1021);
  EXPECT_EQ(rows[5].n, 506);
  EXPECT_NEAR(rows[5].ratio_open, 2.0178, 1e-4);
  EXPECT_EQ(rows[8].open_exact, 11261);
  EXPECT_EQ(rows[8].n, 4090);
  EXPECT_NEAR(rows[8].ratio_open, 2.7533, 1e-4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RatioRow& r = rows[i];
    const int k = static_cast<int>(i);
    EXPECT_EQ(r.k, k);
    EXPECT_EQ(r.open_exact, predicted_length(k));
    EXPECT_EQ(r.n, family_size(k));
    EXPECT_TRUE(chain_holds_exact(r.open_exact, r.n, k));
    EXPECT_TRUE(log_bound_holds_exact(r.n, k));
    EXPECT_GE(r.ratio_open, r.chain_value);
    EXPECT_GE(r.chain_value + 1e-12, r.lower_bound);
    EXPECT_LE(r.ratio_closed, r.upper_bound);
    if (i > 0) {
      EXPECT_GT(r.ratio_open, rows[i - 1].ratio_open);
    }
  }
}

TEST(TheoremTableTest, ThreadedMatchesSerial) {
  const auto serial = theorem_table(5, MetricSpec::graphic(), 1);
  const auto threaded = theorem_table(5, MetricSpec::graphic(), 3);
  ASSERT_EQ(serial.size(), threaded.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].open_exact, threaded[i].open_exact);
    EXPECT_EQ(serial[i].ratio_closed, threaded[i].ratio_closed);
  }
}

TEST(TheoremTableTest, CorruptTourRaises) {
  TourPath tour = build_adversarial_tour(1).tour;
  std::swap(tour.order[3], tour.order[7]);
  try {
    theorem_row(1, MetricSpec::l1(), tour);
    FAIL() << "expected CertificationFailed";
  } catch (const CertificationFailed& e) {
    EXPECT_FALSE(e.report().nnr);
    EXPECT_TRUE(e.report().verdict.failed_step.has_value());
  }
  EXPECT_THROW(theorem_table(-1, MetricSpec::l1()), Error);
}

}  // namespace
}  // namespace nnadv
