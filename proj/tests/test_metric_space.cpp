#include <gtest/gtest.h>

#include "lipkit/metric_space.hpp"
#include "support.hpp"

using namespace lipkit;

namespace {

bool has_kind(const ValidationReport& r, ViolationKind k) {
  for (const auto& v : r.violations)
    if (v.kind == k) return true;
  return false;
}

}  // namespace

TEST(MetricSpace, UniformMatrixIsValid) {
  auto X = MetricSpace::from_matrix(3, {0, 1, 1, 1, 0, 1, 1, 1, 0});
  EXPECT_TRUE(validate_metric(*X).valid());
}

TEST(MetricSpace, TriangleViolationNamesTheTriple) {
  auto X = MetricSpace::from_matrix(3, {0, 1, 5, 1, 0, 1, 5, 1, 0});
  const auto r = validate_metric(*X);
  ASSERT_FALSE(r.valid());
  bool found = false;
  for (const auto& v : r.violations) {
    if (v.kind != ViolationKind::triangle) continue;
    auto pts = v.points;
    std::sort(pts.begin(), pts.end());
    found |= pts == std::vector<PointId>{0, 1, 2};
    EXPECT_NEAR(v.amount, 3.0, 1e-12);
  }
  EXPECT_TRUE(found);
}

TEST(MetricSpace, AsymmetryAndDiagonal) {
  auto X = MetricSpace::from_matrix(2, {0, 1, 2, 0});
  EXPECT_TRUE(has_kind(validate_metric(*X), ViolationKind::asymmetry));
  auto Y = MetricSpace::from_matrix(2, {0.5, 1, 1, 0});
  EXPECT_TRUE(has_kind(validate_metric(*Y), ViolationKind::nonzero_diagonal));
  auto Z = MetricSpace::from_matrix(2, {0, 0, 0, 0});
  EXPECT_TRUE(has_kind(validate_metric(*Z), ViolationKind::zero_off_diagonal));
  auto W = MetricSpace::from_matrix(2, {0, -1, -1, 0});
  EXPECT_TRUE(has_kind(validate_metric(*W), ViolationKind::negative));
}

TEST(MetricSpace, TriangleScanMatchesBruteForceOnRandomMatrices) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    std::vector<double> m(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) m[i * n + j] = m[j * n + i] = 1.0 + static_cast<double>(rng() % 5);
    bool broken = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) broken |= m[i * n + k] > m[i * n + j] + m[j * n + k] + 1e-9;
    EXPECT_EQ(validate_metric(*MetricSpace::from_matrix(n, m)).valid(), !broken) << trial;
  }
}

TEST(MetricSpace, GridDistances) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  ASSERT_EQ(X->size(), 5u);
  EXPECT_DOUBLE_EQ(X->dist(0, 3), 1.5);
  EXPECT_DOUBLE_EQ(X->coords(3)[0], 1.5);
  // p = 1.5 and S = {0, 1} (ids 0 and 2).
  EXPECT_DOUBLE_EQ(X->dist_to_set(3, Subset(5, {0, 2})), 0.5);
  EXPECT_DOUBLE_EQ(X->dist_to_set(2, Subset(5, {0, 2})), 0.0);
  EXPECT_DOUBLE_EQ(X->diameter(), 2.0);
  EXPECT_DOUBLE_EQ(X->nearest_neighbor_distance(4), 0.5);
}

TEST(MetricSpace, EuclideanPythagorean) {
  auto X = MetricSpace::from_points({{0, 0}, {3, 4}});
  EXPECT_DOUBLE_EQ(X->dist(0, 1), 5.0);
  EXPECT_EQ(X->dimension(), 2u);
}

TEST(MetricSpace, GraphShortestPaths) {
  std::vector<Edge> edges{{0, 1, 2}, {1, 2, 3}};
  auto X = MetricSpace::from_graph(3, edges);
  EXPECT_DOUBLE_EQ(X->dist(0, 2), 5.0);
  EXPECT_DOUBLE_EQ(X->dist_to_set(0, Subset(3, {2})), 5.0);
}

TEST(MetricSpace, GraphMatchesFloydWarshall) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 15;
    std::vector<Edge> edges;
    for (std::size_t i = 1; i < n; ++i) edges.push_back({rng() % i, i, 0.5 + static_cast<double>(rng() % 7)});
    for (int e = 0; e < 10; ++e) {
      const PointId u = rng() % n, v = rng() % n;
      if (u != v) edges.push_back({u, v, 0.5 + static_cast<double>(rng() % 7)});
    }
    auto X = MetricSpace::from_graph(n, edges);
    const auto d = oracle::floyd_warshall(n, edges);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) EXPECT_DOUBLE_EQ(X->dist(i, j), d[i * n + j]);
    EXPECT_TRUE(validate_metric(*X).valid());
  }
}

TEST(MetricSpace, DisconnectedGraphIsRejected) {
  std::vector<Edge> edges{{0, 1, 1}};
  EXPECT_THROW(MetricSpace::from_graph(3, edges), Error);
}

TEST(MetricSpace, BadInputs) {
  EXPECT_THROW(MetricSpace::from_matrix(2, {0, 1, 1}), Error);
  EXPECT_THROW(MetricSpace::from_grid(0, 1, 0), Error);
  auto X = MetricSpace::from_grid(0, 1, 0.5);
  EXPECT_THROW(X->dist(0, 9), Error);
  EXPECT_THROW(Subset(3, {5}), Error);
}

TEST(MetricSpace, OpenBallAndSubspace) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  const auto b = X->ball(2, 0.5);
  EXPECT_EQ(b, std::vector<PointId>{2});
  const auto c = X->ball(2, 0.51);
  EXPECT_EQ(c, (std::vector<PointId>{1, 2, 3}));
  auto Y = X->subspace(Subset(5, {0, 4}));
  EXPECT_EQ(Y->size(), 2u);
  EXPECT_DOUBLE_EQ(Y->dist(0, 1), 2.0);
}

TEST(Subset, MembershipAndComplement) {
  Subset s(6, {4, 1, 1});
  EXPECT_EQ(s.members(), (std::vector<PointId>{1, 4}));
  EXPECT_TRUE(s.contains(4));
  EXPECT_FALSE(s.contains(0));
  EXPECT_EQ(*s.position(4), 1u);
  EXPECT_EQ(s.complement().members(), (std::vector<PointId>{0, 2, 3, 5}));
}
