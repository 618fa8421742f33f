#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lipkit/fixtures.hpp"
#include "lipkit/scalar_field.hpp"
#include "support.hpp"

using namespace lipkit;

TEST(Field, Basics) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  EXPECT_DOUBLE_EQ(Field::constant(X, 3)(4), 3.0);
  EXPECT_DOUBLE_EQ(Field::distance_to(X, Subset(5, {0}))(4), 2.0);
  const Field id = Field::coordinate(X, 0);
  EXPECT_DOUBLE_EQ((id * id + Field::constant(X, 1))(2), 2.0);
  EXPECT_DOUBLE_EQ(max(id, -id)(0), 0.0);
  EXPECT_DOUBLE_EQ(min(id, Field::constant(X, 0.7))(4), 0.7);
  EXPECT_DOUBLE_EQ(id.clamped(Interval::closed(0.2, 1.2))(0), 0.2);
  EXPECT_EQ(id.tabulate(), (std::vector<double>{0, 0.5, 1, 1.5, 2}));
}

TEST(Field, TransportDomainError) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  const Field r = Field::distance_to(X, Subset(5, {0})).transported(Transport::reciprocal());
  try {
    r(0);
    FAIL() << "expected a domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::domain);
  }
  EXPECT_DOUBLE_EQ(r(4), 0.5);
  const Field t = Field::constant(X, 2.0).transported(Transport::tan());
  EXPECT_THROW(t(0), Error);
}

TEST(Field, TransportRoundTrip) {
  auto X = MetricSpace::from_grid(-3, 3, 0.25);
  const Field id = Field::coordinate(X, 0);
  const auto back = id.transported(Transport::arctan()).transported(Transport::tan()).tabulate();
  const auto v = id.tabulate();
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(back[i], v[i], 1e-14 * (1 + std::abs(v[i])));
}

TEST(Field, MismatchedHostsRejected) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  auto Y = MetricSpace::from_grid(0, 2, 0.5);
  EXPECT_THROW(Field::constant(X, 1) + Field::constant(Y, 1), Error);
  EXPECT_THROW(Field::table(X, {1, 2}), Error);
}

TEST(GlobalLip, IdentityAndConstant) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  EXPECT_DOUBLE_EQ(global_lip(Field::coordinate(X, 0)).value, 1.0);
  EXPECT_DOUBLE_EQ(global_lip(Field::constant(X, 4)).value, 0.0);
}

TEST(GlobalLip, MatchesPairScanOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto in = oracle::random_instance(seed, 25);
    std::mt19937_64 rng(seed);
    std::vector<double> v(in.space->size());
    for (double& x : v) x = std::uniform_real_distribution<double>(-3, 3)(rng);
    const LipEstimate est = global_lip(Field::table(in.space, v));
    EXPECT_DOUBLE_EQ(est.value, oracle::max_ratio(*in.space, v)) << seed;
    ASSERT_EQ(est.witness.size(), 2u);
    const double r = std::abs(v[est.witness[0]] - v[est.witness[1]]) / in.space->dist(est.witness[0], est.witness[1]);
    EXPECT_DOUBLE_EQ(r, est.value);
  }
}

TEST(GlobalLip, SinInverseTExceedsAnyBound) {
  const auto s = fixtures::sin_inv_t_pairs(20);
  const auto v = s.f.tabulate();
  for (std::size_t n = 1; n <= 20; ++n) {
    const PointId a = 2 * (n - 1);
    EXPECT_DOUBLE_EQ(s.t[a], 2.0 / ((4.0 * n + 1) * std::numbers::pi));
    EXPECT_DOUBLE_EQ(s.t[a + 1], 2.0 / ((4.0 * n + 3) * std::numbers::pi));
    EXPECT_NEAR(std::abs(v[a] - v[a + 1]), 2.0, 1e-9);
  }
  EXPECT_GT(global_lip(s.f).value, 100.0);
}

TEST(PointwiseLip, AbsAtOrigin) {
  auto X = MetricSpace::from_grid(-1, 1, 0.25);
  const Field id = Field::coordinate(X, 0);
  const Field abs = max(id, -id);
  EXPECT_DOUBLE_EQ(pointwise_lip(abs, 4).value, 1.0);
  EXPECT_DOUBLE_EQ(pointwise_lip(Field::constant(X, 2), 3).value, 0.0);
}

TEST(PointwiseLip, CuspSameSignBounded) {
  const auto s = fixtures::cusp(20);
  std::vector<PointId> pos;
  for (PointId p = 0; p < s.t.size(); ++p)
    if (s.t[p] > 0) pos.push_back(p);
  const Subset same(s.space->size(), pos);
  // u_1 is the sample with t = 1.
  PointId u1 = 0;
  for (PointId p = 0; p < s.t.size(); ++p)
    if (s.t[p] == 1.0) u1 = p;
  EXPECT_LE(pointwise_lip(s.f, u1, same).value, 1.0 + 1e-12);
  // Direct check of the cusp geometry: the point is (t^3, t^2) with value t^2.
  const auto c = s.space->coords(u1);
  EXPECT_DOUBLE_EQ(c[0], 1.0);
  EXPECT_DOUBLE_EQ(c[1], 1.0);
}

TEST(ScaledOscillation, AbsAtOriginOnFineGrid) {
  auto X = MetricSpace::from_grid(-1, 1, 1.0 / 64);
  const Field id = Field::coordinate(X, 0);
  const Field abs = max(id, -id);
  const std::vector<double> radii{1, 0.5, 0.25};
  const PointId origin = 64;
  ASSERT_DOUBLE_EQ(X->coords(origin)[0], 0.0);
  EXPECT_NEAR(scaled_oscillation(abs, origin, radii), 1.0, 1.0 / 16);
  EXPECT_DOUBLE_EQ(scaled_oscillation(Field::constant(X, 1), origin, radii), 0.0);
}

TEST(ScaledOscillation, IsolatedPoint) {
  auto X = MetricSpace::from_points({{0.0}, {10.0}, {11.0}});
  const Field f = Field::table(X, {5, -1, 3});
  const std::vector<double> radii{1.0};
  EXPECT_DOUBLE_EQ(scaled_oscillation(f, 0, radii), 0.0);
  EXPECT_DOUBLE_EQ(pointwise_lip(f, 0, Subset(3, {0})).value, 0.0);
}
