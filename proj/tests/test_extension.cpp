#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lipkit/extension.hpp"
#include "support.hpp"

using namespace lipkit;

namespace {

struct GridExample {
  SpacePtr X = MetricSpace::from_grid(0, 2, 0.5);
  Subset A{5, {0, 2}};  // the points 0 and 1
  std::vector<double> phi{0, 1};
};

}  // namespace

TEST(Envelopes, HandEvaluatedGridExample) {
  GridExample g;
  const EnvelopePair env = mcshane_envelopes(g.X, g.A, g.phi, 1.0);
  EXPECT_DOUBLE_EQ(env.lower(3), 0.5);
  EXPECT_DOUBLE_EQ(env.upper(3), 1.5);
  EXPECT_DOUBLE_EQ(env.lower(4), 0.0);
  EXPECT_DOUBLE_EQ(env.upper(4), 2.0);
  for (PointId p = 0; p < 5; ++p) {
    EXPECT_EQ(env.lower(p), oracle::lower(*g.X, g.A, g.phi, 1.0, p));
    EXPECT_EQ(env.upper(p), oracle::upper(*g.X, g.A, g.phi, 1.0, p));
  }
}

TEST(Envelopes, WholeSpaceReturnsData) {
  auto X = MetricSpace::from_points({{0, 0}, {1, 0}, {0, 2}});
  const std::vector<double> phi{0.3, 0.9, -0.5};
  const EnvelopePair env = mcshane_envelopes(X, Subset::all(3), phi, 2.0);
  EXPECT_EQ(env.lower.tabulate(), phi);
  EXPECT_EQ(env.upper.tabulate(), phi);
}

TEST(Envelopes, PositiveDataGivesPositiveUpper) {
  auto X = MetricSpace::from_grid(0, 5, 0.25);
  const Subset A(X->size(), {0, 7, 12});
  const std::vector<double> phi{0.1, 0.3, 0.2};
  const EnvelopePair env = mcshane_envelopes(X, A, phi, 0.2);
  for (PointId p = 0; p < X->size(); ++p) EXPECT_GT(env.upper(p), 0.0);
}

TEST(Envelopes, RejectsNonLipschitzData) {
  GridExample g;
  try {
    mcshane_envelopes(g.X, g.A, g.phi, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precondition);
    EXPECT_EQ(e.witness(), (std::vector<PointId>{0, 2}));
  }
  EXPECT_THROW(mcshane_envelopes(g.X, Subset(5, {}), {}, 1.0), Error);
  EXPECT_THROW(mcshane_envelopes(g.X, g.A, g.phi, -1.0), Error);
}

TEST(Duality, ExactOnExamples) {
  GridExample g;
  const auto r = duality_check(g.X, g.A, g.phi, 1.0);
  EXPECT_TRUE(r.equal);
  EXPECT_EQ(r.checked, 5u);
  const std::vector<double> zero{0, 0};
  const EnvelopePair env = mcshane_envelopes(g.X, g.A, zero, 1.0);
  for (PointId p = 0; p < 5; ++p) EXPECT_EQ(env.lower(p), -env.upper(p));
}

TEST(Duality, RandomInstancesAgainstOracle) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const auto in = oracle::random_instance(seed, 20);
    const EnvelopePair env = mcshane_envelopes(in.space, in.A, in.phi, in.K);
    std::vector<double> neg(in.phi.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -in.phi[i];
    for (PointId p = 0; p < in.space->size(); ++p) {
      EXPECT_EQ(env.lower(p), -oracle::upper(*in.space, in.A, neg, in.K, p)) << seed;
      EXPECT_EQ(env.lower(p), oracle::lower(*in.space, in.A, in.phi, in.K, p)) << seed;
    }
    EXPECT_TRUE(duality_check(in.space, in.A, in.phi, in.K).equal);
  }
}

TEST(IntervalExtension, BoundedMeanHandExample) {
  auto X = MetricSpace::from_grid(0, 2, 1.0);
  const Subset A(3, {0, 2});
  const std::vector<double> phi{0, 1};
  const Field f = extend_to_interval(X, A, phi, 1.0, Interval::closed(0, 1));
  EXPECT_DOUBLE_EQ(f(1), 0.5);
  EXPECT_DOUBLE_EQ(f(0), 0.0);
  EXPECT_DOUBLE_EQ(f(2), 1.0);
}

TEST(IntervalExtension, OneSidedAndRealLine) {
  auto X = MetricSpace::from_grid(0, 4, 0.5);
  const Subset A(X->size(), {2, 6});
  const std::vector<double> phi{0.5, 1.0};
  const EnvelopePair env = mcshane_envelopes(X, A, phi, 1.0);
  const Field up = extend_to_interval(X, A, phi, 1.0, Interval{0.0, oracle::kInf, true, true});
  const Field down = extend_to_interval(X, A, phi, 1.0, Interval{-oracle::kInf, 2.0, true, true});
  const Field line = extend_to_interval(X, A, phi, 1.0, Interval::real_line());
  for (PointId p = 0; p < X->size(); ++p) {
    EXPECT_EQ(up(p), env.upper(p));
    EXPECT_GT(up(p), 0.0);
    EXPECT_EQ(down(p), env.lower(p));
    EXPECT_LT(down(p), 2.0);
    EXPECT_EQ(line(p), env.lower(p));
  }
}

TEST(IntervalExtension, RangeMarginOnRandomInstances) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto in = oracle::random_instance(seed, 25);
    double lo = oracle::kInf, hi = -oracle::kInf;
    for (double v : in.phi) lo = std::min(lo, v), hi = std::max(hi, v);
    const Interval D = Interval::closed(lo - 0.5, hi + 0.25);
    const auto f = extend_to_interval(in.space, in.A, in.phi, in.K, D).tabulate();
    EXPECT_TRUE(oracle::k_lipschitz(*in.space, f, in.K)) << seed;
    for (PointId p = 0; p < in.space->size(); ++p) {
      ASSERT_TRUE(D.contains(f[p]));
      if (in.A.contains(p)) continue;
      const double margin = std::min(in.K * in.space->dist_to_set(p, in.A), D.hi - D.lo) / 2;
      EXPECT_GE(std::min(D.hi - f[p], f[p] - D.lo), margin - 1e-9) << seed << " " << p;
    }
  }
}

TEST(IntervalExtension, DataOutsideRangeRejected) {
  GridExample g;
  EXPECT_THROW(extend_to_interval(g.X, g.A, g.phi, 1.0, Interval::open(0, 1)), Error);
  EXPECT_NO_THROW(extend_to_interval(g.X, g.A, g.phi, 1.0, Interval::closed(0, 1)));
}

TEST(PointwiseEnvelopes, HandExample) {
  auto X = MetricSpace::from_grid(0, 2, 1.0);
  const Subset A(3, {0, 2});
  const std::vector<double> phi{0, 1}, L{1, 2};
  const EnvelopePair env = pointwise_envelopes(X, A, phi, L);
  EXPECT_DOUBLE_EQ(env.lower(1), -1.0);
  EXPECT_DOUBLE_EQ(env.upper(1), 1.0);
  const Field f = pointwise_extend_to_interval(X, A, phi, L, Interval::closed(0, 1)).field;
  EXPECT_DOUBLE_EQ(f(1), 0.5);
}

TEST(PointwiseEnvelopes, ConstantWitnessDegenerates) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto in = oracle::random_instance(seed, 20);
    const double K = std::max(1.0, in.K);
    const std::vector<double> L(in.phi.size(), K);
    const EnvelopePair a = pointwise_envelopes(in.space, in.A, in.phi, L);
    const EnvelopePair b = mcshane_envelopes(in.space, in.A, in.phi, K);
    EXPECT_EQ(a.lower.tabulate(), b.lower.tabulate());
    EXPECT_EQ(a.upper.tabulate(), b.upper.tabulate());
  }
}

TEST(PointwiseEnvelopes, PlantedViolationCaught) {
  auto X = MetricSpace::from_grid(0, 3, 1.0);
  const Subset A(4, {0, 1, 3});
  const std::vector<double> phi{0, 2.5, 1}, L{1, 3, 1};
  try {
    pointwise_envelopes(X, A, phi, L);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::precondition);
    EXPECT_EQ(e.witness(), (std::vector<PointId>{0, 1}));
  }
}

TEST(PointwiseEnvelopes, DistanceBoundsInUnitInterval) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto X = MetricSpace::from_grid(0, 6, 0.25);
    std::vector<PointId> ids;
    for (PointId p = 0; p < X->size(); p += 1 + rng() % 5) ids.push_back(p);
    const Subset A(X->size(), ids);
    // Values in [0,1] with large constants keep the data compatible.
    std::vector<double> phi, L;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      phi.push_back(std::uniform_real_distribution<double>(0, 1)(rng));
      L.push_back(4.0 + static_cast<double>(rng() % 3));
    }
    const EnvelopePair env = pointwise_envelopes(X, A, phi, L);
    for (PointId p = 0; p < X->size(); ++p) {
      const double d = X->dist_to_set(p, A);
      EXPECT_LE(env.lower(p), 1.0 - d + 1e-9);
      EXPECT_GE(env.upper(p), 0.0 + d - 1e-9);
    }
  }
}

TEST(PointwiseExtension, TransportsKeepDataAndRange) {
  auto X = MetricSpace::from_grid(0, 4, 0.25);
  const Subset A(X->size(), {1, 5, 9, 16});
  const std::vector<double> phi{3.0, 2.0, 3.5, 1.0};
  const std::vector<double> L{2, 2, 3, 2};
  // Real line through arctan and tan.
  {
    const auto ext = pointwise_extend_to_interval(X, A, phi, L, Interval::real_line());
    const auto f = ext.field.tabulate();
    for (std::size_t i = 0; i < A.size(); ++i) EXPECT_EQ(f[A.members()[i]], phi[i]);
    for (double v : f) EXPECT_TRUE(std::isfinite(v));
    EXPECT_TRUE(ext.certificate.pass);
  }
  // [1, inf) through the reciprocal.
  {
    const auto ext = pointwise_extend_to_interval(X, A, phi, L, Interval{1.0, oracle::kInf, false, true});
    const auto f = ext.field.tabulate();
    for (std::size_t i = 0; i < A.size(); ++i) EXPECT_EQ(f[A.members()[i]], phi[i]);
    for (PointId p = 0; p < X->size(); ++p) {
      EXPECT_GE(f[p], 1.0);
      if (!A.contains(p)) EXPECT_GT(f[p], 1.0);
    }
  }
  // (-inf, 5].
  {
    const auto ext = pointwise_extend_to_interval(X, A, phi, L, Interval{-oracle::kInf, 5.0, true, false});
    for (double v : ext.field.tabulate()) EXPECT_LE(v, 5.0);
  }
}
