#include <gtest/gtest.h>

#include <cmath>

#include "lipkit/extension.hpp"
#include "lipkit/fixtures.hpp"
#include "lipkit/partition_of_unity.hpp"
#include "support.hpp"

using namespace lipkit;

TEST(CheckLipschitz, IdentityAndEnvelope) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  const Certificate c = check_k_lipschitz(Field::coordinate(X, 0), 1.0);
  EXPECT_TRUE(c.pass);
  EXPECT_DOUBLE_EQ(*c.find_metric("max_ratio"), 1.0);
  const std::vector<double> phi{0, 1};
  const EnvelopePair env = mcshane_envelopes(X, Subset(5, {0, 2}), phi, 1.0);
  EXPECT_TRUE(check_k_lipschitz(env.lower, 1.0).pass);
  EXPECT_FALSE(check_k_lipschitz(Field::coordinate(X, 0), 0.9).pass);
}

TEST(CheckLipschitz, SinInverseFailsWithWitness) {
  const auto s = fixtures::sin_inv_t_pairs(20);
  const auto v = s.f.tabulate();
  for (double K : {1.0, 100.0, 1000.0}) {
    const Certificate c = check_k_lipschitz(s.f, K);
    EXPECT_FALSE(c.pass);
    ASSERT_EQ(c.witness.size(), 2u);
    const double r = std::abs(v[c.witness[0]] - v[c.witness[1]]) / s.space->dist(c.witness[0], c.witness[1]);
    EXPECT_GT(r, K);
  }
}

TEST(RandomExtension, WholeSpaceReturnsData) {
  auto X = MetricSpace::from_grid(0, 1, 0.5);
  const std::vector<double> phi{0.2, 0.4, 0.1};
  EXPECT_EQ(random_k_extension(X, Subset::all(3), phi, 1.0, {}, 9).tabulate(), phi);
}

TEST(RandomExtension, HundredSeedsSandwiched) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  const Subset A(5, {0, 2});
  const std::vector<double> phi{0, 1};
  const EnvelopePair env = mcshane_envelopes(X, A, phi, 1.0);
  const auto lo = env.lower.tabulate(), hi = env.upper.tabulate();
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto f = random_k_extension(X, A, phi, 1.0, {}, seed).tabulate();
    EXPECT_TRUE(oracle::k_lipschitz(*X, f, 1.0));
    for (PointId p = 0; p < 5; ++p) {
      EXPECT_GE(f[p], lo[p] - 1e-9);
      EXPECT_LE(f[p], hi[p] + 1e-9);
    }
  }
  const auto a = random_k_extension(X, A, phi, 1.0, {}, 42).tabulate();
  const auto b = random_k_extension(X, A, phi, 1.0, {}, 42).tabulate();
  EXPECT_EQ(a, b);
}

TEST(Sandwich, ConvexCombinations) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  const std::vector<double> phi{0, 1};
  const EnvelopePair env = mcshane_envelopes(X, Subset(5, {0, 2}), phi, 1.0);
  for (double lam : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const Field f = env.lower.scaled(lam) + env.upper.scaled(1 - lam);
    EXPECT_TRUE(check_k_lipschitz(f, 1.0).pass) << lam;
    EXPECT_TRUE(check_sandwich(f, env.lower, env.upper).pass) << lam;
  }
  const Field out = env.upper + Field::constant(X, 0.1);
  const Certificate c = check_sandwich(out, env.lower, env.upper);
  EXPECT_FALSE(c.pass);
  EXPECT_FALSE(c.witness.empty());
}

TEST(PouReport, TruncationFails) {
  auto X = MetricSpace::from_grid(0, 2, 1.0);
  const PartitionOfUnity P = FrolikPartition::build({X, {Field::constant(X, 0.5)}}).materialize();
  const Certificate ok = pou_report(P);
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(ok.worst_violation, 0.0);
  EXPECT_FALSE(pou_report(P.without(1)).pass);
}

TEST(LocalWitness, SquarePasses) {
  const auto s = fixtures::square(-3, 3, 0.1);
  EXPECT_TRUE(certify_local_witness(s.f, fixtures::square_witness(s)).pass);
}

TEST(LocalWitness, ConstantWithZeroConstants) {
  auto X = MetricSpace::from_grid(0, 2, 0.5);
  LocalWitness W;
  for (PointId p = 0; p < 5; ++p) W.entries.push_back({p, 0.75, 0.0});
  EXPECT_TRUE(certify_local_witness(Field::constant(X, 3), W).pass);
}

TEST(LocalWitness, CuspRejectedWithMirrorPair) {
  // A sample refutes K only below 1 / min |t|; 200 steps reach 1/t = 200.
  const auto s = fixtures::cusp(200);
  for (double delta : {0.05, 0.2, 1.0}) {
    for (double K : {1.0, 10.0, 100.0}) {
      const Certificate c = certify_local_witness(s.f, fixtures::uniform_witness(s, delta, K));
      ASSERT_FALSE(c.pass) << delta << " " << K;
      ASSERT_EQ(c.witness.size(), 2u);
      // The offending pair is u_t and u_{-t}.
      EXPECT_EQ(s.t[c.witness[0]], -s.t[c.witness[1]]);
    }
  }
}

TEST(LocalWitness, GeneratedWitnessPasses) {
  const auto s = fixtures::sin_inv_t(0.05, 1, 60);
  const LocalWitness W = generate_local_witness(s.f);
  EXPECT_EQ(W.entries.size(), s.space->size());
  EXPECT_TRUE(certify_local_witness(s.f, W).pass);
}

TEST(PointwiseWitness, GeneratedPassesAndShrunkFails) {
  auto X = MetricSpace::from_grid(-1, 1, 0.25);
  const Field t = Field::coordinate(X, 0);
  const Field f = t * t;
  PointwiseWitness W = generate_pointwise_witness(f);
  EXPECT_TRUE(certify_pointwise_witness(f, W).pass);
  for (double& L : W.constants) L *= 0.5;
  EXPECT_FALSE(certify_pointwise_witness(f, W).pass);
}

TEST(Checks, RangeStrictAgreement) {
  auto X = MetricSpace::from_grid(0, 1, 0.5);
  const std::vector<double> f{0.5, 0.6, 1.0};
  EXPECT_TRUE(check_range(f, Interval::closed(0, 1)).pass);
  EXPECT_FALSE(check_range(f, Interval{0, 1, true, true}).pass);
  const std::vector<double> g{0, 0, 0}, h{1, 1, 1};
  const Certificate s = check_strict(f, g, h);
  EXPECT_FALSE(s.pass);
  EXPECT_EQ(s.witness, std::vector<PointId>{2});
  const std::vector<double> phi{0.5};
  EXPECT_TRUE(check_agreement(Field::table(X, f), Subset(3, {0}), phi).pass);
  const std::vector<double> off{0.4};
  EXPECT_FALSE(check_agreement(Field::table(X, f), Subset(3, {0}), off).pass);
}
