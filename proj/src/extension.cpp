#include "lipkit/extension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lipkit {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require_domain(const MetricSpace& space, const Subset& A, std::span<const double> values) {
  if (A.empty()) throw Error(ErrorCode::invalid_argument, "extension domain is empty");
  if (A.host_size() != space.size()) throw Error(ErrorCode::invalid_argument, "subset belongs to a different space");
  if (values.size() != A.size()) {
    throw Error(ErrorCode::invalid_argument, "got " + std::to_string(values.size()) + " values for a subset of " +
                                                 std::to_string(A.size()) + " points");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw Error(ErrorCode::invalid_argument, "non-finite data value", {A.members()[i]});
    }
  }
}

void require_range(const Subset& A, std::span<const double> values, const Interval& range) {
  if (range.degenerate()) throw Error(ErrorCode::invalid_argument, "degenerate target interval " + range.to_string());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!range.contains(values[i])) {
      throw Error(ErrorCode::precondition,
                  "data value " + std::to_string(values[i]) + " at point " + std::to_string(A.members()[i]) +
                      " lies outside " + range.to_string(),
                  {A.members()[i]});
    }
  }
}

// Compatibility |phi(x) - phi(y)| <= min(L_x, L_y) d(x, y) on A.
void require_compatible(const MetricSpace& space, const Subset& A, std::span<const double> values,
                        std::span<const double> constants) {
  const auto& m = A.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const double d = space.dist(m[i], m[j]);
      const double L = std::min(constants[i], constants[j]);
      if (std::abs(values[i] - values[j]) / d - L > kTolerance) {
        throw Error(ErrorCode::precondition,
                    "data violates the pointwise condition between points " + std::to_string(m[i]) + " and " +
                        std::to_string(m[j]),
                    {m[i], m[j]});
      }
    }
}

Field bounded_mean(const EnvelopePair& env, double a, double b) {
  const SpacePtr& host = env.lower.host();
  return (max(env.lower, Field::constant(host, a)) + min(env.upper, Field::constant(host, b))).scaled(0.5);
}

EnvelopePair build_envelopes(SpacePtr host, const Subset& A, std::span<const double> values,
                             std::vector<double> constants) {
  std::vector<double> phi(values.begin(), values.end());
  EnvelopePair env{Field::lower_envelope(host, A, phi, constants), Field::upper_envelope(host, A, phi, constants), A,
                   phi, constants, {}};
  return env;
}

}  // namespace

void require_k_lipschitz(const MetricSpace& space, const Subset& A, std::span<const double> values, double K,
                         double tol) {
  const auto& m = A.members();
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const double d = space.dist(m[i], m[j]);
      if (std::abs(values[i] - values[j]) / d - K > tol) {
        throw Error(ErrorCode::precondition,
                    "data is not " + std::to_string(K) + "-Lipschitz between points " + std::to_string(m[i]) +
                        " and " + std::to_string(m[j]),
                    {m[i], m[j]});
      }
    }
}

EnvelopePair mcshane_envelopes(SpacePtr host, const Subset& A, std::span<const double> values, double K) {
  if (!host) throw Error(ErrorCode::invalid_argument, "envelopes need a host space");
  if (!(K >= 0.0) || !std::isfinite(K)) throw Error(ErrorCode::invalid_argument, "K must be finite and nonnegative");
  require_domain(*host, A, values);
  require_k_lipschitz(*host, A, values, K);
  return build_envelopes(std::move(host), A, values, std::vector<double>(A.size(), K));
}

DualityReport duality_check(SpacePtr host, const Subset& A, std::span<const double> values, double K) {
  const EnvelopePair direct = mcshane_envelopes(host, A, values, K);
  std::vector<double> negated(values.begin(), values.end());
  for (double& v : negated) v = -v;
  const EnvelopePair mirrored = mcshane_envelopes(host, A, negated, K);
  DualityReport report;
  for (PointId p = 0; p < host->size(); ++p) {
    ++report.checked;
    if (direct.lower(p) != -mirrored.upper(p)) {
      report.equal = false;
      report.mismatches.push_back(p);
    }
  }
  return report;
}

Field extend_to_interval(SpacePtr host, const Subset& A, std::span<const double> values, double K,
                         const Interval& range) {
  require_range(A, values, range);
  const EnvelopePair env = mcshane_envelopes(std::move(host), A, values, K);
  if (range.bounded()) return bounded_mean(env, range.lo, range.hi);
  if (range.lo_finite()) return env.upper;
  return env.lower;
}

EnvelopePair pointwise_envelopes(SpacePtr host, const Subset& A, std::span<const double> values,
                                 std::span<const double> constants) {
  if (!host) throw Error(ErrorCode::invalid_argument, "envelopes need a host space");
  require_domain(*host, A, values);
  if (constants.size() != A.size()) throw Error(ErrorCode::invalid_argument, "one constant per point of A expected");
  std::vector<double> lifted(constants.begin(), constants.end());
  std::size_t raised = 0;
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    if (!std::isfinite(lifted[i])) throw Error(ErrorCode::invalid_argument, "non-finite constant", {A.members()[i]});
    if (lifted[i] < 1.0) {
      lifted[i] = 1.0;
      ++raised;
    }
  }
  require_compatible(*host, A, values, lifted);
  EnvelopePair env = build_envelopes(std::move(host), A, values, std::move(lifted));
  if (raised > 0) env.notes.push_back(std::to_string(raised) + " constants below 1 were raised to 1");
  return env;
}

PointwiseExtension pointwise_extend_to_interval(SpacePtr host, const Subset& A, std::span<const double> values,
                                                std::span<const double> constants, const Interval& range) {
  if (!host) throw Error(ErrorCode::invalid_argument, "extension needs a host space");
  require_domain(*host, A, values);
  require_range(A, values, range);
  std::vector<double> phi(values.begin(), values.end());

  PointwiseExtension out;
  if (range.bounded()) {
    EnvelopePair env = pointwise_envelopes(host, A, phi, constants);
    out.field = bounded_mean(env, range.lo, range.hi);
    out.notes = env.notes;
  } else {
    // Check the pointwise condition on the original data before moving it.
    const EnvelopePair check = pointwise_envelopes(host, A, phi, constants);
    out.notes = check.notes;
    std::vector<double> moved(phi.size());
    Field bounded = check.lower;
    if (range.is_real_line()) {
      for (std::size_t i = 0; i < phi.size(); ++i) moved[i] = std::atan(phi[i]);
      const EnvelopePair env = pointwise_envelopes(host, A, moved, check.constants);
      bounded = bounded_mean(env, -kHalfPi, kHalfPi).transported(Transport::tan());
      out.notes.push_back("moved through arctan and back through tan");
    } else if (range.lo_finite()) {
      const double l = range.lo;
      for (std::size_t i = 0; i < phi.size(); ++i) moved[i] = 1.0 / (phi[i] - l + 1.0);
      const EnvelopePair env = pointwise_envelopes(host, A, moved, check.constants);
      bounded = bounded_mean(env, 0.0, 1.0)
                    .transported(Transport::reciprocal())
                    .transported(Transport::affine(1.0, l - 1.0));
      out.notes.push_back("moved through t -> 1/(t - lo + 1) and back");
    } else {
      const double r = range.hi;
      for (std::size_t i = 0; i < phi.size(); ++i) moved[i] = 1.0 / (r + 1.0 - phi[i]);
      const EnvelopePair env = pointwise_envelopes(host, A, moved, check.constants);
      bounded = bounded_mean(env, 0.0, 1.0)
                    .transported(Transport::reciprocal())
                    .transported(Transport::affine(-1.0, r + 1.0));
      out.notes.push_back("moved through t -> 1/(hi + 1 - t) and back");
    }
    // Round trips are not exact in floating point; keep the data on A.
    out.field = Field::patched(bounded, A, phi);
  }
  out.witness = generate_pointwise_witness(out.field);
  out.certificate = certify_pointwise_witness(out.field, out.witness);
  return out;
}

}  // namespace lipkit
