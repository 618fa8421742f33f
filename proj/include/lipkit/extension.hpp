#pragma once

#include <span>
#include <string>
#include <vector>

#include "lipkit/certify.hpp"
#include "lipkit/interval.hpp"
#include "lipkit/scalar_field.hpp"

namespace lipkit {

/// Lower and upper envelopes of data phi on A. `constants` holds the
/// Lipschitz constant used for each member of A (all equal to K for the
/// uniform construction).
struct EnvelopePair {
  Field lower;
  Field upper;
  Subset domain;
  std::vector<double> values;
  std::vector<double> constants;
  std::vector<std::string> notes;
};

/// Throws Error(precondition) with the offending pair unless
/// |phi(x) - phi(y)| <= K d(x,y) on A (ratio tolerance `tol`).
void require_k_lipschitz(const MetricSpace& space, const Subset& A, std::span<const double> values, double K,
                         double tol = kTolerance);

EnvelopePair mcshane_envelopes(SpacePtr host, const Subset& A, std::span<const double> values, double K);

struct DualityReport {
  bool equal = true;
  std::size_t checked = 0;
  std::vector<PointId> mismatches;
};

/// Compares lower[phi](p) with -upper[-phi](p) bit for bit at every sample.
DualityReport duality_check(SpacePtr host, const Subset& A, std::span<const double> values, double K);

/// K-Lipschitz extension of phi: A -> range to the whole space with values in
/// the range. Bounded ranges use the mean of the clamped envelopes; a range
/// bounded below only returns the upper envelope, bounded above only the
/// lower envelope, and the real line the lower envelope.
Field extend_to_interval(SpacePtr host, const Subset& A, std::span<const double> values, double K,
                         const Interval& range);

/// Envelopes with per-point constants L_x (lifted to at least 1). Requires
/// |phi(x) - phi(y)| <= min(L_x, L_y) d(x,y) on A.
EnvelopePair pointwise_envelopes(SpacePtr host, const Subset& A, std::span<const double> values,
                                 std::span<const double> constants);

struct PointwiseExtension {
  Field field;
  PointwiseWitness witness;  // generated on the sample
  Certificate certificate;   // witness check of `field`
  std::vector<std::string> notes;
};

/// Pointwise-Lipschitz extension into an interval. Unbounded ranges are
/// moved to bounded ones (arctan for the real line, an affine shift and the
/// reciprocal for half-lines), extended there and moved back.
PointwiseExtension pointwise_extend_to_interval(SpacePtr host, const Subset& A, std::span<const double> values,
                                                std::span<const double> constants, const Interval& range);

}  // namespace lipkit
