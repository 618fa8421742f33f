#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lipkit/interval.hpp"
#include "lipkit/scalar_field.hpp"

namespace lipkit {

enum class CertificateKind { k_lipschitz, sandwich, pou_sum, activity, range, reconstruction, strictness, witness };

const char* to_string(CertificateKind kind);

/// Outcome of an exhaustive sample check. `worst_violation` may be negative
/// (slack); `witness` holds the points achieving it.
struct Certificate {
  CertificateKind kind = CertificateKind::k_lipschitz;
  bool pass = true;
  double worst_violation = -std::numeric_limits<double>::infinity();
  double tolerance = kTolerance;
  std::vector<PointId> witness;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> notes;

  Certificate() = default;
  Certificate(CertificateKind k, double tol) : kind(k), tolerance(tol) {}

  /// Keeps the first strictly larger violation and its witness.
  void observe(double violation, std::vector<PointId> points);
  /// Sets pass from worst_violation and tolerance; returns *this.
  Certificate& finish();
  void metric(std::string name, double value) { metrics.emplace_back(std::move(name), value); }
  std::optional<double> find_metric(std::string_view name) const;
};

/// Conjunction of several certificates, keeping the first failing one's
/// witness.
Certificate combine(CertificateKind kind, std::span<const Certificate> parts);

/// |f(p)-f(q)| <= K d(p,q) over all sample pairs (or pairs inside `over`).
/// The violation is the ratio excess |f(p)-f(q)|/d(p,q) - K.
Certificate check_k_lipschitz(const Field& f, double K, double tol = kTolerance);
Certificate check_k_lipschitz(const Field& f, double K, const Subset& over, double tol = kTolerance);
Certificate check_k_lipschitz(const MetricSpace& space, std::span<const double> values, double K,
                              const Subset* over = nullptr, double tol = kTolerance);

/// lower - tol <= f <= upper + tol at every sample.
Certificate check_sandwich(const Field& f, const Field& lower, const Field& upper, double tol = kTolerance);

/// |f(a) - values[i]| over the members a of A.
Certificate check_agreement(const Field& f, const Subset& A, std::span<const double> values, double tol = kTolerance);

/// f(p) in the interval at every sample; open endpoints must hold strictly.
Certificate check_range(const Field& f, const Interval& range);
Certificate check_range(std::span<const double> values, const Interval& range);

/// g(p) < f(p) < h(p) strictly at every sample. The violation is the negated
/// smallest margin, so a pass needs every margin positive.
Certificate check_strict(std::span<const double> f, std::span<const double> g, std::span<const double> h);

/// Greedy random K-Lipschitz extension. Points of A keep their values; the
/// rest are visited in `order` (id-ascending when empty) and each receives a
/// uniform draw from its currently feasible interval.
Field random_k_extension(SpacePtr host, const Subset& A, std::span<const double> values, double K,
                         std::span<const PointId> order, std::uint64_t seed);

struct LocalEntry {
  PointId p;
  double delta;
  double K;
};

/// Per-point local Lipschitz data: f is K_p-Lipschitz on O(p, 2 delta_p).
struct LocalWitness {
  std::vector<LocalEntry> entries;
};

/// Checks each entry on the sampled pairs inside O(p, 2 delta_p) (restricted
/// to `domain` when given) and that the balls O(p, delta_p) cover the domain.
Certificate certify_local_witness(const Field& f, const LocalWitness& W, const Subset* domain = nullptr,
                                  double tol = kTolerance);

/// Witness built from the sample: delta_p is the distance from p to its
/// nearest other domain point and K_p the largest difference quotient inside
/// O(p, 2 delta_p).
LocalWitness generate_local_witness(const Field& f, const Subset* domain = nullptr);

/// Per-point constants L_p with |f(x) - f(p)| <= L_p d(x,p) for all x.
struct PointwiseWitness {
  std::vector<double> constants;
};

PointwiseWitness generate_pointwise_witness(const Field& f);
Certificate certify_pointwise_witness(const Field& f, const PointwiseWitness& W, double tol = kTolerance);

struct PartitionOfUnity;

/// Sum residual |sum - 1|, activity soundness (no member positive outside
/// its listed activity) and per-member Lipschitz constants.
Certificate pou_report(const PartitionOfUnity& pou, double tol = kTolerance);

}  // namespace lipkit
