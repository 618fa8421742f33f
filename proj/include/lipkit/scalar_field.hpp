#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lipkit/interval.hpp"
#include "lipkit/metric_space.hpp"

namespace lipkit {

/// Monotone real transports used to move between bounded and unbounded
/// target intervals. Each has known local Lipschitz behavior.
struct Transport {
  enum class Kind { arctan, tan, reciprocal, affine };

  Kind kind = Kind::affine;
  double alpha = 1.0;  // affine only: t -> alpha * t + beta
  double beta = 0.0;

  static Transport arctan() { return {Kind::arctan}; }
  static Transport tan() { return {Kind::tan}; }
  static Transport reciprocal() { return {Kind::reciprocal}; }
  static Transport affine(double alpha, double beta) { return {Kind::affine, alpha, beta}; }

  /// Throws Error(domain) for tan outside (-pi/2, pi/2) and for the
  /// reciprocal at non-positive arguments.
  double apply(double t) const;
  std::string name() const;
};

namespace detail {
struct FieldNode;
}

/// Real-valued function on a finite metric space, represented as an
/// immutable evaluation tree. Copies share structure.
class Field {
 public:
  /// Empty placeholder; evaluating it throws.
  Field() = default;

  static Field table(SpacePtr host, std::vector<double> values);
  static Field constant(SpacePtr host, double value);
  static Field coordinate(SpacePtr host, std::size_t axis);
  static Field distance_to(SpacePtr host, Subset set);
  /// sup_{x in A} [phi(x) - L_x d(x,p)]; equals phi on A.
  static Field lower_envelope(SpacePtr host, Subset domain, std::vector<double> values,
                              std::vector<double> constants);
  /// inf_{x in A} [phi(x) + L_x d(x,p)]; equals phi on A.
  static Field upper_envelope(SpacePtr host, Subset domain, std::vector<double> values,
                              std::vector<double> constants);
  /// Locally finite sum: at p only the terms listed in active[p] contribute.
  static Field series(SpacePtr host, std::vector<Field> terms, std::vector<std::vector<std::size_t>> active);
  /// `base` everywhere except on `domain`, where the given values are used.
  static Field patched(const Field& base, Subset domain, std::vector<double> values);

  Field scaled(double factor) const;
  Field transported(Transport t) const;
  /// Clamp into the closure of `range`.
  Field clamped(const Interval& range) const;

  friend Field operator+(const Field& a, const Field& b);
  friend Field operator-(const Field& a, const Field& b);
  friend Field operator*(const Field& a, const Field& b);
  friend Field operator-(const Field& a) { return a.scaled(-1.0); }
  friend Field min(const Field& a, const Field& b);
  friend Field max(const Field& a, const Field& b);

  double operator()(PointId p) const;
  std::vector<double> tabulate() const;

  const SpacePtr& host() const noexcept { return host_; }
  const MetricSpace& space() const noexcept { return *host_; }
  std::size_t size() const noexcept { return host_ ? host_->size() : 0; }
  bool empty() const noexcept { return !node_; }

 private:
  Field(SpacePtr host, std::shared_ptr<const detail::FieldNode> node);
  static Field binary(int op, const Field& a, const Field& b);

  SpacePtr host_;
  std::shared_ptr<const detail::FieldNode> node_;
};

/// Lipschitz diagnostic over an explicit finite pair set. `infinite` is set
/// when a non-finite value makes some quotient unbounded; `value` is then the
/// largest finite quotient seen. `witness` holds the maximizing pair (or the
/// offending pair when infinite).
struct LipEstimate {
  double value = 0.0;
  bool infinite = false;
  std::vector<PointId> witness;
};

/// max over all sample pairs of |f(p)-f(q)| / d(p,q).
LipEstimate global_lip(const Field& f);
/// Same, restricted to pairs inside `over`.
LipEstimate global_lip(const Field& f, const Subset& over);
LipEstimate global_lip(const Field& f, std::span<const std::pair<PointId, PointId>> pairs);
/// Table form used by the pipelines.
LipEstimate global_lip(const MetricSpace& space, std::span<const double> values, const Subset* over = nullptr);

/// max over x != p of |f(x)-f(p)| / d(x,p).
LipEstimate pointwise_lip(const Field& f, PointId p);
LipEstimate pointwise_lip(const Field& f, PointId p, const Subset& over);

/// min over the given radii t of [max_{d(x,p)<t} |f(x)-f(p)|] / t.
/// Radii must be positive and strictly decreasing.
double scaled_oscillation(const Field& f, PointId p, std::span<const double> radii);

}  // namespace lipkit
