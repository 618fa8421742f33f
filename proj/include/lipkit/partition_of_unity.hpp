#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lipkit/scalar_field.hpp"

namespace lipkit {

/// l_k(t) = min(k, 1/t) - min(k-1, 1/t); requires k >= 1 and t > 0.
double staircase(std::size_t k, double t);
/// Sequential sum l_1(t) + ... + l_K(t), which equals min(K, 1/t) exactly.
double staircase_sum(std::size_t K, double t);

/// Open sets represented by nonnegative witness fields; set n is coz(eta_n).
struct CozeroCover {
  SpacePtr host;
  std::vector<Field> witnesses;

  std::size_t size() const noexcept { return witnesses.size(); }
  /// Tabulated witnesses; throws if a value is negative or non-finite, or if
  /// some sample lies in no set (the uncovered point is the witness).
  std::vector<std::vector<double>> tabulate_checked() const;
};

struct Ball {
  PointId center;
  double radius;
};

/// eta(x) = min(cap, slope * max_i (r_i - d(x, c_i))+): positive exactly on
/// the union of the open balls, slope-Lipschitz and bounded by cap.
Field witness_from_balls(SpacePtr host, std::span<const Ball> balls, double slope = 1.0, double cap = 1.0);

/// Locally finite shrinking of a countable cover. Witnesses are clamped to
/// eta_n <= 2^-n first; set n (1-based) is stored at index n-1.
struct MatherRefinement {
  std::vector<std::vector<double>> eta;    // clamped inputs
  std::vector<double> total;               // sum_n eta_n / 2^n
  std::vector<std::vector<double>> gamma;  // max(eta_n - total/2, 0)
  /// Smallest k with total(p) > 2^-k; gamma_n(p) = 0 for every n > k.
  std::vector<std::size_t> activity_bound;
  std::vector<std::string> notes;
};

MatherRefinement mather_refine(const CozeroCover& cover);

/// Indexed family of nonnegative fields summing to one, with an explicit
/// per-point activity list and a map from member to cover index.
struct PartitionOfUnity {
  SpacePtr host;
  std::vector<Field> members;
  std::vector<std::vector<double>> values;          // tabulated members
  std::vector<std::size_t> subordination;           // member -> cover index (0-based)
  std::vector<std::vector<std::size_t>> active;     // point -> member indices
  std::size_t cover_size = 0;
  std::vector<std::string> notes;

  std::size_t size() const noexcept { return members.size(); }
  /// Sum over the listed active members at p, in member order.
  double sum_at(PointId p) const;
  /// Same family with one member removed (negative controls).
  PartitionOfUnity without(std::size_t member) const;
};

/// Product partition xi_{nk} = eta'_n * l_k(eta') built on a Mather
/// refinement, where eta'_n = 2^-n min(1, gamma_n / max gamma_n).
class FrolikPartition {
 public:
  static FrolikPartition build(const CozeroCover& cover);

  const MatherRefinement& refinement() const noexcept { return mather_; }
  std::size_t set_count() const noexcept { return weight_.size(); }
  std::size_t point_count() const noexcept { return total_.size(); }

  double weight(std::size_t n, PointId p) const { return weight_.at(n).at(p); }
  double total(PointId p) const { return total_.at(p); }
  /// ceil(1 / eta'(p)); l_k(eta'(p)) = 0 for k beyond it.
  std::size_t step_bound(PointId p) const;
  std::size_t max_step_bound() const;

  /// xi_{nk}(p) with n 0-based and k >= 1.
  double member(std::size_t n, std::size_t k, PointId p) const;
  /// Pairs (n, k) that may be positive at p: n within the Mather bound and
  /// k within the step bound.
  std::vector<std::pair<std::size_t, std::size_t>> active(PointId p) const;
  std::size_t member_count() const { return set_count() * max_step_bound(); }

  /// All members xi_{nk} as tabulated fields, ordered by n then k.
  /// Throws when more than `limit` members would be produced.
  PartitionOfUnity materialize(std::size_t limit = 20000) const;
  /// Closed-form regrouping by set: xi_n = eta'_n / eta'.
  PartitionOfUnity subordinated() const;

 private:
  SpacePtr host_;
  MatherRefinement mather_;
  std::vector<std::vector<double>> weight_;
  std::vector<double> total_;
};

PartitionOfUnity frolik_pou(const CozeroCover& cover, std::size_t limit = 20000);

/// xi_n = sum of the members assigned to cover index n; groups that receive
/// no member become zero fields.
PartitionOfUnity index_subordinate(const PartitionOfUnity& pou, std::size_t target_size);

/// ceil(K) copies of f / ceil(K) (a single copy when K <= 1).
std::vector<Field> nonexpansive_split(const Field& f, const LipEstimate& K);

}  // namespace lipkit
