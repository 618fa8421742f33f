#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipkit/error.hpp"

namespace lipkit {

class MetricSpace;
using SpacePtr = std::shared_ptr<const MetricSpace>;

/// Sorted, duplicate-free set of point ids of a host space.
class Subset {
 public:
  Subset() = default;
  /// Validates ids against a host of `host_size` points; sorts and dedups.
  Subset(std::size_t host_size, std::vector<PointId> ids);

  static Subset all(std::size_t host_size);

  const std::vector<PointId>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  std::size_t host_size() const noexcept { return host_size_; }

  bool contains(PointId p) const;
  /// Index of `p` within members(), if present.
  std::optional<std::size_t> position(PointId p) const;
  Subset complement() const;

  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  std::size_t host_size_ = 0;
  std::vector<PointId> members_;
};

struct Edge {
  PointId u;
  PointId v;
  double weight;
};

enum class ViolationKind { negative, nonzero_diagonal, zero_off_diagonal, asymmetry, triangle, non_finite };

struct MetricViolation {
  ViolationKind kind;
  std::vector<PointId> points;  // (p,q) or the triangle witness (p,q,r)
  double amount;                // size of the violation
};

struct ValidationReport {
  std::size_t point_count = 0;
  std::vector<MetricViolation> violations;
  std::size_t truncated = 0;  // violations not listed past the report cap

  bool valid() const noexcept { return violations.empty(); }
};

const char* to_string(ViolationKind kind);

/// Finite metric space. Immutable after construction; all queries are const
/// and safe to call concurrently.
class MetricSpace {
 public:
  enum class Backend { matrix, euclidean, graph, grid };

  /// Row-major n x n distance matrix. Axioms are not enforced here; see
  /// validate_metric().
  static SpacePtr from_matrix(std::size_t n, std::vector<double> distances);
  /// Point cloud with uniform dimension; distances computed on demand.
  static SpacePtr from_points(std::vector<std::vector<double>> points);
  /// Weighted undirected graph; all-pairs shortest paths are precomputed.
  static SpacePtr from_graph(std::size_t n, std::span<const Edge> edges);
  /// Uniform grid lo, lo+step, ..., up to hi (inclusive within 1e-9 steps).
  static SpacePtr from_grid(double lo, double hi, double step);

  Backend backend() const noexcept { return backend_; }
  std::size_t size() const noexcept { return n_; }
  /// Coordinate dimension, 0 when the backend carries no coordinates.
  std::size_t dimension() const noexcept { return dim_; }
  std::span<const double> coords(PointId p) const;

  double dist(PointId p, PointId q) const;
  double dist_to_set(PointId p, const Subset& s) const;

  /// Ids of sample points x with d(p,x) < radius (open ball).
  std::vector<PointId> ball(PointId p, double radius) const;
  double diameter() const;
  /// Distance from p to the closest other point; +inf for a singleton space.
  double nearest_neighbor_distance(PointId p) const;
  /// Smallest positive pairwise distance.
  double min_separation() const;

  /// Restriction to a subset, as an explicit-matrix space indexed by the
  /// position of each member within `s`.
  SpacePtr subspace(const Subset& s) const;

  std::string describe() const;

 private:
  MetricSpace() = default;
  void check_id(PointId p) const;

  Backend backend_ = Backend::matrix;
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> matrix_;  // matrix and graph backends
  std::vector<double> coords_;  // euclidean and grid backends, row-major
  double grid_lo_ = 0.0;
  double grid_step_ = 0.0;
};

/// Reports every axiom violation (up to an internal cap) with its witness.
ValidationReport validate_metric(const MetricSpace& space, double tolerance = kTolerance);

}  // namespace lipkit
