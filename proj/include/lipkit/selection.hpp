#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lipkit/certify.hpp"
#include "lipkit/local_lipschitz.hpp"

namespace lipkit {

/// x -> (g(x), h(x)). Either envelope may take infinite values, standing for
/// an unbounded side.
struct IntervalMapping {
  Field g;
  Field h;

  /// Tabulates both sides and checks g < h at every sample.
  std::pair<std::vector<double>, std::vector<double>> tabulate_checked() const;
};

/// Finite set of dyadic levels k / 2^depth.
struct RationalGrid {
  std::size_t depth = 0;
  std::vector<double> levels;
};

struct OpenGraphReport {
  bool pass = false;
  double radius = 0.0;                    // certified radius
  std::optional<PointId> counterexample;  // nearest sample where [s,t] is not inside
  double nearest_neighbor = 0.0;
};

/// Largest radius r such that every sample x' with d(x, x') < r has
/// [s, t] inside (g(x'), h(x')). Fails when r does not reach past the nearest
/// neighbor of x. Requires g(x) < s < t < h(x).
OpenGraphReport graph_open_check(const IntervalMapping& omega, PointId x, double s, double t);

struct Selection {
  Field field;
  std::vector<double> values;
  RationalGrid grid;        // levels actually used, in pick order
  LocalWitness witness;     // generated on the output
  Certificate certificate;  // strictness combined with the witness check
  std::vector<std::string> notes;
};

inline constexpr std::size_t kMinGridDepth = 3;
inline constexpr std::size_t kMaxGridDepth = 20;

/// f = sum_r xi_r r, a convex combination of dyadic levels admissible at each
/// sample. The grid depth starts at `start_depth` and grows by one until every
/// sample has a level, up to kMaxGridDepth.
Selection select(const IntervalMapping& omega, std::size_t start_depth = kMinGridDepth);

/// Extends a selection phi given on A to the whole space. W certifies phi on
/// A; when absent a witness is generated from the data.
Selection select_extend(const IntervalMapping& omega, const Subset& A, std::span<const double> values,
                        const LocalWitness* W = nullptr, std::size_t start_depth = kMinGridDepth);

/// f with g < f < h, agreeing with phi on A when A is nonempty.
Selection insert(const Field& g, const Field& h, const Subset& A = {}, std::span<const double> values = {},
                 const LocalWitness* W = nullptr, std::size_t start_depth = kMinGridDepth);

/// f_1 = insert(phi, phi + 1), f_{n+1} = insert(phi, (phi + f_n) / 2).
std::vector<Selection> decreasing_approx(const Field& phi, std::size_t n_max,
                                         std::size_t start_depth = kMinGridDepth);

}  // namespace lipkit
