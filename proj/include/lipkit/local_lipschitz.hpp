#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lipkit/certify.hpp"
#include "lipkit/extension.hpp"
#include "lipkit/partition_of_unity.hpp"

namespace lipkit {

/// Nested sets U_1 within U_2 within ..., stored through the level function
/// level(x) = min{n : x in U_n}.
struct IncreasingCover {
  std::vector<double> entry_constant;  // L_p = max(K_p, K / delta_p), per witness entry
  std::vector<std::size_t> level;      // per point of the host; 0 outside the domain
  std::size_t max_level = 0;
  std::size_t host_size = 0;

  Subset at(std::size_t n) const;
};

/// U_n is the union of the witness balls O(p, delta_p) with L_p <= n,
/// intersected with `domain` when given. Requires |f(x) - f(y)| <= K on the
/// domain and a witness that passes certify_local_witness.
IncreasingCover increasing_cover(const Field& f, const LocalWitness& W, double K, const Subset* domain = nullptr);

/// f as a locally finite sum of bounded Lipschitz members phi_i.
struct Decomposition {
  Field series;
  std::vector<Field> members;
  std::vector<std::vector<double>> member_values;
  std::vector<std::vector<std::size_t>> active;  // per point: member indices
  std::vector<std::size_t> slice;                // m_i: member i is bounded by m_i
  std::vector<std::size_t> level;                // n_i: member i's piece is n_i-Lipschitz
  PartitionOfUnity pou;
  std::vector<std::string> notes;

  /// Sum over the listed active members at p.
  double sum_at(PointId p) const;
};

Decomposition decompose(const Field& f, const LocalWitness& W, std::size_t max_sets = 400);

enum class ModulusMode { bounded, transported };

/// Continuous majorant ell of the level function with
/// |f(x) - f(y)| <= L(x,y) d(x,y), where L(x,y) = max(ell(x), ell(y)) in
/// bounded mode and (1 + |f(x) - f(y)|) max(ell(x), ell(y)) in transported
/// mode.
struct ModulusWitness {
  ModulusMode mode = ModulusMode::bounded;
  Field ell;
  std::vector<double> ell_values;
  std::vector<double> eta;  // level function
  double M = 0.0;           // Lipschitz constant of ell
  std::vector<double> f_values;

  double L(PointId x, PointId y) const;
};

ModulusWitness modulus_witness(const Field& f, const LocalWitness& W, ModulusMode mode = ModulusMode::bounded);

/// Converse direction: delta_p is the distance to the nearest other point and
/// K_p the largest L over pairs inside O(p, 2 delta_p).
LocalWitness witness_from_modulus(const MetricSpace& space, const ModulusWitness& modulus);

struct LocalExtension {
  Field field;
  std::vector<double> values;
  LocalWitness witness;     // generated on the output
  Certificate certificate;  // agreement, range and witness checks combined
  std::size_t pieces = 0;
  std::vector<std::string> notes;
};

/// Locally Lipschitz extension of phi: A -> range, where W certifies phi on A.
LocalExtension local_extend(SpacePtr host, const Subset& A, std::span<const double> values, const LocalWitness& W,
                            const Interval& range);

}  // namespace lipkit
