#include "lipkit/local_lipschitz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lipkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t level_of(double L) { return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(L))); }

// Level function of the cover built from W with oscillation bound K.
IncreasingCover levels(const MetricSpace& space, const LocalWitness& W, double K, const std::vector<char>& in_domain) {
  IncreasingCover cover;
  cover.host_size = space.size();
  cover.level.assign(space.size(), 0);
  for (const LocalEntry& e : W.entries) {
    const double L = std::max(e.K, K / e.delta);
    cover.entry_constant.push_back(L);
    const std::size_t n = level_of(L);
    for (PointId x = 0; x < space.size(); ++x) {
      if (!in_domain[x] || !(space.dist(e.p, x) < e.delta)) continue;
      if (cover.level[x] == 0 || n < cover.level[x]) cover.level[x] = n;
    }
  }
  for (PointId x = 0; x < space.size(); ++x) {
    if (in_domain[x] && cover.level[x] == 0) {
      throw Error(ErrorCode::precondition, "point " + std::to_string(x) + " lies in no witness ball", {x});
    }
    cover.max_level = std::max(cover.max_level, cover.level[x]);
  }
  return cover;
}

std::vector<char> membership(std::size_t n, const Subset* domain) {
  std::vector<char> in(n, domain ? 0 : 1);
  if (domain) {
    for (PointId p : *domain) in[p] = 1;
  }
  return in;
}

void require_witness(const Field& f, const LocalWitness& W, const Subset* domain) {
  const Certificate cert = certify_local_witness(f, W, domain);
  if (!cert.pass) {
    throw Error(ErrorCode::precondition, "local witness fails on the sample (violation " +
                                             std::to_string(cert.worst_violation) + ")",
                cert.witness);
  }
}

// Witness for a union of witness balls: max (delta_p - d(x, p))+ capped at 1.
std::vector<double> ball_union(const MetricSpace& space, const LocalWitness& W, const std::vector<char>& use) {
  std::vector<double> out(space.size(), 0.0);
  for (std::size_t i = 0; i < W.entries.size(); ++i) {
    if (!use[i]) continue;
    const LocalEntry& e = W.entries[i];
    for (PointId x = 0; x < space.size(); ++x) out[x] = std::max(out[x], e.delta - space.dist(e.p, x));
  }
  for (double& v : out) v = std::min(1.0, v);
  return out;
}

struct CandidateSet {
  std::vector<double> witness;
  std::size_t slice;
  std::size_t level;
};

// Keeps a candidate only if it reaches a point no earlier kept set reaches.
std::vector<CandidateSet> irredundant(std::vector<CandidateSet> candidates, std::size_t npts) {
  std::vector<CandidateSet> kept;
  std::vector<char> covered(npts, 0);
  for (auto& c : candidates) {
    bool fresh = false;
    for (PointId p = 0; p < npts; ++p) fresh = fresh || (c.witness[p] > 0.0 && !covered[p]);
    if (!fresh) continue;
    for (PointId p = 0; p < npts; ++p) {
      if (c.witness[p] > 0.0) covered[p] = 1;
    }
    kept.push_back(std::move(c));
  }
  return kept;
}

CozeroCover to_cover(SpacePtr host, const std::vector<CandidateSet>& sets) {
  CozeroCover cover{host, {}};
  for (const auto& s : sets) cover.witnesses.push_back(Field::table(host, s.witness));
  return cover;
}

std::pair<std::vector<PointId>, std::vector<double>> restrict_to(const std::vector<double>& weight,
                                                                  const std::vector<double>& values,
                                                                  const std::vector<char>& allowed) {
  std::vector<PointId> ids;
  std::vector<double> data;
  for (PointId p = 0; p < weight.size(); ++p) {
    if (weight[p] > 0.0 && allowed[p]) {
      ids.push_back(p);
      data.push_back(values[p]);
    }
  }
  return {ids, data};
}

}  // namespace

Subset IncreasingCover::at(std::size_t n) const {
  std::vector<PointId> ids;
  for (PointId x = 0; x < level.size(); ++x) {
    if (level[x] != 0 && level[x] <= n) ids.push_back(x);
  }
  return Subset(host_size, std::move(ids));
}

IncreasingCover increasing_cover(const Field& f, const LocalWitness& W, double K, const Subset* domain) {
  const MetricSpace& space = f.space();
  const auto values = f.tabulate();
  const auto in = membership(space.size(), domain);
  double lo = kInf, hi = -kInf;
  for (PointId x = 0; x < space.size(); ++x) {
    if (!in[x]) continue;
    lo = std::min(lo, values[x]);
    hi = std::max(hi, values[x]);
  }
  if (hi - lo > K + kTolerance) {
    throw Error(ErrorCode::precondition, "oscillation " + std::to_string(hi - lo) + " exceeds the bound " +
                                             std::to_string(K));
  }
  require_witness(f, W, domain);
  return levels(space, W, K, in);
}

double Decomposition::sum_at(PointId p) const {
  double s = 0.0;
  for (std::size_t i : active.at(p)) s += member_values[i][p];
  return s;
}

Decomposition decompose(const Field& f, const LocalWitness& W, std::size_t max_sets) {
  const SpacePtr& host = f.host();
  const MetricSpace& space = *host;
  const std::size_t npts = space.size();
  const auto values = f.tabulate();
  double top = 0.0;
  for (PointId x = 0; x < npts; ++x) {
    if (!std::isfinite(values[x])) throw Error(ErrorCode::invalid_argument, "non-finite field value", {x});
    top = std::max(top, std::abs(values[x]));
  }
  require_witness(f, W, nullptr);

  // Slices {|f| < m}; on each, f is bounded by m and oscillates less than 2m.
  const auto slices = static_cast<std::size_t>(std::floor(top)) + 1;
  std::vector<CandidateSet> candidates;
  for (std::size_t m = 1; m <= slices; ++m) {
    const double md = static_cast<double>(m);
    std::vector<char> in(npts, 0);
    bool any = false;
    for (PointId x = 0; x < npts; ++x) {
      in[x] = std::abs(values[x]) < md;
      any = any || in[x];
    }
    if (!any) continue;
    const IncreasingCover cover = levels(space, W, 2.0 * md, in);
    std::vector<std::size_t> distinct;
    for (PointId x = 0; x < npts; ++x) {
      if (in[x]) distinct.push_back(cover.level[x]);
    }
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (std::size_t n : distinct) {
      std::vector<char> use(W.entries.size());
      for (std::size_t i = 0; i < W.entries.size(); ++i) use[i] = level_of(cover.entry_constant[i]) <= n;
      std::vector<double> w = ball_union(space, W, use);
      for (PointId x = 0; x < npts; ++x) w[x] = std::min(w[x], std::max(md - std::abs(values[x]), 0.0));
      candidates.push_back({std::move(w), m, n});
    }
  }
  auto sets = irredundant(std::move(candidates), npts);
  if (sets.size() > max_sets) {
    throw Error(ErrorCode::precondition,
                "decomposition needs " + std::to_string(sets.size()) + " cover sets, above the limit " +
                    std::to_string(max_sets));
  }

  Decomposition out;
  const FrolikPartition frolik = FrolikPartition::build(to_cover(host, sets));
  out.pou = frolik.subordinated();
  out.active = out.pou.active;
  const std::vector<char> everywhere(npts, 1);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto& xi = out.pou.values[i];
    auto [ids, data] = restrict_to(xi, values, everywhere);
    std::vector<double> member(npts, 0.0);
    Field term = Field::constant(host, 0.0);
    if (!ids.empty()) {
      const Subset Ai(npts, ids);
      const double m = static_cast<double>(sets[i].slice);
      const Field psi = extend_to_interval(host, Ai, data, static_cast<double>(sets[i].level), Interval::closed(-m, m));
      term = psi * out.pou.members[i];
      member = term.tabulate();
    }
    out.members.push_back(term);
    out.member_values.push_back(std::move(member));
    out.slice.push_back(sets[i].slice);
    out.level.push_back(sets[i].level);
  }
  out.series = Field::series(host, out.members, out.active);
  out.notes.push_back(std::to_string(sets.size()) + " cover sets over " + std::to_string(slices) + " slices");
  out.notes.insert(out.notes.end(), out.pou.notes.begin(), out.pou.notes.end());
  return out;
}

double ModulusWitness::L(PointId x, PointId y) const {
  const double base = std::max(ell_values.at(x), ell_values.at(y));
  if (mode == ModulusMode::bounded) return base;
  return (1.0 + std::abs(f_values.at(x) - f_values.at(y))) * base;
}

ModulusWitness modulus_witness(const Field& f, const LocalWitness& W, ModulusMode mode) {
  const MetricSpace& space = f.space();
  const std::size_t npts = space.size();
  ModulusWitness out;
  out.mode = mode;
  out.f_values = f.tabulate();
  for (PointId x = 0; x < npts; ++x) {
    if (!std::isfinite(out.f_values[x])) throw Error(ErrorCode::invalid_argument, "non-finite field value", {x});
  }
  require_witness(f, W, nullptr);

  double K = 1.0;  // transported differences r / (1 + r) stay below 1
  if (mode == ModulusMode::bounded) {
    const auto [lo, hi] = std::minmax_element(out.f_values.begin(), out.f_values.end());
    K = *hi - *lo;
  }
  const IncreasingCover cover = levels(space, W, K, std::vector<char>(npts, 1));
  out.eta.resize(npts);
  for (PointId x = 0; x < npts; ++x) out.eta[x] = static_cast<double>(cover.level[x]);

  const double sep = space.min_separation();
  const double top = *std::max_element(out.eta.begin(), out.eta.end());
  out.M = std::isfinite(sep) ? top / sep : 0.0;
  out.ell_values.resize(npts);
  for (PointId x = 0; x < npts; ++x) {
    double best = -kInf;
    for (PointId y = 0; y < npts; ++y) best = std::max(best, out.eta[y] - out.M * space.dist(x, y));
    out.ell_values[x] = best;
  }
  out.ell = Field::table(f.host(), out.ell_values);
  return out;
}

LocalWitness witness_from_modulus(const MetricSpace& space, const ModulusWitness& modulus) {
  LocalWitness W;
  for (PointId p = 0; p < space.size(); ++p) {
    double delta = space.nearest_neighbor_distance(p);
    if (!std::isfinite(delta)) delta = 1.0;
    const auto inside = space.ball(p, 2.0 * delta);
    double K = 0.0;
    for (std::size_t i = 0; i < inside.size(); ++i)
      for (std::size_t j = i + 1; j < inside.size(); ++j) K = std::max(K, modulus.L(inside[i], inside[j]));
    W.entries.push_back({p, delta, K});
  }
  return W;
}

LocalExtension local_extend(SpacePtr host, const Subset& A, std::span<const double> values, const LocalWitness& W,
                            const Interval& range) {
  if (!host) throw Error(ErrorCode::invalid_argument, "extension needs a host space");
  const MetricSpace& space = *host;
  const std::size_t npts = space.size();
  if (A.empty()) throw Error(ErrorCode::invalid_argument, "extension domain is empty");
  if (A.host_size() != npts) throw Error(ErrorCode::invalid_argument, "subset belongs to a different space");
  if (values.size() != A.size()) throw Error(ErrorCode::invalid_argument, "values do not match the subset");
  if (range.degenerate()) throw Error(ErrorCode::invalid_argument, "degenerate target interval " + range.to_string());
  for (std::size_t i = 0; i < A.size(); ++i) {
    if (!range.contains(values[i])) {
      throw Error(ErrorCode::precondition,
                  "data value at point " + std::to_string(A.members()[i]) + " lies outside " + range.to_string(),
                  {A.members()[i]});
    }
  }

  std::vector<double> phi(npts, 0.0);
  for (std::size_t i = 0; i < A.size(); ++i) phi[A.members()[i]] = values[i];
  const Field phi_field = Field::table(host, phi);
  require_witness(phi_field, W, &A);

  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const std::vector<char> in_A = membership(npts, &A);
  const IncreasingCover cover = levels(space, W, *hi - *lo, in_A);

  // Sets V_n: the witness balls with level <= n taken in the whole space.
  std::vector<std::size_t> distinct;
  for (PointId a : A) distinct.push_back(cover.level[a]);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<CandidateSet> candidates;
  for (std::size_t n : distinct) {
    std::vector<char> use(W.entries.size());
    for (std::size_t i = 0; i < W.entries.size(); ++i) use[i] = level_of(cover.entry_constant[i]) <= n;
    candidates.push_back({ball_union(space, W, use), 0, n});
  }
  if (A.size() < npts) {
    std::vector<double> away(npts);
    for (PointId x = 0; x < npts; ++x) away[x] = std::min(1.0, space.dist_to_set(x, A));
    candidates.push_back({std::move(away), 0, 0});
  }
  const auto sets = irredundant(std::move(candidates), npts);
  const PartitionOfUnity pou = FrolikPartition::build(to_cover(host, sets)).subordinated();

  LocalExtension out;
  std::vector<Field> terms;
  const double fallback = 0.5 * (*lo + *hi);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    auto [ids, data] = restrict_to(pou.values[j], phi, in_A);
    Field piece = Field::constant(host, fallback);
    if (!ids.empty()) {
      piece = extend_to_interval(host, Subset(npts, ids), data, static_cast<double>(sets[j].level), range);
    }
    terms.push_back(pou.members[j] * piece);
  }
  const Field blended = Field::series(host, terms, pou.active).clamped(range);
  out.field = Field::patched(blended, A, std::vector<double>(values.begin(), values.end()));
  out.values = out.field.tabulate();
  out.pieces = sets.size();
  out.witness = generate_local_witness(out.field);

  const Certificate parts[] = {check_agreement(out.field, A, values), check_range(out.values, range),
                               certify_local_witness(out.field, out.witness)};
  out.certificate = combine(CertificateKind::witness, parts);
  out.notes.push_back(std::to_string(sets.size()) + " pieces");
  return out;
}

}  // namespace lipkit
