#include "lipkit/partition_of_unity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lipkit {

double staircase(std::size_t k, double t) {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "staircase index starts at 1");
  if (!(t > 0.0)) throw Error(ErrorCode::domain, "staircase needs t > 0, got " + std::to_string(t));
  const double inv = 1.0 / t;
  return std::min(static_cast<double>(k), inv) - std::min(static_cast<double>(k - 1), inv);
}

double staircase_sum(std::size_t K, double t) {
  double s = 0.0;
  for (std::size_t k = 1; k <= K; ++k) s += staircase(k, t);
  return s;
}

std::vector<std::vector<double>> CozeroCover::tabulate_checked() const {
  if (!host) throw Error(ErrorCode::invalid_argument, "cover needs a host space");
  if (witnesses.empty()) throw Error(ErrorCode::invalid_argument, "cover has no sets");
  std::vector<std::vector<double>> tables;
  tables.reserve(witnesses.size());
  for (const Field& w : witnesses) {
    if (w.host() != host) throw Error(ErrorCode::invalid_argument, "cover witness lives on a different space");
    tables.push_back(w.tabulate());
    const auto& t = tables.back();
    for (PointId p = 0; p < t.size(); ++p) {
      if (!(t[p] >= 0.0) || !std::isfinite(t[p])) {
        throw Error(ErrorCode::invalid_argument,
                    "cover witness " + std::to_string(tables.size()) + " is negative or non-finite", {p});
      }
    }
  }
  for (PointId p = 0; p < host->size(); ++p) {
    bool hit = false;
    for (const auto& t : tables) hit = hit || t[p] > 0.0;
    if (!hit) throw Error(ErrorCode::precondition, "point " + std::to_string(p) + " lies in no cover set", {p});
  }
  return tables;
}

Field witness_from_balls(SpacePtr host, std::span<const Ball> balls, double slope, double cap) {
  if (!host) throw Error(ErrorCode::invalid_argument, "witness needs a host space");
  if (!(slope > 0.0) || !(cap > 0.0)) throw Error(ErrorCode::invalid_argument, "slope and cap must be positive");
  std::vector<double> values(host->size(), 0.0);
  for (const Ball& b : balls) {
    if (b.center >= host->size()) throw Error(ErrorCode::out_of_range, "ball center out of range", {b.center});
    if (!(b.radius > 0.0)) throw Error(ErrorCode::invalid_argument, "ball radius must be positive", {b.center});
  }
  for (PointId x = 0; x < host->size(); ++x) {
    double reach = 0.0;
    for (const Ball& b : balls) reach = std::max(reach, b.radius - host->dist(x, b.center));
    values[x] = std::min(cap, slope * reach);
  }
  return Field::table(std::move(host), std::move(values));
}

MatherRefinement mather_refine(const CozeroCover& cover) {
  MatherRefinement out;
  out.eta = cover.tabulate_checked();
  const std::size_t n = cover.host->size();
  const std::size_t sets = out.eta.size();

  bool clamped = false;
  for (std::size_t i = 0; i < sets; ++i) {
    const double bound = std::ldexp(1.0, -static_cast<int>(i + 1));
    for (double& v : out.eta[i]) {
      if (v > bound) {
        v = bound;
        clamped = true;
      }
    }
  }
  if (clamped) out.notes.push_back("witnesses clamped to eta_n <= 2^-n");

  out.total.assign(n, 0.0);
  for (std::size_t i = 0; i < sets; ++i) {
    const double w = std::ldexp(1.0, -static_cast<int>(i + 1));
    for (PointId p = 0; p < n; ++p) out.total[p] += out.eta[i][p] * w;
  }

  out.gamma.assign(sets, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < sets; ++i)
    for (PointId p = 0; p < n; ++p) out.gamma[i][p] = std::max(out.eta[i][p] - 0.5 * out.total[p], 0.0);

  out.activity_bound.assign(n, 0);
  for (PointId p = 0; p < n; ++p) {
    std::size_t k = 0;
    while (!(out.total[p] > std::ldexp(1.0, -static_cast<int>(k)))) ++k;
    out.activity_bound[p] = k;
    bool hit = false;
    for (std::size_t i = 0; i < sets; ++i) hit = hit || out.gamma[i][p] > 0.0;
    if (!hit) throw Error(ErrorCode::internal, "refinement lost point " + std::to_string(p), {p});
  }
  return out;
}

double PartitionOfUnity::sum_at(PointId p) const {
  double s = 0.0;
  for (std::size_t i : active.at(p)) s += values[i][p];
  return s;
}

PartitionOfUnity PartitionOfUnity::without(std::size_t member) const {
  if (member >= members.size()) throw Error(ErrorCode::out_of_range, "member index out of range");
  PartitionOfUnity out;
  out.host = host;
  out.cover_size = cover_size;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (i == member) continue;
    out.members.push_back(members[i]);
    out.values.push_back(values[i]);
    out.subordination.push_back(subordination[i]);
  }
  out.active.resize(active.size());
  for (std::size_t p = 0; p < active.size(); ++p) {
    for (std::size_t i : active[p]) {
      if (i == member) continue;
      out.active[p].push_back(i > member ? i - 1 : i);
    }
  }
  out.notes = notes;
  out.notes.push_back("member " + std::to_string(member) + " removed");
  return out;
}

FrolikPartition FrolikPartition::build(const CozeroCover& cover) {
  FrolikPartition out;
  out.host_ = cover.host;
  out.mather_ = mather_refine(cover);
  const std::size_t n = cover.host->size();
  const std::size_t sets = out.mather_.gamma.size();

  out.weight_.assign(sets, std::vector<double>(n, 0.0));
  out.total_.assign(n, 0.0);
  for (std::size_t i = 0; i < sets; ++i) {
    const auto& g = out.mather_.gamma[i];
    const double beta = *std::max_element(g.begin(), g.end());
    if (!(beta > 0.0)) continue;
    const double scale = std::ldexp(1.0, -static_cast<int>(i + 1));
    for (PointId p = 0; p < n; ++p) out.weight_[i][p] = scale * std::min(1.0, g[p] / beta);
  }
  for (std::size_t i = 0; i < sets; ++i)
    for (PointId p = 0; p < n; ++p) out.total_[p] += out.weight_[i][p];
  return out;
}

std::size_t FrolikPartition::step_bound(PointId p) const {
  const double inv = 1.0 / total(p);
  if (!std::isfinite(inv) || inv > 1e15) throw Error(ErrorCode::internal, "step bound overflow", {p});
  return static_cast<std::size_t>(std::ceil(inv));
}

std::size_t FrolikPartition::max_step_bound() const {
  std::size_t best = 0;
  for (PointId p = 0; p < point_count(); ++p) best = std::max(best, step_bound(p));
  return best;
}

double FrolikPartition::member(std::size_t n, std::size_t k, PointId p) const {
  return weight(n, p) * staircase(k, total(p));
}

std::vector<std::pair<std::size_t, std::size_t>> FrolikPartition::active(PointId p) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t sets = std::min(set_count(), mather_.activity_bound.at(p));
  const std::size_t steps = step_bound(p);
  for (std::size_t n = 0; n < sets; ++n)
    for (std::size_t k = 1; k <= steps; ++k) out.emplace_back(n, k);
  return out;
}

PartitionOfUnity FrolikPartition::materialize(std::size_t limit) const {
  const std::size_t steps = max_step_bound();
  const std::size_t count = set_count() * steps;
  if (count > limit) {
    throw Error(ErrorCode::precondition, "Frolik family has " + std::to_string(count) +
                                             " members, above the materialization limit " + std::to_string(limit));
  }
  const std::size_t npts = point_count();
  PartitionOfUnity out;
  out.host = host_;
  out.cover_size = set_count();
  out.active.resize(npts);
  for (std::size_t n = 0; n < set_count(); ++n) {
    for (std::size_t k = 1; k <= steps; ++k) {
      std::vector<double> v(npts);
      for (PointId p = 0; p < npts; ++p) v[p] = member(n, k, p);
      out.values.push_back(v);
      out.members.push_back(Field::table(host_, std::move(v)));
      out.subordination.push_back(n);
    }
  }
  for (PointId p = 0; p < npts; ++p) {
    const std::size_t sets = std::min(set_count(), mather_.activity_bound[p]);
    const std::size_t k_max = step_bound(p);
    for (std::size_t n = 0; n < sets; ++n)
      for (std::size_t k = 1; k <= k_max; ++k) out.active[p].push_back(n * steps + (k - 1));
  }
  out.notes.push_back("members xi_{nk} for k <= " + std::to_string(steps));
  return out;
}

PartitionOfUnity FrolikPartition::subordinated() const {
  const std::size_t npts = point_count();
  PartitionOfUnity out;
  out.host = host_;
  out.cover_size = set_count();
  out.active.resize(npts);
  for (std::size_t n = 0; n < set_count(); ++n) {
    std::vector<double> v(npts);
    for (PointId p = 0; p < npts; ++p) v[p] = weight_[n][p] / total_[p];
    out.values.push_back(v);
    out.members.push_back(Field::table(host_, std::move(v)));
    out.subordination.push_back(n);
  }
  for (PointId p = 0; p < npts; ++p) {
    const std::size_t sets = std::min(set_count(), mather_.activity_bound[p]);
    for (std::size_t n = 0; n < sets; ++n) out.active[p].push_back(n);
  }
  out.notes.push_back("closed-form regrouping eta'_n / eta'");
  return out;
}

PartitionOfUnity frolik_pou(const CozeroCover& cover, std::size_t limit) {
  return FrolikPartition::build(cover).materialize(limit);
}

PartitionOfUnity index_subordinate(const PartitionOfUnity& pou, std::size_t target_size) {
  for (std::size_t s : pou.subordination) {
    if (s >= target_size) throw Error(ErrorCode::out_of_range, "member assigned outside the target cover");
  }
  const std::size_t npts = pou.host->size();
  PartitionOfUnity out;
  out.host = pou.host;
  out.cover_size = target_size;
  out.values.assign(target_size, std::vector<double>(npts, 0.0));
  out.active.resize(npts);
  // Sum each group in member order over the active list only.
  for (PointId p = 0; p < npts; ++p) {
    std::vector<char> seen(target_size, 0);
    for (std::size_t i : pou.active[p]) {
      const std::size_t g = pou.subordination[i];
      out.values[g][p] += pou.values[i][p];
      seen[g] = 1;
    }
    for (std::size_t g = 0; g < target_size; ++g) {
      if (seen[g]) out.active[p].push_back(g);
    }
  }
  for (std::size_t g = 0; g < target_size; ++g) {
    out.members.push_back(Field::table(pou.host, out.values[g]));
    out.subordination.push_back(g);
  }
  out.notes = pou.notes;
  return out;
}

std::vector<Field> nonexpansive_split(const Field& f, const LipEstimate& K) {
  if (K.infinite || !std::isfinite(K.value)) {
    throw Error(ErrorCode::precondition, "nonexpansive split needs a finite Lipschitz constant", K.witness);
  }
  const std::size_t m = K.value <= 1.0 ? 1 : static_cast<std::size_t>(std::ceil(K.value));
  if (m == 1) return {f};
  return std::vector<Field>(m, f.scaled(1.0 / static_cast<double>(m)));
}

}  // namespace lipkit
