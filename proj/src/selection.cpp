#include "lipkit/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lipkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Infinite sides replaced by finite sentinels one span beyond the data.
std::pair<std::vector<double>, std::vector<double>> with_sentinels(std::vector<double> g, std::vector<double> h) {
  double lo = kInf, hi = -kInf;
  for (const auto* side : {&g, &h})
    for (double v : *side) {
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
  if (!std::isfinite(lo)) lo = hi = 0.0;
  const double span = std::max(1.0, hi - lo);
  for (double& v : g) {
    if (!std::isfinite(v)) v = lo - span;
  }
  for (double& v : h) {
    if (!std::isfinite(v)) v = hi + span;
  }
  return {std::move(g), std::move(h)};
}

struct Level {
  double value;
  std::size_t depth;
};

// Lowest-depth dyadic strictly inside (g, h), nearest the midpoint.
std::optional<Level> simplest_dyadic(double g, double h, std::size_t max_depth) {
  for (std::size_t e = 0; e <= max_depth; ++e) {
    const double scale = std::ldexp(1.0, static_cast<int>(e));
    const double j_lo = std::floor(g * scale) + 1.0;
    const double j_hi = std::ceil(h * scale) - 1.0;
    if (j_lo > j_hi) continue;
    const double j = std::clamp(std::round(0.5 * (g + h) * scale), j_lo, j_hi);
    return Level{j / scale, e};
  }
  return std::nullopt;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> IntervalMapping::tabulate_checked() const {
  if (g.host() != h.host()) throw Error(ErrorCode::invalid_argument, "envelopes live on different spaces");
  auto gv = g.tabulate();
  auto hv = h.tabulate();
  for (PointId p = 0; p < gv.size(); ++p) {
    if (std::isnan(gv[p]) || std::isnan(hv[p])) throw Error(ErrorCode::invalid_argument, "NaN envelope value", {p});
    if (gv[p] == kInf || hv[p] == -kInf) {
      throw Error(ErrorCode::invalid_argument, "lower envelope +inf or upper envelope -inf", {p});
    }
    if (!(gv[p] < hv[p])) {
      throw Error(ErrorCode::precondition, "empty value interval at point " + std::to_string(p), {p});
    }
  }
  return {std::move(gv), std::move(hv)};
}

OpenGraphReport graph_open_check(const IntervalMapping& omega, PointId x, double s, double t) {
  const auto [g, h] = omega.tabulate_checked();
  const MetricSpace& space = omega.g.space();
  if (x >= space.size()) throw Error(ErrorCode::out_of_range, "probe point out of range", {x});
  if (!(s < t) || !(g[x] < s) || !(t < h[x])) {
    throw Error(ErrorCode::invalid_argument, "probe [s, t] must satisfy g(x) < s < t < h(x)", {x});
  }
  OpenGraphReport report;
  report.nearest_neighbor = space.nearest_neighbor_distance(x);
  report.radius = space.diameter();
  for (PointId y = 0; y < space.size(); ++y) {
    if (g[y] < s && t < h[y]) continue;
    const double d = space.dist(x, y);
    if (!report.counterexample || d < report.radius) {
      report.radius = d;
      report.counterexample = y;
    }
  }
  report.pass = !report.counterexample || report.radius > report.nearest_neighbor;
  return report;
}

Selection select(const IntervalMapping& omega, std::size_t start_depth) {
  auto [g_raw, h_raw] = omega.tabulate_checked();
  const auto [g, h] = with_sentinels(g_raw, h_raw);
  const SpacePtr& host = omega.g.host();
  const std::size_t npts = g.size();

  // Grow the depth until every sample has an admissible level.
  std::size_t depth = start_depth;
  std::vector<Level> own(npts);
  for (;; ++depth) {
    std::optional<PointId> missing;
    for (PointId p = 0; p < npts && !missing; ++p) {
      auto level = simplest_dyadic(g[p], h[p], depth);
      if (level) {
        own[p] = *level;
      } else {
        missing = p;
      }
    }
    if (!missing) break;
    if (depth >= kMaxGridDepth) {
      throw Error(ErrorCode::precondition,
                  "no dyadic level of depth <= " + std::to_string(kMaxGridDepth) + " fits inside the interval at point " +
                      std::to_string(*missing),
                  {*missing});
    }
  }

  std::map<double, std::size_t> candidates;
  for (const Level& l : own) {
    auto [it, fresh] = candidates.emplace(l.value, l.depth);
    if (!fresh) it->second = std::min(it->second, l.depth);
  }

  // Greedy finite subcover of the sample by the sets {g < r < h}.
  std::vector<char> covered(npts, 0);
  std::size_t left = npts;
  std::vector<Level> picked;
  while (left > 0) {
    std::size_t best_gain = 0;
    Level best{0.0, 0};
    for (const auto& [r, e] : candidates) {
      std::size_t gain = 0;
      for (PointId p = 0; p < npts; ++p) gain += !covered[p] && g[p] < r && r < h[p];
      if (gain > best_gain || (gain == best_gain && gain > 0 && e < best.depth)) {
        best_gain = gain;
        best = {r, e};
      }
    }
    if (best_gain == 0) throw Error(ErrorCode::internal, "level cover stalled");
    for (PointId p = 0; p < npts; ++p) {
      if (!covered[p] && g[p] < best.value && best.value < h[p]) {
        covered[p] = 1;
        --left;
      }
    }
    candidates.erase(best.value);
    picked.push_back(best);
  }

  CozeroCover cover{host, {}};
  for (const Level& l : picked) {
    std::vector<double> w(npts);
    for (PointId p = 0; p < npts; ++p) w[p] = std::min(1.0, std::max(std::min(l.value - g[p], h[p] - l.value), 0.0));
    cover.witnesses.push_back(Field::table(host, std::move(w)));
  }
  const PartitionOfUnity pou = FrolikPartition::build(cover).subordinated();

  Selection out;
  out.values.assign(npts, 0.0);
  for (PointId p = 0; p < npts; ++p) {
    double sum = 0.0, lo = kInf, hi = -kInf;
    for (std::size_t i : pou.active[p]) {
      const double xi = pou.values[i][p];
      if (!(xi > 0.0)) continue;
      sum += xi * picked[i].value;
      lo = std::min(lo, picked[i].value);
      hi = std::max(hi, picked[i].value);
    }
    // The exact convex combination lies between the levels used.
    out.values[p] = std::clamp(sum, lo, hi);
  }
  out.field = Field::table(host, out.values);
  out.grid.depth = depth;
  for (const Level& l : picked) out.grid.levels.push_back(l.value);
  out.witness = generate_local_witness(out.field);
  const Certificate parts[] = {check_strict(out.values, g_raw, h_raw), certify_local_witness(out.field, out.witness)};
  out.certificate = combine(CertificateKind::strictness, parts);
  out.notes.push_back("grid depth " + std::to_string(depth) + ", " + std::to_string(picked.size()) + " levels");
  return out;
}

Selection select_extend(const IntervalMapping& omega, const Subset& A, std::span<const double> values,
                        const LocalWitness* W, std::size_t start_depth) {
  const auto [g, h] = omega.tabulate_checked();
  const SpacePtr& host = omega.g.host();
  const std::size_t npts = g.size();
  if (A.empty()) throw Error(ErrorCode::invalid_argument, "selection domain is empty");
  if (values.size() != A.size()) throw Error(ErrorCode::invalid_argument, "values do not match the subset");
  for (std::size_t i = 0; i < A.size(); ++i) {
    const PointId a = A.members()[i];
    if (!(g[a] < values[i] && values[i] < h[a])) {
      throw Error(ErrorCode::precondition, "data is not a selection at point " + std::to_string(a), {a});
    }
  }

  LocalWitness generated;
  if (!W) {
    std::vector<double> phi(npts, 0.0);
    for (std::size_t i = 0; i < A.size(); ++i) phi[A.members()[i]] = values[i];
    generated = generate_local_witness(Field::table(host, phi), &A);
    W = &generated;
  }
  const LocalExtension G = local_extend(host, A, values, *W, Interval::real_line());

  std::vector<PointId> bad;
  for (PointId p = 0; p < npts; ++p) {
    if (!(g[p] < G.values[p] && G.values[p] < h[p])) bad.push_back(p);
  }

  Selection out;
  if (bad.empty()) {
    out.values = G.values;
    out.notes.push_back("extension already admissible; no blending");
  } else {
    const Selection H = select(omega, start_depth);
    const Subset B(npts, bad);
    out.values.resize(npts);
    for (PointId p = 0; p < npts; ++p) {
      const double dA = host->dist_to_set(p, A);
      const double dB = host->dist_to_set(p, B);
      const double xi = dA / (dA + dB);
      const double v = (1.0 - xi) * G.values[p] + xi * H.values[p];
      out.values[p] = std::clamp(v, std::min(G.values[p], H.values[p]), std::max(G.values[p], H.values[p]));
    }
    out.grid = H.grid;
    out.notes.push_back("blended with a global selection on " + std::to_string(bad.size()) + " inadmissible points");
  }
  out.field = Field::table(host, out.values);
  out.witness = generate_local_witness(out.field);
  const Certificate parts[] = {check_strict(out.values, g, h), check_agreement(out.field, A, values, 0.0),
                               certify_local_witness(out.field, out.witness)};
  out.certificate = combine(CertificateKind::strictness, parts);
  return out;
}

Selection insert(const Field& g, const Field& h, const Subset& A, std::span<const double> values,
                 const LocalWitness* W, std::size_t start_depth) {
  const IntervalMapping omega{g, h};
  if (A.empty()) return select(omega, start_depth);
  return select_extend(omega, A, values, W, start_depth);
}

std::vector<Selection> decreasing_approx(const Field& phi, std::size_t n_max, std::size_t start_depth) {
  if (n_max < 1) throw Error(ErrorCode::invalid_argument, "n_max must be at least 1");
  std::vector<Selection> out;
  Field upper = phi + Field::constant(phi.host(), 1.0);
  for (std::size_t n = 1; n <= n_max; ++n) {
    out.push_back(insert(phi, upper, {}, {}, nullptr, start_depth));
    upper = (phi + out.back().field).scaled(0.5);
  }
  return out;
}

}  // namespace lipkit
