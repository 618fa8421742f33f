#include "lipkit/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lipkit/partition_of_unity.hpp"

namespace lipkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Ratio excess of one pair; non-finite data counts as an unbounded violation.
double ratio_excess(double fp, double fq, double d, double K) {
  if (!std::isfinite(fp) || !std::isfinite(fq)) return kInf;
  if (!(d > 0.0)) return fp == fq ? -K : kInf;
  return std::abs(fp - fq) / d - K;
}

std::vector<PointId> domain_points(const MetricSpace& space, const Subset* domain) {
  if (domain) return domain->members();
  return Subset::all(space.size()).members();
}

}  // namespace

const char* to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::k_lipschitz: return "k_lipschitz";
    case CertificateKind::sandwich: return "sandwich";
    case CertificateKind::pou_sum: return "pou_sum";
    case CertificateKind::activity: return "activity";
    case CertificateKind::range: return "range";
    case CertificateKind::reconstruction: return "reconstruction";
    case CertificateKind::strictness: return "strictness";
    case CertificateKind::witness: return "witness";
  }
  return "unknown";
}

void Certificate::observe(double violation, std::vector<PointId> points) {
  if (std::isnan(violation)) violation = kInf;
  if (violation > worst_violation) {
    worst_violation = violation;
    witness = std::move(points);
  }
}

Certificate& Certificate::finish() {
  pass = worst_violation <= tolerance;
  return *this;
}

std::optional<double> Certificate::find_metric(std::string_view name) const {
  for (const auto& [key, value] : metrics) {
    if (key == name) return value;
  }
  return std::nullopt;
}

Certificate combine(CertificateKind kind, std::span<const Certificate> parts) {
  Certificate out(kind, kTolerance);
  out.pass = true;
  for (const Certificate& c : parts) {
    if (!c.pass && out.pass) {
      out.pass = false;
      out.witness = c.witness;
      out.worst_violation = c.worst_violation;
      out.tolerance = c.tolerance;
    }
    for (const auto& n : c.notes) out.notes.push_back(std::string(to_string(c.kind)) + ": " + n);
    for (const auto& [k, v] : c.metrics) out.metrics.emplace_back(std::string(to_string(c.kind)) + "." + k, v);
  }
  if (out.pass) {
    for (const Certificate& c : parts) out.worst_violation = std::max(out.worst_violation, c.worst_violation - c.tolerance);
    out.worst_violation = std::min(out.worst_violation, 0.0);
    out.tolerance = 0.0;
  }
  return out;
}

Certificate check_k_lipschitz(const MetricSpace& space, std::span<const double> values, double K, const Subset* over,
                              double tol) {
  if (values.size() != space.size()) throw Error(ErrorCode::invalid_argument, "value table does not match the space");
  Certificate cert(CertificateKind::k_lipschitz, tol);
  const auto pts = domain_points(space, over);
  double max_ratio = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      const PointId p = pts[i], q = pts[j];
      const double excess = ratio_excess(values[p], values[q], space.dist(p, q), K);
      max_ratio = std::max(max_ratio, excess + K);
      cert.observe(excess, {p, q});
    }
  }
  cert.metric("K", K);
  cert.metric("max_ratio", max_ratio);
  if (pts.size() < 2) cert.notes.push_back("fewer than two points; nothing to compare");
  return cert.finish();
}

Certificate check_k_lipschitz(const Field& f, double K, double tol) {
  const auto v = f.tabulate();
  return check_k_lipschitz(f.space(), v, K, nullptr, tol);
}

Certificate check_k_lipschitz(const Field& f, double K, const Subset& over, double tol) {
  const auto v = f.tabulate();
  return check_k_lipschitz(f.space(), v, K, &over, tol);
}

Certificate check_sandwich(const Field& f, const Field& lower, const Field& upper, double tol) {
  Certificate cert(CertificateKind::sandwich, tol);
  for (PointId p = 0; p < f.size(); ++p) {
    const double v = f(p);
    cert.observe(std::max(lower(p) - v, v - upper(p)), {p});
  }
  return cert.finish();
}

Certificate check_agreement(const Field& f, const Subset& A, std::span<const double> values, double tol) {
  if (values.size() != A.size()) throw Error(ErrorCode::invalid_argument, "agreement data does not match its domain");
  Certificate cert(CertificateKind::reconstruction, tol);
  for (std::size_t i = 0; i < A.size(); ++i) {
    const PointId p = A.members()[i];
    cert.observe(std::abs(f(p) - values[i]), {p});
  }
  return cert.finish();
}

Certificate check_range(std::span<const double> values, const Interval& range) {
  // Zero tolerance; the violation is the signed distance to the interval.
  Certificate cert(CertificateKind::range, 0.0);
  for (PointId p = 0; p < values.size(); ++p) {
    const double v = values[p];
    double violation = std::max(range.lo - v, v - range.hi);
    if (!range.contains(v) && !(violation > 0.0)) violation = std::numeric_limits<double>::denorm_min();
    if (std::isnan(v)) violation = kInf;
    cert.observe(violation, {p});
  }
  cert.metric("lo", range.lo);
  cert.metric("hi", range.hi);
  return cert.finish();
}

Certificate check_range(const Field& f, const Interval& range) {
  const auto v = f.tabulate();
  return check_range(v, range);
}

Certificate check_strict(std::span<const double> f, std::span<const double> g, std::span<const double> h) {
  if (f.size() != g.size() || f.size() != h.size()) {
    throw Error(ErrorCode::invalid_argument, "strictness check needs equally sized tables");
  }
  Certificate cert(CertificateKind::strictness, -std::numeric_limits<double>::denorm_min());
  double min_margin = kInf;
  for (PointId p = 0; p < f.size(); ++p) {
    double margin = std::min(f[p] - g[p], h[p] - f[p]);
    if (std::isnan(margin)) margin = -kInf;
    min_margin = std::min(min_margin, margin);
    cert.observe(-margin, {p});
  }
  cert.metric("min_margin", min_margin);
  return cert.finish();
}

Field random_k_extension(SpacePtr host, const Subset& A, std::span<const double> values, double K,
                         std::span<const PointId> order, std::uint64_t seed) {
  const MetricSpace& space = *host;
  const std::size_t n = space.size();
  if (A.empty()) throw Error(ErrorCode::invalid_argument, "extension domain is empty");
  if (values.size() != A.size()) throw Error(ErrorCode::invalid_argument, "values do not match the subset");

  std::vector<double> out(n, 0.0);
  std::vector<PointId> assigned = A.members();
  for (std::size_t i = 0; i < A.size(); ++i) out[A.members()[i]] = values[i];

  std::vector<PointId> visit;
  if (order.empty()) {
    for (PointId p = 0; p < n; ++p) visit.push_back(p);
  } else {
    visit.assign(order.begin(), order.end());
  }

  std::mt19937_64 rng(seed);
  std::vector<char> done(n, 0);
  for (PointId a : A) done[a] = 1;
  for (PointId p : visit) {
    if (p >= n) throw Error(ErrorCode::out_of_range, "order entry out of range", {p});
    if (done[p]) continue;
    double lo = -kInf, hi = kInf;
    for (PointId q : assigned) {
      const double d = space.dist(p, q);
      lo = std::max(lo, out[q] - K * d);
      hi = std::min(hi, out[q] + K * d);
    }
    if (lo > hi) {
      throw Error(ErrorCode::precondition, "no feasible value: data is not K-Lipschitz on the assigned prefix", {p});
    }
    // 53 random mantissa bits; portable across standard libraries.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    out[p] = std::clamp(lo + u * (hi - lo), lo, hi);
    done[p] = 1;
    assigned.push_back(p);
  }
  for (PointId p = 0; p < n; ++p) {
    if (!done[p]) throw Error(ErrorCode::invalid_argument, "order does not visit every point", {p});
  }
  return Field::table(std::move(host), std::move(out));
}

Certificate certify_local_witness(const Field& f, const LocalWitness& W, const Subset* domain, double tol) {
  const MetricSpace& space = f.space();
  Certificate cert(CertificateKind::witness, tol);
  const auto pts = domain_points(space, domain);
  const auto values = f.tabulate();

  std::vector<char> covered(space.size(), 0);
  for (const LocalEntry& e : W.entries) {
    if (e.p >= space.size()) throw Error(ErrorCode::out_of_range, "witness center out of range", {e.p});
    if (!(e.delta > 0.0)) throw Error(ErrorCode::invalid_argument, "witness radius must be positive", {e.p});
    std::vector<PointId> inside;
    for (PointId x : pts) {
      const double d = space.dist(e.p, x);
      if (d < e.delta) covered[x] = 1;
      if (d < 2.0 * e.delta) inside.push_back(x);
    }
    for (std::size_t i = 0; i < inside.size(); ++i)
      for (std::size_t j = i + 1; j < inside.size(); ++j) {
        const PointId x = inside[i], y = inside[j];
        cert.observe(ratio_excess(values[x], values[y], space.dist(x, y), e.K), {x, y});
      }
  }
  std::size_t uncovered = 0;
  for (PointId x : pts) {
    if (!covered[x]) {
      if (uncovered == 0) cert.notes.push_back("point " + std::to_string(x) + " lies in no witness ball");
      ++uncovered;
      cert.observe(kInf, {x});
    }
  }
  cert.metric("entries", static_cast<double>(W.entries.size()));
  cert.metric("uncovered", static_cast<double>(uncovered));
  return cert.finish();
}

LocalWitness generate_local_witness(const Field& f, const Subset* domain) {
  const MetricSpace& space = f.space();
  const auto pts = domain_points(space, domain);
  const auto values = f.tabulate();
  LocalWitness W;
  for (PointId p : pts) {
    double delta = kInf;
    for (PointId q : pts) {
      if (q != p) delta = std::min(delta, space.dist(p, q));
    }
    if (!std::isfinite(delta)) delta = 1.0;
    std::vector<PointId> inside;
    for (PointId x : pts) {
      if (space.dist(p, x) < 2.0 * delta) inside.push_back(x);
    }
    double K = 0.0;
    for (std::size_t i = 0; i < inside.size(); ++i)
      for (std::size_t j = i + 1; j < inside.size(); ++j) {
        const double d = space.dist(inside[i], inside[j]);
        if (d > 0.0) K = std::max(K, std::abs(values[inside[i]] - values[inside[j]]) / d);
      }
    W.entries.push_back({p, delta, K});
  }
  return W;
}

PointwiseWitness generate_pointwise_witness(const Field& f) {
  PointwiseWitness W;
  W.constants.resize(f.size());
  for (PointId p = 0; p < f.size(); ++p) {
    const LipEstimate est = pointwise_lip(f, p);
    W.constants[p] = est.infinite ? kInf : est.value;
  }
  return W;
}

Certificate certify_pointwise_witness(const Field& f, const PointwiseWitness& W, double tol) {
  if (W.constants.size() != f.size()) throw Error(ErrorCode::invalid_argument, "witness does not match the space");
  const MetricSpace& space = f.space();
  const auto values = f.tabulate();
  Certificate cert(CertificateKind::witness, tol);
  for (PointId p = 0; p < space.size(); ++p) {
    if (!std::isfinite(W.constants[p])) cert.observe(kInf, {p});
    for (PointId x = 0; x < space.size(); ++x) {
      if (x == p) continue;
      cert.observe(ratio_excess(values[x], values[p], space.dist(x, p), W.constants[p]), {x, p});
    }
  }
  return cert.finish();
}

Certificate pou_report(const PartitionOfUnity& pou, double tol) {
  const MetricSpace& space = *pou.host;
  const std::size_t n = space.size();

  Certificate sum(CertificateKind::pou_sum, tol);
  double residual = 0.0;
  for (PointId p = 0; p < n; ++p) {
    const double r = std::abs(pou.sum_at(p) - 1.0);
    residual = std::max(residual, std::isnan(r) ? kInf : r);
    sum.observe(r, {p});
  }
  sum.metric("max_residual", residual);
  sum.finish();

  Certificate activity(CertificateKind::activity, 0.0);
  std::size_t max_active = 0;
  for (PointId p = 0; p < n; ++p) {
    std::vector<char> listed(pou.size(), 0);
    for (std::size_t i : pou.active[p]) listed[i] = 1;
    max_active = std::max(max_active, pou.active[p].size());
    for (std::size_t i = 0; i < pou.size(); ++i) {
      const double v = pou.values[i][p];
      if (v < 0.0) activity.observe(-v, {p, i});
      if (!listed[i]) activity.observe(std::abs(v), {p, i});
    }
  }
  if (n > 0 && pou.size() > 0 && activity.worst_violation < 0.0) activity.worst_violation = 0.0;
  activity.metric("max_active", static_cast<double>(max_active));
  activity.finish();

  Certificate lip(CertificateKind::k_lipschitz, 0.0);
  double largest = 0.0;
  for (std::size_t i = 0; i < pou.size(); ++i) {
    const LipEstimate est = global_lip(space, pou.values[i]);
    if (est.infinite) {
      lip.observe(kInf, est.witness);
    } else {
      largest = std::max(largest, est.value);
    }
    if (pou.size() <= 64) lip.metric("lip[" + std::to_string(i) + "]", est.infinite ? kInf : est.value);
  }
  lip.metric("max_member_lip", largest);
  lip.finish();

  const Certificate parts[] = {sum, activity, lip};
  Certificate out = combine(CertificateKind::pou_sum, parts);
  out.metric("members", static_cast<double>(pou.size()));
  out.metric("max_residual", residual);
  for (const auto& note : pou.notes) out.notes.push_back(note);
  return out;
}

}  // namespace lipkit
