#include "lipkit/lipkit.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "io.hpp"
#include "lipkit/demo.hpp"
#include "lipkit/extension.hpp"
#include "lipkit/local_lipschitz.hpp"
#include "lipkit/selection.hpp"

#ifndef LIPKIT_VERSION
#define LIPKIT_VERSION "0.0.0"
#endif

struct lk_space {
  lipkit::SpacePtr ptr;
};

struct lk_result {
  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  std::string certificate;
  bool passed = false;
};

namespace {

using namespace lipkit;
using io::Json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

thread_local std::string last_error;
thread_local std::vector<PointId> last_witness;

lk_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return LK_ERR_INVALID_ARGUMENT;
    case ErrorCode::out_of_range: return LK_ERR_OUT_OF_RANGE;
    case ErrorCode::domain: return LK_ERR_DOMAIN;
    case ErrorCode::precondition: return LK_ERR_PRECONDITION;
    case ErrorCode::io: return LK_ERR_IO;
    case ErrorCode::internal: return LK_ERR_INTERNAL;
  }
  return LK_ERR_INTERNAL;
}

template <class Fn>
lk_status guarded(Fn&& fn) {
  last_error.clear();
  last_witness.clear();
  try {
    fn();
    return LK_OK;
  } catch (const Error& e) {
    last_error = e.what();
    last_witness = e.witness();
    return status_of(e.code());
  } catch (const std::exception& e) {
    last_error = e.what();
    return LK_ERR_INTERNAL;
  }
}

// Collects columns and checks, then freezes them into an lk_result.
class Builder {
 public:
  explicit Builder(std::string command) : command_(std::move(command)) {}

  void column(std::string name, std::vector<double> values) {
    names_.push_back(std::move(name));
    columns_.push_back(std::move(values));
  }
  void ids(std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
    column("id", std::move(v));
  }
  void check(std::string label, Certificate c) {
    labels_.push_back(std::move(label));
    checks_.push_back(std::move(c));
  }
  Json& extra() { return extra_; }

  lk_result* finish(CertificateKind kind) {
    const Certificate all = combine(kind, checks_);
    Json doc;
    doc["command"] = command_;
    doc["pass"] = all.pass;
    doc["summary"] = io::to_json(all);
    Json list = Json::array();
    for (std::size_t i = 0; i < checks_.size(); ++i) {
      Json item = io::to_json(checks_[i]);
      item["check"] = labels_[i];
      list.push_back(std::move(item));
    }
    doc["checks"] = std::move(list);
    if (!extra_.is_null()) doc["details"] = extra_;
    auto* r = new lk_result;
    r->names = std::move(names_);
    r->columns = std::move(columns_);
    r->certificate = doc.dump(2);
    r->passed = all.pass;
    return r;
  }

 private:
  std::string command_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> columns_;
  std::vector<std::string> labels_;
  std::vector<Certificate> checks_;
  Json extra_;
};

const SpacePtr& space_of(const lk_space* s) {
  if (!s || !s->ptr) throw Error(ErrorCode::invalid_argument, "null space handle");
  return s->ptr;
}

double tolerance_of(const lk_params* p) {
  const double tol = p ? p->tol : kTolerance;
  if (!(tol >= 1e-12 && tol <= 1e-3)) {
    throw Error(ErrorCode::invalid_argument, "tolerance must lie in [1e-12, 1e-3]");
  }
  return tol;
}

double k_of(const lk_params* p) {
  if (!p || std::isnan(p->k)) throw Error(ErrorCode::invalid_argument, "a Lipschitz constant K is required");
  if (!(p->k >= 0.0) || !std::isfinite(p->k)) throw Error(ErrorCode::invalid_argument, "K must be finite and >= 0");
  return p->k;
}

Interval interval_of(const lk_params* p) {
  if (!p || !p->interval || !*p->interval) return Interval::real_line();
  return Interval::parse(p->interval);
}

const char* need(const char* path, const char* what) {
  if (!path || !*path) throw Error(ErrorCode::invalid_argument, std::string("missing input: ") + what);
  return path;
}

const lk_inputs& inputs_of(const lk_inputs* in) {
  static const lk_inputs empty{};
  return in ? *in : empty;
}

std::size_t depth_of(const lk_params* p) {
  const int d = p ? p->grid_depth : static_cast<int>(kMinGridDepth);
  if (d < 0 || d > static_cast<int>(kMaxGridDepth)) {
    throw Error(ErrorCode::invalid_argument, "grid depth must lie in [0, " + std::to_string(kMaxGridDepth) + "]");
  }
  return static_cast<std::size_t>(d);
}

// b - f and f - a at least min(K d(p, A), b - a) / 2 off A.
Certificate margin_check(const MetricSpace& space, const Subset& A, std::span<const double> f, double K,
                         const Interval& range, double tol) {
  Certificate c(CertificateKind::range, tol);
  for (PointId p = 0; p < space.size(); ++p) {
    if (A.contains(p)) continue;
    const double want = std::min(K * space.dist_to_set(p, A), range.hi - range.lo) / 2.0;
    c.observe(want - std::min(range.hi - f[p], f[p] - range.lo), {p});
  }
  c.metric("points_checked", static_cast<double>(space.size() - A.size()));
  return c.finish();
}

void add_selection_checks(Builder& b, const Selection& s) {
  b.check("selection", s.certificate);
  b.extra()["grid_depth"] = s.grid.depth;
  b.extra()["levels"] = s.grid.levels;
  b.extra()["notes"] = s.notes;
}

}  // namespace

extern "C" {

const char* lk_version(void) { return LIPKIT_VERSION; }

const char* lk_last_error(void) { return last_error.c_str(); }

size_t lk_last_error_witness(size_t* out, size_t cap) {
  for (std::size_t i = 0; i < std::min(cap, last_witness.size()); ++i) out[i] = last_witness[i];
  return last_witness.size();
}

lk_status lk_space_load(const char* path, lk_space** out) {
  return guarded([&] {
    if (!out) throw Error(ErrorCode::invalid_argument, "null output pointer");
    *out = new lk_space{io::read_space(need(path, "space"))};
  });
}

lk_status lk_space_from_matrix(size_t n, const double* distances, lk_space** out) {
  return guarded([&] {
    if (!out || !distances) throw Error(ErrorCode::invalid_argument, "null pointer");
    *out = new lk_space{MetricSpace::from_matrix(n, std::vector<double>(distances, distances + n * n))};
  });
}

lk_status lk_space_from_points(size_t n, size_t dim, const double* coords, lk_space** out) {
  return guarded([&] {
    if (!out || !coords) throw Error(ErrorCode::invalid_argument, "null pointer");
    std::vector<std::vector<double>> pts(n);
    for (size_t i = 0; i < n; ++i) pts[i].assign(coords + i * dim, coords + (i + 1) * dim);
    *out = new lk_space{MetricSpace::from_points(std::move(pts))};
  });
}

lk_status lk_space_from_grid(double lo, double hi, double step, lk_space** out) {
  return guarded([&] {
    if (!out) throw Error(ErrorCode::invalid_argument, "null output pointer");
    *out = new lk_space{MetricSpace::from_grid(lo, hi, step)};
  });
}

void lk_space_free(lk_space* space) { delete space; }

size_t lk_space_size(const lk_space* space) { return space && space->ptr ? space->ptr->size() : 0; }

lk_status lk_space_dist(const lk_space* space, size_t p, size_t q, double* out) {
  return guarded([&] {
    if (!out) throw Error(ErrorCode::invalid_argument, "null output pointer");
    *out = space_of(space)->dist(p, q);
  });
}

void lk_params_init(lk_params* params) {
  if (!params) return;
  params->k = kNaN;
  params->interval = nullptr;
  params->grid_depth = static_cast<int>(kMinGridDepth);
  params->n_max = 10;
  params->seed = 0;
  params->tol = kTolerance;
  params->transported = 0;
}

lk_status lk_validate_metric(const lk_space* space, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const double tol = tolerance_of(params);
    const ValidationReport report = validate_metric(*space_of(space), tol);
    Builder b("certify-metric");
    std::vector<double> kind, p, q, r, amount;
    Certificate c(CertificateKind::witness, 0.0);
    Json list = Json::array();
    for (const auto& v : report.violations) {
      kind.push_back(static_cast<double>(v.kind));
      p.push_back(static_cast<double>(v.points[0]));
      q.push_back(static_cast<double>(v.points[1]));
      r.push_back(v.points.size() > 2 ? static_cast<double>(v.points[2]) : kNaN);
      amount.push_back(v.amount);
      c.observe(std::max(v.amount, std::numeric_limits<double>::denorm_min()), v.points);
      list.push_back({{"kind", to_string(v.kind)}, {"points", v.points}, {"amount", io::number(v.amount)}});
    }
    c.metric("violations", static_cast<double>(report.violations.size()));
    c.metric("truncated", static_cast<double>(report.truncated));
    c.metric("points", static_cast<double>(report.point_count));
    b.column("kind", std::move(kind));
    b.column("p", std::move(p));
    b.column("q", std::move(q));
    b.column("r", std::move(r));
    b.column("amount", std::move(amount));
    b.check("metric_axioms", c.finish());
    b.extra()["violations"] = std::move(list);
    *out = b.finish(CertificateKind::witness);
  });
}

lk_status lk_extend(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    const double tol = tolerance_of(params);
    const double K = k_of(params);
    const Interval range = interval_of(params);
    const Subset A = io::read_subset(need(I.subset, "subset"), host->size());
    const auto phi = io::values_on(need(I.values, "values"), A);

    const Field f = extend_to_interval(host, A, phi, K, range);
    const EnvelopePair env = mcshane_envelopes(host, A, phi, K);
    const auto fv = f.tabulate();
    Builder b("extend");
    b.ids(host->size());
    b.column("value", fv);
    b.column("lower", env.lower.tabulate());
    b.column("upper", env.upper.tabulate());
    b.check("k_lipschitz", check_k_lipschitz(*host, fv, K, nullptr, tol));
    b.check("agreement", check_agreement(f, A, phi, 0.0));
    b.check("range", check_range(fv, range));
    b.check("sandwich", check_sandwich(f, env.lower, env.upper, tol));
    if (range.bounded()) b.check("interior_margin", margin_check(*host, A, fv, K, range, tol));
    b.extra()["choice"] = range.bounded() ? "mean of clamped envelopes"
                          : range.lo_finite() ? "upper envelope"
                                              : "lower envelope";
    *out = b.finish(CertificateKind::k_lipschitz);
  });
}

lk_status lk_extend_pointwise(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    const double tol = tolerance_of(params);
    const Interval range = interval_of(params);
    const Subset A = io::read_subset(need(I.subset, "subset"), host->size());
    const auto phi = io::values_on(need(I.values, "values"), A);
    const auto L = io::values_on(need(I.witness, "pointwise constants"), A);

    const PointwiseExtension ext = pointwise_extend_to_interval(host, A, phi, L, range);
    const auto fv = ext.field.tabulate();
    Builder b("extend-pointwise");
    b.ids(host->size());
    b.column("value", fv);
    b.column("pointwise_constant", ext.witness.constants);
    b.check("pointwise_witness", certify_pointwise_witness(ext.field, ext.witness, tol));
    b.check("agreement", check_agreement(ext.field, A, phi, 0.0));
    b.check("range", check_range(fv, range));
    if (range.bounded()) b.check("interior_margin", margin_check(*host, A, fv, 1.0, range, tol));
    b.extra()["notes"] = ext.notes;
    *out = b.finish(CertificateKind::witness);
  });
}

lk_status lk_pou(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    const double tol = tolerance_of(params);
    const CozeroCover cover = io::read_cover(need(I.cover, "cover"), host);
    const FrolikPartition frolik = FrolikPartition::build(cover);
    const PartitionOfUnity grouped = frolik.subordinated();

    Builder b("pou");
    b.ids(host->size());
    for (std::size_t n = 0; n < grouped.size(); ++n) b.column("xi_" + std::to_string(n + 1), grouped.values[n]);
    std::vector<double> bound(host->size()), steps(host->size());
    for (PointId p = 0; p < host->size(); ++p) {
      bound[p] = static_cast<double>(frolik.refinement().activity_bound[p]);
      steps[p] = static_cast<double>(frolik.step_bound(p));
    }
    b.column("activity_bound", bound);
    b.column("step_bound", steps);
    b.check("grouped", pou_report(grouped, tol));

    // Cover containment: a positive member needs a positive input witness.
    const auto eta = cover.tabulate_checked();
    Certificate contain(CertificateKind::activity, 0.0);
    for (std::size_t n = 0; n < grouped.size(); ++n)
      for (PointId p = 0; p < host->size(); ++p) {
        contain.observe(grouped.values[n][p] > 0.0 && !(eta[n][p] > 0.0) ? grouped.values[n][p] : 0.0, {p, n});
      }
    b.check("containment", contain.finish());

    if (frolik.member_count() <= 20000) {
      const PartitionOfUnity full = frolik.materialize();
      b.check("members", pou_report(full, tol));
      const PartitionOfUnity regrouped = index_subordinate(full, frolik.set_count());
      Certificate same(CertificateKind::reconstruction, 1e-12);
      for (std::size_t n = 0; n < grouped.size(); ++n)
        for (PointId p = 0; p < host->size(); ++p)
          same.observe(std::abs(regrouped.values[n][p] - grouped.values[n][p]), {p, n});
      b.check("regrouping", same.finish());
      b.extra()["members"] = full.size();
    } else {
      b.extra()["members"] = "not materialized (" + std::to_string(frolik.member_count()) + ")";
    }
    b.extra()["notes"] = frolik.refinement().notes;
    *out = b.finish(CertificateKind::pou_sum);
  });
}

lk_status lk_decompose(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    const double tol = tolerance_of(params);
    const Field f = io::read_field(need(I.values, "values"), host);
    const LocalWitness W = io::read_witness(need(I.witness, "witness"));
    const Decomposition dec = decompose(f, W);
    const auto fv = f.tabulate();

    Builder b("decompose");
    b.ids(host->size());
    b.column("value", fv);
    std::vector<double> rebuilt(host->size());
    Certificate recon(CertificateKind::reconstruction, tol);
    for (PointId p = 0; p < host->size(); ++p) {
      rebuilt[p] = dec.sum_at(p);
      recon.observe(std::abs(rebuilt[p] - fv[p]), {p});
    }
    b.column("reconstruction", rebuilt);
    Certificate bounded(CertificateKind::k_lipschitz, 0.0);
    for (std::size_t i = 0; i < dec.members.size(); ++i) {
      const LipEstimate est = global_lip(*host, dec.member_values[i]);
      double top = 0.0;
      for (double v : dec.member_values[i]) top = std::max(top, std::abs(v));
      bounded.observe(est.infinite || !std::isfinite(top) ? std::numeric_limits<double>::infinity() : 0.0,
                      est.witness);
      b.column("member_" + std::to_string(i + 1), dec.member_values[i]);
    }
    b.check("reconstruction", recon.finish());
    b.check("members_bounded_lipschitz", bounded.finish());
    b.extra()["slices"] = dec.slice;
    b.extra()["levels"] = dec.level;
    b.extra()["notes"] = dec.notes;
    *out = b.finish(CertificateKind::reconstruction);
  });
}

lk_status lk_modulus(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    const double tol = tolerance_of(params);
    const Field f = io::read_field(need(I.values, "values"), host);
    const LocalWitness W = io::read_witness(need(I.witness, "witness"));
    const ModulusMode mode = params && params->transported ? ModulusMode::transported : ModulusMode::bounded;
    const ModulusWitness mw = modulus_witness(f, W, mode);
    const auto fv = f.tabulate();

    Certificate ineq(CertificateKind::witness, tol);
    for (PointId x = 0; x < host->size(); ++x)
      for (PointId y = x + 1; y < host->size(); ++y) {
        const double bound = mw.L(x, y) * host->dist(x, y);
        ineq.observe(std::abs(fv[x] - fv[y]) / bound - 1.0, {x, y});
      }
    Certificate major(CertificateKind::range, 0.0);
    for (PointId x = 0; x < host->size(); ++x) major.observe(mw.eta[x] - mw.ell_values[x], {x});
    const LocalWitness converse = witness_from_modulus(*host, mw);

    Builder b("modulus");
    b.ids(host->size());
    b.column("value", fv);
    b.column("eta", mw.eta);
    b.column("ell", mw.ell_values);
    b.check("modulus_inequality", ineq.finish());
    b.check("majorant", major.finish());
    b.check("ell_lipschitz", check_k_lipschitz(mw.ell, mw.M, tol));
    b.check("converse_witness", certify_local_witness(f, converse, nullptr, tol));
    b.extra()["mode"] = mode == ModulusMode::bounded ? "bounded" : "transported";
    b.extra()["M"] = io::number(mw.M);
    *out = b.finish(CertificateKind::witness);
  });
}

lk_status lk_extend_local(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    tolerance_of(params);
    const Interval range = interval_of(params);
    const Subset A = io::read_subset(need(I.subset, "subset"), host->size());
    const auto phi = io::values_on(need(I.values, "values"), A);
    const LocalWitness W = io::read_witness(need(I.witness, "witness"));
    const LocalExtension ext = local_extend(host, A, phi, W, range);

    Builder b("extend-local");
    b.ids(host->size());
    b.column("value", ext.values);
    std::vector<double> delta(host->size()), K(host->size());
    for (const auto& e : ext.witness.entries) {
      delta[e.p] = e.delta;
      K[e.p] = e.K;
    }
    b.column("witness_delta", delta);
    b.column("witness_K", K);
    b.check("local_extension", ext.certificate);
    b.extra()["pieces"] = ext.pieces;
    b.extra()["notes"] = ext.notes;
    *out = b.finish(CertificateKind::witness);
  });
}

lk_status lk_select(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    tolerance_of(params);
    const Field g = io::read_field(need(I.lower, "lower envelope"), host);
    const Field h = io::read_field(need(I.upper, "upper envelope"), host);
    const Selection s = select(IntervalMapping{g, h}, depth_of(params));
    Builder b("select");
    b.ids(host->size());
    b.column("lower", g.tabulate());
    b.column("value", s.values);
    b.column("upper", h.tabulate());
    add_selection_checks(b, s);
    *out = b.finish(CertificateKind::strictness);
  });
}

lk_status lk_insert(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    tolerance_of(params);
    const Field g = io::read_field(need(I.lower, "lower envelope"), host);
    const Field h = io::read_field(need(I.upper, "upper envelope"), host);
    Subset A;
    std::vector<double> phi;
    LocalWitness W;
    const LocalWitness* wp = nullptr;
    if (I.subset && *I.subset) {
      A = io::read_subset(I.subset, host->size());
      phi = io::values_on(need(I.values, "values"), A);
      if (I.witness && *I.witness) {
        W = io::read_witness(I.witness);
        wp = &W;
      }
    }
    const Selection s = insert(g, h, A, phi, wp, depth_of(params));
    Builder b("insert");
    b.ids(host->size());
    b.column("lower", g.tabulate());
    b.column("value", s.values);
    b.column("upper", h.tabulate());
    add_selection_checks(b, s);
    *out = b.finish(CertificateKind::strictness);
  });
}

lk_status lk_approx(const lk_space* space, const lk_inputs* in, const lk_params* params, lk_result** out) {
  return guarded([&] {
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    tolerance_of(params);
    const int n_max = params ? params->n_max : 10;
    if (n_max < 1 || n_max > 18) throw Error(ErrorCode::invalid_argument, "n_max must lie in [1, 18]");
    const Field phi = io::read_field(need(I.values, "values"), host);
    const auto seq = decreasing_approx(phi, static_cast<std::size_t>(n_max), depth_of(params));
    const auto pv = phi.tabulate();

    Builder b("approx");
    b.ids(host->size());
    b.column("phi", pv);
    Certificate decrease(CertificateKind::strictness, 0.0);
    Certificate gap(CertificateKind::range, 0.0);
    for (std::size_t n = 0; n < seq.size(); ++n) {
      b.column("f_" + std::to_string(n + 1), seq[n].values);
      b.check("selection_" + std::to_string(n + 1), seq[n].certificate);
      const double bound = std::ldexp(1.0, -static_cast<int>(n));  // 2^(1 - (n + 1))
      for (PointId p = 0; p < host->size(); ++p) {
        const double r = seq[n].values[p] - pv[p];
        gap.observe(r >= bound ? r - bound + std::numeric_limits<double>::denorm_min() : r - bound, {p, n});
        if (n > 0) {
          const double step = seq[n].values[p] - seq[n - 1].values[p];
          decrease.observe(step >= 0.0 ? step + std::numeric_limits<double>::denorm_min() : step, {p, n});
        }
      }
    }
    if (seq.size() < 2) decrease.worst_violation = -1.0;
    b.check("strict_decrease", decrease.finish());
    b.check("geometric_gap", gap.finish());
    *out = b.finish(CertificateKind::strictness);
  });
}

lk_status lk_certify(const char* check, const lk_space* space, const lk_inputs* in, const lk_params* params,
                     lk_result** out) {
  return guarded([&] {
    const std::string what = need(check, "certify check name");
    const SpacePtr& host = space_of(space);
    const lk_inputs& I = inputs_of(in);
    const double tol = tolerance_of(params);
    Builder b("certify " + what);
    b.ids(host->size());
    if (what == "lipschitz") {
      const Field f = io::read_field(need(I.values, "values"), host);
      b.column("value", f.tabulate());
      b.check("k_lipschitz", check_k_lipschitz(f, k_of(params), tol));
    } else if (what == "local-witness") {
      const Field f = io::read_field(need(I.values, "values"), host);
      const LocalWitness W = io::read_witness(need(I.witness, "witness"));
      std::optional<Subset> A;
      if (I.subset && *I.subset) A = io::read_subset(I.subset, host->size());
      b.column("value", f.tabulate());
      b.check("local_witness", certify_local_witness(f, W, A ? &*A : nullptr, tol));
    } else if (what == "pou") {
      const CozeroCover cover = io::read_cover(need(I.cover, "cover"), host);
      const PartitionOfUnity pou = FrolikPartition::build(cover).subordinated();
      for (std::size_t n = 0; n < pou.size(); ++n) b.column("xi_" + std::to_string(n + 1), pou.values[n]);
      b.check("pou", pou_report(pou, tol));
    } else if (what == "sandwich") {
      const Field f = io::read_field(need(I.values, "values"), host);
      const Subset A = io::read_subset(need(I.subset, "subset"), host->size());
      const auto fv = f.tabulate();
      std::vector<double> phi;
      for (PointId a : A) phi.push_back(fv[a]);
      const EnvelopePair env = mcshane_envelopes(host, A, phi, k_of(params));
      b.column("value", fv);
      b.column("lower", env.lower.tabulate());
      b.column("upper", env.upper.tabulate());
      b.check("k_lipschitz", check_k_lipschitz(f, k_of(params), tol));
      b.check("sandwich", check_sandwich(f, env.lower, env.upper, tol));
    } else if (what == "random-extension") {
      const Subset A = io::read_subset(need(I.subset, "subset"), host->size());
      const auto phi = io::values_on(need(I.values, "values"), A);
      const double K = k_of(params);
      const Field f = random_k_extension(host, A, phi, K, {}, params ? params->seed : 0);
      const EnvelopePair env = mcshane_envelopes(host, A, phi, K);
      b.column("value", f.tabulate());
      b.check("k_lipschitz", check_k_lipschitz(f, K, tol));
      b.check("agreement", check_agreement(f, A, phi, 0.0));
      b.check("sandwich", check_sandwich(f, env.lower, env.upper, tol));
      b.extra()["seed"] = params ? params->seed : 0;
    } else {
      throw Error(ErrorCode::invalid_argument, "unknown certify check '" + what + "'");
    }
    *out = b.finish(CertificateKind::witness);
  });
}

lk_status lk_demo(const char* name, lk_result** out) {
  return guarded([&] {
    const DemoResult d = run_demo(need(name, "demo name"));
    Builder b("demo " + d.name);
    for (std::size_t j = 0; j < d.header.size(); ++j) {
      std::vector<double> col;
      for (const auto& row : d.rows) col.push_back(row[j]);
      b.column(d.header[j], std::move(col));
    }
    b.check(d.name, d.certificate);
    b.extra()["notes"] = d.notes;
    *out = b.finish(d.certificate.kind);
  });
}

void lk_result_free(lk_result* result) { delete result; }

int lk_result_passed(const lk_result* result) { return result && result->passed ? 1 : 0; }

size_t lk_result_rows(const lk_result* result) {
  return result && !result->columns.empty() ? result->columns.front().size() : 0;
}

size_t lk_result_columns(const lk_result* result) { return result ? result->columns.size() : 0; }

const char* lk_result_column_name(const lk_result* result, size_t column) {
  if (!result || column >= result->names.size()) return nullptr;
  return result->names[column].c_str();
}

const double* lk_result_column(const lk_result* result, size_t column) {
  if (!result || column >= result->columns.size()) return nullptr;
  return result->columns[column].data();
}

const char* lk_result_certificate(const lk_result* result) { return result ? result->certificate.c_str() : ""; }

}  // extern "C"
