#include "lipkit/demo.hpp"

#include <algorithm>
#include <cmath>

#include "lipkit/fixtures.hpp"
#include "lipkit/partition_of_unity.hpp"
#include "lipkit/selection.hpp"

namespace lipkit {

namespace {

DemoResult sin_inv_t_demo() {
  const auto s = fixtures::sin_inv_t_pairs(20);
  const auto v = s.f.tabulate();
  DemoResult out;
  out.header = {"n", "s_n", "t_n", "abs_df", "dist", "ratio"};
  // The jump between s_n and t_n stays 2 while the gap shrinks.
  Certificate jump(CertificateKind::reconstruction, kTolerance);
  for (std::size_t n = 1; n <= 20; ++n) {
    const PointId a = 2 * (n - 1), b = a + 1;
    const double df = std::abs(v[a] - v[b]);
    const double d = s.space->dist(a, b);
    out.rows.push_back({static_cast<double>(n), s.t[a], s.t[b], df, d, df / d});
    jump.observe(std::abs(df - 2.0), {a, b});
  }
  jump.finish();
  const Certificate lip = check_k_lipschitz(s.f, 100.0);
  // The claim is that no K = 100 bound holds.
  Certificate unbounded(CertificateKind::k_lipschitz, 0.0);
  unbounded.observe(lip.pass ? 1.0 : 0.0, lip.witness);
  unbounded.metric("max_ratio", *lip.find_metric("max_ratio"));
  unbounded.finish();
  const Certificate parts[] = {jump, unbounded};
  out.certificate = combine(CertificateKind::k_lipschitz, parts);
  out.notes.push_back("largest sampled ratio " + std::to_string(*lip.find_metric("max_ratio")));
  return out;
}

DemoResult cusp_demo() {
  constexpr std::size_t count = 20;
  const auto s = fixtures::cusp(count);
  const auto v = s.f.tabulate();
  DemoResult out;
  out.header = {"t", "same_sign_pointwise", "pair_ratio", "inverse_t"};

  std::vector<PointId> positive;
  for (PointId p = 0; p < s.t.size(); ++p) {
    if (s.t[p] > 0) positive.push_back(p);
  }
  const Subset same(s.space->size(), positive);

  Certificate bounded(CertificateKind::k_lipschitz, kTolerance);
  Certificate ratio(CertificateKind::reconstruction, 1e-12);
  for (std::size_t k = 1; k <= count; ++k) {
    const PointId a = 2 * (k - 1), b = a + 1;
    const double t = s.t[a];
    const LipEstimate pw = pointwise_lip(s.f, a, same);
    const double r = std::abs(v[a] - v[b]) / s.space->dist(a, b);
    out.rows.push_back({t, pw.value, r, 1.0 / t});
    bounded.observe(pw.value - 1.0, {a});
    ratio.observe(std::abs(r - 1.0 / t) * t, {a, b});
  }
  bounded.finish();
  ratio.finish();
  const Certificate parts[] = {bounded, ratio};
  out.certificate = combine(CertificateKind::k_lipschitz, parts);
  return out;
}

DemoResult staircase_demo() {
  DemoResult out;
  out.header = {"t", "l_1", "l_2", "l_3", "l_4", "sum", "inverse_t"};
  Certificate exact(CertificateKind::reconstruction, 0.0);
  int row = 0;
  for (double t : {0.4, 0.5, 2.0}) {
    std::vector<double> r{t};
    for (std::size_t k = 1; k <= 4; ++k) r.push_back(staircase(k, t));
    const double sum = staircase_sum(4, t);
    r.push_back(sum);
    r.push_back(1.0 / t);
    exact.observe(std::abs(sum - 1.0 / t), {static_cast<PointId>(row++)});
    out.rows.push_back(std::move(r));
  }
  out.certificate = exact.finish();
  return out;
}

DemoResult dowker_demo() {
  const auto env = fixtures::dowker_step();
  const Selection sel = select(IntervalMapping{env.g, env.h});
  const auto g = env.g.tabulate();
  const auto h = env.h.tabulate();
  DemoResult out;
  out.header = {"t", "g", "f", "h"};
  for (PointId p = 0; p < g.size(); ++p) out.rows.push_back({env.space->coords(p)[0], g[p], sel.values[p], h[p]});
  out.certificate = sel.certificate;
  out.notes = sel.notes;
  return out;
}

}  // namespace

std::vector<std::string> demo_names() { return {"sin-inv-t", "cusp-curve", "reciprocal-staircase", "dowker-step"}; }

DemoResult run_demo(std::string_view name) {
  DemoResult out;
  if (name == "sin-inv-t") {
    out = sin_inv_t_demo();
  } else if (name == "cusp-curve") {
    out = cusp_demo();
  } else if (name == "reciprocal-staircase") {
    out = staircase_demo();
  } else if (name == "dowker-step") {
    out = dowker_demo();
  } else {
    throw Error(ErrorCode::invalid_argument, "unknown demo '" + std::string(name) + "'");
  }
  out.name = std::string(name);
  return out;
}

}  // namespace lipkit
