#include "lipkit/fixtures.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace lipkit::fixtures {

namespace {

constexpr double kZero = 1e-9;

Sampled on_line(std::vector<double> t, std::vector<double> values) {
  std::vector<std::vector<double>> pts;
  pts.reserve(t.size());
  for (double v : t) pts.push_back({v});
  Sampled s;
  s.space = MetricSpace::from_points(std::move(pts));
  s.f = Field::table(s.space, std::move(values));
  s.t = std::move(t);
  return s;
}

std::vector<double> grid_params(const SpacePtr& space) {
  std::vector<double> t(space->size());
  for (PointId p = 0; p < t.size(); ++p) t[p] = space->coords(p)[0];
  return t;
}

Envelopes step_envelopes(double lo, double hi, double step, double (*g)(double), double (*h)(double)) {
  Envelopes e;
  e.space = MetricSpace::from_grid(lo, hi, step);
  const auto t = grid_params(e.space);
  std::vector<double> gv(t.size()), hv(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    gv[i] = g(t[i]);
    hv[i] = h(t[i]);
  }
  e.g = Field::table(e.space, std::move(gv));
  e.h = Field::table(e.space, std::move(hv));
  return e;
}

}  // namespace

Sampled sin_inv_t_pairs(std::size_t n_max) {
  std::vector<double> t, v;
  for (std::size_t n = 1; n <= n_max; ++n) {
    const double k = static_cast<double>(n);
    t.push_back(2.0 / ((4.0 * k + 1.0) * std::numbers::pi));
    t.push_back(2.0 / ((4.0 * k + 3.0) * std::numbers::pi));
  }
  for (double x : t) v.push_back(std::sin(1.0 / x));
  return on_line(std::move(t), std::move(v));
}

Sampled sin_inv_t(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2) throw Error(ErrorCode::invalid_argument, "bad sin(1/t) sample");
  std::vector<double> t(count), v(count);
  for (std::size_t i = 0; i < count; ++i) {
    t[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    v[i] = std::sin(1.0 / t[i]);
  }
  return on_line(std::move(t), std::move(v));
}

Sampled reciprocal(double hi, std::size_t count) {
  if (!(hi > 0.0) || count < 1) throw Error(ErrorCode::invalid_argument, "bad 1/t sample");
  std::vector<double> t(count), v(count);
  for (std::size_t i = 0; i < count; ++i) {
    t[i] = hi * static_cast<double>(i + 1) / static_cast<double>(count);
    v[i] = 1.0 / t[i];
  }
  return on_line(std::move(t), std::move(v));
}

Sampled square(double lo, double hi, double step) {
  Sampled s;
  s.space = MetricSpace::from_grid(lo, hi, step);
  s.t = grid_params(s.space);
  std::vector<double> v(s.t.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.t[i] * s.t[i];
  s.f = Field::table(s.space, std::move(v));
  return s;
}

Sampled cusp(std::size_t count) {
  if (count < 1) throw Error(ErrorCode::invalid_argument, "cusp fixture needs at least one parameter");
  std::vector<std::vector<double>> pts;
  std::vector<double> t, v;
  for (std::size_t k = 1; k <= count; ++k) {
    const double a = static_cast<double>(k) / static_cast<double>(count);
    for (double s : {a, -a}) {
      pts.push_back({s * s * s, s * s});
      t.push_back(s);
      v.push_back(s > 0 ? s * s : -s * s);
    }
  }
  Sampled out;
  out.space = MetricSpace::from_points(std::move(pts));
  out.f = Field::table(out.space, std::move(v));
  out.t = std::move(t);
  return out;
}

LocalWitness inverse_scale_witness(const Sampled& s) {
  LocalWitness W;
  for (PointId p = 0; p < s.t.size(); ++p) {
    const double t = s.t[p];
    W.entries.push_back({p, t / 4.0, 4.0 / (t * t)});
  }
  return W;
}

LocalWitness square_witness(const Sampled& s) {
  LocalWitness W;
  for (PointId p = 0; p < s.t.size(); ++p) W.entries.push_back({p, 1.0, 2.0 * std::abs(s.t[p]) + 4.0});
  return W;
}

LocalWitness uniform_witness(const Sampled& s, double delta, double K) {
  LocalWitness W;
  for (PointId p = 0; p < s.t.size(); ++p) W.entries.push_back({p, delta, K});
  return W;
}

Envelopes dowker_step(double lo, double hi, double step) {
  return step_envelopes(
      lo, hi, step, [](double t) { return t < -kZero ? 0.0 : 1.0; }, [](double t) { return t <= kZero ? 1.2 : 2.0; });
}

Envelopes broken_step(double lo, double hi, double step) {
  return step_envelopes(
      lo, hi, step, [](double t) { return t <= kZero ? 0.0 : 1.0; }, [](double) { return 2.0; });
}

Envelopes below_abs(double lo, double hi, double step) {
  return step_envelopes(
      lo, hi, step, [](double) { return -std::numeric_limits<double>::infinity(); },
      [](double t) { return std::abs(t) <= kZero ? 0.0 : std::abs(t); });
}

}  // namespace lipkit::fixtures
