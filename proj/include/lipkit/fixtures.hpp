#pragma once

#include <cstddef>
#include <vector>

#include "lipkit/certify.hpp"
#include "lipkit/scalar_field.hpp"

/// Sampled functions with known Lipschitz behavior, shared by the demos and
/// the test suites.
namespace lipkit::fixtures {

struct Sampled {
  SpacePtr space;
  Field f;
  std::vector<double> t;  // parameter of each sample point
};

struct Envelopes {
  SpacePtr space;
  Field g;
  Field h;
};

/// sin(1/t) at s_n = 2/((4n+1)pi) and t_n = 2/((4n+3)pi), n = 1..n_max.
/// Points 2(n-1) and 2(n-1)+1 hold s_n and t_n.
Sampled sin_inv_t_pairs(std::size_t n_max = 20);
/// sin(1/t) on `count` evenly spaced samples of [lo, hi], lo > 0.
Sampled sin_inv_t(double lo, double hi, std::size_t count);
/// 1/t at hi * i / count, i = 1..count.
Sampled reciprocal(double hi, std::size_t count);
/// t^2 on the grid lo, lo + step, ..., hi.
Sampled square(double lo, double hi, double step);
/// Points u_t = (t^3, t^2) for t = +-k/count, k = 1..count, with
/// f(u_t) = sign(t) t^2. Point 2(k-1) holds t = k/count and 2(k-1)+1 holds -t.
Sampled cusp(std::size_t count);

/// delta_p = t/4 and K_p = 4/t^2, valid for t -> sin(1/t) and t -> 1/t.
LocalWitness inverse_scale_witness(const Sampled& s);
/// (p, 1, 2|p| + 4) for t -> t^2.
LocalWitness square_witness(const Sampled& s);
/// The same (delta, K) at every point.
LocalWitness uniform_witness(const Sampled& s, double delta, double K);

/// g = 0 for t < 0 and 1 for t >= 0; h = 1.2 for t <= 0 and 2 for t > 0.
Envelopes dowker_step(double lo = -2.0, double hi = 2.0, double step = 0.125);
/// g = 0 for t <= 0 and 1 for t > 0 (not upper semicontinuous), h = 2.
Envelopes broken_step(double lo = -2.0, double hi = 2.0, double step = 0.125);
/// g = -inf, h = |t|.
Envelopes below_abs(double lo = -2.0, double hi = 2.0, double step = 0.125);

}  // namespace lipkit::fixtures
