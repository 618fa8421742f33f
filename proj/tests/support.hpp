// Independent brute-force oracles shared by the unit tests and the acceptance run.
// Nothing here calls the library routine it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "lipkit/certify.hpp"
#include "lipkit/metric_space.hpp"

namespace oracle {

using lipkit::PointId;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline std::vector<double> floyd_warshall(std::size_t n, const std::vector<lipkit::Edge>& edges) {
  std::vector<double> d(n * n, kInf);
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  for (const auto& e : edges) {
    d[e.u * n + e.v] = std::min(d[e.u * n + e.v], e.weight);
    d[e.v * n + e.u] = std::min(d[e.v * n + e.u], e.weight);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i * n + j] = std::min(d[i * n + j], d[i * n + k] + d[k * n + j]);
  return d;
}

// sup over A of phi(a) - K d(p, a), written out directly.
inline double lower(const lipkit::MetricSpace& X, const lipkit::Subset& A, const std::vector<double>& phi, double K,
                    PointId p) {
  double best = -kInf;
  std::size_t i = 0;
  for (PointId a : A) best = std::max(best, phi[i++] - K * X.dist(p, a));
  return best;
}

inline double upper(const lipkit::MetricSpace& X, const lipkit::Subset& A, const std::vector<double>& phi, double K,
                    PointId p) {
  double best = kInf;
  std::size_t i = 0;
  for (PointId a : A) best = std::min(best, phi[i++] + K * X.dist(p, a));
  return best;
}

// Largest |f(x) - f(y)| / d(x, y) over all pairs.
inline double max_ratio(const lipkit::MetricSpace& X, const std::vector<double>& f) {
  double r = 0.0;
  for (PointId x = 0; x < X.size(); ++x)
    for (PointId y = x + 1; y < X.size(); ++y) r = std::max(r, std::abs(f[x] - f[y]) / X.dist(x, y));
  return r;
}

// True when |f(x) - f(y)| <= K d(x, y) (1 + rel) + abs for all pairs.
inline bool k_lipschitz(const lipkit::MetricSpace& X, const std::vector<double>& f, double K, double rel = 1e-9,
                        double abs = 1e-12) {
  for (PointId x = 0; x < X.size(); ++x)
    for (PointId y = x + 1; y < X.size(); ++y)
      if (std::abs(f[x] - f[y]) > K * X.dist(x, y) * (1.0 + rel) + abs) return false;
  return true;
}

// l_1 = min(1, 1/t); l_{k+1} = min(k+1, 1/t) - (l_1 + ... + l_k).
inline std::vector<double> staircase_recursion(std::size_t k_max, double t) {
  std::vector<double> l;
  double running = 0.0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    const double v = std::min(static_cast<double>(k), 1.0 / t) - running;
    l.push_back(v);
    running += v;
  }
  return l;
}

struct Instance {
  lipkit::SpacePtr space;
  lipkit::Subset A;
  std::vector<double> phi;
  double K = 1.0;
  const char* backend = "";
};

// Random space over one of the four backends, random nonempty A and a
// K-Lipschitz phi on A taken from a random extension of one random value.
inline Instance random_instance(std::uint64_t seed, std::size_t max_n = 40) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::size_t n = 2 + rng() % (max_n - 1);
  Instance in;
  switch (seed % 4) {
    case 0: {
      // Random points in the plane give a genuine metric matrix.
      std::vector<std::vector<double>> pts(n, std::vector<double>(2));
      for (auto& p : pts) p = {unit(rng) * 10, unit(rng) * 10};
      std::vector<double> m(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i * n + j] = std::hypot(pts[i][0] - pts[j][0], pts[i][1] - pts[j][1]);
      in.space = lipkit::MetricSpace::from_matrix(n, m);
      in.backend = "matrix";
      break;
    }
    case 1: {
      std::vector<std::vector<double>> pts(n, std::vector<double>(3));
      for (auto& p : pts)
        for (double& c : p) c = unit(rng) * 5;
      in.space = lipkit::MetricSpace::from_points(pts);
      in.backend = "euclidean";
      break;
    }
    case 2: {
      std::vector<lipkit::Edge> edges;
      for (std::size_t i = 1; i < n; ++i) edges.push_back({rng() % i, i, 0.1 + unit(rng) * 3});
      for (std::size_t e = 0; e < n; ++e) {
        const PointId u = rng() % n, v = rng() % n;
        if (u != v) edges.push_back({u, v, 0.1 + unit(rng) * 3});
      }
      in.space = lipkit::MetricSpace::from_graph(n, edges);
      in.backend = "graph";
      break;
    }
    default: {
      const double step = 0.05 + unit(rng);
      in.space = lipkit::MetricSpace::from_grid(-1.0, -1.0 + step * static_cast<double>(n - 1) + step / 4, step);
      in.backend = "grid";
      break;
    }
  }
  const std::size_t N = in.space->size();
  std::vector<PointId> ids;
  for (PointId p = 0; p < N; ++p)
    if (unit(rng) < 0.4) ids.push_back(p);
  if (ids.empty()) ids.push_back(rng() % N);
  in.A = lipkit::Subset(N, ids);
  in.K = 0.25 + unit(rng) * 4;
  const lipkit::Subset seed_point(N, {ids.front()});
  const double start = unit(rng) * 10 - 5;
  const auto full = lipkit::random_k_extension(in.space, seed_point, std::vector<double>{start}, in.K, {}, rng())
                        .tabulate();
  for (PointId a : in.A) in.phi.push_back(full[a]);
  return in;
}

}  // namespace oracle
