#include "lipkit/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace lipkit {

namespace {

constexpr std::size_t kReportCap = 1000;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Subset::Subset(std::size_t host_size, std::vector<PointId> ids) : host_size_(host_size), members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && members_.back() >= host_size_) {
    throw Error(ErrorCode::out_of_range,
                "subset id " + std::to_string(members_.back()) + " out of range for " +
                    std::to_string(host_size_) + " points",
                {members_.back()});
  }
}

Subset Subset::all(std::size_t host_size) {
  std::vector<PointId> ids(host_size);
  for (std::size_t i = 0; i < host_size; ++i) ids[i] = i;
  return Subset(host_size, std::move(ids));
}

bool Subset::contains(PointId p) const { return std::binary_search(members_.begin(), members_.end(), p); }

std::optional<std::size_t> Subset::position(PointId p) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), p);
  if (it == members_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - members_.begin());
}

Subset Subset::complement() const {
  std::vector<PointId> rest;
  rest.reserve(host_size_ - members_.size());
  for (PointId p = 0; p < host_size_; ++p) {
    if (!contains(p)) rest.push_back(p);
  }
  return Subset(host_size_, std::move(rest));
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::negative: return "negative";
    case ViolationKind::nonzero_diagonal: return "nonzero_diagonal";
    case ViolationKind::zero_off_diagonal: return "zero_off_diagonal";
    case ViolationKind::asymmetry: return "asymmetry";
    case ViolationKind::triangle: return "triangle";
    case ViolationKind::non_finite: return "non_finite";
  }
  return "unknown";
}

SpacePtr MetricSpace::from_matrix(std::size_t n, std::vector<double> distances) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "metric space needs at least one point");
  if (distances.size() != n * n) {
    throw Error(ErrorCode::invalid_argument, "distance matrix has " + std::to_string(distances.size()) +
                                                 " entries, expected " + std::to_string(n * n));
  }
  auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
  space->backend_ = Backend::matrix;
  space->n_ = n;
  space->matrix_ = std::move(distances);
  return space;
}

SpacePtr MetricSpace::from_points(std::vector<std::vector<double>> points) {
  if (points.empty()) throw Error(ErrorCode::invalid_argument, "metric space needs at least one point");
  const std::size_t dim = points.front().size();
  if (dim == 0) throw Error(ErrorCode::invalid_argument, "points need at least one coordinate");
  auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
  space->backend_ = Backend::euclidean;
  space->n_ = points.size();
  space->dim_ = dim;
  space->coords_.reserve(points.size() * dim);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].size() != dim) {
      throw Error(ErrorCode::invalid_argument, "point " + std::to_string(i) + " has dimension " +
                                                   std::to_string(points[i].size()) + ", expected " +
                                                   std::to_string(dim));
    }
    for (double c : points[i]) {
      if (!std::isfinite(c)) throw Error(ErrorCode::invalid_argument, "non-finite coordinate", {i});
      space->coords_.push_back(c);
    }
  }
  return space;
}

SpacePtr MetricSpace::from_graph(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) throw Error(ErrorCode::invalid_argument, "metric space needs at least one point");
  std::vector<std::vector<std::pair<PointId, double>>> adjacency(n);
  for (const Edge& e : edges) {
    if (e.u >= n || e.v >= n) {
      throw Error(ErrorCode::out_of_range, "edge endpoint out of range", {e.u, e.v});
    }
    if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
      throw Error(ErrorCode::invalid_argument, "edge weights must be positive and finite", {e.u, e.v});
    }
    adjacency[e.u].emplace_back(e.v, e.weight);
    adjacency[e.v].emplace_back(e.u, e.weight);
  }

  // Dijkstra from every source.
  std::vector<double> matrix(n * n, kInf);
  using Item = std::pair<double, PointId>;
  for (PointId s = 0; s < n; ++s) {
    double* row = &matrix[s * n];
    row[s] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.emplace(0.0, s);
    while (!queue.empty()) {
      auto [d, u] = queue.top();
      queue.pop();
      if (d > row[u]) continue;
      for (auto [v, w] : adjacency[u]) {
        if (d + w < row[v]) {
          row[v] = d + w;
          queue.emplace(row[v], v);
        }
      }
    }
    for (PointId t = 0; t < n; ++t) {
      if (row[t] == kInf) throw Error(ErrorCode::invalid_argument, "graph is disconnected", {s, t});
    }
  }
  // Symmetrize exactly: both directions are the same path sum up to rounding order.
  for (PointId i = 0; i < n; ++i) {
    for (PointId j = i + 1; j < n; ++j) {
      double d = std::min(matrix[i * n + j], matrix[j * n + i]);
      matrix[i * n + j] = matrix[j * n + i] = d;
    }
  }

  auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
  space->backend_ = Backend::graph;
  space->n_ = n;
  space->matrix_ = std::move(matrix);
  return space;
}

SpacePtr MetricSpace::from_grid(double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(step > 0.0) || !std::isfinite(step) || hi < lo) {
    throw Error(ErrorCode::invalid_argument, "grid needs finite lo <= hi and a positive step");
  }
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  auto space = std::shared_ptr<MetricSpace>(new MetricSpace());
  space->backend_ = Backend::grid;
  space->n_ = count;
  space->dim_ = 1;
  space->grid_lo_ = lo;
  space->grid_step_ = step;
  space->coords_.resize(count);
  for (std::size_t i = 0; i < count; ++i) space->coords_[i] = lo + static_cast<double>(i) * step;
  return space;
}

void MetricSpace::check_id(PointId p) const {
  if (p >= n_) {
    throw Error(ErrorCode::out_of_range,
                "point id " + std::to_string(p) + " out of range for " + std::to_string(n_) + " points", {p});
  }
}

std::span<const double> MetricSpace::coords(PointId p) const {
  check_id(p);
  if (dim_ == 0) return {};
  return {coords_.data() + p * dim_, dim_};
}

double MetricSpace::dist(PointId p, PointId q) const {
  check_id(p);
  check_id(q);
  switch (backend_) {
    case Backend::matrix:
    case Backend::graph:
      return matrix_[p * n_ + q];
    case Backend::grid:
      return std::abs(coords_[p] - coords_[q]);
    case Backend::euclidean: {
      double sum = 0.0;
      const double* a = coords_.data() + p * dim_;
      const double* b = coords_.data() + q * dim_;
      for (std::size_t k = 0; k < dim_; ++k) sum += (a[k] - b[k]) * (a[k] - b[k]);
      return std::sqrt(sum);
    }
  }
  return 0.0;
}

double MetricSpace::dist_to_set(PointId p, const Subset& s) const {
  if (s.empty()) throw Error(ErrorCode::invalid_argument, "distance to an empty set");
  if (s.host_size() != n_) throw Error(ErrorCode::invalid_argument, "subset belongs to a different space");
  double best = kInf;
  for (PointId q : s) best = std::min(best, dist(p, q));
  return best;
}

std::vector<PointId> MetricSpace::ball(PointId p, double radius) const {
  std::vector<PointId> out;
  for (PointId q = 0; q < n_; ++q) {
    if (dist(p, q) < radius) out.push_back(q);
  }
  return out;
}

double MetricSpace::diameter() const {
  double best = 0.0;
  for (PointId p = 0; p < n_; ++p)
    for (PointId q = p + 1; q < n_; ++q) best = std::max(best, dist(p, q));
  return best;
}

double MetricSpace::nearest_neighbor_distance(PointId p) const {
  double best = kInf;
  for (PointId q = 0; q < n_; ++q) {
    if (q != p) best = std::min(best, dist(p, q));
  }
  return best;
}

double MetricSpace::min_separation() const {
  double best = kInf;
  for (PointId p = 0; p < n_; ++p)
    for (PointId q = p + 1; q < n_; ++q) {
      double d = dist(p, q);
      if (d > 0.0) best = std::min(best, d);
    }
  return best;
}

SpacePtr MetricSpace::subspace(const Subset& s) const {
  if (s.host_size() != n_) throw Error(ErrorCode::invalid_argument, "subset belongs to a different space");
  const std::size_t k = s.size();
  std::vector<double> matrix(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) matrix[i * k + j] = dist(s.members()[i], s.members()[j]);
  return from_matrix(k, std::move(matrix));
}

std::string MetricSpace::describe() const {
  std::ostringstream out;
  switch (backend_) {
    case Backend::matrix: out << "matrix"; break;
    case Backend::euclidean: out << "euclidean(dim=" << dim_ << ")"; break;
    case Backend::graph: out << "graph"; break;
    case Backend::grid: out << "grid(lo=" << grid_lo_ << ", step=" << grid_step_ << ")"; break;
  }
  out << " with " << n_ << " points";
  return out.str();
}

ValidationReport validate_metric(const MetricSpace& space, double tolerance) {
  ValidationReport report;
  const std::size_t n = space.size();
  report.point_count = n;
  auto add = [&](ViolationKind kind, std::vector<PointId> pts, double amount) {
    if (report.violations.size() < kReportCap) {
      report.violations.push_back({kind, std::move(pts), amount});
    } else {
      ++report.truncated;
    }
  };

  bool finite = true;
  for (PointId p = 0; p < n; ++p) {
    for (PointId q = 0; q < n; ++q) {
      const double d = space.dist(p, q);
      if (!std::isfinite(d)) {
        add(ViolationKind::non_finite, {p, q}, d);
        finite = false;
        continue;
      }
      if (d < 0.0) add(ViolationKind::negative, {p, q}, -d);
      if (p == q && d != 0.0) add(ViolationKind::nonzero_diagonal, {p, p}, std::abs(d));
      if (p < q) {
        if (d <= 0.0 && space.dist(q, p) <= 0.0) add(ViolationKind::zero_off_diagonal, {p, q}, 0.0);
        const double asym = std::abs(d - space.dist(q, p));
        if (asym > tolerance) add(ViolationKind::asymmetry, {p, q}, asym);
      }
    }
  }
  if (!finite) return report;

  for (PointId p = 0; p < n; ++p)
    for (PointId q = 0; q < n; ++q) {
      if (q == p) continue;
      const double pq = space.dist(p, q);
      for (PointId r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        const double excess = space.dist(p, r) - (pq + space.dist(q, r));
        if (excess > tolerance) add(ViolationKind::triangle, {p, q, r}, excess);
      }
    }
  return report;
}

}  // namespace lipkit
