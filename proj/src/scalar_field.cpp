#include "lipkit/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <variant>

namespace lipkit {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

enum BinaryOp { op_add, op_sub, op_mul, op_min, op_max };

}  // namespace

double Transport::apply(double t) const {
  switch (kind) {
    case Kind::arctan:
      return std::atan(t);
    case Kind::tan:
      if (!(t >= -kHalfPi && t <= kHalfPi)) {
        throw Error(ErrorCode::domain, "tan transport applied outside (-pi/2, pi/2): " + std::to_string(t));
      }
      return std::tan(t);
    case Kind::reciprocal:
      if (!(t > 0.0)) {
        throw Error(ErrorCode::domain, "reciprocal transport applied to non-positive value " + std::to_string(t));
      }
      return 1.0 / t;
    case Kind::affine:
      return alpha * t + beta;
  }
  return t;
}

std::string Transport::name() const {
  switch (kind) {
    case Kind::arctan: return "arctan";
    case Kind::tan: return "tan";
    case Kind::reciprocal: return "reciprocal";
    case Kind::affine: return "affine";
  }
  return "unknown";
}

namespace detail {

struct TableNode {
  std::vector<double> values;
};
struct ConstantNode {
  double value;
};
struct CoordinateNode {
  std::size_t axis;
};
struct DistanceNode {
  Subset set;
};
struct EnvelopeNode {
  Subset domain;
  std::vector<double> values;
  std::vector<double> constants;
  bool upper;
};
struct ScaleNode {
  Field arg;
  double factor;
};
struct TransportNode {
  Field arg;
  Transport transport;
};
struct ClampNode {
  Field arg;
  Interval range;
};
struct BinaryNode {
  Field lhs;
  Field rhs;
  int op;
};
struct SeriesNode {
  std::vector<Field> terms;
  std::vector<std::vector<std::size_t>> active;
};
struct PatchNode {
  Field base;
  Subset domain;
  std::vector<double> values;
};

struct FieldNode {
  std::variant<TableNode, ConstantNode, CoordinateNode, DistanceNode, EnvelopeNode, ScaleNode, TransportNode,
               ClampNode, BinaryNode, SeriesNode, PatchNode>
      data;
};

}  // namespace detail

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

template <class T>
std::shared_ptr<const detail::FieldNode> make_node(T&& data) {
  return std::make_shared<const detail::FieldNode>(detail::FieldNode{std::forward<T>(data)});
}

void require_same_host(const Field& a, const Field& b) {
  if (a.host() != b.host()) throw Error(ErrorCode::invalid_argument, "fields live on different spaces");
}

double evaluate_envelope(const MetricSpace& space, const detail::EnvelopeNode& env, PointId p) {
  if (auto pos = env.domain.position(p)) return env.values[*pos];
  const auto& members = env.domain.members();
  if (env.upper) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < members.size(); ++i) {
      best = std::min(best, env.values[i] + env.constants[i] * space.dist(members[i], p));
    }
    return best;
  }
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < members.size(); ++i) {
    best = std::max(best, env.values[i] - env.constants[i] * space.dist(members[i], p));
  }
  return best;
}

}  // namespace

Field::Field(SpacePtr host, std::shared_ptr<const detail::FieldNode> node)
    : host_(std::move(host)), node_(std::move(node)) {
  if (!host_) throw Error(ErrorCode::invalid_argument, "field needs a host space");
}

Field Field::table(SpacePtr host, std::vector<double> values) {
  if (!host) throw Error(ErrorCode::invalid_argument, "field needs a host space");
  if (values.size() != host->size()) {
    throw Error(ErrorCode::invalid_argument, "table has " + std::to_string(values.size()) + " values for " +
                                                 std::to_string(host->size()) + " points");
  }
  return Field(std::move(host), make_node(detail::TableNode{std::move(values)}));
}

Field Field::constant(SpacePtr host, double value) {
  return Field(std::move(host), make_node(detail::ConstantNode{value}));
}

Field Field::coordinate(SpacePtr host, std::size_t axis) {
  if (!host) throw Error(ErrorCode::invalid_argument, "field needs a host space");
  if (axis >= host->dimension()) {
    throw Error(ErrorCode::invalid_argument, "coordinate axis " + std::to_string(axis) + " unavailable for " +
                                                 host->describe());
  }
  return Field(std::move(host), make_node(detail::CoordinateNode{axis}));
}

Field Field::distance_to(SpacePtr host, Subset set) {
  if (set.empty()) throw Error(ErrorCode::invalid_argument, "distance to an empty set");
  if (!host || set.host_size() != host->size()) {
    throw Error(ErrorCode::invalid_argument, "subset belongs to a different space");
  }
  return Field(std::move(host), make_node(detail::DistanceNode{std::move(set)}));
}

namespace {

void check_envelope(const SpacePtr& host, const Subset& domain, const std::vector<double>& values,
                    const std::vector<double>& constants) {
  if (domain.empty()) throw Error(ErrorCode::invalid_argument, "envelope over an empty set");
  if (!host || domain.host_size() != host->size()) {
    throw Error(ErrorCode::invalid_argument, "subset belongs to a different space");
  }
  if (values.size() != domain.size() || constants.size() != domain.size()) {
    throw Error(ErrorCode::invalid_argument, "envelope data does not match its domain");
  }
}

}  // namespace

Field Field::lower_envelope(SpacePtr host, Subset domain, std::vector<double> values,
                            std::vector<double> constants) {
  check_envelope(host, domain, values, constants);
  return Field(std::move(host),
               make_node(detail::EnvelopeNode{std::move(domain), std::move(values), std::move(constants), false}));
}

Field Field::upper_envelope(SpacePtr host, Subset domain, std::vector<double> values,
                            std::vector<double> constants) {
  check_envelope(host, domain, values, constants);
  return Field(std::move(host),
               make_node(detail::EnvelopeNode{std::move(domain), std::move(values), std::move(constants), true}));
}

Field Field::series(SpacePtr host, std::vector<Field> terms, std::vector<std::vector<std::size_t>> active) {
  if (!host) throw Error(ErrorCode::invalid_argument, "field needs a host space");
  if (active.size() != host->size()) {
    throw Error(ErrorCode::invalid_argument, "series activity table does not match the space");
  }
  for (const Field& t : terms) {
    if (t.host() != host) throw Error(ErrorCode::invalid_argument, "series term lives on a different space");
  }
  for (const auto& row : active) {
    for (std::size_t i : row) {
      if (i >= terms.size()) throw Error(ErrorCode::out_of_range, "series activity index out of range");
    }
  }
  return Field(std::move(host), make_node(detail::SeriesNode{std::move(terms), std::move(active)}));
}

Field Field::patched(const Field& base, Subset domain, std::vector<double> values) {
  if (domain.host_size() != base.size() && !domain.empty()) {
    throw Error(ErrorCode::invalid_argument, "subset belongs to a different space");
  }
  if (values.size() != domain.size()) throw Error(ErrorCode::invalid_argument, "patch data does not match its domain");
  return Field(base.host_, make_node(detail::PatchNode{base, std::move(domain), std::move(values)}));
}

Field Field::scaled(double factor) const { return Field(host_, make_node(detail::ScaleNode{*this, factor})); }

Field Field::transported(Transport t) const { return Field(host_, make_node(detail::TransportNode{*this, t})); }

Field Field::clamped(const Interval& range) const {
  if (range.degenerate()) throw Error(ErrorCode::invalid_argument, "clamp to a degenerate interval");
  return Field(host_, make_node(detail::ClampNode{*this, range}));
}

Field Field::binary(int op, const Field& a, const Field& b) {
  require_same_host(a, b);
  return Field(a.host_, make_node(detail::BinaryNode{a, b, op}));
}

Field operator+(const Field& a, const Field& b) { return Field::binary(op_add, a, b); }
Field operator-(const Field& a, const Field& b) { return Field::binary(op_sub, a, b); }
Field operator*(const Field& a, const Field& b) { return Field::binary(op_mul, a, b); }
Field min(const Field& a, const Field& b) { return Field::binary(op_min, a, b); }
Field max(const Field& a, const Field& b) { return Field::binary(op_max, a, b); }

double Field::operator()(PointId p) const {
  if (!node_) throw Error(ErrorCode::invalid_argument, "evaluating an empty field");
  const MetricSpace& space = *host_;
  if (p >= space.size()) {
    throw Error(ErrorCode::out_of_range,
                "point id " + std::to_string(p) + " out of range for " + std::to_string(space.size()) + " points",
                {p});
  }
  return std::visit(
      Overloaded{
          [&](const detail::TableNode& n) { return n.values[p]; },
          [&](const detail::ConstantNode& n) { return n.value; },
          [&](const detail::CoordinateNode& n) { return space.coords(p)[n.axis]; },
          [&](const detail::DistanceNode& n) { return space.dist_to_set(p, n.set); },
          [&](const detail::EnvelopeNode& n) { return evaluate_envelope(space, n, p); },
          [&](const detail::ScaleNode& n) { return n.factor * n.arg(p); },
          [&](const detail::TransportNode& n) { return n.transport.apply(n.arg(p)); },
          [&](const detail::ClampNode& n) { return std::clamp(n.arg(p), n.range.lo, n.range.hi); },
          [&](const detail::BinaryNode& n) {
            const double a = n.lhs(p);
            const double b = n.rhs(p);
            switch (n.op) {
              case op_add: return a + b;
              case op_sub: return a - b;
              case op_mul: return a * b;
              case op_min: return std::min(a, b);
              default: return std::max(a, b);
            }
          },
          [&](const detail::SeriesNode& n) {
            double sum = 0.0;
            for (std::size_t i : n.active[p]) sum += n.terms[i](p);
            return sum;
          },
          [&](const detail::PatchNode& n) {
            if (auto pos = n.domain.position(p)) return n.values[*pos];
            return n.base(p);
          },
      },
      node_->data);
}

std::vector<double> Field::tabulate() const {
  if (auto* t = std::get_if<detail::TableNode>(&node_->data)) return t->values;
  std::vector<double> out(size());
  for (PointId p = 0; p < out.size(); ++p) out[p] = (*this)(p);
  return out;
}

// ---------------------------------------------------------------------------
// Lipschitz diagnostics

namespace {

struct PairScan {
  LipEstimate result;
  void visit(PointId p, PointId q, double fp, double fq, double d) {
    if (!std::isfinite(fp) || !std::isfinite(fq)) {
      if (!result.infinite) {
        result.infinite = true;
        result.witness = {p, q};
      }
      return;
    }
    if (!(d > 0.0)) return;
    const double ratio = std::abs(fp - fq) / d;
    if (ratio > result.value || (result.witness.empty() && !result.infinite)) {
      result.value = std::max(result.value, ratio);
      if (!result.infinite) result.witness = {p, q};
    }
  }
};

}  // namespace

LipEstimate global_lip(const MetricSpace& space, std::span<const double> values, const Subset* over) {
  if (values.size() != space.size()) throw Error(ErrorCode::invalid_argument, "value table does not match the space");
  PairScan scan;
  if (over) {
    const auto& m = over->members();
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = i + 1; j < m.size(); ++j)
        scan.visit(m[i], m[j], values[m[i]], values[m[j]], space.dist(m[i], m[j]));
  } else {
    for (PointId p = 0; p < space.size(); ++p)
      for (PointId q = p + 1; q < space.size(); ++q) scan.visit(p, q, values[p], values[q], space.dist(p, q));
  }
  return scan.result;
}

LipEstimate global_lip(const Field& f) {
  const auto values = f.tabulate();
  return global_lip(f.space(), values);
}

LipEstimate global_lip(const Field& f, const Subset& over) {
  const auto values = f.tabulate();
  return global_lip(f.space(), values, &over);
}

LipEstimate global_lip(const Field& f, std::span<const std::pair<PointId, PointId>> pairs) {
  PairScan scan;
  for (auto [p, q] : pairs) {
    if (p == q) continue;
    scan.visit(p, q, f(p), f(q), f.space().dist(p, q));
  }
  return scan.result;
}

LipEstimate pointwise_lip(const Field& f, PointId p, const Subset& over) {
  const double fp = f(p);
  PairScan scan;
  for (PointId x : over) {
    if (x == p) continue;
    scan.visit(x, p, f(x), fp, f.space().dist(x, p));
  }
  return scan.result;
}

LipEstimate pointwise_lip(const Field& f, PointId p) { return pointwise_lip(f, p, Subset::all(f.size())); }

double scaled_oscillation(const Field& f, PointId p, std::span<const double> radii) {
  if (radii.empty()) throw Error(ErrorCode::invalid_argument, "scaled oscillation needs at least one radius");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) {
      throw Error(ErrorCode::invalid_argument, "radii must be positive and finite");
    }
    if (i > 0 && !(radii[i] < radii[i - 1])) {
      throw Error(ErrorCode::invalid_argument, "radii must be strictly decreasing");
    }
  }
  const double fp = f(p);
  double best = std::numeric_limits<double>::infinity();
  for (double t : radii) {
    double osc = 0.0;
    for (PointId x : f.space().ball(p, t)) osc = std::max(osc, std::abs(f(x) - fp));
    best = std::min(best, osc / t);
  }
  return best;
}

}  // namespace lipkit
