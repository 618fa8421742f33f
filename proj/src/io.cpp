#include "io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace lipkit::io {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> cells;
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& what) {
  throw Error(ErrorCode::io, path + ":" + std::to_string(line) + ": " + what);
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, path + ": cannot open file");
  return in;
}

// Non-empty, non-comment lines split on commas.
std::vector<Line> read_csv(const std::string& path) {
  std::ifstream in = open(path);
  std::vector<Line> out;
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const std::string text = trim(raw);
    if (text.empty() || text[0] == '#') continue;
    Line line{number, {}};
    std::stringstream ss(text);
    std::string cell;
    while (std::getline(ss, cell, ',')) line.cells.push_back(trim(cell));
    out.push_back(std::move(line));
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s == "inf" || s == "+inf") {
    out = std::numeric_limits<double>::infinity();
    return true;
  }
  if (s == "-inf") {
    out = -std::numeric_limits<double>::infinity();
    return true;
  }
  try {
    std::size_t used = 0;
    out = std::stod(s, &used);
    return used == s.size();
  } catch (const std::exception&) {
    return false;
  }
}

double cell_double(const std::string& path, const Line& line, std::size_t i) {
  double v = 0.0;
  if (i >= line.cells.size() || !parse_double(line.cells[i], v)) {
    fail(path, line.number, "expected a number in column " + std::to_string(i + 1));
  }
  return v;
}

PointId cell_id(const std::string& path, const Line& line, std::size_t i) {
  const double v = cell_double(path, line, i);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) fail(path, line.number, "expected a point id");
  return static_cast<PointId>(v);
}

bool is_header(const Line& line) {
  double v = 0.0;
  return !line.cells.empty() && !parse_double(line.cells[0], v);
}

Json read_json(const std::string& path) {
  std::ifstream in = open(path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::io, path + ": " + e.what());
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

SpacePtr read_matrix(const std::string& path) {
  const auto lines = read_csv(path);
  if (lines.empty()) throw Error(ErrorCode::io, path + ": empty distance matrix");
  const std::size_t n = lines.size();
  std::vector<double> d;
  d.reserve(n * n);
  for (const Line& line : lines) {
    if (line.cells.size() != n) {
      fail(path, line.number, "expected " + std::to_string(n) + " entries, found " + std::to_string(line.cells.size()));
    }
    for (std::size_t j = 0; j < n; ++j) d.push_back(cell_double(path, line, j));
  }
  return MetricSpace::from_matrix(n, std::move(d));
}

SpacePtr read_points(const std::string& path) {
  auto lines = read_csv(path);
  if (!lines.empty() && is_header(lines.front())) lines.erase(lines.begin());
  if (lines.empty()) throw Error(ErrorCode::io, path + ": no points");
  std::vector<std::vector<double>> pts(lines.size());
  std::vector<char> seen(lines.size(), 0);
  for (const Line& line : lines) {
    if (line.cells.size() < 2) fail(path, line.number, "expected id followed by coordinates");
    const PointId id = cell_id(path, line, 0);
    if (id >= lines.size()) fail(path, line.number, "point id " + std::to_string(id) + " is not dense");
    if (seen[id]) fail(path, line.number, "duplicate point id " + std::to_string(id));
    seen[id] = 1;
    for (std::size_t j = 1; j < line.cells.size(); ++j) pts[id].push_back(cell_double(path, line, j));
  }
  return MetricSpace::from_points(std::move(pts));
}

double json_number(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw Error(ErrorCode::io, where + ": missing numeric field '" + key + "'");
  }
  return j[key].get<double>();
}

SpacePtr read_graph(const Json& j, const std::string& path) {
  std::size_t n = 0;
  if (j["nodes"].is_number_unsigned()) {
    n = j["nodes"].get<std::size_t>();
  } else if (j["nodes"].is_array()) {
    n = j["nodes"].size();
  } else {
    throw Error(ErrorCode::io, path + ": 'nodes' must be a count or an array");
  }
  std::vector<Edge> edges;
  if (!j.contains("edges") || !j["edges"].is_array()) throw Error(ErrorCode::io, path + ": missing 'edges' array");
  std::size_t i = 0;
  for (const auto& e : j["edges"]) {
    const std::string where = path + ": edges[" + std::to_string(i++) + "]";
    const double u = json_number(e, "u", where), v = json_number(e, "v", where), w = json_number(e, "w", where);
    if (u < 0 || v < 0) throw Error(ErrorCode::io, where + ": negative node id");
    edges.push_back({static_cast<PointId>(u), static_cast<PointId>(v), w});
  }
  return MetricSpace::from_graph(n, edges);
}

SpacePtr read_grid(const Json& j, const std::string& path) {
  return MetricSpace::from_grid(json_number(j, "lo", path), json_number(j, "hi", path), json_number(j, "step", path));
}

Field binary_fold(const Json& node, const SpacePtr& host, const std::string& where, const std::string& op) {
  if (!node.contains("args") || !node["args"].is_array() || node["args"].size() < 2) {
    throw Error(ErrorCode::io, where + ": '" + op + "' needs an 'args' array of at least two expressions");
  }
  Field acc = parse_expression(node["args"][0], host, where + ".args[0]");
  for (std::size_t i = 1; i < node["args"].size(); ++i) {
    const Field next = parse_expression(node["args"][i], host, where + ".args[" + std::to_string(i) + "]");
    if (op == "add") acc = acc + next;
    else if (op == "sub") acc = acc - next;
    else if (op == "mul") acc = acc * next;
    else if (op == "min") acc = min(acc, next);
    else acc = max(acc, next);
  }
  return acc;
}

Field unary_arg(const Json& node, const SpacePtr& host, const std::string& where) {
  if (!node.contains("arg")) throw Error(ErrorCode::io, where + ": missing 'arg'");
  return parse_expression(node["arg"], host, where + ".arg");
}

std::vector<PointId> id_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorCode::io, where + ": expected an array of point ids");
  std::vector<PointId> ids;
  for (const auto& v : j) {
    if (!v.is_number_unsigned()) throw Error(ErrorCode::io, where + ": point ids must be nonnegative integers");
    ids.push_back(v.get<PointId>());
  }
  return ids;
}

std::vector<double> number_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorCode::io, where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (v.is_number()) {
      out.push_back(v.get<double>());
    } else if (v.is_string()) {
      double d = 0.0;
      if (!parse_double(v.get<std::string>(), d)) throw Error(ErrorCode::io, where + ": bad number string");
      out.push_back(d);
    } else {
      throw Error(ErrorCode::io, where + ": expected numbers");
    }
  }
  return out;
}

}  // namespace

SpacePtr read_space(const std::string& spec) {
  std::string kind, path = spec;
  for (const char* prefix : {"matrix", "points", "graph", "grid"}) {
    const std::string p = std::string(prefix) + ":";
    if (spec.rfind(p, 0) == 0) {
      kind = prefix;
      path = spec.substr(p.size());
    }
  }
  if (kind.empty()) {
    if (ends_with(path, ".json")) {
      const Json j = read_json(path);
      if (j.contains("nodes") || j.contains("edges")) return read_graph(j, path);
      if (j.contains("lo") && j.contains("hi") && j.contains("step")) return read_grid(j, path);
      throw Error(ErrorCode::io, path + ": JSON space needs nodes/edges or lo/hi/step");
    }
    const auto lines = read_csv(path);
    kind = !lines.empty() && !lines.front().cells.empty() && lines.front().cells[0] == "id" ? "points" : "matrix";
  }
  if (kind == "matrix") return read_matrix(path);
  if (kind == "points") return read_points(path);
  const Json j = read_json(path);
  return kind == "graph" ? read_graph(j, path) : read_grid(j, path);
}

Subset read_subset(const std::string& path, std::size_t host_size) {
  const Json j = read_json(path);
  return Subset(host_size, id_array(j, path));
}

std::vector<std::pair<PointId, double>> read_pairs(const std::string& path) {
  auto lines = read_csv(path);
  if (!lines.empty() && is_header(lines.front())) lines.erase(lines.begin());
  std::vector<std::pair<PointId, double>> out;
  for (const Line& line : lines) {
    if (line.cells.size() < 2) fail(path, line.number, "expected 'id,value'");
    out.emplace_back(cell_id(path, line, 0), cell_double(path, line, 1));
  }
  return out;
}

std::vector<double> values_on(const std::string& path, const Subset& A) {
  std::map<PointId, double> table;
  for (const auto& [id, v] : read_pairs(path)) {
    if (!table.emplace(id, v).second) throw Error(ErrorCode::io, path + ": duplicate id " + std::to_string(id));
  }
  std::vector<double> out;
  for (PointId a : A) {
    auto it = table.find(a);
    if (it == table.end()) throw Error(ErrorCode::io, path + ": no value for point " + std::to_string(a), {a});
    out.push_back(it->second);
  }
  return out;
}

Field read_field(const std::string& path, const SpacePtr& host) {
  if (ends_with(path, ".json")) return parse_expression(read_json(path), host, path);
  const Subset all = Subset::all(host->size());
  return Field::table(host, values_on(path, all));
}

Field parse_expression(const Json& node, const SpacePtr& host, const std::string& where) {
  if (node.is_number()) return Field::constant(host, node.get<double>());
  if (!node.is_object() || !node.contains("op") || !node["op"].is_string()) {
    throw Error(ErrorCode::io, where + ": expression must be a number or an object with 'op'");
  }
  const std::string op = node["op"].get<std::string>();
  if (op == "const") return Field::constant(host, json_number(node, "value", where));
  if (op == "coord") return Field::coordinate(host, static_cast<std::size_t>(json_number(node, "axis", where)));
  if (op == "dist") {
    if (!node.contains("set")) throw Error(ErrorCode::io, where + ": 'dist' needs a 'set'");
    return Field::distance_to(host, Subset(host->size(), id_array(node["set"], where + ".set")));
  }
  if (op == "table") {
    if (!node.contains("values")) throw Error(ErrorCode::io, where + ": 'table' needs 'values'");
    return Field::table(host, number_array(node["values"], where + ".values"));
  }
  if (op == "add" || op == "sub" || op == "mul" || op == "min" || op == "max") return binary_fold(node, host, where, op);
  if (op == "neg") return -unary_arg(node, host, where);
  if (op == "scale") return unary_arg(node, host, where).scaled(json_number(node, "factor", where));
  if (op == "clamp") {
    if (!node.contains("interval") || !node["interval"].is_string()) {
      throw Error(ErrorCode::io, where + ": 'clamp' needs an 'interval' string");
    }
    return unary_arg(node, host, where).clamped(Interval::parse(node["interval"].get<std::string>()));
  }
  if (op == "transport") {
    const std::string name = node.value("name", "");
    Transport t;
    if (name == "arctan") t = Transport::arctan();
    else if (name == "tan") t = Transport::tan();
    else if (name == "reciprocal") t = Transport::reciprocal();
    else if (name == "affine") t = Transport::affine(json_number(node, "alpha", where), json_number(node, "beta", where));
    else throw Error(ErrorCode::io, where + ": unknown transport '" + name + "'");
    return unary_arg(node, host, where).transported(t);
  }
  throw Error(ErrorCode::io, where + ": unknown op '" + op + "'");
}

LocalWitness read_witness(const std::string& path) {
  const Json j = read_json(path);
  if (!j.is_array()) throw Error(ErrorCode::io, path + ": witness must be an array");
  LocalWitness W;
  std::size_t i = 0;
  for (const auto& e : j) {
    const std::string where = path + "[" + std::to_string(i++) + "]";
    const double p = json_number(e, "p", where);
    if (p < 0 || p != std::floor(p)) throw Error(ErrorCode::io, where + ": 'p' must be a point id");
    W.entries.push_back({static_cast<PointId>(p), json_number(e, "delta", where), json_number(e, "K", where)});
  }
  return W;
}

CozeroCover read_cover(const std::string& path, const SpacePtr& host) {
  const Json j = read_json(path);
  if (!j.is_array()) throw Error(ErrorCode::io, path + ": cover must be an array of sets");
  CozeroCover cover{host, {}};
  std::size_t i = 0;
  for (const auto& s : j) {
    const std::string where = path + "[" + std::to_string(i++) + "]";
    if (s.contains("balls")) {
      std::vector<Ball> balls;
      for (const auto& b : s["balls"]) {
        const double c = json_number(b, "center", where);
        if (c < 0 || c != std::floor(c)) throw Error(ErrorCode::io, where + ": ball center must be a point id");
        balls.push_back({static_cast<PointId>(c), json_number(b, "radius", where)});
      }
      cover.witnesses.push_back(witness_from_balls(host, balls, s.value("slope", 1.0), s.value("cap", 1.0)));
    } else if (s.contains("values")) {
      cover.witnesses.push_back(Field::table(host, number_array(s["values"], where + ".values")));
    } else if (s.contains("field")) {
      cover.witnesses.push_back(parse_expression(s["field"], host, where + ".field"));
    } else {
      throw Error(ErrorCode::io, where + ": a set needs 'balls', 'values' or 'field'");
    }
  }
  return cover;
}

Json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

Json to_json(const Certificate& c) {
  Json out;
  out["kind"] = to_string(c.kind);
  out["pass"] = c.pass;
  out["worst_violation"] = number(c.worst_violation);
  out["tolerance"] = number(c.tolerance);
  out["witness"] = c.witness;
  Json metrics = Json::object();
  for (const auto& [k, v] : c.metrics) metrics[k] = number(v);
  out["metrics"] = metrics;
  out["notes"] = c.notes;
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace lipkit::io
