#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lipkit/lipkit.h"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string command;
  std::string check;  // certify
  std::string demo;
  std::string space, subset, values, witness, cover, lower, upper;
  std::optional<double> k;
  std::string interval;
  int grid_depth = 3;
  int n_max = 10;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  bool transported = false;
  std::string out_dir;
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Strips an optional backend prefix before checking the file exists.
void require_file(const std::string& flag, const std::string& spec) {
  if (spec.empty()) return;
  std::string path = spec;
  for (const char* prefix : {"matrix:", "points:", "graph:", "grid:"}) {
    if (path.rfind(prefix, 0) == 0) path = path.substr(std::string(prefix).size());
  }
  if (!fs::is_regular_file(path)) throw InputError(flag + ": no such file '" + path + "'");
}

Json resolved(const Config& c) {
  Json j;
  j["command"] = c.command;
  if (!c.check.empty()) j["check"] = c.check;
  if (!c.demo.empty()) j["fixture"] = c.demo;
  Json in;
  for (auto [name, v] : {std::pair{"space", &c.space}, {"subset", &c.subset}, {"values", &c.values},
                         {"witness", &c.witness}, {"cover", &c.cover}, {"lower", &c.lower}, {"upper", &c.upper}}) {
    in[name] = v->empty() ? Json(nullptr) : Json(*v);
  }
  j["inputs"] = in;
  j["k"] = c.k ? Json(*c.k) : Json(nullptr);
  j["interval"] = c.interval.empty() ? Json("real line") : Json(c.interval);
  j["grid_depth"] = c.grid_depth;
  j["n_max"] = c.n_max;
  j["seed"] = c.seed;
  j["tol"] = c.tol;
  j["modulus_mode"] = c.transported ? "transported" : "bounded";
  return j;
}

struct SpaceHandle {
  lk_space* ptr = nullptr;
  ~SpaceHandle() { lk_space_free(ptr); }
};

struct ResultHandle {
  lk_result* ptr = nullptr;
  ~ResultHandle() { lk_result_free(ptr); }
};

[[noreturn]] void fail(lk_status s) {
  std::string msg = lk_last_error();
  std::vector<size_t> w(lk_last_error_witness(nullptr, 0));
  lk_last_error_witness(w.data(), w.size());
  if (!w.empty()) {
    msg += " (witness:";
    for (size_t p : w) msg += " " + std::to_string(p);
    msg += ")";
  }
  throw InputError(msg + " [status " + std::to_string(static_cast<int>(s)) + "]");
}

void write_outputs(const Config& c, const lk_result* r) {
  const fs::path dir = c.out_dir.empty() ? fs::path(".") : fs::path(c.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("--out-dir: cannot create '" + dir.string() + "'");

  std::ofstream csv(dir / "values.csv", std::ios::binary);
  const size_t cols = lk_result_columns(r), rows = lk_result_rows(r);
  for (size_t j = 0; j < cols; ++j) csv << (j ? "," : "") << lk_result_column_name(r, j);
  csv << '\n';
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) csv << (j ? "," : "") << fmt(lk_result_column(r, j)[i]);
    csv << '\n';
  }

  Json doc;
  doc["tool"] = "lipkit";
  doc["version"] = lk_version();
  doc["config"] = resolved(c);
  const Json body = Json::parse(lk_result_certificate(r));
  for (auto it = body.begin(); it != body.end(); ++it) doc[it.key()] = it.value();
  std::ofstream(dir / "certificate.json", std::ios::binary) << doc.dump(2) << '\n';
  if (!csv || !fs::exists(dir / "certificate.json")) throw InputError("failed writing outputs to " + dir.string());
}

void print_table(const lk_result* r) {
  const size_t cols = lk_result_columns(r), rows = lk_result_rows(r);
  for (size_t j = 0; j < cols; ++j) std::printf("%s%22s", j ? " " : "", lk_result_column_name(r, j));
  std::printf("\n");
  for (size_t i = 0; i < rows; ++i) {
    for (size_t j = 0; j < cols; ++j) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12g", lk_result_column(r, j)[i]);
      std::printf("%s%22s", j ? " " : "", buf);
    }
    std::printf("\n");
  }
}

int run(const Config& c) {
  if (!(c.tol >= 1e-12 && c.tol <= 1e-3)) throw InputError("--tol must lie in [1e-12, 1e-3]");
  if (c.grid_depth < 0 || c.grid_depth > 20) throw InputError("--grid-depth must lie in [0, 20]");
  if (c.n_max < 1 || c.n_max > 18) throw InputError("--n-max must lie in [1, 18]");
  if (c.k && (!std::isfinite(*c.k) || *c.k < 0)) throw InputError("--k must be finite and >= 0");

  ResultHandle result;
  if (c.command == "demo") {
    if (lk_status s = lk_demo(c.demo.c_str(), &result.ptr)) fail(s);
    std::printf("# %s\n", c.demo.c_str());
    print_table(result.ptr);
    std::printf("certificate: %s\n", lk_result_passed(result.ptr) ? "pass" : "FAIL");
    if (!c.out_dir.empty()) write_outputs(c, result.ptr);
    return lk_result_passed(result.ptr) ? 0 : 2;
  }

  if (c.space.empty()) throw InputError("--space is required");
  require_file("--space", c.space);
  require_file("--subset", c.subset);
  require_file("--values", c.values);
  require_file("--witness", c.witness);
  require_file("--cover", c.cover);
  require_file("--lower", c.lower);
  require_file("--upper", c.upper);

  SpaceHandle space;
  if (lk_status s = lk_space_load(c.space.c_str(), &space.ptr)) fail(s);

  lk_inputs in{};
  auto opt = [](const std::string& s) { return s.empty() ? nullptr : s.c_str(); };
  in.subset = opt(c.subset);
  in.values = opt(c.values);
  in.witness = opt(c.witness);
  in.cover = opt(c.cover);
  in.lower = opt(c.lower);
  in.upper = opt(c.upper);

  lk_params p;
  lk_params_init(&p);
  if (c.k) p.k = *c.k;
  p.interval = opt(c.interval);
  p.grid_depth = c.grid_depth;
  p.n_max = c.n_max;
  p.seed = c.seed;
  p.tol = c.tol;
  p.transported = c.transported ? 1 : 0;

  lk_status s = LK_OK;
  const std::string& cmd = c.command;
  if (cmd == "certify-metric") s = lk_validate_metric(space.ptr, &p, &result.ptr);
  else if (cmd == "extend") s = lk_extend(space.ptr, &in, &p, &result.ptr);
  else if (cmd == "extend-pointwise") s = lk_extend_pointwise(space.ptr, &in, &p, &result.ptr);
  else if (cmd == "pou") s = lk_pou(space.ptr, &in, &p, &result.ptr);
  else if (cmd == "decompose") s = lk_decompose(space.ptr, &in, &p, &result.ptr);
  else if (cmd == "modulus") s = lk_modulus(space.ptr, &in, &p, &result.ptr);
  else if (cmd == "extend-local") s = lk_extend_local(space.ptr, &in, &p, &result.ptr);
  else if (cmd == "select") s = lk_select(space.ptr, &in, &p, &result.ptr);
  else if (cmd == "insert") s = lk_insert(space.ptr, &in, &p, &result.ptr);
  else if (cmd == "approx") s = lk_approx(space.ptr, &in, &p, &result.ptr);
  else if (cmd == "certify") s = lk_certify(c.check.c_str(), space.ptr, &in, &p, &result.ptr);
  else throw InputError("unknown command '" + cmd + "'");
  if (s != LK_OK) fail(s);

  write_outputs(c, result.ptr);
  const bool pass = lk_result_passed(result.ptr);
  std::fprintf(stderr, "%s: certificate %s\n", cmd.c_str(), pass ? "pass" : "FAIL");
  return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz extension, partition of unity and selection toolkit"};
  app.set_version_flag("--version", lk_version());
  app.require_subcommand(1, 1);
  Config c;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--space", c.space, "metric space file (optionally prefixed matrix:/points:/graph:/grid:)");
    sub->add_option("--subset", c.subset, "JSON array of point ids");
    sub->add_option("--values", c.values, "id,value CSV or JSON expression");
    sub->add_option("--witness", c.witness, "local witness JSON, or id,L CSV for extend-pointwise");
    sub->add_option("--cover", c.cover, "cover JSON");
    sub->add_option("--lower", c.lower, "lower envelope g");
    sub->add_option("--upper", c.upper, "upper envelope h");
    sub->add_option("--k", c.k, "Lipschitz constant");
    sub->add_option("--interval", c.interval, "lo,hi[,open|closed,open|closed]");
    sub->add_option("--grid-depth", c.grid_depth, "starting dyadic depth");
    sub->add_option("--n-max", c.n_max, "approximation steps");
    sub->add_option("--seed", c.seed, "random seed");
    sub->add_option("--tol", c.tol, "certificate tolerance in [1e-12, 1e-3]");
    sub->add_flag("--transported", c.transported, "modulus: transported mode");
    sub->add_option("--out-dir", c.out_dir, "output directory");
  };

  const std::pair<const char*, const char*> commands[] = {
      {"certify-metric", "check the metric axioms"},
      {"extend", "K-Lipschitz extension from a subset, optionally into an interval"},
      {"extend-pointwise", "extension with per-point constants"},
      {"pou", "locally finite partition of unity subordinated to a cover"},
      {"decompose", "split a 1-Lipschitz field into nonexpansive pieces"},
      {"modulus", "local modulus and its Lipschitz majorant"},
      {"extend-local", "extension of a locally Lipschitz field"},
      {"select", "locally Lipschitz selection between g and h"},
      {"insert", "insertion between g and h agreeing with data on a subset"},
      {"approx", "strictly decreasing Lipschitz approximations from above"},
  };
  for (const auto& [name, help] : commands) common(app.add_subcommand(name, help));
  auto* certify = app.add_subcommand("certify", "run one oracle on supplied data");
  certify->add_option("check", c.check, "lipschitz | local-witness | pou | sandwich | random-extension")->required();
  common(certify);
  auto* demo = app.add_subcommand("demo", "run a built-in fixture");
  demo->add_option("fixture", c.demo, "sin-inv-t | cusp-curve | reciprocal-staircase | dowker-step")->required();
  demo->add_option("--out-dir", c.out_dir, "also write values.csv and certificate.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    return run(c);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "lipkit: error: %s\n", e.what());
    return 1;
  }
}
