// Copyright 2026 The qnet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver. Talks to the core exclusively through the C interface
// in qnet/qnet.h. Exit codes: 0 success, 1 validation/runtime failure,
// 2 configuration error (bad flags, bad config file).

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qnet/qnet.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

// Owning wrapper so every early return releases its handles.
template <typename T, void (*FreeFn)(T*)>
class Handle {
 public:
  Handle() = default;
  ~Handle() { FreeFn(ptr_); }
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  T** slot() {
    FreeFn(ptr_);
    ptr_ = nullptr;
    return &ptr_;
  }
  T* get() const { return ptr_; }
  explicit operator bool() const { return ptr_ != nullptr; }

 private:
  T* ptr_ = nullptr;
};

using GraphHandle = Handle<qnet_graph, qnet_graph_free>;
using ResourcesHandle = Handle<qnet_resources, qnet_resources_free>;
using CurveHandle = Handle<qnet_curve, qnet_curve_free>;
using BackboneHandle = Handle<qnet_backbone, qnet_backbone_free>;
using HysteresisHandle = Handle<qnet_hysteresis, qnet_hysteresis_free>;

// Reports a failed call on stderr; true when the call succeeded.
bool check(qnet_status status) {
  if (status == QNET_OK) return true;
  std::fprintf(stderr, "error: %s\n", qnet_last_error());
  return false;
}

qnet_topology topology_from(const std::string& s) {
  if (s == "er") return QNET_TOPOLOGY_ER;
  if (s == "ba") return QNET_TOPOLOGY_BA;
  return QNET_TOPOLOGY_RGG;
}

qnet_dist dist_from(const std::string& s) {
  if (s == "exp") return QNET_DIST_EXPONENTIAL;
  if (s == "uniform") return QNET_DIST_UNIFORM;
  if (s == "poisson") return QNET_DIST_POISSON;
  return QNET_DIST_GAUSSIAN;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::fprintf(stderr, "error: cannot open %s for writing\n", path.c_str());
    return false;
  }
  out << content;
  out.close();
  if (!out) {
    std::fprintf(stderr, "error: failed writing %s\n", path.c_str());
    return false;
  }
  return true;
}

bool write_json_file(const std::string& path, const nlohmann::json& j) {
  return write_text_file(path, j.dump(2) + "\n");
}

// Numbers become JSON null when not finite (alpha_c = +inf, absent bounds).
nlohmann::json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

uint64_t fnv1a64(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
  std::string kind;
  uint32_t nodes = 0;
  double degree = 0.0;
  uint64_t seed = 1;
  std::string out;
};

int run_generate(const GenerateArgs& a) {
  GraphHandle g;
  if (!check(qnet_generate(topology_from(a.kind), a.nodes, a.degree, a.seed, g.slot()))) {
    return kExitFailure;
  }
  if (!check(qnet_graph_write(g.get(), a.out.c_str()))) return kExitFailure;
  std::printf("wrote %s: %u nodes, %" PRIu64 " edges\n", a.out.c_str(),
              qnet_graph_node_count(g.get()), qnet_graph_edge_count(g.get()));
  return kExitOk;
}

// ------------------------------------------------------------------ assign

struct AssignArgs {
  std::string dist;
  double mean = 0.0;
  double stddev = 0.0;
  uint64_t seed = 2;
  std::string graph;
  std::string out;
};

int run_assign(const AssignArgs& a) {
  GraphHandle g;
  if (!check(qnet_graph_read(a.graph.c_str(), g.slot()))) return kExitFailure;
  ResourcesHandle r;
  if (!check(qnet_resources_sample(g.get(), dist_from(a.dist), a.mean, a.stddev, a.seed,
                                   r.slot()))) {
    return kExitFailure;
  }
  if (!check(qnet_resources_write(g.get(), r.get(), a.out.c_str()))) return kExitFailure;
  std::printf("wrote %s: %" PRIu64 " edge resources\n", a.out.c_str(),
              qnet_resources_count(r.get()));
  return kExitOk;
}

// --------------------------------------------------------------- percolate

struct PercolateArgs {
  std::string graph;
  double grid_max = -1.0;  // < 0: automatic scan
  double grid_step = 0.02;
  uint32_t runs = 100;
  uint64_t seed = 3;
  unsigned threads = 0;
  std::string out;
};

// Measures the percolation curve for a graph file; shared by several
// subcommands. Returns false after printing the error.
bool measure_from_file(const std::string& graph_path, double grid_max, double grid_step,
                       uint32_t runs, uint64_t seed, unsigned threads, GraphHandle* g,
                       CurveHandle* curve) {
  if (!check(qnet_graph_read(graph_path.c_str(), g->slot()))) return false;
  double max_x = grid_max;
  if (max_x < 0.0) {
    if (!check(qnet_default_grid_max(g->get(), seed, &max_x))) return false;
  }
  return check(
      qnet_measure_curve(g->get(), max_x, grid_step, runs, seed, threads, curve->slot()));
}

int run_percolate(const PercolateArgs& a) {
  GraphHandle g;
  CurveHandle curve;
  if (!measure_from_file(a.graph, a.grid_max, a.grid_step, a.runs, a.seed, a.threads, &g,
                         &curve)) {
    return kExitFailure;
  }
  if (!check(qnet_curve_write_csv(curve.get(), a.out.c_str()))) return kExitFailure;
  std::printf("wrote %s: %zu grid points, %u runs each\n", a.out.c_str(),
              qnet_curve_size(curve.get()), qnet_curve_runs(curve.get()));
  return kExitOk;
}

// ---------------------------------------------------------------- backbone

struct BackboneArgs {
  std::string graph;
  std::string resources;
  double alpha = 1.0;
  std::string out;
};

int run_backbone(const BackboneArgs& a) {
  GraphHandle g;
  if (!check(qnet_graph_read(a.graph.c_str(), g.slot()))) return kExitFailure;
  ResourcesHandle r;
  if (!check(qnet_resources_read(g.get(), a.resources.c_str(), r.slot()))) return kExitFailure;
  BackboneHandle b;
  if (!check(qnet_compute_backbone(g.get(), r.get(), a.alpha, b.slot()))) return kExitFailure;

  std::vector<uint32_t> nodes(qnet_backbone_size(b.get()));
  size_t written = 0;
  if (!nodes.empty() &&
      !check(qnet_backbone_nodes(b.get(), nodes.data(), nodes.size(), &written))) {
    return kExitFailure;
  }
  nodes.resize(written);

  nlohmann::json j;
  j["l_fixed"] = qnet_backbone_l_fixed(b.get());
  j["n_fixed"] = qnet_backbone_n_fixed(b.get());
  j["backbone_size"] = qnet_backbone_size(b.get());
  j["nodes"] = nodes;
  if (!write_json_file(a.out, j)) return kExitFailure;
  std::printf("wrote %s: backbone of %u nodes at l_fixed=%g\n", a.out.c_str(),
              qnet_backbone_size(b.get()), qnet_backbone_l_fixed(b.get()));
  return kExitOk;
}

// -------------------------------------------------------------- hysteresis

struct HysteresisArgs {
  std::string graph;
  std::string curve;
  std::string dist = "exp";
  double mean = 0.0;
  double stddev = 0.0;
  double alpha = 1.0;
  double y_step = 0.02;
  double y_max = -1.0;  // < 0: full curve range
  // curve measurement (only with --graph)
  double grid_max = -1.0;
  double grid_step = 0.02;
  uint32_t runs = 100;
  uint64_t seed = 3;
  unsigned threads = 0;
  std::string out;
};

bool sweep_hysteresis(const CurveHandle& curve, const std::string& dist, double mean,
                      double stddev, double alpha, double y_max, double y_step,
                      HysteresisHandle* h) {
  double max_y = y_max;
  if (max_y < 0.0) {
    size_t last = qnet_curve_size(curve.get());
    if (last == 0 || !check(qnet_curve_point(curve.get(), last - 1, &max_y, nullptr, nullptr,
                                             nullptr, nullptr))) {
      return false;
    }
  }
  return check(qnet_hysteresis_sweep(curve.get(), dist_from(dist), mean, stddev, alpha, max_y,
                                     y_step, h->slot()));
}

int run_hysteresis(const HysteresisArgs& a) {
  if (a.graph.empty() == a.curve.empty()) {
    std::fprintf(stderr, "error: pass exactly one of --graph or --curve\n");
    return kExitConfig;
  }
  GraphHandle g;
  CurveHandle curve;
  if (!a.curve.empty()) {
    if (!check(qnet_curve_read_csv(a.curve.c_str(), curve.slot()))) return kExitFailure;
  } else if (!measure_from_file(a.graph, a.grid_max, a.grid_step, a.runs, a.seed, a.threads,
                                &g, &curve)) {
    return kExitFailure;
  }
  HysteresisHandle h;
  if (!sweep_hysteresis(curve, a.dist, a.mean, a.stddev, a.alpha, a.y_max, a.y_step, &h)) {
    return kExitFailure;
  }
  if (!check(qnet_hysteresis_write_csv(h.get(), a.out.c_str()))) return kExitFailure;

  double yc1 = std::nan(""), yc2 = std::nan("");
  qnet_hysteresis_yc1(h.get(), &yc1);
  qnet_hysteresis_yc2(h.get(), &yc2);
  std::printf("wrote %s: %zu rows, y_c1=%g y_c2=%g discontinuous=%s\n", a.out.c_str(),
              qnet_hysteresis_rows(h.get()), yc1, yc2,
              qnet_hysteresis_discontinuous(h.get()) ? "true" : "false");
  return kExitOk;
}

// ----------------------------------------------------------------- metrics

struct MetricsArgs {
  std::string graph;
  std::string curve;
  std::string analytic;  // "er"
  uint32_t nodes = 0;
  double degree = 0.0;
  double alpha = 1.0;
  double mean = 0.0;
  double threshold = 0.0;  // 0: library default (0.01)
  double grid_max = -1.0;
  double grid_step = 0.02;
  uint32_t runs = 100;
  uint64_t seed = 3;
  unsigned threads = 0;
  std::string out;
};

// Curve built from the asymptotic diluted-ER diameter formula plus the exact
// giant-fraction solution S/N = 1 - c*/c_eff (0 below the transition). Grid
// points inside the singular window of the formula are skipped.
bool build_analytic_curve(uint32_t nodes, double degree, double grid_max, double grid_step,
                          CurveHandle* out) {
  if (nodes < 2 || degree <= 0.0 || grid_step <= 0.0) {
    std::fprintf(stderr, "error: analytic curve needs nodes >= 2, degree > 0, grid step > 0\n");
    return false;
  }
  double max_x = grid_max;
  if (max_x < 0.0) max_x = std::log(degree) + 1.0;
  std::vector<double> t_values, d_values, s_values;
  for (double t = 0.0;; t += grid_step) {
    double c_eff = degree * std::exp(-t);
    double d = 0.0;
    if (qnet_er_diameter(nodes, degree, t, &d) == QNET_OK) {
      double s_frac = 0.0;
      if (c_eff > 1.0) {
        double cs = 0.0;
        if (!check(qnet_cstar(c_eff, &cs))) return false;
        s_frac = 1.0 - cs / c_eff;
      }
      t_values.push_back(t);
      d_values.push_back(d);
      s_values.push_back(s_frac * nodes);
    }
    if (t >= max_x) break;
  }
  return check(qnet_curve_create(t_values.data(), d_values.data(), s_values.data(),
                                 t_values.size(), 0, nodes, out->slot()));
}

int run_metrics(const MetricsArgs& a) {
  int sources = int(!a.graph.empty()) + int(!a.curve.empty()) + int(!a.analytic.empty());
  if (sources != 1) {
    std::fprintf(stderr, "error: pass exactly one of --graph, --curve, or --analytic\n");
    return kExitConfig;
  }
  if (!a.analytic.empty() && (a.nodes == 0 || a.degree <= 0.0)) {
    std::fprintf(stderr, "error: --analytic requires --nodes and --degree\n");
    return kExitConfig;
  }

  GraphHandle g;
  CurveHandle curve;
  if (!a.curve.empty()) {
    if (!check(qnet_curve_read_csv(a.curve.c_str(), curve.slot()))) return kExitFailure;
  } else if (!a.graph.empty()) {
    if (!measure_from_file(a.graph, a.grid_max, a.grid_step, a.runs, a.seed, a.threads, &g,
                           &curve)) {
      return kExitFailure;
    }
  } else if (!build_analytic_curve(a.nodes, a.degree, a.grid_max, a.grid_step, &curve)) {
    return kExitFailure;
  }

  double y_c3 = 0.0, dmax = 0.0, n_c = 0.0, alpha_c = 0.0, y_c1 = 0.0;
  int broken = 0;
  if (!check(qnet_estimate_yc3(curve.get(), a.threshold, &y_c3))) return kExitFailure;
  if (!check(qnet_curve_d_max(curve.get(), &dmax))) return kExitFailure;
  if (!check(qnet_n_critical(curve.get(), a.alpha, y_c3, &n_c))) return kExitFailure;
  if (!check(qnet_alpha_critical(curve.get(), y_c3, &alpha_c))) return kExitFailure;
  if (!check(qnet_yc1_from_yc3(y_c3, dmax, a.alpha, a.mean, &y_c1, &broken))) {
    return kExitFailure;
  }

  nlohmann::json j;
  j["y_c3"] = y_c3;
  j["D_max"] = dmax;
  j["n_c"] = n_c;
  j["alpha_c"] = json_number(alpha_c);  // null: diameter never increases
  j["y_c1"] = y_c1;
  j["y_c1_functionally_broken"] = broken != 0;
  if (!write_json_file(a.out, j)) return kExitFailure;
  std::printf("wrote %s\n", a.out.c_str());
  return kExitOk;
}

// ------------------------------------------------------------ phase-diagram

struct PhaseDiagramArgs {
  std::string sweep;  // only "mean_n"
  std::string graph;
  std::string kind;
  uint32_t nodes = 0;
  double degree = 0.0;
  uint64_t graph_seed = 1;
  std::string dist = "exp";
  double stddev = 0.0;
  double alpha = 1.0;
  double factor_min = 1.0;
  double factor_max = 20.0;
  uint32_t factor_steps = 20;
  double y_step = 0.02;
  double threshold = 0.0;
  double grid_max = -1.0;
  double grid_step = 0.02;
  uint32_t runs = 100;
  uint64_t seed = 3;
  unsigned threads = 0;
  std::string out;
};

int run_phase_diagram(const PhaseDiagramArgs& a) {
  bool have_file = !a.graph.empty();
  bool have_params = !a.kind.empty();
  if (have_file == have_params) {
    std::fprintf(stderr,
                 "error: pass exactly one of --graph or --kind/--nodes/--degree\n");
    return kExitConfig;
  }
  if (have_params && (a.nodes < 2 || a.degree <= 0.0)) {
    std::fprintf(stderr, "error: --kind requires --nodes >= 2 and --degree > 0\n");
    return kExitConfig;
  }
  if (a.factor_steps < 2 || a.factor_max <= a.factor_min) {
    std::fprintf(stderr, "error: sweep needs factor-max > factor-min and >= 2 steps\n");
    return kExitConfig;
  }

  GraphHandle g;
  if (have_file) {
    if (!check(qnet_graph_read(a.graph.c_str(), g.slot()))) return kExitFailure;
  } else if (!check(qnet_generate(topology_from(a.kind), a.nodes, a.degree, a.graph_seed,
                                  g.slot()))) {
    return kExitFailure;
  }

  double max_x = a.grid_max;
  if (max_x < 0.0 && !check(qnet_default_grid_max(g.get(), a.seed, &max_x))) {
    return kExitFailure;
  }
  CurveHandle curve;
  if (!check(qnet_measure_curve(g.get(), max_x, a.grid_step, a.runs, a.seed, a.threads,
                                curve.slot()))) {
    return kExitFailure;
  }

  double y_c3 = 0.0;
  if (!check(qnet_estimate_yc3(curve.get(), a.threshold, &y_c3))) return kExitFailure;
  double log_n = std::log(double(qnet_graph_node_count(g.get())));

  std::string csv = "mean_n_over_lnN,y_c1,y_c2,y_c3\n";
  char row[256];
  for (uint32_t k = 0; k < a.factor_steps; ++k) {
    double f = a.factor_min +
               (a.factor_max - a.factor_min) * double(k) / double(a.factor_steps - 1);
    double mean = f * log_n;
    HysteresisHandle h;
    if (!sweep_hysteresis(curve, a.dist, mean, a.stddev, a.alpha, -1.0, a.y_step, &h)) {
      return kExitFailure;
    }
    double yc1 = std::nan(""), yc2 = std::nan("");
    qnet_hysteresis_yc1(h.get(), &yc1);
    qnet_hysteresis_yc2(h.get(), &yc2);
    std::snprintf(row, sizeof row, "%.10g,%.10g,%.10g,%.10g\n", f, yc1, yc2, y_c3);
    csv += row;
  }
  if (!write_text_file(a.out, csv)) return kExitFailure;
  std::printf("wrote %s: %u sweep rows\n", a.out.c_str(), a.factor_steps);
  return kExitOk;
}

// ---------------------------------------------------------------- validate

struct ValidateArgs {
  std::string graph;
  std::string resources;
  std::string curve;
};

int run_validate(const ValidateArgs& a) {
  bool ok = true;
  GraphHandle g;
  if (qnet_graph_read(a.graph.c_str(), g.slot()) == QNET_OK) {
    std::printf("ok: %s (%u nodes, %" PRIu64 " edges)\n", a.graph.c_str(),
                qnet_graph_node_count(g.get()), qnet_graph_edge_count(g.get()));
  } else {
    std::printf("FAIL: %s: %s\n", a.graph.c_str(), qnet_last_error());
    ok = false;
  }
  if (!a.resources.empty()) {
    if (!g) {
      std::printf("FAIL: %s: graph unavailable, alignment not checked\n", a.resources.c_str());
      ok = false;
    } else {
      ResourcesHandle r;
      if (qnet_resources_read(g.get(), a.resources.c_str(), r.slot()) == QNET_OK) {
        std::printf("ok: %s (%" PRIu64 " edge resources)\n", a.resources.c_str(),
                    qnet_resources_count(r.get()));
      } else {
        std::printf("FAIL: %s: %s\n", a.resources.c_str(), qnet_last_error());
        ok = false;
      }
    }
  }
  if (!a.curve.empty()) {
    CurveHandle curve;
    if (qnet_curve_read_csv(a.curve.c_str(), curve.slot()) == QNET_OK) {
      std::printf("ok: %s (%zu grid points)\n", a.curve.c_str(), qnet_curve_size(curve.get()));
    } else {
      std::printf("FAIL: %s: %s\n", a.curve.c_str(), qnet_last_error());
      ok = false;
    }
  }
  return ok ? kExitOk : kExitFailure;
}

// -------------------------------------------------------------- experiment

// Resolved experiment configuration; echo holds the canonical key=value view
// (defaults included) that is embedded in the manifest and hashed.
struct ExperimentConfig {
  std::string topology;
  uint32_t nodes = 0;
  double degree = 0.0;
  uint64_t graph_seed = 1;
  std::string dist = "exp";
  double mean = 0.0;
  double stddev = 0.0;
  double alpha = 1.0;
  uint64_t resource_seed = 2;
  uint64_t percolation_seed = 3;
  uint32_t runs = 100;
  double grid_step = 0.02;
  double grid_max = -1.0;  // < 0: auto
  double y_step = 0.02;
  double y_max = -1.0;  // < 0: full curve range
  double threshold = 0.01;
  unsigned threads = 0;
  std::string out_dir;
  std::map<std::string, std::string> echo;
};

bool parse_kv_file(const std::string& path, std::map<std::string, std::string>* kv,
                   std::string* error) {
  std::ifstream in(path);
  if (!in) {
    *error = "cannot open config file " + path;
    return false;
  }
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (size_t hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    size_t end = line.find_last_not_of(" \t\r");
    std::string trimmed = line.substr(begin, end - begin + 1);
    size_t eq = trimmed.find('=');
    if (eq == std::string::npos || eq == 0) {
      *error = path + ":" + std::to_string(line_no) + ": expected key=value";
      return false;
    }
    std::string key = trimmed.substr(0, trimmed.find_last_not_of(" \t", eq - 1) + 1);
    size_t value_begin = trimmed.find_first_not_of(" \t", eq + 1);
    std::string value =
        value_begin == std::string::npos ? "" : trimmed.substr(value_begin);
    if (value.empty()) {
      *error = path + ":" + std::to_string(line_no) + ": empty value for '" + key + "'";
      return false;
    }
    if (!kv->emplace(key, value).second) {
      *error = path + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'";
      return false;
    }
  }
  return true;
}

bool parse_number(const std::string& value, double* out) {
  char* end = nullptr;
  *out = std::strtod(value.c_str(), &end);
  return end == value.c_str() + value.size() && std::isfinite(*out);
}

bool parse_unsigned(const std::string& value, uint64_t* out) {
  char* end = nullptr;
  unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end != value.c_str() + value.size() || value.empty() || value[0] == '-') return false;
  *out = v;
  return true;
}

// Builds the resolved config from the key=value file. Messages name the
// offending key; any problem is a configuration error (exit 2).
bool resolve_experiment(const std::map<std::string, std::string>& kv, ExperimentConfig* cfg,
                        std::string* error) {
  static const std::vector<std::string> known = {
      "topology", "nodes", "degree", "graph_seed", "dist", "mean", "mean_lnN_factor",
      "stddev", "alpha", "resource_seed", "percolation_seed", "runs", "grid_step",
      "grid_max", "y_step", "y_max", "threshold", "threads", "out_dir"};
  for (const auto& [key, value] : kv) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      *error = "unknown config key '" + key + "'";
      return false;
    }
  }
  auto get = [&kv](const char* key) -> const std::string* {
    auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };
  auto need_number = [&](const char* key, double* out) {
    const std::string* v = get(key);
    if (!v) return true;
    if (!parse_number(*v, out)) {
      *error = "config key '" + std::string(key) + "' is not a number: " + *v;
      return false;
    }
    return true;
  };
  auto need_unsigned = [&](const char* key, uint64_t* out) {
    const std::string* v = get(key);
    if (!v) return true;
    if (!parse_unsigned(*v, out)) {
      *error = "config key '" + std::string(key) + "' is not a non-negative integer: " + *v;
      return false;
    }
    return true;
  };

  const std::string* topology = get("topology");
  if (!topology || (*topology != "er" && *topology != "ba" && *topology != "rgg")) {
    *error = "config key 'topology' must be one of er|ba|rgg";
    return false;
  }
  cfg->topology = *topology;

  uint64_t nodes = 0;
  if (!get("nodes") || !need_unsigned("nodes", &nodes) || nodes < 2 || nodes > UINT32_MAX) {
    if (error->empty()) *error = "config key 'nodes' must be an integer >= 2";
    return false;
  }
  cfg->nodes = uint32_t(nodes);

  if (!get("degree") || !need_number("degree", &cfg->degree) || cfg->degree <= 0.0) {
    if (error->empty()) *error = "config key 'degree' must be a positive number";
    return false;
  }

  if (const std::string* dist = get("dist")) {
    if (*dist != "exp" && *dist != "uniform" && *dist != "poisson" && *dist != "gauss") {
      *error = "config key 'dist' must be one of exp|uniform|poisson|gauss";
      return false;
    }
    cfg->dist = *dist;
  }

  const std::string* mean = get("mean");
  const std::string* factor = get("mean_lnN_factor");
  if (!!mean == !!factor) {
    *error = "config needs exactly one of 'mean' or 'mean_lnN_factor'";
    return false;
  }
  if (!need_number("alpha", &cfg->alpha) || cfg->alpha <= 0.0) {
    if (error->empty()) *error = "config key 'alpha' must be a positive number";
    return false;
  }
  if (mean) {
    if (!need_number("mean", &cfg->mean) || cfg->mean <= 0.0) {
      if (error->empty()) *error = "config key 'mean' must be a positive number";
      return false;
    }
  } else {
    double f = 0.0;
    if (!need_number("mean_lnN_factor", &f) || f <= 0.0) {
      if (error->empty()) *error = "config key 'mean_lnN_factor' must be a positive number";
      return false;
    }
    // mean resources scale (f ln N)^alpha, matching the hysteresis recipes.
    cfg->mean = std::pow(f * std::log(double(cfg->nodes)), cfg->alpha);
  }

  if (!need_number("stddev", &cfg->stddev)) return false;
  uint64_t runs = cfg->runs;
  if (!need_unsigned("runs", &runs) || runs == 0 || runs > UINT32_MAX) {
    if (error->empty()) *error = "config key 'runs' must be a positive integer";
    return false;
  }
  cfg->runs = uint32_t(runs);
  if (!need_unsigned("graph_seed", &cfg->graph_seed)) return false;
  if (!need_unsigned("resource_seed", &cfg->resource_seed)) return false;
  if (!need_unsigned("percolation_seed", &cfg->percolation_seed)) return false;
  uint64_t threads = cfg->threads;
  if (!need_unsigned("threads", &threads) || threads > 4096) {
    if (error->empty()) *error = "config key 'threads' must be a small non-negative integer";
    return false;
  }
  cfg->threads = unsigned(threads);
  if (!need_number("grid_step", &cfg->grid_step) || cfg->grid_step <= 0.0) {
    if (error->empty()) *error = "config key 'grid_step' must be a positive number";
    return false;
  }
  cfg->y_step = cfg->grid_step;
  if (!need_number("y_step", &cfg->y_step) || cfg->y_step <= 0.0) {
    if (error->empty()) *error = "config key 'y_step' must be a positive number";
    return false;
  }
  if (!need_number("threshold", &cfg->threshold) || cfg->threshold <= 0.0 ||
      cfg->threshold >= 1.0) {
    if (error->empty()) *error = "config key 'threshold' must lie in (0, 1)";
    return false;
  }
  if (const std::string* v = get("grid_max")) {
    if (*v != "auto" && (!parse_number(*v, &cfg->grid_max) || cfg->grid_max <= 0.0)) {
      *error = "config key 'grid_max' must be 'auto' or a positive number";
      return false;
    }
  }
  if (const std::string* v = get("y_max")) {
    if (*v != "auto" && (!parse_number(*v, &cfg->y_max) || cfg->y_max <= 0.0)) {
      *error = "config key 'y_max' must be 'auto' or a positive number";
      return false;
    }
  }
  if (const std::string* v = get("out_dir")) cfg->out_dir = *v;

  // Canonical echo: every key, defaults resolved, numbers in %.17g.
  cfg->echo["topology"] = cfg->topology;
  cfg->echo["nodes"] = std::to_string(cfg->nodes);
  cfg->echo["degree"] = format_double(cfg->degree);
  cfg->echo["graph_seed"] = std::to_string(cfg->graph_seed);
  cfg->echo["dist"] = cfg->dist;
  cfg->echo["mean"] = format_double(cfg->mean);
  if (factor) cfg->echo["mean_lnN_factor"] = format_double(std::stod(*factor));
  cfg->echo["stddev"] = format_double(cfg->stddev);
  cfg->echo["alpha"] = format_double(cfg->alpha);
  cfg->echo["resource_seed"] = std::to_string(cfg->resource_seed);
  cfg->echo["percolation_seed"] = std::to_string(cfg->percolation_seed);
  cfg->echo["runs"] = std::to_string(cfg->runs);
  cfg->echo["grid_step"] = format_double(cfg->grid_step);
  cfg->echo["grid_max"] = cfg->grid_max < 0.0 ? "auto" : format_double(cfg->grid_max);
  cfg->echo["y_step"] = format_double(cfg->y_step);
  cfg->echo["y_max"] = cfg->y_max < 0.0 ? "auto" : format_double(cfg->y_max);
  cfg->echo["threshold"] = format_double(cfg->threshold);
  cfg->echo["threads"] = std::to_string(cfg->threads);
  return true;
}

constexpr char kPlotScript[] =
    "# Plot recipe for the artifacts in this directory. Usage: gnuplot plot.gp\n"
    "set datafile separator ','\n"
    "set term pngcairo size 1000,700\n"
    "\n"
    "set output 'percolation.png'\n"
    "set xlabel 'x + y'\n"
    "set ylabel 'mean largest-component diameter D'\n"
    "set y2label 'mean largest-component size S'\n"
    "set y2tics\n"
    "plot 'percolation.csv' every ::1 using 1:2 with lines lw 2 title 'D', \\\n"
    "     'percolation.csv' every ::1 using 1:3 axes x1y2 with lines lw 2 title 'S'\n"
    "\n"
    "set output 'hysteresis.png'\n"
    "set xlabel 'dilution y'\n"
    "set ylabel 'backbone size at the fixed point'\n"
    "unset y2label\n"
    "unset y2tics\n"
    "plot 'hysteresis.csv' every ::1 using 1:4 with linespoints title 'supercritical', \\\n"
    "     'hysteresis.csv' every ::1 using 1:5 with linespoints title 'subcritical'\n";

struct ExperimentArgs {
  std::string config;
  std::string out_dir;
};

int run_experiment(const ExperimentArgs& args) {
  std::map<std::string, std::string> kv;
  std::string error;
  if (!parse_kv_file(args.config, &kv, &error)) {
    std::fprintf(stderr, "error: %s\n", error.c_str());
    return kExitConfig;
  }
  ExperimentConfig cfg;
  if (!resolve_experiment(kv, &cfg, &error)) {
    std::fprintf(stderr, "error: %s\n", error.c_str());
    return kExitConfig;
  }
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (cfg.out_dir.empty()) {
    std::fprintf(stderr, "error: output directory required (--out-dir or out_dir key)\n");
    return kExitConfig;
  }
  // The destination directory is plumbing, not part of the experiment: the
  // echoed config and its hash identify the computation alone, so re-running
  // the same recipe anywhere reproduces every artifact byte for byte.

  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec) {
    std::fprintf(stderr, "error: cannot create %s: %s\n", cfg.out_dir.c_str(),
                 ec.message().c_str());
    return kExitFailure;
  }
  auto path_of = [&cfg](const char* name) {
    return (std::filesystem::path(cfg.out_dir) / name).string();
  };

  // Stage ledger: ok / failed (with message) / skipped after a failure.
  std::map<std::string, nlohmann::json> stages;
  for (const char* name : {"generate", "assign", "percolate", "hysteresis", "metrics", "plot"})
    stages[name] = {{"status", "skipped"}};
  bool failed = false;
  auto run_stage = [&](const char* name, auto&& body) {
    if (failed) return;
    std::string message;
    if (body(&message)) {
      stages[name] = {{"status", "ok"}};
    } else {
      stages[name] = {{"status", "failed"}, {"error", message}};
      failed = true;
    }
  };
  auto last_error = [] { return std::string(qnet_last_error()); };

  GraphHandle graph;
  ResourcesHandle resources;
  CurveHandle curve;
  HysteresisHandle hysteresis;

  run_stage("generate", [&](std::string* msg) {
    if (qnet_generate(topology_from(cfg.topology), cfg.nodes, cfg.degree, cfg.graph_seed,
                      graph.slot()) != QNET_OK ||
        qnet_graph_write(graph.get(), path_of("graph.edges").c_str()) != QNET_OK) {
      *msg = last_error();
      return false;
    }
    return true;
  });

  run_stage("assign", [&](std::string* msg) {
    if (qnet_resources_sample(graph.get(), dist_from(cfg.dist), cfg.mean, cfg.stddev,
                              cfg.resource_seed, resources.slot()) != QNET_OK ||
        qnet_resources_write(graph.get(), resources.get(),
                             path_of("resources.tsv").c_str()) != QNET_OK) {
      *msg = last_error();
      return false;
    }
    return true;
  });

  run_stage("percolate", [&](std::string* msg) {
    double max_x = cfg.grid_max;
    if (max_x < 0.0 &&
        qnet_default_grid_max(graph.get(), cfg.percolation_seed, &max_x) != QNET_OK) {
      *msg = last_error();
      return false;
    }
    if (qnet_measure_curve(graph.get(), max_x, cfg.grid_step, cfg.runs, cfg.percolation_seed,
                           cfg.threads, curve.slot()) != QNET_OK ||
        qnet_curve_write_csv(curve.get(), path_of("percolation.csv").c_str()) != QNET_OK) {
      *msg = last_error();
      return false;
    }
    return true;
  });

  run_stage("hysteresis", [&](std::string* msg) {
    double max_y = cfg.y_max;
    if (max_y < 0.0) {
      size_t last = qnet_curve_size(curve.get());
      if (qnet_curve_point(curve.get(), last - 1, &max_y, nullptr, nullptr, nullptr,
                           nullptr) != QNET_OK) {
        *msg = last_error();
        return false;
      }
    }
    if (qnet_hysteresis_sweep(curve.get(), dist_from(cfg.dist), cfg.mean, cfg.stddev,
                              cfg.alpha, max_y, cfg.y_step, hysteresis.slot()) != QNET_OK ||
        qnet_hysteresis_write_csv(hysteresis.get(), path_of("hysteresis.csv").c_str()) !=
            QNET_OK) {
      *msg = last_error();
      return false;
    }
    return true;
  });

  run_stage("metrics", [&](std::string* msg) {
    double y_c3 = 0.0, dmax = 0.0, n_c = 0.0, alpha_c = 0.0, y_c1 = 0.0;
    int broken = 0;
    if (qnet_estimate_yc3(curve.get(), cfg.threshold, &y_c3) != QNET_OK ||
        qnet_curve_d_max(curve.get(), &dmax) != QNET_OK ||
        qnet_n_critical(curve.get(), cfg.alpha, y_c3, &n_c) != QNET_OK ||
        qnet_alpha_critical(curve.get(), y_c3, &alpha_c) != QNET_OK ||
        qnet_yc1_from_yc3(y_c3, dmax, cfg.alpha, cfg.mean, &y_c1, &broken) != QNET_OK) {
      *msg = last_error();
      return false;
    }
    double yc1_measured = std::nan(""), yc2_measured = std::nan("");
    qnet_hysteresis_yc1(hysteresis.get(), &yc1_measured);
    qnet_hysteresis_yc2(hysteresis.get(), &yc2_measured);
    nlohmann::json j;
    j["y_c3"] = y_c3;
    j["D_max"] = dmax;
    j["n_c"] = n_c;
    j["alpha_c"] = json_number(alpha_c);
    j["y_c1"] = y_c1;
    j["y_c1_functionally_broken"] = broken != 0;
    j["y_c1_measured"] = json_number(yc1_measured);
    j["y_c2_measured"] = json_number(yc2_measured);
    j["discontinuous"] = qnet_hysteresis_discontinuous(hysteresis.get()) != 0;
    if (!write_json_file(path_of("metrics.json"), j)) {
      *msg = "failed writing metrics.json";
      return false;
    }
    return true;
  });

  run_stage("plot", [&](std::string* msg) {
    if (!write_text_file(path_of("plot.gp"), kPlotScript)) {
      *msg = "failed writing plot.gp";
      return false;
    }
    return true;
  });

  // Manifest is written even after a failure so partial runs stay auditable.
  std::string canonical;
  for (const auto& [key, value] : cfg.echo) canonical += key + "=" + value + "\n";
  char hash_hex[17];
  std::snprintf(hash_hex, sizeof hash_hex, "%016" PRIx64, fnv1a64(canonical));

  nlohmann::json manifest;
  manifest["version"] = qnet_version();
  manifest["config"] = cfg.echo;
  manifest["config_hash"] = hash_hex;
  manifest["stages"] = stages;
  manifest["artifacts"] = {{"graph", "graph.edges"},       {"resources", "resources.tsv"},
                           {"percolation", "percolation.csv"}, {"hysteresis", "hysteresis.csv"},
                           {"metrics", "metrics.json"},    {"plot", "plot.gp"}};
  if (!write_json_file(path_of("manifest.json"), manifest)) return kExitFailure;

  if (failed) {
    std::fprintf(stderr, "experiment failed; see %s\n", path_of("manifest.json").c_str());
    return kExitFailure;
  }
  std::printf("experiment complete: %s\n", cfg.out_dir.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robustness analysis for noisy entanglement-distribution networks"};
  app.require_subcommand(1);

  GenerateArgs gen;
  CLI::App* c_gen = app.add_subcommand("generate", "Generate a random network");
  c_gen->add_option("--kind", gen.kind, "Topology: er|ba|rgg")
      ->required()
      ->check(CLI::IsMember({"er", "ba", "rgg"}));
  c_gen->add_option("--nodes", gen.nodes, "Node count")->required();
  c_gen->add_option("--degree", gen.degree, "Mean degree c")->required();
  c_gen->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
  c_gen->add_option("--out", gen.out, "Output edge-list file")->required();

  AssignArgs assign;
  CLI::App* c_assign = app.add_subcommand("assign", "Sample per-edge entangled-pair counts");
  c_assign->add_option("--dist", assign.dist, "Distribution: exp|uniform|poisson|gauss")
      ->required()
      ->check(CLI::IsMember({"exp", "uniform", "poisson", "gauss"}));
  c_assign->add_option("--mean", assign.mean, "Mean pairs per edge")->required();
  c_assign->add_option("--stddev", assign.stddev, "Gaussian stddev (default mean/3)")->capture_default_str();
  c_assign->add_option("--seed", assign.seed, "RNG seed")->capture_default_str();
  c_assign->add_option("--graph", assign.graph, "Input edge-list file")->required();
  c_assign->add_option("--out", assign.out, "Output resource file")->required();

  PercolateArgs perc;
  CLI::App* c_perc = app.add_subcommand("percolate", "Measure the giant-component curve");
  c_perc->add_option("--graph", perc.graph, "Input edge-list file")->required();
  c_perc->add_option("--grid-max", perc.grid_max, "Largest x+y (omit: automatic)")->capture_default_str();
  c_perc->add_option("--grid-step", perc.grid_step, "Grid spacing")->capture_default_str();
  c_perc->add_option("--runs", perc.runs, "Percolations per grid point")->capture_default_str();
  c_perc->add_option("--seed", perc.seed, "RNG seed")->capture_default_str();
  c_perc->add_option("--threads", perc.threads, "Worker threads (0: auto)")->capture_default_str();
  c_perc->add_option("--out", perc.out, "Output CSV")->required();

  BackboneArgs bb;
  CLI::App* c_bb = app.add_subcommand("backbone", "Compute the functional backbone");
  c_bb->add_option("--graph", bb.graph, "Input edge-list file")->required();
  c_bb->add_option("--resources", bb.resources, "Input resource file")->required();
  c_bb->add_option("--alpha", bb.alpha, "Cost exponent")->capture_default_str();
  c_bb->add_option("--out", bb.out, "Output JSON")->required();

  HysteresisArgs hyst;
  CLI::App* c_hyst = app.add_subcommand("hysteresis", "Sweep dilution and solve fixed points");
  c_hyst->add_option("--graph", hyst.graph, "Edge-list file (curve is measured)");
  c_hyst->add_option("--curve", hyst.curve, "Existing percolation CSV (skips measuring)");
  c_hyst->add_option("--dist", hyst.dist, "Distribution: exp|uniform|poisson|gauss")
      ->capture_default_str()
      ->check(CLI::IsMember({"exp", "uniform", "poisson", "gauss"}));
  c_hyst->add_option("--mean", hyst.mean, "Mean pairs per edge")->required();
  c_hyst->add_option("--stddev", hyst.stddev, "Gaussian stddev (default mean/3)")->capture_default_str();
  c_hyst->add_option("--alpha", hyst.alpha, "Cost exponent")->capture_default_str();
  c_hyst->add_option("--y-step", hyst.y_step, "Dilution grid spacing")->capture_default_str();
  c_hyst->add_option("--y-max", hyst.y_max, "Largest dilution (omit: curve range)")->capture_default_str();
  c_hyst->add_option("--grid-max", hyst.grid_max, "Curve: largest x+y (omit: automatic)")->capture_default_str();
  c_hyst->add_option("--grid-step", hyst.grid_step, "Curve: grid spacing")->capture_default_str();
  c_hyst->add_option("--runs", hyst.runs, "Curve: percolations per grid point")->capture_default_str();
  c_hyst->add_option("--seed", hyst.seed, "Curve: RNG seed")->capture_default_str();
  c_hyst->add_option("--threads", hyst.threads, "Curve: worker threads")->capture_default_str();
  c_hyst->add_option("--out", hyst.out, "Output CSV")->required();

  MetricsArgs met;
  CLI::App* c_met = app.add_subcommand("metrics", "Robustness metrics of one network");
  c_met->add_option("--graph", met.graph, "Edge-list file (curve is measured)");
  c_met->add_option("--curve", met.curve, "Existing percolation CSV");
  c_met->add_option("--analytic", met.analytic, "Analytic model (only: er)")
      ->check(CLI::IsMember({"er"}));
  c_met->add_option("--nodes", met.nodes, "Analytic: node count");
  c_met->add_option("--degree", met.degree, "Analytic: mean degree");
  c_met->add_option("--alpha", met.alpha, "Cost exponent")->capture_default_str();
  c_met->add_option("--mean", met.mean, "Mean pairs per edge")->required();
  c_met->add_option("--threshold", met.threshold, "Giant fraction for y_c3 (default 0.01)")->capture_default_str();
  c_met->add_option("--grid-max", met.grid_max, "Curve: largest x+y (omit: automatic)")->capture_default_str();
  c_met->add_option("--grid-step", met.grid_step, "Curve: grid spacing")->capture_default_str();
  c_met->add_option("--runs", met.runs, "Curve: percolations per grid point")->capture_default_str();
  c_met->add_option("--seed", met.seed, "Curve: RNG seed")->capture_default_str();
  c_met->add_option("--threads", met.threads, "Curve: worker threads")->capture_default_str();
  c_met->add_option("--out", met.out, "Output JSON")->required();

  PhaseDiagramArgs pd;
  CLI::App* c_pd = app.add_subcommand("phase-diagram", "Critical dilutions vs mean resources");
  c_pd->add_option("--sweep", pd.sweep, "Sweep variable (only: mean_n)")
      ->required()
      ->check(CLI::IsMember({"mean_n"}));
  c_pd->add_option("--graph", pd.graph, "Edge-list file");
  c_pd->add_option("--kind", pd.kind, "Topology: er|ba|rgg (generates the graph)")
      ->check(CLI::IsMember({"er", "ba", "rgg"}));
  c_pd->add_option("--nodes", pd.nodes, "Node count (with --kind)");
  c_pd->add_option("--degree", pd.degree, "Mean degree (with --kind)");
  c_pd->add_option("--graph-seed", pd.graph_seed, "Graph RNG seed")->capture_default_str();
  c_pd->add_option("--dist", pd.dist, "Distribution")
      ->capture_default_str()
      ->check(CLI::IsMember({"exp", "uniform", "poisson", "gauss"}));
  c_pd->add_option("--stddev", pd.stddev, "Gaussian stddev")->capture_default_str();
  c_pd->add_option("--alpha", pd.alpha, "Cost exponent")->capture_default_str();
  c_pd->add_option("--factor-min", pd.factor_min, "Smallest mean_n / ln N")->capture_default_str();
  c_pd->add_option("--factor-max", pd.factor_max, "Largest mean_n / ln N")->capture_default_str();
  c_pd->add_option("--factor-steps", pd.factor_steps, "Sweep rows")->capture_default_str();
  c_pd->add_option("--y-step", pd.y_step, "Dilution grid spacing")->capture_default_str();
  c_pd->add_option("--threshold", pd.threshold, "Giant fraction for y_c3")->capture_default_str();
  c_pd->add_option("--grid-max", pd.grid_max, "Curve: largest x+y (omit: automatic)")->capture_default_str();
  c_pd->add_option("--grid-step", pd.grid_step, "Curve: grid spacing")->capture_default_str();
  c_pd->add_option("--runs", pd.runs, "Curve: percolations per grid point")->capture_default_str();
  c_pd->add_option("--seed", pd.seed, "Curve: RNG seed")->capture_default_str();
  c_pd->add_option("--threads", pd.threads, "Curve: worker threads")->capture_default_str();
  c_pd->add_option("--out", pd.out, "Output CSV")->required();

  ExperimentArgs exp_args;
  CLI::App* c_exp = app.add_subcommand("experiment", "Run a full recipe from a config file");
  c_exp->add_option("--config", exp_args.config, "key=value config file")->required();
  c_exp->add_option("--out-dir", exp_args.out_dir, "Output directory (overrides out_dir key)");

  ValidateArgs val;
  CLI::App* c_val = app.add_subcommand("validate", "Check artifact files for consistency");
  c_val->add_option("--graph", val.graph, "Edge-list file")->required();
  c_val->add_option("--resources", val.resources, "Resource file checked against the graph");
  c_val->add_option("--curve", val.curve, "Percolation CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  if (c_gen->parsed()) return run_generate(gen);
  if (c_assign->parsed()) return run_assign(assign);
  if (c_perc->parsed()) return run_percolate(perc);
  if (c_bb->parsed()) return run_backbone(bb);
  if (c_hyst->parsed()) return run_hysteresis(hyst);
  if (c_met->parsed()) return run_metrics(met);
  if (c_pd->parsed()) return run_phase_diagram(pd);
  if (c_exp->parsed()) return run_experiment(exp_args);
  if (c_val->parsed()) return run_validate(val);
  return kExitConfig;
}
