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

// C binding of the core library. Exceptions are mapped to status codes at
// this boundary and their messages stored in a thread-local slot; no
// exception may escape an exported function.

#include "qnet/qnet.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "qnet/analytics.hpp"
#include "qnet/backbone.hpp"
#include "qnet/graph.hpp"
#include "qnet/graph_io.hpp"
#include "qnet/netgen.hpp"
#include "qnet/percolation.hpp"
#include "qnet/resources.hpp"

namespace {

thread_local std::string t_last_error;

qnet_status fail(qnet_status status, const std::string& message) {
  t_last_error = message;
  return status;
}

qnet_status fail_null(const char* what) {
  return fail(QNET_ERR_INVALID_ARGUMENT, std::string(what) + " must not be null");
}

// Runs fn inside the exception firewall. ParseError/IoError are checked
// before their runtime_error base; any runtime_error that is neither is a
// numeric failure (no root, singular region, no crossing).
template <typename Fn>
qnet_status guarded(Fn&& fn) {
  try {
    fn();
    return QNET_OK;
  } catch (const std::invalid_argument& e) {
    return fail(QNET_ERR_INVALID_ARGUMENT, e.what());
  } catch (const qnet::ParseError& e) {
    return fail(QNET_ERR_PARSE, e.what());
  } catch (const qnet::IoError& e) {
    return fail(QNET_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(QNET_ERR_INTERNAL, "out of memory");
  } catch (const std::runtime_error& e) {
    return fail(QNET_ERR_NUMERIC, e.what());
  } catch (const std::exception& e) {
    return fail(QNET_ERR_INTERNAL, e.what());
  }
}

uint64_t edge_key(uint32_t u, uint32_t v) {
  uint64_t lo = std::min(u, v);
  uint64_t hi = std::max(u, v);
  return (lo << 32) | hi;
}

qnet::DistributionKind to_dist(qnet_dist kind) {
  switch (kind) {
    case QNET_DIST_EXPONENTIAL:
      return qnet::DistributionKind::kExponential;
    case QNET_DIST_UNIFORM:
      return qnet::DistributionKind::kUniform;
    case QNET_DIST_POISSON:
      return qnet::DistributionKind::kPoisson;
    case QNET_DIST_GAUSSIAN:
      return qnet::DistributionKind::kGaussian;
  }
  throw std::invalid_argument("unknown distribution kind " + std::to_string(int(kind)));
}

qnet::ResourceDistribution make_dist(qnet_dist kind, double mean, double stddev) {
  return qnet::ResourceDistribution{to_dist(kind), mean, stddev};
}

}  // namespace

// Handles are thin mutable wrappers; a single handle must not be used from
// two threads at once (distinct handles are independent).
struct qnet_graph {
  uint32_t nodes = 0;
  std::vector<qnet::Edge> edges;
  std::unordered_set<uint64_t> seen;  // rebuilt lazily before staged inserts
  mutable std::unique_ptr<qnet::Graph> built;

  explicit qnet_graph(uint32_t node_count) : nodes(node_count) {}
  explicit qnet_graph(qnet::Graph g)
      : nodes(g.node_count()),
        edges(g.edges()),
        built(std::make_unique<qnet::Graph>(std::move(g))) {}

  const qnet::Graph& graph() const {
    if (!built) built = std::make_unique<qnet::Graph>(nodes, edges);
    return *built;
  }
};

struct qnet_resources {
  qnet::ResourceAssignment assignment;
};

struct qnet_curve {
  qnet::PercolationCurve curve;
};

struct qnet_backbone {
  qnet::BackboneResult result;
};

struct qnet_hysteresis {
  qnet::HysteresisResult result;
};

extern "C" {

const char* qnet_last_error(void) { return t_last_error.c_str(); }

const char* qnet_version(void) { return "0.1.0"; }

/* ---------------------------------------------------------------- graphs */

qnet_status qnet_graph_create(uint32_t node_count, qnet_graph** out) {
  if (!out) return fail_null("out");
  return guarded([&] { *out = new qnet_graph(node_count); });
}

qnet_status qnet_graph_add_edge(qnet_graph* g, uint32_t u, uint32_t v) {
  if (!g) return fail_null("graph");
  return guarded([&] {
    if (u >= g->nodes || v >= g->nodes) {
      throw std::invalid_argument("edge " + std::to_string(u) + "-" + std::to_string(v) +
                                  " out of range for " + std::to_string(g->nodes) + " nodes");
    }
    if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(u));
    if (g->seen.size() != g->edges.size()) {
      g->seen.clear();
      g->seen.reserve(g->edges.size());
      for (const auto& e : g->edges) g->seen.insert(edge_key(e.u, e.v));
    }
    if (!g->seen.insert(edge_key(u, v)).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(u) + "-" +
                                  std::to_string(v));
    }
    g->edges.push_back(qnet::Edge{u, v});
    g->built.reset();
  });
}

void qnet_graph_free(qnet_graph* g) { delete g; }

uint32_t qnet_graph_node_count(const qnet_graph* g) { return g ? g->nodes : 0; }

uint64_t qnet_graph_edge_count(const qnet_graph* g) { return g ? g->edges.size() : 0; }

qnet_status qnet_graph_edge(const qnet_graph* g, uint64_t index, uint32_t* u, uint32_t* v) {
  if (!g) return fail_null("graph");
  if (index >= g->edges.size()) {
    return fail(QNET_ERR_INVALID_ARGUMENT,
                "edge index " + std::to_string(index) + " out of range (" +
                    std::to_string(g->edges.size()) + " edges)");
  }
  if (u) *u = g->edges[size_t(index)].u;
  if (v) *v = g->edges[size_t(index)].v;
  return QNET_OK;
}

qnet_status qnet_generate(qnet_topology kind, uint32_t node_count, double mean_degree,
                          uint64_t seed, qnet_graph** out) {
  if (!out) return fail_null("out");
  return guarded([&] {
    qnet::TopologyConfig config;
    switch (kind) {
      case QNET_TOPOLOGY_ER:
        config.kind = qnet::TopologyKind::kErdosRenyi;
        break;
      case QNET_TOPOLOGY_BA:
        config.kind = qnet::TopologyKind::kBarabasiAlbert;
        break;
      case QNET_TOPOLOGY_RGG:
        config.kind = qnet::TopologyKind::kRandomGeometric;
        break;
      default:
        throw std::invalid_argument("unknown topology kind " + std::to_string(int(kind)));
    }
    config.node_count = node_count;
    config.mean_degree = mean_degree;
    config.seed = seed;
    *out = new qnet_graph(qnet::generate(config));
  });
}

qnet_status qnet_graph_read(const char* path, qnet_graph** out) {
  if (!path) return fail_null("path");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new qnet_graph(qnet::read_edge_list(path)); });
}

qnet_status qnet_graph_write(const qnet_graph* g, const char* path) {
  if (!g) return fail_null("graph");
  if (!path) return fail_null("path");
  return guarded([&] { qnet::write_edge_list(g->graph(), path); });
}

qnet_status qnet_connected_components(const qnet_graph* g, uint32_t* labels,
                                      uint32_t* component_count, uint32_t* largest_size,
                                      uint32_t* largest_label) {
  if (!g) return fail_null("graph");
  return guarded([&] {
    qnet::ComponentResult cc = qnet::connected_components(g->graph());
    if (labels) std::copy(cc.labels.begin(), cc.labels.end(), labels);
    if (component_count) *component_count = cc.component_count;
    if (largest_size) *largest_size = cc.largest_size;
    if (largest_label) *largest_label = cc.largest_label;
  });
}

qnet_status qnet_exact_diameter(const qnet_graph* g, const uint32_t* nodes, size_t count,
                                uint32_t* out) {
  if (!g) return fail_null("graph");
  if (!nodes && count > 0) return fail_null("nodes");
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::exact_diameter(g->graph(), {nodes, count}); });
}

qnet_status qnet_fast_diameter(const qnet_graph* g, const uint32_t* nodes, size_t count,
                               uint32_t* out) {
  if (!g) return fail_null("graph");
  if (!nodes && count > 0) return fail_null("nodes");
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::fast_diameter(g->graph(), {nodes, count}); });
}

qnet_status qnet_largest_component(const qnet_graph* g, uint32_t* size, uint32_t* diameter) {
  if (!g) return fail_null("graph");
  return guarded([&] {
    const qnet::Graph& graph = g->graph();
    qnet::ComponentResult cc = qnet::connected_components(graph);
    if (size) *size = cc.largest_size;
    if (diameter) {
      if (cc.largest_size <= 1) {
        *diameter = 0;
      } else {
        std::vector<uint32_t> members = qnet::component_nodes(cc, cc.largest_label);
        *diameter = qnet::fast_diameter(graph, members);
      }
    }
  });
}

/* ------------------------------------------------------------- resources */

qnet_status qnet_required_pairs(double path_length, double alpha, double* out) {
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::required_pairs(path_length, alpha); });
}

qnet_status qnet_resources_sample(const qnet_graph* g, qnet_dist kind, double mean,
                                  double stddev, uint64_t seed, qnet_resources** out) {
  if (!g) return fail_null("graph");
  if (!out) return fail_null("out");
  return guarded([&] {
    *out = new qnet_resources{
        qnet::sample_resources(g->graph(), make_dist(kind, mean, stddev), seed)};
  });
}

void qnet_resources_free(qnet_resources* r) { delete r; }

uint64_t qnet_resources_count(const qnet_resources* r) {
  return r ? r->assignment.values.size() : 0;
}

qnet_status qnet_resources_get(const qnet_resources* r, uint64_t index, double* out) {
  if (!r) return fail_null("resources");
  if (!out) return fail_null("out");
  if (index >= r->assignment.values.size()) {
    return fail(QNET_ERR_INVALID_ARGUMENT,
                "resource index " + std::to_string(index) + " out of range (" +
                    std::to_string(r->assignment.values.size()) + " values)");
  }
  *out = r->assignment.values[size_t(index)];
  return QNET_OK;
}

qnet_status qnet_resources_write(const qnet_graph* g, const qnet_resources* r,
                                 const char* path) {
  if (!g) return fail_null("graph");
  if (!r) return fail_null("resources");
  if (!path) return fail_null("path");
  return guarded([&] { qnet::write_resources(g->graph(), r->assignment, path); });
}

qnet_status qnet_resources_read(const qnet_graph* g, const char* path, qnet_resources** out) {
  if (!g) return fail_null("graph");
  if (!path) return fail_null("path");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new qnet_resources{qnet::read_resources(g->graph(), path)}; });
}

qnet_status qnet_survival(qnet_dist kind, double mean, double stddev, double threshold,
                          double* out) {
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::survival(make_dist(kind, mean, stddev), threshold); });
}

qnet_status qnet_l_curve(qnet_dist kind, double mean, double stddev, double alpha, double x,
                         double* out) {
  if (!out) return fail_null("out");
  return guarded([&] {
    *out = qnet::l_curve(make_dist(kind, mean, stddev), qnet::RepeaterModel{alpha}, x);
  });
}

/* ----------------------------------------------------------- percolation */

qnet_status qnet_bond_percolate(const qnet_graph* g, double p, uint64_t seed,
                                qnet_graph** out) {
  if (!g) return fail_null("graph");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new qnet_graph(qnet::bond_percolate(g->graph(), p, seed)); });
}

qnet_status qnet_node_percolate(const qnet_graph* g, double p, uint64_t seed,
                                qnet_graph** out) {
  if (!g) return fail_null("graph");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new qnet_graph(qnet::node_percolate(g->graph(), p, seed)); });
}

qnet_status qnet_measure_curve(const qnet_graph* g, double grid_max, double grid_step,
                               uint32_t runs, uint64_t seed, unsigned threads,
                               qnet_curve** out) {
  if (!g) return fail_null("graph");
  if (!out) return fail_null("out");
  return guarded([&] {
    std::vector<double> grid = qnet::make_grid(grid_max, grid_step);
    *out = new qnet_curve{qnet::measure_curve(g->graph(), grid, runs, seed, threads)};
  });
}

qnet_status qnet_curve_create(const double* grid, const double* mean_d, const double* mean_s,
                              size_t count, uint32_t runs, uint32_t node_count,
                              qnet_curve** out) {
  if (!grid) return fail_null("grid");
  if (!mean_d) return fail_null("mean_d");
  if (!mean_s) return fail_null("mean_s");
  if (!out) return fail_null("out");
  return guarded([&] {
    if (count < 2) throw std::invalid_argument("curve needs at least 2 points");
    if (node_count == 0) throw std::invalid_argument("node_count must be positive");
    qnet::PercolationCurve curve;
    curve.grid.assign(grid, grid + count);
    curve.mean_d.assign(mean_d, mean_d + count);
    curve.mean_s.assign(mean_s, mean_s + count);
    curve.std_d.assign(count, 0.0);
    curve.std_s.assign(count, 0.0);
    curve.runs = runs;
    curve.node_count = node_count;
    for (size_t i = 0; i < count; ++i) {
      if (!std::isfinite(curve.grid[i]) || !std::isfinite(curve.mean_d[i]) ||
          !std::isfinite(curve.mean_s[i])) {
        throw std::invalid_argument("curve values must be finite");
      }
      if (i > 0 && curve.grid[i] <= curve.grid[i - 1]) {
        throw std::invalid_argument("curve grid must be strictly ascending");
      }
    }
    *out = new qnet_curve{std::move(curve)};
  });
}

void qnet_curve_free(qnet_curve* c) { delete c; }

size_t qnet_curve_size(const qnet_curve* c) { return c ? c->curve.size() : 0; }

uint32_t qnet_curve_runs(const qnet_curve* c) { return c ? c->curve.runs : 0; }

uint32_t qnet_curve_node_count(const qnet_curve* c) { return c ? c->curve.node_count : 0; }

qnet_status qnet_curve_point(const qnet_curve* c, size_t index, double* x_plus_y,
                             double* mean_d, double* mean_s, double* std_d, double* std_s) {
  if (!c) return fail_null("curve");
  if (index >= c->curve.size()) {
    return fail(QNET_ERR_INVALID_ARGUMENT,
                "curve index " + std::to_string(index) + " out of range (" +
                    std::to_string(c->curve.size()) + " points)");
  }
  if (x_plus_y) *x_plus_y = c->curve.grid[index];
  if (mean_d) *mean_d = c->curve.mean_d[index];
  if (mean_s) *mean_s = c->curve.mean_s[index];
  if (std_d) *std_d = c->curve.std_d[index];
  if (std_s) *std_s = c->curve.std_s[index];
  return QNET_OK;
}

qnet_status qnet_curve_write_csv(const qnet_curve* c, const char* path) {
  if (!c) return fail_null("curve");
  if (!path) return fail_null("path");
  return guarded([&] { qnet::write_curve_csv(c->curve, path); });
}

qnet_status qnet_curve_read_csv(const char* path, qnet_curve** out) {
  if (!path) return fail_null("path");
  if (!out) return fail_null("out");
  return guarded([&] { *out = new qnet_curve{qnet::read_curve_csv(path)}; });
}

qnet_status qnet_curve_interp_d(const qnet_curve* c, double t, double* out) {
  if (!c) return fail_null("curve");
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::interp_mean_d(c->curve, t); });
}

qnet_status qnet_curve_interp_s(const qnet_curve* c, double t, double* out) {
  if (!c) return fail_null("curve");
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::interp_mean_s(c->curve, t); });
}

qnet_status qnet_estimate_yc3(const qnet_curve* c, double fraction, double* out) {
  if (!c) return fail_null("curve");
  if (!out) return fail_null("out");
  return guarded([&] {
    *out = fraction > 0.0 ? qnet::estimate_yc3(c->curve, fraction)
                          : qnet::estimate_yc3(c->curve);
  });
}

qnet_status qnet_curve_d_max(const qnet_curve* c, double* out) {
  if (!c) return fail_null("curve");
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::d_max(c->curve); });
}

qnet_status qnet_default_grid_max(const qnet_graph* g, uint64_t seed, double* out) {
  if (!g) return fail_null("graph");
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::default_grid_max(g->graph(), seed); });
}

qnet_status qnet_mean_largest_component(const qnet_graph* g, double x_plus_y, uint32_t runs,
                                        uint64_t seed, double* out) {
  if (!g) return fail_null("graph");
  if (!out) return fail_null("out");
  return guarded(
      [&] { *out = qnet::mean_largest_component(g->graph(), x_plus_y, runs, seed); });
}

/* -------------------------------------------------------------- backbone */

qnet_status qnet_prune(const qnet_graph* g, const qnet_resources* r, double l_fixed,
                       double alpha, qnet_graph** out) {
  if (!g) return fail_null("graph");
  if (!r) return fail_null("resources");
  if (!out) return fail_null("out");
  return guarded([&] {
    *out = new qnet_graph(
        qnet::prune(g->graph(), r->assignment, l_fixed, qnet::RepeaterModel{alpha}));
  });
}

qnet_status qnet_compute_backbone(const qnet_graph* g, const qnet_resources* r, double alpha,
                                  qnet_backbone** out) {
  if (!g) return fail_null("graph");
  if (!r) return fail_null("resources");
  if (!out) return fail_null("out");
  return guarded([&] {
    *out = new qnet_backbone{
        qnet::compute_backbone(g->graph(), r->assignment, qnet::RepeaterModel{alpha})};
  });
}

void qnet_backbone_free(qnet_backbone* b) { delete b; }

double qnet_backbone_l_fixed(const qnet_backbone* b) { return b ? b->result.l_fixed : 0.0; }

double qnet_backbone_n_fixed(const qnet_backbone* b) { return b ? b->result.n_fixed : 0.0; }

uint32_t qnet_backbone_size(const qnet_backbone* b) { return b ? b->result.size : 0; }

qnet_status qnet_backbone_nodes(const qnet_backbone* b, uint32_t* out, size_t cap,
                                size_t* written) {
  if (!b) return fail_null("backbone");
  if (!out && cap > 0) return fail_null("out");
  size_t n = std::min(cap, b->result.nodes.size());
  for (size_t i = 0; i < n; ++i) out[i] = b->result.nodes[i];
  if (written) *written = n;
  return QNET_OK;
}

qnet_status qnet_functional_oracle(const qnet_graph* g, const qnet_resources* r, double alpha,
                                   uint32_t u, uint32_t v, int* connected) {
  if (!g) return fail_null("graph");
  if (!r) return fail_null("resources");
  if (!connected) return fail_null("connected");
  return guarded([&] {
    *connected = qnet::functional_oracle(g->graph(), r->assignment, qnet::RepeaterModel{alpha},
                                         u, v)
                     ? 1
                     : 0;
  });
}

qnet_status qnet_fixed_points(const qnet_curve* c, qnet_dist kind, double mean, double stddev,
                              double alpha, double y, double* roots, int* regimes, size_t cap,
                              size_t* count) {
  if (!c) return fail_null("curve");
  if (!count) return fail_null("count");
  return guarded([&] {
    qnet::LCurve l{make_dist(kind, mean, stddev), qnet::RepeaterModel{alpha}};
    std::vector<qnet::FixedPoint> points = qnet::fixed_points(l, c->curve, y);
    size_t n = std::min(cap, points.size());
    for (size_t i = 0; i < n; ++i) {
      if (roots) roots[i] = points[i].x0;
      if (regimes) regimes[i] = points[i].regime == qnet::Regime::kSupercritical ? 0 : 1;
    }
    *count = points.size();
  });
}

qnet_status qnet_backbone_size_at(const qnet_graph* g, double x0, double y, uint32_t runs,
                                  uint64_t seed, double* out) {
  if (!g) return fail_null("graph");
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::backbone_size_at(g->graph(), x0, y, runs, seed); });
}

qnet_status qnet_hysteresis_sweep(const qnet_curve* c, qnet_dist kind, double mean,
                                  double stddev, double alpha, double y_max, double y_step,
                                  qnet_hysteresis** out) {
  if (!c) return fail_null("curve");
  if (!out) return fail_null("out");
  return guarded([&] {
    qnet::LCurve l{make_dist(kind, mean, stddev), qnet::RepeaterModel{alpha}};
    std::vector<double> y_grid = qnet::make_grid(y_max, y_step);
    // make_grid may overshoot y_max to close the last step; the sweep domain
    // is capped by the curve grid, so drop overshooting points.
    while (!y_grid.empty() && y_grid.back() > c->curve.grid.back()) y_grid.pop_back();
    if (y_grid.empty()) throw std::invalid_argument("empty dilution grid");
    *out = new qnet_hysteresis{qnet::hysteresis(l, c->curve, y_grid)};
  });
}

void qnet_hysteresis_free(qnet_hysteresis* h) { delete h; }

size_t qnet_hysteresis_rows(const qnet_hysteresis* h) { return h ? h->result.rows.size() : 0; }

qnet_status qnet_hysteresis_row(const qnet_hysteresis* h, size_t index, double* y,
                                double* x0_super, double* x0_sub, double* s_super,
                                double* s_sub) {
  if (!h) return fail_null("hysteresis");
  if (index >= h->result.rows.size()) {
    return fail(QNET_ERR_INVALID_ARGUMENT,
                "row index " + std::to_string(index) + " out of range (" +
                    std::to_string(h->result.rows.size()) + " rows)");
  }
  const qnet::HysteresisRow& row = h->result.rows[index];
  if (y) *y = row.y;
  if (x0_super) *x0_super = row.x0_super;
  if (x0_sub) *x0_sub = row.x0_sub;
  if (s_super) *s_super = row.s_super;
  if (s_sub) *s_sub = row.s_sub;
  return QNET_OK;
}

int qnet_hysteresis_discontinuous(const qnet_hysteresis* h) {
  return (h && h->result.discontinuous) ? 1 : 0;
}

qnet_status qnet_hysteresis_yc1(const qnet_hysteresis* h, double* out) {
  if (!h) return fail_null("hysteresis");
  if (!out) return fail_null("out");
  if (!h->result.has_y_c1) {
    return fail(QNET_ERR_NUMERIC, "no supercritical solution anywhere in the sweep");
  }
  *out = h->result.y_c1;
  return QNET_OK;
}

qnet_status qnet_hysteresis_yc2(const qnet_hysteresis* h, double* out) {
  if (!h) return fail_null("hysteresis");
  if (!out) return fail_null("out");
  if (!h->result.has_y_c2) {
    return fail(QNET_ERR_NUMERIC, "no subcritical solution anywhere in the sweep");
  }
  *out = h->result.y_c2;
  return QNET_OK;
}

qnet_status qnet_hysteresis_write_csv(const qnet_hysteresis* h, const char* path) {
  if (!h) return fail_null("hysteresis");
  if (!path) return fail_null("path");
  return guarded([&] { qnet::write_hysteresis_csv(h->result, path); });
}

/* ------------------------------------------------------------- analytics */

qnet_status qnet_cstar(double c_eff, double* out) {
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::cstar(c_eff); });
}

qnet_status qnet_er_diameter(uint32_t nodes, double degree, double x_plus_y, double* out) {
  if (!out) return fail_null("out");
  return guarded([&] { *out = qnet::er_diameter(nodes, degree, x_plus_y); });
}

qnet_status qnet_y_function(const qnet_curve* c, double mean_n, double alpha, double x_tilde,
                            double* out) {
  if (!c) return fail_null("curve");
  if (!out) return fail_null("out");
  return guarded([&] {
    qnet::DGrid dg = qnet::make_dgrid(c->curve);
    *out = qnet::y_function(dg, mean_n, alpha, x_tilde);
  });
}

qnet_status qnet_n_critical(const qnet_curve* c, double alpha, double y_c3, double* out) {
  if (!c) return fail_null("curve");
  if (!out) return fail_null("out");
  return guarded([&] {
    qnet::DGrid dg = qnet::make_dgrid(c->curve);
    *out = qnet::n_critical(dg, alpha, y_c3);
  });
}

qnet_status qnet_alpha_critical(const qnet_curve* c, double y_c3, double* out) {
  if (!c) return fail_null("curve");
  if (!out) return fail_null("out");
  return guarded([&] {
    qnet::DGrid dg = qnet::make_dgrid(c->curve);
    *out = qnet::alpha_critical(dg, y_c3);
  });
}

qnet_status qnet_yc1_from_yc3(double y_c3, double d_max, double alpha, double mean_n,
                              double* out, int* broken) {
  if (!out) return fail_null("out");
  return guarded([&] {
    qnet::Yc1Estimate est = qnet::yc1_from_yc3(y_c3, d_max, alpha, mean_n);
    *out = est.value;
    if (broken) *broken = est.functionally_broken ? 1 : 0;
  });
}

}  // extern "C"
