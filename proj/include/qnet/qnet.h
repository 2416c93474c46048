/* Copyright 2026 The qnet Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* qnet: robustness analysis for noisy entanglement-distribution networks.
 *
 * C interface of the shared library. All functions returning qnet_status
 * report QNET_OK (0) on success; on failure qnet_last_error() returns a
 * thread-local human-readable message describing the most recent failure on
 * the calling thread. Objects are opaque handles released with their
 * matching *_free function (safe on NULL).
 */

#ifndef QNET_QNET_H_
#define QNET_QNET_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qnet_status {
  QNET_OK = 0,
  QNET_ERR_INVALID_ARGUMENT = 1, /* bad parameter or violated precondition */
  QNET_ERR_IO = 2,               /* file could not be opened/read/written */
  QNET_ERR_PARSE = 3,            /* malformed file content */
  QNET_ERR_NUMERIC = 4,          /* no solution / singular region / no crossing */
  QNET_ERR_INTERNAL = 5
} qnet_status;

/* Message for the last failing call on this thread ("" if none). The pointer
 * stays valid until the next failing qnet call on the same thread. */
const char* qnet_last_error(void);

/* Library version, e.g. "0.1.0". */
const char* qnet_version(void);

/* ---------------------------------------------------------------- graphs */

typedef struct qnet_graph qnet_graph;

/* Random-network models. */
typedef enum qnet_topology {
  QNET_TOPOLOGY_ER = 0,  /* Erdos-Renyi G(N, c/(N-1)) */
  QNET_TOPOLOGY_BA = 1,  /* Barabasi-Albert, m = c/2 */
  QNET_TOPOLOGY_RGG = 2  /* random geometric graph on the unit torus */
} qnet_topology;

qnet_status qnet_graph_create(uint32_t node_count, qnet_graph** out);
qnet_status qnet_graph_add_edge(qnet_graph* g, uint32_t u, uint32_t v);
void qnet_graph_free(qnet_graph* g);

uint32_t qnet_graph_node_count(const qnet_graph* g);
uint64_t qnet_graph_edge_count(const qnet_graph* g);
/* Endpoints of edge `index` in insertion order. */
qnet_status qnet_graph_edge(const qnet_graph* g, uint64_t index, uint32_t* u, uint32_t* v);

qnet_status qnet_generate(qnet_topology kind, uint32_t node_count, double mean_degree,
                          uint64_t seed, qnet_graph** out);

/* Edge-list file: '# nodes=<N>' header then one '<u>\t<v>' line per edge.
 * Read/write round-trips byte for byte. */
qnet_status qnet_graph_read(const char* path, qnet_graph** out);
qnet_status qnet_graph_write(const qnet_graph* g, const char* path);

/* Connected components. labels must hold node_count entries; it receives a
 * dense component id per node (ids ordered by smallest member node). Any out
 * pointer may be NULL. */
qnet_status qnet_connected_components(const qnet_graph* g, uint32_t* labels,
                                      uint32_t* component_count, uint32_t* largest_size,
                                      uint32_t* largest_label);

/* Diameter of the connected subgraph induced by `nodes` (errors if the set is
 * empty or not connected). The exact variant is all-pairs BFS (reference
 * oracle); the fast variant is 4-sweep + iFUB and returns the same value. */
qnet_status qnet_exact_diameter(const qnet_graph* g, const uint32_t* nodes, size_t count,
                                uint32_t* out);
qnet_status qnet_fast_diameter(const qnet_graph* g, const uint32_t* nodes, size_t count,
                               uint32_t* out);

/* Size and diameter of the largest component (diameter 0 for size <= 1). */
qnet_status qnet_largest_component(const qnet_graph* g, uint32_t* size, uint32_t* diameter);

/* ------------------------------------------------------------- resources */

typedef struct qnet_resources qnet_resources;

typedef enum qnet_dist {
  QNET_DIST_EXPONENTIAL = 0,
  QNET_DIST_UNIFORM = 1,  /* on [0, 2*mean] */
  QNET_DIST_POISSON = 2,
  QNET_DIST_GAUSSIAN = 3  /* truncated to n >= 0; stddev <= 0 defaults to mean/3 */
} qnet_dist;

/* Entangled pairs required per link by a path of `path_length` hops. */
qnet_status qnet_required_pairs(double path_length, double alpha, double* out);

/* Per-edge resource values aligned with the graph's edge order. */
qnet_status qnet_resources_sample(const qnet_graph* g, qnet_dist kind, double mean,
                                  double stddev, uint64_t seed, qnet_resources** out);
void qnet_resources_free(qnet_resources* r);
uint64_t qnet_resources_count(const qnet_resources* r);
qnet_status qnet_resources_get(const qnet_resources* r, uint64_t index, double* out);

/* Resource file: one '<u>\t<v>\t<n>' line per edge, aligned with the graph's
 * edge list; read verifies the alignment. */
qnet_status qnet_resources_write(const qnet_graph* g, const qnet_resources* r,
                                 const char* path);
qnet_status qnet_resources_read(const qnet_graph* g, const char* path, qnet_resources** out);

/* P(n >= threshold). */
qnet_status qnet_survival(qnet_dist kind, double mean, double stddev, double threshold,
                          double* out);
/* Longest supportable path length at link survival e^{-x}. */
qnet_status qnet_l_curve(qnet_dist kind, double mean, double stddev, double alpha, double x,
                         double* out);

/* ----------------------------------------------------------- percolation */

typedef struct qnet_curve qnet_curve;

/* Independent edge (bond) or node (site) failures with survival probability
 * p; same seed and decreasing p produce nested edge sets. */
qnet_status qnet_bond_percolate(const qnet_graph* g, double p, uint64_t seed, qnet_graph** out);
qnet_status qnet_node_percolate(const qnet_graph* g, double p, uint64_t seed, qnet_graph** out);

/* Measures mean largest-component size/diameter on the grid
 * {0, step, ..., >= max} with p = e^{-(x+y)}; `runs` percolations per grid
 * point. Bit-identical for any thread count (threads = 0: auto). */
qnet_status qnet_measure_curve(const qnet_graph* g, double grid_max, double grid_step,
                               uint32_t runs, uint64_t seed, unsigned threads,
                               qnet_curve** out);

/* Builds a curve from explicit samples (e.g. analytic diameter values):
 * `grid` strictly ascending, `count` >= 2 points, standard deviations zero. */
qnet_status qnet_curve_create(const double* grid, const double* mean_d, const double* mean_s,
                              size_t count, uint32_t runs, uint32_t node_count,
                              qnet_curve** out);

void qnet_curve_free(qnet_curve* c);
size_t qnet_curve_size(const qnet_curve* c);
uint32_t qnet_curve_runs(const qnet_curve* c);
uint32_t qnet_curve_node_count(const qnet_curve* c);
/* Any out pointer may be NULL. */
qnet_status qnet_curve_point(const qnet_curve* c, size_t index, double* x_plus_y,
                             double* mean_d, double* mean_s, double* std_d, double* std_s);

/* CSV: '# nodes=<N>' header, 'x_plus_y,mean_D,mean_S,std_D,std_S,runs'. */
qnet_status qnet_curve_write_csv(const qnet_curve* c, const char* path);
qnet_status qnet_curve_read_csv(const char* path, qnet_curve** out);

/* Interpolated curve values at x+y = t. */
qnet_status qnet_curve_interp_d(const qnet_curve* c, double t, double* out);
qnet_status qnet_curve_interp_s(const qnet_curve* c, double t, double* out);

/* Structural break: first crossing of mean_S/N below `fraction` (pass 0 for
 * the default 0.01), linearly interpolated. QNET_ERR_NUMERIC if the curve
 * never crosses. */
qnet_status qnet_estimate_yc3(const qnet_curve* c, double fraction, double* out);
/* Peak value of mean_D. */
qnet_status qnet_curve_d_max(const qnet_curve* c, double* out);

/* Coarse scan for a grid upper bound (giant fraction < 1%, plus 1). */
qnet_status qnet_default_grid_max(const qnet_graph* g, uint64_t seed, double* out);

/* Mean largest-component size at a single operating point over `runs`
 * percolations. */
qnet_status qnet_mean_largest_component(const qnet_graph* g, double x_plus_y, uint32_t runs,
                                        uint64_t seed, double* out);

/* -------------------------------------------------------------- backbone */

typedef struct qnet_backbone qnet_backbone;

/* Keeps edges with n_ij >= l_fixed^alpha (l_fixed = 0 keeps everything). */
qnet_status qnet_prune(const qnet_graph* g, const qnet_resources* r, double l_fixed,
                       double alpha, qnet_graph** out);

/* Largest feasible backbone: scans thresholds {0} u {n_ij}, keeps candidates
 * whose largest pruned component has diameter <= l_fixed, and returns the one
 * maximizing size (ties: larger l_fixed). size = 0 when nothing is feasible. */
qnet_status qnet_compute_backbone(const qnet_graph* g, const qnet_resources* r, double alpha,
                                  qnet_backbone** out);
void qnet_backbone_free(qnet_backbone* b);
double qnet_backbone_l_fixed(const qnet_backbone* b);
double qnet_backbone_n_fixed(const qnet_backbone* b);
uint32_t qnet_backbone_size(const qnet_backbone* b);
/* Copies up to `cap` backbone node ids (ascending); *written gets the count. */
qnet_status qnet_backbone_nodes(const qnet_backbone* b, uint32_t* out, size_t cap,
                                size_t* written);

/* Exhaustive reachability oracle (graphs of <= 12 nodes): is there a simple
 * u-v path of some length l whose every edge carries >= l^alpha pairs? */
qnet_status qnet_functional_oracle(const qnet_graph* g, const qnet_resources* r, double alpha,
                                   uint32_t u, uint32_t v, int* connected);

/* Fixed points of L(x0) = D(x0 + y). regimes[i] is 0 (supercritical: left of
 * the D peak) or 1 (subcritical). Up to `cap` roots are written ascending;
 * *count gets the number found. */
qnet_status qnet_fixed_points(const qnet_curve* c, qnet_dist kind, double mean, double stddev,
                              double alpha, double y, double* roots, int* regimes, size_t cap,
                              size_t* count);

/* Expected backbone size when operating at fixed point x0 under dilution y. */
qnet_status qnet_backbone_size_at(const qnet_graph* g, double x0, double y, uint32_t runs,
                                  uint64_t seed, double* out);

typedef struct qnet_hysteresis qnet_hysteresis;

/* Sweeps y over {0, y_step, ..., >= y_max}, solving both regimes at each
 * step. y_max must not exceed the curve grid. */
qnet_status qnet_hysteresis_sweep(const qnet_curve* c, qnet_dist kind, double mean,
                                  double stddev, double alpha, double y_max, double y_step,
                                  qnet_hysteresis** out);
void qnet_hysteresis_free(qnet_hysteresis* h);
size_t qnet_hysteresis_rows(const qnet_hysteresis* h);
/* x0/S entries are NaN when the regime has no solution at that y. */
qnet_status qnet_hysteresis_row(const qnet_hysteresis* h, size_t index, double* y,
                                double* x0_super, double* x0_sub, double* s_super,
                                double* s_sub);
/* 1 when y_c2 < y_c1 (coexistence region exists), else 0. */
int qnet_hysteresis_discontinuous(const qnet_hysteresis* h);
/* QNET_ERR_NUMERIC when the respective bound does not exist in the sweep. */
qnet_status qnet_hysteresis_yc1(const qnet_hysteresis* h, double* out);
qnet_status qnet_hysteresis_yc2(const qnet_hysteresis* h, double* out);
/* CSV: y,x0_super,x0_sub,S_super,S_sub ('nan' for absent). */
qnet_status qnet_hysteresis_write_csv(const qnet_hysteresis* h, const char* path);

/* ------------------------------------------------------------- analytics */

/* Root t in (0,1] of t e^{-t} = c_eff e^{-c_eff}. */
qnet_status qnet_cstar(double c_eff, double* out);

/* Asymptotic diluted-ER diameter; QNET_ERR_NUMERIC within |c_eff-1| < 1e-6. */
qnet_status qnet_er_diameter(uint32_t nodes, double degree, double x_plus_y, double* out);

/* Y(x~) = x~ - D(x~)^alpha / mean_n on the measured curve. */
qnet_status qnet_y_function(const qnet_curve* c, double mean_n, double alpha, double x_tilde,
                            double* out);

/* Critical mean resources / critical cost exponent from the smoothed curve,
 * restricted to grid points in (0, y_c3). alpha_critical returns +inf when
 * the diameter never increases. */
qnet_status qnet_n_critical(const qnet_curve* c, double alpha, double y_c3, double* out);
qnet_status qnet_alpha_critical(const qnet_curve* c, double y_c3, double* out);

/* y_c1 = y_c3 - d_max^alpha / mean_n; *broken is set to 1 when the estimate
 * is negative (network cannot span its own diameter even undiluted). */
qnet_status qnet_yc1_from_yc3(double y_c3, double d_max, double alpha, double mean_n,
                              double* out, int* broken);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QNET_QNET_H_ */
