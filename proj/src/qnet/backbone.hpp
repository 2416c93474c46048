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

#ifndef QNET_BACKBONE_HPP_
#define QNET_BACKBONE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qnet/graph.hpp"
#include "qnet/percolation.hpp"
#include "qnet/resources.hpp"

namespace qnet {

// Removes every edge whose resource count cannot support a path of length
// l_fixed, i.e. keeps edges with n_ij >= l_fixed^alpha. l_fixed = 0 keeps
// everything. The node set is preserved.
Graph prune(const Graph& g, const ResourceAssignment& assignment, double l_fixed,
            const RepeaterModel& model);

struct BackboneResult {
  double l_fixed = 0.0;  // supported path length
  double n_fixed = 0.0;  // pruning threshold l_fixed^alpha
  uint32_t size = 0;     // 0 when no feasible candidate exists
  std::vector<uint32_t> nodes;  // backbone nodes, ascending
};

// Scans candidate thresholds (0 plus every distinct n_ij, so l_fixed ranges
// over {0} u {n_ij^(1/alpha)}). A candidate is feasible when the largest
// component of the pruned graph has diameter <= l_fixed, which guarantees
// every node pair inside it is functionally connected. Among feasible
// candidates the largest component size wins; ties go to the larger l_fixed.
// With no feasible candidate, size = 0 and nodes is empty. alpha must be > 0.
BackboneResult compute_backbone(const Graph& g, const ResourceAssignment& assignment,
                                const RepeaterModel& model);

// Ground truth for backbone soundness: does some simple path from u to v have
// length l and min resources >= l^alpha? Exhaustive DFS over simple paths,
// restricted to graphs of at most 12 nodes (the search is exponential).
bool functional_oracle(const Graph& g, const ResourceAssignment& assignment,
                       const RepeaterModel& model, uint32_t u, uint32_t v);

enum class Regime {
  kSupercritical,  // root lies strictly below the D-curve peak
  kSubcritical,
};

struct FixedPoint {
  double x0 = 0.0;
  Regime regime = Regime::kSupercritical;
};

// Solves L(x0) = D(x0 + y) on the measured curve: L from the resource model,
// D by piecewise-linear interpolation. Scans quarter-segment subdivisions for
// sign changes and bisects each bracket to |dx| < 1e-6. Roots are returned in
// ascending x0 order. y must lie within [0, grid max].
std::vector<FixedPoint> fixed_points(const LCurve& l, const PercolationCurve& curve, double y);

// Mean largest-component size of g percolated at x0 + y (bond survival
// p = e^{-(x0+y)}) over `runs` draws: the expected backbone size when
// operating at the fixed point x0.
double backbone_size_at(const Graph& g, double x0, double y, uint32_t runs, uint64_t seed);

struct HysteresisRow {
  double y = 0.0;
  double x0_super = 0.0;  // NaN when the regime has no solution
  double x0_sub = 0.0;
  double s_super = 0.0;   // interpolated mean_S at x0 + y, NaN when absent
  double s_sub = 0.0;
};

struct HysteresisResult {
  std::vector<HysteresisRow> rows;
  bool has_y_c1 = false;
  bool has_y_c2 = false;
  // Branch ends, located at grid resolution by the sweep and then sharpened
  // by bisecting the existence boundary inside the bracketing grid step.
  double y_c1 = 0.0;  // largest y with a supercritical solution
  double y_c2 = 0.0;  // smallest y with a subcritical solution
  bool discontinuous = false;  // y_c2 < y_c1: both phases coexist in between
};

// Sweeps y over y_grid (ascending, within the curve range), solving the fixed
// point in both regimes at each step. The smallest root per regime is
// reported.
HysteresisResult hysteresis(const LCurve& l, const PercolationCurve& curve,
                            const std::vector<double>& y_grid);

// CSV: y,x0_super,x0_sub,S_super,S_sub with 'nan' for absent solutions.
void write_hysteresis_csv(const HysteresisResult& result, const std::string& path);

}  // namespace qnet

#endif  // QNET_BACKBONE_HPP_
