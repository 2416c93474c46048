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

#include "qnet/backbone.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "qnet/graph_io.hpp"

namespace qnet {

namespace {

void check_alignment(const Graph& g, const ResourceAssignment& assignment) {
  if (assignment.values.size() != g.edge_count()) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.values.size()) +
                                " values for " + std::to_string(g.edge_count()) + " edges");
  }
}

std::vector<Edge> edges_at_least(const Graph& g, const ResourceAssignment& assignment,
                                 double threshold) {
  std::vector<Edge> kept;
  for (size_t i = 0; i < g.edges().size(); ++i) {
    if (assignment.values[i] >= threshold) kept.push_back(g.edges()[i]);
  }
  return kept;
}

}  // namespace

Graph prune(const Graph& g, const ResourceAssignment& assignment, double l_fixed,
            const RepeaterModel& model) {
  check_alignment(g, assignment);
  if (!(l_fixed >= 0.0)) throw std::invalid_argument("l_fixed must be >= 0");
  // pow(0, 0) == 1 would break the "l_fixed = 0 keeps everything" contract.
  const double threshold = l_fixed == 0.0 ? 0.0 : std::pow(l_fixed, model.alpha);
  return Graph(g.node_count(), edges_at_least(g, assignment, threshold));
}

BackboneResult compute_backbone(const Graph& g, const ResourceAssignment& assignment,
                                const RepeaterModel& model) {
  check_alignment(g, assignment);
  if (!(model.alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");

  // Candidate thresholds in n-space: comparing n_ij >= n_t directly avoids
  // the l -> l^alpha -> n round trip losing an ulp and dropping the defining
  // edge. l_fixed is derived as n_t^(1/alpha) afterwards.
  std::vector<double> candidates = assignment.values;
  candidates.push_back(0.0);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  BackboneResult best;
  bool found = false;
  // Ascending n_t: component sizes only shrink as edges are removed, so once
  // the largest pruned component falls below the best feasible size no later
  // candidate can win and the scan stops.
  for (const double n_t : candidates) {
    const double l_t = std::pow(n_t, 1.0 / model.alpha);
    const Graph pruned(g.node_count(), edges_at_least(g, assignment, n_t));
    const ComponentResult cc = connected_components(pruned);
    if (found && cc.largest_size < best.size) break;
    if (cc.largest_size == 0) continue;  // empty graph: no backbone here

    std::vector<uint32_t> nodes = component_nodes(cc, cc.largest_label);
    const uint32_t diameter = fast_diameter(pruned, nodes);
    if (static_cast<double>(diameter) > l_t) continue;  // infeasible

    if (!found || cc.largest_size > best.size ||
        (cc.largest_size == best.size && l_t > best.l_fixed)) {
      best.l_fixed = l_t;
      best.n_fixed = n_t;
      best.size = cc.largest_size;
      best.nodes = std::move(nodes);
      found = true;
    }
  }
  if (!found) {
    best = BackboneResult{};  // no feasible threshold: empty backbone sentinel
  }
  return best;
}

namespace {

struct OracleState {
  const Graph* g;
  const ResourceAssignment* assignment;
  double alpha;
  uint32_t target;
  // Per-edge resource lookup by adjacency slot.
  std::vector<double> slot_resource;
};

// DFS over simple paths. `min_n` is the smallest resource along the current
// path; once min_n < len^alpha no extension can succeed because the final
// length only grows and every edge of the final path must carry len^alpha.
bool oracle_dfs(const OracleState& st, uint32_t v, uint32_t visited_mask, uint32_t len,
                double min_n) {
  if (v == st.target) {
    return len == 0 || min_n >= std::pow(static_cast<double>(len), st.alpha);
  }
  const Graph& g = *st.g;
  for (uint32_t k = g.adj_offsets()[v]; k < g.adj_offsets()[v + 1]; ++k) {
    const uint32_t w = g.adj()[k];
    if (visited_mask & (1u << w)) continue;
    const double n_e = st.slot_resource[k];
    const double next_min = std::min(min_n, n_e);
    const uint32_t next_len = len + 1;
    if (next_min < std::pow(static_cast<double>(next_len), st.alpha)) continue;
    if (oracle_dfs(st, w, visited_mask | (1u << w), next_len, next_min)) return true;
  }
  return false;
}

}  // namespace

bool functional_oracle(const Graph& g, const ResourceAssignment& assignment,
                       const RepeaterModel& model, uint32_t u, uint32_t v) {
  check_alignment(g, assignment);
  if (g.node_count() > 12) {
    throw std::invalid_argument("functional_oracle is exhaustive and limited to 12 nodes");
  }
  if (u >= g.node_count() || v >= g.node_count()) {
    throw std::invalid_argument("node out of range");
  }
  if (u == v) return true;

  OracleState st;
  st.g = &g;
  st.assignment = &assignment;
  st.alpha = model.alpha;
  st.target = v;
  // Map adjacency slots to edge resources so the DFS needs no edge lookups.
  st.slot_resource.resize(g.adj().size());
  {
    std::vector<uint32_t> cursor(g.adj_offsets().begin(), g.adj_offsets().end() - 1);
    for (size_t i = 0; i < g.edges().size(); ++i) {
      const Edge& e = g.edges()[i];
      st.slot_resource[cursor[e.u]++] = assignment.values[i];
      st.slot_resource[cursor[e.v]++] = assignment.values[i];
    }
  }
  return oracle_dfs(st, u, 1u << u, 0, std::numeric_limits<double>::infinity());
}

std::vector<FixedPoint> fixed_points(const LCurve& l, const PercolationCurve& curve, double y) {
  if (curve.size() < 2) throw std::invalid_argument("curve needs at least 2 grid points");
  if (!(y >= 0.0)) throw std::invalid_argument("y must be >= 0");
  if (y > curve.grid.back()) {
    throw std::invalid_argument("y exceeds the curve grid; no operating range remains");
  }

  const double x_max = curve.grid.back() - y;
  std::vector<FixedPoint> roots;
  if (!(x_max > 0.0)) return roots;

  const double t_peak = d_peak_location(curve);
  const auto h = [&](double x) { return l(x) - interp_mean_d(curve, x + y); };

  // Evaluation knots: segment boundaries of the interpolated D restricted to
  // x in (0, x_max], each segment subdivided in four (L is smooth and
  // monotone; D is linear per segment, so this resolves realistic crossings).
  std::vector<double> knots;
  knots.push_back(1e-12);
  for (size_t k = 0; k < curve.size(); ++k) {
    const double x = curve.grid[k] - y;
    if (x <= 1e-12 || x > x_max) continue;
    if (!knots.empty() && knots.back() < x) {
      const double lo = knots.back();
      for (int j = 1; j <= 3; ++j) {
        knots.push_back(lo + (x - lo) * (0.25 * j));
      }
    }
    knots.push_back(x);
  }
  if (knots.back() < x_max) knots.push_back(x_max);

  double prev_x = knots[0];
  double prev_h = h(prev_x);
  if (prev_h == 0.0) {
    const Regime regime =
        (prev_x + y < t_peak) ? Regime::kSupercritical : Regime::kSubcritical;
    roots.push_back({prev_x, regime});
  }
  for (size_t i = 1; i < knots.size(); ++i) {
    const double cur_x = knots[i];
    const double cur_h = h(cur_x);
    double root = std::numeric_limits<double>::quiet_NaN();
    if (cur_h == 0.0) {
      root = cur_x;
    } else if ((prev_h < 0.0 && cur_h > 0.0) || (prev_h > 0.0 && cur_h < 0.0)) {
      double lo = prev_x, hi = cur_x;
      double h_lo = prev_h;
      for (int it = 0; it < 100 && hi - lo > 1e-6; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double h_mid = h(mid);
        if (h_mid == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((h_lo < 0.0) == (h_mid < 0.0)) {
          lo = mid;
          h_lo = h_mid;
        } else {
          hi = mid;
        }
      }
      root = 0.5 * (lo + hi);
    }
    if (!std::isnan(root) && (roots.empty() || root - roots.back().x0 > 1e-9)) {
      const Regime regime =
          (root + y < t_peak) ? Regime::kSupercritical : Regime::kSubcritical;
      roots.push_back({root, regime});
    }
    prev_x = cur_x;
    prev_h = cur_h;
  }
  return roots;
}

double backbone_size_at(const Graph& g, double x0, double y, uint32_t runs, uint64_t seed) {
  if (!(x0 >= 0.0) || !(y >= 0.0)) throw std::invalid_argument("x0 and y must be >= 0");
  return mean_largest_component(g, x0 + y, runs, seed);
}

HysteresisResult hysteresis(const LCurve& l, const PercolationCurve& curve,
                            const std::vector<double>& y_grid) {
  HysteresisResult result;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (size_t i = 0; i < y_grid.size(); ++i) {
    if (i > 0 && !(y_grid[i] > y_grid[i - 1])) {
      throw std::invalid_argument("y grid must be strictly ascending");
    }
    const double y = y_grid[i];
    HysteresisRow row;
    row.y = y;
    row.x0_super = row.x0_sub = row.s_super = row.s_sub = nan;
    for (const FixedPoint& fp : fixed_points(l, curve, y)) {
      // Roots come ascending; keep the first (smallest) one in each regime.
      if (fp.regime == Regime::kSupercritical && std::isnan(row.x0_super)) {
        row.x0_super = fp.x0;
        row.s_super = interp_mean_s(curve, fp.x0 + y);
      } else if (fp.regime == Regime::kSubcritical && std::isnan(row.x0_sub)) {
        row.x0_sub = fp.x0;
        row.s_sub = interp_mean_s(curve, fp.x0 + y);
      }
    }
    if (!std::isnan(row.x0_super)) {
      result.has_y_c1 = true;
      result.y_c1 = y;  // ascending sweep: ends at the largest such y
    }
    if (!std::isnan(row.x0_sub) && !result.has_y_c2) {
      result.has_y_c2 = true;
      result.y_c2 = y;
    }
    result.rows.push_back(row);
  }

  // The sweep locates the branch ends at grid resolution; bisecting the
  // existence boundary inside the bracketing step sharpens them so that
  // bistable windows narrower than the y step are still resolved.
  const auto has_root = [&](Regime regime, double y) {
    for (const FixedPoint& fp : fixed_points(l, curve, y)) {
      if (fp.regime == regime) return true;
    }
    return false;
  };
  const auto refine = [&](Regime regime, double y_true, double y_false) {
    for (int it = 0; it < 60 && std::abs(y_false - y_true) > 1e-9; ++it) {
      const double mid = 0.5 * (y_true + y_false);
      if (has_root(regime, mid)) {
        y_true = mid;
      } else {
        y_false = mid;
      }
    }
    return y_true;
  };
  if (result.has_y_c1) {
    const auto it = std::upper_bound(y_grid.begin(), y_grid.end(), result.y_c1);
    if (it != y_grid.end()) {
      result.y_c1 = refine(Regime::kSupercritical, result.y_c1, *it);
    }
  }
  if (result.has_y_c2) {
    const auto it = std::lower_bound(y_grid.begin(), y_grid.end(), result.y_c2);
    if (it != y_grid.begin()) {
      result.y_c2 = refine(Regime::kSubcritical, result.y_c2, *(it - 1));
    }
  }
  result.discontinuous =
      result.has_y_c1 && result.has_y_c2 && result.y_c2 < result.y_c1 - 1e-12;
  return result;
}

void write_hysteresis_csv(const HysteresisResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
  out << "y,x0_super,x0_sub,S_super,S_sub\n";
  char buf[160];
  for (const HysteresisRow& row : result.rows) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g\n", row.y, row.x0_super,
                  row.x0_sub, row.s_super, row.s_sub);
    out << buf;
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace qnet
