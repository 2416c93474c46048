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

#include "qnet/percolation.hpp"

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <thread>

#include "qnet/diameter.hpp"
#include "qnet/graph_io.hpp"
#include "qnet/rng.hpp"

namespace qnet {

Graph bond_percolate(const Graph& g, double p, uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  SplitMix64 rng(seed);
  std::vector<Edge> kept;
  kept.reserve(static_cast<size_t>(static_cast<double>(g.edge_count()) * p) + 16);
  for (const Edge& e : g.edges()) {
    if (rng.u01() < p) kept.push_back(e);
  }
  return Graph(g.node_count(), std::move(kept));
}

Graph node_percolate(const Graph& g, double p, uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  SplitMix64 rng(seed);
  std::vector<bool> alive(g.node_count());
  for (uint32_t v = 0; v < g.node_count(); ++v) alive[v] = rng.u01() < p;
  std::vector<Edge> kept;
  for (const Edge& e : g.edges()) {
    if (alive[e.u] && alive[e.v]) kept.push_back(e);
  }
  return Graph(g.node_count(), std::move(kept));
}

namespace {

// Per-thread scratch for one percolation run: filtered CSR, component labels,
// compact subgraph of the largest component, diameter buffers. Everything is
// reused across runs; nothing allocates in steady state.
struct RunWorkspace {
  std::vector<Edge> kept;
  std::vector<uint32_t> offsets;  // filtered CSR over all nodes
  std::vector<uint32_t> adj;
  std::vector<uint32_t> cursor;
  std::vector<uint32_t> labels;
  std::vector<uint32_t> queue;
  std::vector<uint32_t> comp_size;
  std::vector<uint32_t> local_id;    // node -> compact id in largest component
  std::vector<uint32_t> comp_nodes;  // largest component, ascending node ids
  CompactGraph compact;
  DiameterWork diam;

  explicit RunWorkspace(uint32_t n)
      : offsets(static_cast<size_t>(n) + 1),
        cursor(n),
        labels(n),
        queue(n),
        local_id(n, 0) {}
};

struct RunResult {
  uint32_t largest_size = 0;
  uint32_t largest_diameter = 0;
};

// One bond-percolation run: keep edges with probability p, find the largest
// component, return its size and exact diameter.
RunResult run_once(const Graph& g, double p, uint64_t seed, RunWorkspace& ws,
                   bool need_diameter) {
  const uint32_t n = g.node_count();
  SplitMix64 rng(seed);

  ws.kept.clear();
  if (p >= 1.0) {
    ws.kept.assign(g.edges().begin(), g.edges().end());
  } else if (p > 0.0) {
    for (const Edge& e : g.edges()) {
      if (rng.u01() < p) ws.kept.push_back(e);
    }
  }

  // Filtered CSR.
  std::fill(ws.offsets.begin(), ws.offsets.end(), 0);
  for (const Edge& e : ws.kept) {
    ws.offsets[e.u + 1]++;
    ws.offsets[e.v + 1]++;
  }
  for (uint32_t i = 1; i <= n; ++i) ws.offsets[i] += ws.offsets[i - 1];
  ws.adj.resize(ws.kept.size() * 2);
  std::copy(ws.offsets.begin(), ws.offsets.end() - 1, ws.cursor.begin());
  for (const Edge& e : ws.kept) {
    ws.adj[ws.cursor[e.u]++] = e.v;
    ws.adj[ws.cursor[e.v]++] = e.u;
  }

  // Components.
  std::fill(ws.labels.begin(), ws.labels.end(), kUnreached);
  ws.comp_size.clear();
  uint32_t largest_size = 0, largest_label = 0;
  for (uint32_t s = 0; s < n; ++s) {
    if (ws.labels[s] != kUnreached) continue;
    const uint32_t label = static_cast<uint32_t>(ws.comp_size.size());
    uint32_t head = 0, tail = 0;
    ws.queue[tail++] = s;
    ws.labels[s] = label;
    while (head < tail) {
      const uint32_t v = ws.queue[head++];
      for (uint32_t i = ws.offsets[v]; i < ws.offsets[v + 1]; ++i) {
        const uint32_t w = ws.adj[i];
        if (ws.labels[w] == kUnreached) {
          ws.labels[w] = label;
          ws.queue[tail++] = w;
        }
      }
    }
    ws.comp_size.push_back(tail);
    if (tail > largest_size) {
      largest_size = tail;
      largest_label = label;
    }
  }

  RunResult result;
  result.largest_size = largest_size;
  if (!need_diameter || largest_size <= 1) {
    result.largest_diameter = 0;
    return result;
  }
  if (largest_size == 2) {
    result.largest_diameter = 1;
    return result;
  }

  // Compact CSR of the largest component. Stale local_id entries from earlier
  // runs are never read: lookups only happen for current members.
  ws.comp_nodes.clear();
  for (uint32_t v = 0; v < n; ++v) {
    if (ws.labels[v] == largest_label) {
      ws.local_id[v] = static_cast<uint32_t>(ws.comp_nodes.size());
      ws.comp_nodes.push_back(v);
    }
  }
  ws.compact.offsets.assign(static_cast<size_t>(largest_size) + 1, 0);
  for (uint32_t i = 0; i < largest_size; ++i) {
    const uint32_t v = ws.comp_nodes[i];
    ws.compact.offsets[i + 1] = ws.compact.offsets[i] + (ws.offsets[v + 1] - ws.offsets[v]);
  }
  ws.compact.adj.resize(ws.compact.offsets.back());
  for (uint32_t i = 0; i < largest_size; ++i) {
    const uint32_t v = ws.comp_nodes[i];
    uint32_t out = ws.compact.offsets[i];
    for (uint32_t k = ws.offsets[v]; k < ws.offsets[v + 1]; ++k) {
      ws.compact.adj[out++] = ws.local_id[ws.adj[k]];
    }
  }

  result.largest_diameter = diameter_ifub(ws.compact, ws.diam);
  return result;
}

}  // namespace

std::vector<double> make_grid(double max_x, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be > 0");
  if (!(max_x >= 0.0)) throw std::invalid_argument("grid max must be >= 0");
  std::vector<double> grid;
  for (uint32_t k = 0;; ++k) {
    const double t = step * k;
    grid.push_back(t);
    if (t >= max_x) break;
    if (k > 10'000'000) throw std::invalid_argument("grid too fine");
  }
  return grid;
}

PercolationCurve measure_curve(const Graph& g, const std::vector<double>& grid, uint32_t runs,
                               uint64_t seed, unsigned threads) {
  if (grid.empty()) throw std::invalid_argument("grid is empty");
  for (size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] >= 0.0)) throw std::invalid_argument("grid values must be >= 0");
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      throw std::invalid_argument("grid values must be strictly ascending");
    }
  }
  if (runs == 0) throw std::invalid_argument("runs must be >= 1");

  const size_t points = grid.size();
  std::vector<uint32_t> sizes(points * runs);
  std::vector<uint32_t> diams(points * runs);

  // x+y = 0 keeps every edge no matter what the RNG draws; one run suffices.
  size_t first_random = 0;
  if (grid[0] == 0.0) {
    RunWorkspace ws(g.node_count());
    const RunResult r = run_once(g, 1.0, derive_seed(seed, 0, 0), ws, true);
    for (uint32_t run = 0; run < runs; ++run) {
      sizes[run] = r.largest_size;
      diams[run] = r.largest_diameter;
    }
    first_random = 1;
  }

  const size_t total = (points - first_random) * runs;
  if (total > 0) {
    unsigned nthreads = threads != 0 ? threads : std::thread::hardware_concurrency();
    if (nthreads == 0) nthreads = 1;
    nthreads = static_cast<unsigned>(
        std::min<size_t>(nthreads, total));

    std::atomic<size_t> next{0};
    auto worker = [&]() {
      RunWorkspace ws(g.node_count());
      for (;;) {
        const size_t task = next.fetch_add(1, std::memory_order_relaxed);
        if (task >= total) break;
        const size_t k = first_random + task / runs;
        const uint32_t run = static_cast<uint32_t>(task % runs);
        const double p = std::exp(-grid[k]);
        const RunResult r =
            run_once(g, p, derive_seed(seed, k, run), ws, true);
        sizes[k * runs + run] = r.largest_size;
        diams[k * runs + run] = r.largest_diameter;
      }
    };

    if (nthreads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(nthreads);
      for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
  }

  // Sequential reduction over exact integer sums: the curve is identical for
  // any thread count or scheduling order.
  PercolationCurve curve;
  curve.grid = grid;
  curve.runs = runs;
  curve.node_count = g.node_count();
  curve.mean_d.resize(points);
  curve.mean_s.resize(points);
  curve.std_d.resize(points);
  curve.std_s.resize(points);
  for (size_t k = 0; k < points; ++k) {
    uint64_t sum_s = 0, sum_s2 = 0, sum_d = 0, sum_d2 = 0;
    for (uint32_t run = 0; run < runs; ++run) {
      const uint64_t s = sizes[k * runs + run];
      const uint64_t d = diams[k * runs + run];
      sum_s += s;
      sum_s2 += s * s;
      sum_d += d;
      sum_d2 += d * d;
    }
    const double n = static_cast<double>(runs);
    curve.mean_s[k] = static_cast<double>(sum_s) / n;
    curve.mean_d[k] = static_cast<double>(sum_d) / n;
    if (runs > 1) {
      const double var_s =
          (static_cast<double>(sum_s2) - n * curve.mean_s[k] * curve.mean_s[k]) / (n - 1.0);
      const double var_d =
          (static_cast<double>(sum_d2) - n * curve.mean_d[k] * curve.mean_d[k]) / (n - 1.0);
      curve.std_s[k] = var_s > 0.0 ? std::sqrt(var_s) : 0.0;
      curve.std_d[k] = var_d > 0.0 ? std::sqrt(var_d) : 0.0;
    } else {
      curve.std_s[k] = 0.0;
      curve.std_d[k] = 0.0;
    }
  }
  return curve;
}

double mean_largest_component(const Graph& g, double x_plus_y, uint32_t runs, uint64_t seed) {
  if (!(x_plus_y >= 0.0)) throw std::invalid_argument("x+y must be >= 0");
  if (runs == 0) throw std::invalid_argument("runs must be >= 1");
  const double p = std::exp(-x_plus_y);
  RunWorkspace ws(g.node_count());
  uint64_t sum = 0;
  for (uint32_t run = 0; run < runs; ++run) {
    sum += run_once(g, p, derive_seed(seed, 0, run), ws, false).largest_size;
  }
  return static_cast<double>(sum) / static_cast<double>(runs);
}

double default_grid_max(const Graph& g, uint64_t seed) {
  const double fraction = 0.01;
  const uint32_t probe_runs = 5;
  RunWorkspace ws(g.node_count());
  for (uint32_t k = 1; k <= 120; ++k) {
    const double t = 0.25 * k;
    const double p = std::exp(-t);
    uint64_t sum = 0;
    for (uint32_t run = 0; run < probe_runs; ++run) {
      sum += run_once(g, p, derive_seed(seed, 1000 + k, run), ws, false).largest_size;
    }
    const double mean = static_cast<double>(sum) / probe_runs;
    if (mean < fraction * static_cast<double>(g.node_count())) return t + 1.0;
  }
  return 31.0;
}

double estimate_yc3(const PercolationCurve& curve, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw std::invalid_argument("fraction must lie in (0, 1)");
  }
  const double threshold = fraction * static_cast<double>(curve.node_count);
  if (curve.size() < 2) throw std::runtime_error("curve has fewer than 2 grid points");
  if (curve.mean_s[0] < threshold) {
    throw std::runtime_error("curve starts below the giant-fraction threshold");
  }
  for (size_t k = 1; k < curve.size(); ++k) {
    if (curve.mean_s[k] < threshold) {
      const double s0 = curve.mean_s[k - 1];
      const double s1 = curve.mean_s[k];
      const double t0 = curve.grid[k - 1];
      const double t1 = curve.grid[k];
      return t0 + (s0 - threshold) / (s0 - s1) * (t1 - t0);
    }
  }
  throw std::runtime_error("curve never crosses the giant-fraction threshold");
}

double d_max(const PercolationCurve& curve) {
  if (curve.size() == 0) throw std::invalid_argument("curve is empty");
  return *std::max_element(curve.mean_d.begin(), curve.mean_d.end());
}

double d_peak_location(const PercolationCurve& curve) {
  if (curve.size() == 0) throw std::invalid_argument("curve is empty");
  const size_t k = static_cast<size_t>(
      std::max_element(curve.mean_d.begin(), curve.mean_d.end()) - curve.mean_d.begin());
  return curve.grid[k];
}

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double t) {
  if (t <= xs.front()) return ys.front();
  if (t >= xs.back()) return ys.back();
  const size_t hi = static_cast<size_t>(
      std::upper_bound(xs.begin(), xs.end(), t) - xs.begin());
  const size_t lo = hi - 1;
  const double w = (t - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

}  // namespace

double interp_mean_d(const PercolationCurve& curve, double t) {
  if (curve.size() == 0) throw std::invalid_argument("curve is empty");
  return interp(curve.grid, curve.mean_d, t);
}

double interp_mean_s(const PercolationCurve& curve, double t) {
  if (curve.size() == 0) throw std::invalid_argument("curve is empty");
  return interp(curve.grid, curve.mean_s, t);
}

void write_curve_csv(const PercolationCurve& curve, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
  out << "# nodes=" << curve.node_count << "\n";
  out << "x_plus_y,mean_D,mean_S,std_D,std_S,runs\n";
  char buf[160];
  for (size_t k = 0; k < curve.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.10g,%.10g,%.10g,%.10g,%.10g,%u\n", curve.grid[k],
                  curve.mean_d[k], curve.mean_s[k], curve.std_d[k], curve.std_s[k], curve.runs);
    out << buf;
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

PercolationCurve read_curve_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + ": " + std::strerror(errno));

  PercolationCurve curve;
  std::string line;
  size_t lineno = 0;

  if (!std::getline(in, line)) throw ParseError(path + ":1: missing '# nodes=<N>' header");
  ++lineno;
  if (std::sscanf(line.c_str(), "# nodes=%u", &curve.node_count) != 1) {
    throw ParseError(path + ":1: expected '# nodes=<N>', got '" + line + "'");
  }
  if (!std::getline(in, line)) throw ParseError(path + ":2: missing column header");
  ++lineno;
  if (line != "x_plus_y,mean_D,mean_S,std_D,std_S,runs") {
    throw ParseError(path + ":2: unexpected column header '" + line + "'");
  }

  while (std::getline(in, line)) {
    ++lineno;
    double t, md, ms, sd, ss;
    unsigned runs;
    int consumed = 0;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%u%n", &t, &md, &ms, &sd, &ss, &runs,
                    &consumed) != 6 ||
        static_cast<size_t>(consumed) != line.size()) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed CSV row");
    }
    if (!curve.grid.empty() && !(t > curve.grid.back())) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": grid must be ascending");
    }
    if (curve.runs != 0 && runs != curve.runs) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": inconsistent runs column");
    }
    curve.runs = runs;
    curve.grid.push_back(t);
    curve.mean_d.push_back(md);
    curve.mean_s.push_back(ms);
    curve.std_d.push_back(sd);
    curve.std_s.push_back(ss);
  }
  if (curve.grid.empty()) throw ParseError(path + ": no data rows");
  return curve;
}

}  // namespace qnet
