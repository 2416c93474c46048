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

#ifndef QNET_PERCOLATION_HPP_
#define QNET_PERCOLATION_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qnet/graph.hpp"

namespace qnet {

// Keeps each edge independently with probability p. Edge i is kept iff the
// i-th uniform drawn from `seed` is below p, so runs with the same seed and
// decreasing p are nested (coupling).
Graph bond_percolate(const Graph& g, double p, uint64_t seed);

// Keeps each node independently with probability p; surviving edges are those
// with both endpoints alive. The node set itself is preserved (failed nodes
// become isolated), keeping node indices stable.
Graph node_percolate(const Graph& g, double p, uint64_t seed);

// Mean giant-component statistics vs x+y, where the bond survival probability
// is p = e^{-(x+y)}.
struct PercolationCurve {
  std::vector<double> grid;    // x+y values, ascending
  std::vector<double> mean_d;  // mean diameter of the largest component
  std::vector<double> mean_s;  // mean size of the largest component
  std::vector<double> std_d;   // sample standard deviations over runs
  std::vector<double> std_s;
  uint32_t runs = 0;
  uint32_t node_count = 0;  // of the source graph

  size_t size() const { return grid.size(); }
};

// Grid {0, step, 2*step, ...} covering [0, max_x] (last point >= max_x).
std::vector<double> make_grid(double max_x, double step);

// Runs `runs` independent bond percolations per grid point. Per-run seeds are
// derive_seed(seed, grid index, run index) and statistics are reduced from
// integer per-run sums, so results are bit-identical for any thread count.
// threads = 0 picks hardware concurrency.
PercolationCurve measure_curve(const Graph& g, const std::vector<double>& grid, uint32_t runs,
                               uint64_t seed, unsigned threads = 0);

// Mean largest-component size at a single operating point x+y (no diameter)
// over `runs` bond percolations.
double mean_largest_component(const Graph& g, double x_plus_y, uint32_t runs, uint64_t seed);

// Coarse upper bound for the grid: scans x+y in steps of 0.25 with a few
// cheap runs until the giant fraction drops below 1%, then adds 1.0.
double default_grid_max(const Graph& g, uint64_t seed);

// Structural break estimate y_c3: first grid crossing of
// mean_S / N < fraction, linearly interpolated between the bracketing grid
// points. Throws std::runtime_error if the curve never crosses.
double estimate_yc3(const PercolationCurve& curve, double fraction = 0.01);

// Maximum of mean_D over the grid (the D-curve peak value).
double d_max(const PercolationCurve& curve);
// Grid location of the first maximum of mean_D.
double d_peak_location(const PercolationCurve& curve);

// Piecewise-linear interpolation of mean_D / mean_S at x+y = t (clamped to
// the grid range).
double interp_mean_d(const PercolationCurve& curve, double t);
double interp_mean_s(const PercolationCurve& curve, double t);

// CSV format:
//   # nodes=<N>
//   x_plus_y,mean_D,mean_S,std_D,std_S,runs
// Values are written with %.10g; write(read(f)) is byte-stable.
void write_curve_csv(const PercolationCurve& curve, const std::string& path);
PercolationCurve read_curve_csv(const std::string& path);

}  // namespace qnet

#endif  // QNET_PERCOLATION_HPP_
