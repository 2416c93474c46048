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

#ifndef QNET_ANALYTICS_HPP_
#define QNET_ANALYTICS_HPP_

#include <cstdint>
#include <vector>

#include "qnet/percolation.hpp"

namespace qnet {

// Root t in (0, 1] of t e^{-t} = c_eff e^{-c_eff}: the dual branch value
// controlling the subcritical-tree correction of the diameter formula.
// Bisection on the monotone branch, |dt| < 1e-12. c_eff must be > 0.
double cstar(double c_eff);

// Asymptotic diameter of a diluted random graph with mean degree `degree` on
// `nodes` nodes, evaluated at dilution x+y (effective degree c e^{-(x+y)}):
//   supercritical: ln N * (1 / ln c_eff - 2 / ln c*)
//   subcritical:   ln N * (-1 / ln c_eff)
// Throws std::runtime_error inside the singular window |c_eff - 1| < 1e-6.
double er_diameter(uint32_t nodes, double degree, double x_plus_y);

// Half-width, in grid units, of the local least-squares window behind
// d_smooth/d_prime and smooth_diameter. A fixed physical width (rather than a
// fixed point count) keeps the estimates stable when the same curve is
// sampled on a finer or coarser grid, and it is sized so the slope noise of a
// 100-run Monte Carlo curve stays a small fraction of the slopes it resolves.
inline constexpr double kCurveSmoothingHalfWidth = 0.15;

// Sampled D-curve with local-linear (moving least-squares) value and slope
// estimates: the inputs for the criticality estimates below. At each grid
// point the fit uses every sample within `half_width`, widened to the nearest
// neighbors when the grid is coarser than that, so the fit is never
// degenerate. Linear data is reproduced exactly, ends included.
struct DGrid {
  std::vector<double> t;       // grid
  std::vector<double> d;       // raw mean diameter
  std::vector<double> d_smooth;
  std::vector<double> d_prime;  // local-linear slope at every grid point
};

DGrid make_dgrid(const PercolationCurve& curve,
                 double half_width = kCurveSmoothingHalfWidth);

// Copy of `curve` with mean_d replaced by its local-linear fit, for feeding
// the fixed-point machinery the same noise-suppressed diameter curve that
// n_critical and alpha_critical differentiate. Leaves mean_s untouched.
PercolationCurve smooth_diameter(const PercolationCurve& curve,
                                 double half_width = kCurveSmoothingHalfWidth);

// Y(x~) = x~ - D(x~)^alpha / mean_n, the y-level at which the fixed point
// sits at x~. Uses raw interpolated D.
double y_function(const DGrid& dg, double mean_n, double alpha, double x_tilde);

// Critical mean resources: below n_c = alpha * max over (0, y_c3) of
// D^{alpha-1} D' the transition is discontinuous. Requires at least five
// usable interior grid points below y_c3.
double n_critical(const DGrid& dg, double alpha, double y_c3);

// Critical cost exponent: alpha_c = min over (0, y_c3) of (D / x) / D' among
// points with D' > 0; +infinity when D never increases.
double alpha_critical(const DGrid& dg, double y_c3);

struct Yc1Estimate {
  double value = 0.0;
  // y_c1 < 0 means even a pristine network (y = 0) cannot span its own
  // diameter: the backbone is broken before any dilution.
  bool functionally_broken = false;
};

// Closed-form y_c1 = y_c3 - D_max^alpha / mean_n.
Yc1Estimate yc1_from_yc3(double y_c3, double d_max, double alpha, double mean_n);

}  // namespace qnet

#endif  // QNET_ANALYTICS_HPP_
