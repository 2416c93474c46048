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

#include "qnet/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qnet {

double cstar(double c_eff) {
  if (!(c_eff > 0.0)) throw std::invalid_argument("c_eff must be > 0");
  // On (0, 1] the monotone branch already contains c_eff, so the dual root
  // is c_eff itself; bisection near the flat tangency at t = 1 would only
  // resolve it to sqrt(ulp).
  if (c_eff <= 1.0) return c_eff;
  const double target = c_eff * std::exp(-c_eff);
  // t e^{-t} increases on (0, 1] from 0 to 1/e >= target, so the bracket
  // [0, 1] always contains exactly one root of the monotone branch.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 100 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid * std::exp(-mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double er_diameter(uint32_t nodes, double degree, double x_plus_y) {
  if (nodes < 2) throw std::invalid_argument("need at least 2 nodes");
  if (!(degree > 0.0)) throw std::invalid_argument("mean degree must be > 0");
  if (!(x_plus_y >= 0.0)) throw std::invalid_argument("x+y must be >= 0");
  const double c_eff = degree * std::exp(-x_plus_y);
  if (std::fabs(c_eff - 1.0) < 1e-6) {
    throw std::runtime_error("effective degree too close to critical (|c_eff - 1| < 1e-6); "
                             "the asymptotic diameter diverges here");
  }
  const double log_n = std::log(static_cast<double>(nodes));
  const double log_c = std::log(c_eff);
  if (c_eff > 1.0) {
    return log_n * (1.0 / log_c - 2.0 / std::log(cstar(c_eff)));
  }
  return -log_n / log_c;
}

namespace {

// Least-squares line through the samples within `half_width` of t[i],
// evaluated at t[i]. The window is widened to the nearest neighbor on each
// side when the grid is coarser than the half-width, so the fit always sees
// at least two distinct abscissae (one at the curve ends). Offsets are taken
// relative to t[i] to keep the normal equations well conditioned.
void local_linear(const std::vector<double>& t, const std::vector<double>& v,
                  double half_width, std::vector<double>* value,
                  std::vector<double>* slope) {
  const size_t n = t.size();
  value->assign(n, 0.0);
  slope->assign(n, 0.0);
  if (n == 1) {
    (*value)[0] = v[0];
    return;
  }
  for (size_t i = 0; i < n; ++i) {
    double reach = half_width;
    if (i > 0) reach = std::max(reach, t[i] - t[i - 1]);
    if (i + 1 < n) reach = std::max(reach, t[i + 1] - t[i]);
    size_t lo = i, hi = i;
    while (lo > 0 && t[i] - t[lo - 1] <= reach + 1e-12) --lo;
    while (hi + 1 < n && t[hi + 1] - t[i] <= reach + 1e-12) ++hi;
    double sw = 0.0, st = 0.0, sv = 0.0, stt = 0.0, stv = 0.0;
    for (size_t k = lo; k <= hi; ++k) {
      const double dt = t[k] - t[i];
      sw += 1.0;
      st += dt;
      sv += v[k];
      stt += dt * dt;
      stv += dt * v[k];
    }
    const double det = sw * stt - st * st;
    (*slope)[i] = (sw * stv - st * sv) / det;
    (*value)[i] = (sv - (*slope)[i] * st) / sw;
  }
}

}  // namespace

DGrid make_dgrid(const PercolationCurve& curve, double half_width) {
  if (!(half_width >= 0.0)) throw std::invalid_argument("half_width must be >= 0");
  if (curve.grid.size() != curve.mean_d.size()) {
    throw std::invalid_argument("curve grid and mean_d sizes differ");
  }
  DGrid dg;
  dg.t = curve.grid;
  dg.d = curve.mean_d;
  local_linear(dg.t, dg.d, half_width, &dg.d_smooth, &dg.d_prime);
  return dg;
}

PercolationCurve smooth_diameter(const PercolationCurve& curve, double half_width) {
  if (!(half_width >= 0.0)) throw std::invalid_argument("half_width must be >= 0");
  if (curve.grid.size() != curve.mean_d.size()) {
    throw std::invalid_argument("curve grid and mean_d sizes differ");
  }
  PercolationCurve out = curve;
  std::vector<double> slope;
  local_linear(curve.grid, curve.mean_d, half_width, &out.mean_d, &slope);
  return out;
}

namespace {

double interp_raw_d(const DGrid& dg, double x) {
  if (x <= dg.t.front()) return dg.d.front();
  if (x >= dg.t.back()) return dg.d.back();
  const size_t hi = static_cast<size_t>(
      std::upper_bound(dg.t.begin(), dg.t.end(), x) - dg.t.begin());
  const size_t lo = hi - 1;
  const double w = (x - dg.t[lo]) / (dg.t[hi] - dg.t[lo]);
  return dg.d[lo] + w * (dg.d[hi] - dg.d[lo]);
}

}  // namespace

double y_function(const DGrid& dg, double mean_n, double alpha, double x_tilde) {
  if (!(mean_n > 0.0)) throw std::invalid_argument("mean_n must be > 0");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (dg.t.empty()) throw std::invalid_argument("empty D grid");
  if (!(x_tilde >= dg.t.front() && x_tilde <= dg.t.back())) {
    throw std::invalid_argument("x_tilde outside the sampled grid");
  }
  return x_tilde - std::pow(interp_raw_d(dg, x_tilde), alpha) / mean_n;
}

double n_critical(const DGrid& dg, double alpha, double y_c3) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  size_t usable = 0;
  double best = 0.0;
  for (size_t k = 1; k + 1 < dg.t.size(); ++k) {
    if (!(dg.t[k] > 0.0) || !(dg.t[k] < y_c3)) continue;
    ++usable;
    const double d = dg.d_smooth[k];
    const double slope = dg.d_prime[k];
    const double value = alpha * (alpha == 1.0 ? slope : std::pow(d, alpha - 1.0) * slope);
    best = std::max(best, value);
  }
  if (usable < 5) {
    throw std::invalid_argument("fewer than 5 grid points below y_c3; grid too coarse");
  }
  return best;
}

double alpha_critical(const DGrid& dg, double y_c3) {
  size_t usable = 0;
  double best = std::numeric_limits<double>::infinity();
  for (size_t k = 1; k + 1 < dg.t.size(); ++k) {
    if (!(dg.t[k] > 0.0) || !(dg.t[k] < y_c3)) continue;
    ++usable;
    const double slope = dg.d_prime[k];
    if (!(slope > 0.0)) continue;
    best = std::min(best, (dg.d_smooth[k] / dg.t[k]) / slope);
  }
  if (usable < 5) {
    throw std::invalid_argument("fewer than 5 grid points below y_c3; grid too coarse");
  }
  return best;
}

Yc1Estimate yc1_from_yc3(double y_c3, double d_max, double alpha, double mean_n) {
  if (!(mean_n > 0.0)) throw std::invalid_argument("mean_n must be > 0");
  if (!(d_max >= 0.0)) throw std::invalid_argument("d_max must be >= 0");
  Yc1Estimate est;
  est.value = y_c3 - std::pow(d_max, alpha) / mean_n;
  est.functionally_broken = est.value < 0.0;
  return est;
}

}  // namespace qnet
