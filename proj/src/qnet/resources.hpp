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

#ifndef QNET_RESOURCES_HPP_
#define QNET_RESOURCES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "qnet/graph.hpp"

namespace qnet {

enum class DistributionKind {
  kExponential,
  kUniform,   // on [0, 2 * mean]
  kPoisson,
  kGaussian,  // truncated to [0, inf), renormalized
};

struct ResourceDistribution {
  DistributionKind kind = DistributionKind::kExponential;
  double mean = 0.0;
  // Gaussian only; values <= 0 mean "unset" and default to mean / 3.
  double stddev = 0.0;
};

// Link-cost model: a path of length l consumes l^alpha entangled pairs on
// every link along it.
struct RepeaterModel {
  double alpha = 1.0;
};

// Entangled pairs needed per link for a path of length l. l >= 1, alpha >= 0.
double required_pairs(double path_length, double alpha);

// Per-edge resource values, index-aligned with Graph::edges().
struct ResourceAssignment {
  std::vector<double> values;
};

ResourceAssignment sample_resources(const Graph& g, const ResourceDistribution& dist,
                                    uint64_t seed);

// P(n >= threshold) for the given distribution; 1 at threshold <= 0, strictly
// positive and non-increasing beyond. The Poisson case uses the continuous
// interpolation P(Gamma(t) <= mean) (equal to the discrete tail at integer t)
// so the survival/l_curve pair stays invertible.
double survival(const ResourceDistribution& dist, double threshold);

// Largest path length l(x) such that links with survival probability e^{-x}
// can still supply l^alpha pairs: inverts survival(l^alpha) = e^{-x}.
// Closed form for exponential and uniform; bracketing bisection (relative
// tolerance 1e-9) for Poisson and Gaussian. x >= 0; alpha > 0 when x > 0.
double l_curve(const ResourceDistribution& dist, const RepeaterModel& model, double x);

// Callable bundle used by the fixed-point machinery.
struct LCurve {
  ResourceDistribution dist;
  RepeaterModel model;
  double operator()(double x) const { return l_curve(dist, model, x); }
};

// Resource file format: one line per edge, '<u>\t<v>\t<n>' aligned with the
// graph's edge list. read verifies the alignment edge by edge.
void write_resources(const Graph& g, const ResourceAssignment& assignment,
                     const std::string& path);
ResourceAssignment read_resources(const Graph& g, const std::string& path);

}  // namespace qnet

#endif  // QNET_RESOURCES_HPP_
