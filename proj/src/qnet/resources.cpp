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

#include "qnet/resources.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "qnet/graph_io.hpp"
#include "qnet/rng.hpp"

namespace qnet {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

void check_dist(const ResourceDistribution& dist) {
  if (!(dist.mean > 0.0)) {
    throw std::invalid_argument("resource distribution mean must be > 0");
  }
}

double gaussian_sigma(const ResourceDistribution& dist) {
  return dist.stddev > 0.0 ? dist.stddev : dist.mean / 3.0;
}

// P(N(mu, sigma) >= t), unnormalized upper tail.
double normal_tail(double mu, double sigma, double t) {
  return 0.5 * std::erfc((t - mu) / (sigma * kSqrt2));
}

}  // namespace

double required_pairs(double path_length, double alpha) {
  if (!(path_length >= 1.0)) {
    throw std::invalid_argument("path length must be >= 1");
  }
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("alpha must be >= 0");
  }
  return std::pow(path_length, alpha);
}

ResourceAssignment sample_resources(const Graph& g, const ResourceDistribution& dist,
                                    uint64_t seed) {
  check_dist(dist);
  SplitMix64 rng(seed);
  ResourceAssignment out;
  out.values.reserve(g.edge_count());
  switch (dist.kind) {
    case DistributionKind::kExponential:
      for (uint64_t i = 0; i < g.edge_count(); ++i) {
        out.values.push_back(sample_exponential(rng, dist.mean));
      }
      break;
    case DistributionKind::kUniform:
      for (uint64_t i = 0; i < g.edge_count(); ++i) {
        out.values.push_back(sample_uniform_mean(rng, dist.mean));
      }
      break;
    case DistributionKind::kPoisson:
      for (uint64_t i = 0; i < g.edge_count(); ++i) {
        out.values.push_back(static_cast<double>(sample_poisson(rng, dist.mean)));
      }
      break;
    case DistributionKind::kGaussian: {
      const double sigma = gaussian_sigma(dist);
      for (uint64_t i = 0; i < g.edge_count(); ++i) {
        out.values.push_back(sample_truncated_gaussian(rng, dist.mean, sigma));
      }
      break;
    }
  }
  return out;
}

double survival(const ResourceDistribution& dist, double threshold) {
  check_dist(dist);
  if (threshold <= 0.0) return 1.0;
  switch (dist.kind) {
    case DistributionKind::kExponential:
      return std::exp(-threshold / dist.mean);
    case DistributionKind::kUniform: {
      const double s = 1.0 - threshold / (2.0 * dist.mean);
      return s > 0.0 ? s : 0.0;
    }
    case DistributionKind::kPoisson:
      // P(N >= t) = P(Gamma(t) <= mean), exact at integer t and continuous in
      // between, which keeps this function invertible.
      return boost::math::gamma_p(threshold, dist.mean);
    case DistributionKind::kGaussian: {
      const double sigma = gaussian_sigma(dist);
      return normal_tail(dist.mean, sigma, threshold) / normal_tail(dist.mean, sigma, 0.0);
    }
  }
  throw std::invalid_argument("unknown distribution kind");
}

namespace {

// Solves survival(t) = exp(-x) for t > 0 by bracketing + bisection.
double invert_survival(const ResourceDistribution& dist, double x) {
  // Work with f(t) = -ln survival(t), non-decreasing, f(0) = 0.
  const auto f = [&](double t) { return -std::log(survival(dist, t)); };

  double lo = 0.0;
  double hi = dist.mean > 1.0 ? dist.mean : 1.0;
  for (int i = 0; i < 200 && f(hi) < x; ++i) {
    lo = hi;
    hi *= 2.0;
  }
  if (f(hi) < x) {
    throw std::runtime_error("survival inversion failed to bracket x = " + std::to_string(x));
  }
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-9 * (hi > 1.0 ? hi : 1.0)) break;
    if (f(mid) < x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double l_curve(const ResourceDistribution& dist, const RepeaterModel& model, double x) {
  check_dist(dist);
  if (!(x >= 0.0)) throw std::invalid_argument("x must be >= 0");
  if (x == 0.0) return 0.0;
  if (!(model.alpha > 0.0)) {
    throw std::invalid_argument("alpha must be > 0 for a nonzero operating point");
  }
  const double inv_alpha = 1.0 / model.alpha;
  switch (dist.kind) {
    case DistributionKind::kExponential:
      return std::pow(x * dist.mean, inv_alpha);
    case DistributionKind::kUniform:
      return std::pow(2.0 * dist.mean * (1.0 - std::exp(-x)), inv_alpha);
    case DistributionKind::kPoisson:
    case DistributionKind::kGaussian:
      return std::pow(invert_survival(dist, x), inv_alpha);
  }
  throw std::invalid_argument("unknown distribution kind");
}

void write_resources(const Graph& g, const ResourceAssignment& assignment,
                     const std::string& path) {
  if (assignment.values.size() != g.edge_count()) {
    throw std::invalid_argument("assignment has " + std::to_string(assignment.values.size()) +
                                " values for " + std::to_string(g.edge_count()) + " edges");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
  char buf[64];
  for (size_t i = 0; i < assignment.values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", assignment.values[i]);
    out << g.edges()[i].u << "\t" << g.edges()[i].v << "\t" << buf << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

ResourceAssignment read_resources(const Graph& g, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + ": " + std::strerror(errno));

  ResourceAssignment out;
  out.values.reserve(g.edge_count());
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t i = lineno - 1;
    if (i >= g.edge_count()) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": more resource lines than the " +
                       std::to_string(g.edge_count()) + " graph edges");
    }
    uint32_t u = 0, v = 0;
    double value = 0.0;
    int consumed = 0;
    if (std::sscanf(line.c_str(), "%u\t%u\t%lf%n", &u, &v, &value, &consumed) != 3 ||
        static_cast<size_t>(consumed) != line.size()) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected '<u>\\t<v>\\t<n>'");
    }
    const Edge& e = g.edges()[i];
    const bool aligned = (u == e.u && v == e.v) || (u == e.v && v == e.u);
    if (!aligned) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": edge " + std::to_string(u) +
                       "-" + std::to_string(v) + " does not match graph edge " +
                       std::to_string(e.u) + "-" + std::to_string(e.v) + " at this position");
    }
    if (!std::isfinite(value) || value < 0.0) {
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": resource value must be finite and >= 0");
    }
    out.values.push_back(value);
  }
  if (out.values.size() != g.edge_count()) {
    throw ParseError(path + ": expected " + std::to_string(g.edge_count()) +
                     " resource lines (one per edge), got " + std::to_string(out.values.size()) +
                     "; first missing edge is " + std::to_string(g.edges()[out.values.size()].u) +
                     "-" + std::to_string(g.edges()[out.values.size()].v));
  }
  return out;
}

}  // namespace qnet
