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

#include "qnet/netgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qnet/rng.hpp"

namespace qnet {

namespace {

constexpr double kPi = 3.14159265358979323846;

Graph gen_erdos_renyi(uint32_t n, double c, uint64_t seed) {
  if (n < 2) throw std::invalid_argument("ER requires at least 2 nodes");
  const double p = c / static_cast<double>(n - 1);
  if (!(p > 0.0) || p > 1.0) {
    throw std::invalid_argument("ER edge probability c/(N-1) must lie in (0, 1], got " +
                                std::to_string(p));
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(0.5 * n * c * 1.05) + 16);

  if (p == 1.0) {
    for (uint32_t v = 1; v < n; ++v) {
      for (uint32_t w = 0; w < v; ++w) edges.push_back({w, v});
    }
    return Graph(n, std::move(edges));
  }

  // Geometric skipping over the (v, w) pair enumeration: draws one uniform per
  // edge plus one per skip block instead of one per candidate pair.
  SplitMix64 rng(seed);
  const double log1mp = std::log(1.0 - p);
  uint64_t v = 1;
  int64_t w = -1;
  while (v < n) {
    const double r = rng.u01();
    w += 1 + static_cast<int64_t>(std::floor(std::log(1.0 - r) / log1mp));
    while (w >= static_cast<int64_t>(v) && v < n) {
      w -= static_cast<int64_t>(v);
      ++v;
    }
    if (v < n) edges.push_back({static_cast<uint32_t>(w), static_cast<uint32_t>(v)});
  }
  return Graph(n, std::move(edges));
}

Graph gen_barabasi_albert(uint32_t n, double c, uint64_t seed) {
  const double m_real = c / 2.0;
  const uint32_t m = static_cast<uint32_t>(m_real);
  if (!(m_real > 0.0) || static_cast<double>(m) != m_real) {
    throw std::invalid_argument("BA requires an even positive integer mean degree (c = 2m)");
  }
  if (n <= m) {
    throw std::invalid_argument("BA requires node count > m = " + std::to_string(m));
  }

  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(m) * n);
  // A node with degree d appears d times in `targets`, so sampling a uniform
  // entry is degree-proportional attachment.
  std::vector<uint32_t> targets;
  targets.reserve(2 * static_cast<size_t>(m) * n);

  // Seed clique on nodes 0..m.
  for (uint32_t v = 1; v <= m; ++v) {
    for (uint32_t w = 0; w < v; ++w) {
      edges.push_back({w, v});
      targets.push_back(w);
      targets.push_back(v);
    }
  }

  SplitMix64 rng(seed);
  std::vector<uint32_t> chosen(m);
  for (uint32_t t = m + 1; t < n; ++t) {
    // m distinct neighbors; a duplicate draw is resampled. Targets are
    // appended only after all m are chosen so the draw distribution is fixed
    // while selecting.
    for (uint32_t j = 0; j < m; ++j) {
      for (;;) {
        const uint32_t cand = targets[rng.below(targets.size())];
        bool dup = false;
        for (uint32_t k = 0; k < j; ++k) {
          if (chosen[k] == cand) {
            dup = true;
            break;
          }
        }
        if (!dup) {
          chosen[j] = cand;
          break;
        }
      }
    }
    for (uint32_t j = 0; j < m; ++j) {
      edges.push_back({chosen[j], t});
      targets.push_back(chosen[j]);
      targets.push_back(t);
    }
  }
  return Graph(n, std::move(edges));
}

double torus_dist2(double ax, double ay, double bx, double by) {
  double dx = std::fabs(ax - bx);
  if (dx > 0.5) dx = 1.0 - dx;
  double dy = std::fabs(ay - by);
  if (dy > 0.5) dy = 1.0 - dy;
  return dx * dx + dy * dy;
}

Graph gen_random_geometric(uint32_t n, double c, uint64_t seed) {
  if (n < 1) throw std::invalid_argument("RGG requires at least 1 node");
  if (!(c > 0.0)) throw std::invalid_argument("RGG requires mean degree > 0");
  const double r = std::sqrt(c / (kPi * static_cast<double>(n)));
  if (r >= 0.5) {
    throw std::invalid_argument("RGG radius r = sqrt(c/(pi N)) = " + std::to_string(r) +
                                " must be < 1/2; increase N or lower c");
  }

  SplitMix64 rng(seed);
  std::vector<double> xs(n), ys(n);
  for (uint32_t i = 0; i < n; ++i) {
    xs[i] = rng.u01();
    ys[i] = rng.u01();
  }

  const double r2 = r * r;
  std::vector<Edge> edges;
  edges.reserve(static_cast<size_t>(0.5 * n * c * 1.1) + 16);

  const uint32_t cells = static_cast<uint32_t>(std::floor(1.0 / r));
  if (cells < 4) {
    // Too few cells for a 3x3 neighborhood without double-visiting under
    // wraparound; the graph is tiny, brute force is fine.
    for (uint32_t i = 0; i < n; ++i) {
      for (uint32_t j = i + 1; j < n; ++j) {
        if (torus_dist2(xs[i], ys[i], xs[j], ys[j]) <= r2) edges.push_back({i, j});
      }
    }
  } else {
    // Cell side 1/cells >= r, so neighbors within r live in the 3x3 block.
    std::vector<std::vector<uint32_t>> grid(static_cast<size_t>(cells) * cells);
    auto cell_of = [&](double x) {
      uint32_t k = static_cast<uint32_t>(x * cells);
      return k >= cells ? cells - 1 : k;
    };
    for (uint32_t i = 0; i < n; ++i) {
      grid[static_cast<size_t>(cell_of(ys[i])) * cells + cell_of(xs[i])].push_back(i);
    }
    for (uint32_t cy = 0; cy < cells; ++cy) {
      for (uint32_t cx = 0; cx < cells; ++cx) {
        const auto& bucket = grid[static_cast<size_t>(cy) * cells + cx];
        if (bucket.empty()) continue;
        for (int dy = -1; dy <= 1; ++dy) {
          const uint32_t ny = (cy + cells + static_cast<uint32_t>(dy)) % cells;
          for (int dx = -1; dx <= 1; ++dx) {
            const uint32_t nx = (cx + cells + static_cast<uint32_t>(dx)) % cells;
            const auto& other = grid[static_cast<size_t>(ny) * cells + nx];
            for (uint32_t i : bucket) {
              for (uint32_t j : other) {
                if (j <= i) continue;  // each unordered pair once
                if (torus_dist2(xs[i], ys[i], xs[j], ys[j]) <= r2) edges.push_back({i, j});
              }
            }
          }
        }
      }
    }
    // Canonical edge order regardless of cell traversal.
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  }
  return Graph(n, std::move(edges));
}

}  // namespace

Graph generate(const TopologyConfig& config) {
  switch (config.kind) {
    case TopologyKind::kErdosRenyi:
      return gen_erdos_renyi(config.node_count, config.mean_degree, config.seed);
    case TopologyKind::kBarabasiAlbert:
      return gen_barabasi_albert(config.node_count, config.mean_degree, config.seed);
    case TopologyKind::kRandomGeometric:
      return gen_random_geometric(config.node_count, config.mean_degree, config.seed);
  }
  throw std::invalid_argument("unknown topology kind");
}

}  // namespace qnet
