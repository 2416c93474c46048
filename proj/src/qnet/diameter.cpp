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

#include "qnet/diameter.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>

namespace qnet {

uint32_t bfs_eccentricity(const CompactGraph& cg, uint32_t src, DiameterWork& work,
                          std::vector<uint32_t>* parents) {
  const uint32_t n = cg.n();
  work.dist.assign(n, kUnreached);
  work.queue.clear();
  work.queue.reserve(n);
  if (parents != nullptr) parents->assign(n, kUnreached);
  work.dist[src] = 0;
  work.queue.push_back(src);
  uint32_t ecc = 0;
  for (size_t head = 0; head < work.queue.size(); ++head) {
    const uint32_t v = work.queue[head];
    const uint32_t dv = work.dist[v];
    ecc = dv;
    for (uint32_t i = cg.offsets[v]; i < cg.offsets[v + 1]; ++i) {
      const uint32_t w = cg.adj[i];
      if (work.dist[w] != kUnreached) continue;
      work.dist[w] = dv + 1;
      if (parents != nullptr) (*parents)[w] = v;
      work.queue.push_back(w);
    }
  }
  return ecc;
}

void batch_bfs(const CompactGraph& cg, const uint32_t* sources, uint32_t count,
               DiameterWork& work, uint32_t* ecc_out) {
  const uint32_t n = cg.n();
  work.reached.assign(n, 0);
  work.acc.assign(n, 0);
  work.front_bits.assign(n, 0);
  if (work.arrival.size() < static_cast<size_t>(count) * n) {
    work.arrival.resize(static_cast<size_t>(count) * n);
  }
  work.frontier.clear();
  work.next_frontier.clear();
  work.touched.clear();
  // Sources must be distinct nodes of cg.
  for (uint32_t j = 0; j < count; ++j) {
    const uint32_t s = sources[j];
    const uint64_t bit = uint64_t{1} << j;
    work.reached[s] |= bit;
    work.front_bits[s] |= bit;
    work.arrival[static_cast<size_t>(j) * n + s] = 0;
    ecc_out[j] = 0;
    work.frontier.push_back(s);
  }
  uint32_t level = 0;
  while (!work.frontier.empty()) {
    ++level;
    work.next_frontier.clear();
    // Wide levels skip per-edge bookkeeping: spread with bare ORs, then scan
    // every node once. Narrow levels track touched nodes instead.
    if (work.frontier.size() >= n / 16) {
      for (const uint32_t v : work.frontier) {
        const uint64_t bits = work.front_bits[v];
        work.front_bits[v] = 0;
        for (uint32_t i = cg.offsets[v]; i < cg.offsets[v + 1]; ++i) {
          work.acc[cg.adj[i]] |= bits;
        }
      }
      for (uint32_t w = 0; w < n; ++w) {
        const uint64_t fresh = work.acc[w] & ~work.reached[w];
        work.acc[w] = 0;
        if (fresh == 0) continue;
        work.reached[w] |= fresh;
        work.front_bits[w] = fresh;
        work.next_frontier.push_back(w);
        uint64_t bits = fresh;
        while (bits != 0) {
          const int j = std::countr_zero(bits);
          bits &= bits - 1;
          work.arrival[static_cast<size_t>(j) * n + w] = level;
          ecc_out[j] = level;
        }
      }
    } else {
      work.touched.clear();
      for (const uint32_t v : work.frontier) {
        const uint64_t bits = work.front_bits[v];
        work.front_bits[v] = 0;
        for (uint32_t i = cg.offsets[v]; i < cg.offsets[v + 1]; ++i) {
          const uint32_t w = cg.adj[i];
          if (work.acc[w] == 0) work.touched.push_back(w);
          work.acc[w] |= bits;
        }
      }
      for (const uint32_t w : work.touched) {
        const uint64_t fresh = work.acc[w] & ~work.reached[w];
        work.acc[w] = 0;
        if (fresh == 0) continue;
        work.reached[w] |= fresh;
        work.front_bits[w] = fresh;
        work.next_frontier.push_back(w);
        uint64_t bits = fresh;
        while (bits != 0) {
          const int j = std::countr_zero(bits);
          bits &= bits - 1;
          work.arrival[static_cast<size_t>(j) * n + w] = level;
          ecc_out[j] = level;
        }
      }
    }
    std::swap(work.frontier, work.next_frontier);
  }
}

namespace {

// Index of the farthest node in work.dist, smallest id on ties.
uint32_t farthest_node(const DiameterWork& work) {
  uint32_t best = 0;
  uint32_t best_d = 0;
  for (uint32_t v = 0; v < work.dist.size(); ++v) {
    if (work.dist[v] != kUnreached && work.dist[v] > best_d) {
      best_d = work.dist[v];
      best = v;
    }
  }
  return best;
}

// Folds the scalar BFS in work.dist (source eccentricity ecc) into the
// per-node eccentricity bounds: d(u, v) <= ecc(v) <= ecc(u) + d(u, v).
void absorb_sweep(DiameterWork& work, uint32_t ecc) {
  const size_t n = work.dist.size();
  for (size_t v = 0; v < n; ++v) {
    const uint32_t d = work.dist[v];
    work.ecc_lo[v] = std::max(work.ecc_lo[v], d);
    work.ecc_up[v] = std::min(work.ecc_up[v], ecc + d);
  }
}

}  // namespace

uint32_t diameter_ifub(const CompactGraph& cg, DiameterWork& work) {
  const uint32_t n = cg.n();
  if (n <= 1) return 0;
  if (n == 2) return 1;

  uint32_t srcs[64];
  uint32_t eccs[64];

  // Small components: one batch over every node is exact all-pairs.
  if (n <= 64) {
    for (uint32_t v = 0; v < n; ++v) srcs[v] = v;
    batch_bfs(cg, srcs, n, work, eccs);
    uint32_t d = 0;
    for (uint32_t v = 0; v < n; ++v) d = std::max(d, eccs[v]);
    return d;
  }

  work.ecc_lo.assign(n, 0);
  work.ecc_up.assign(n, kUnreached);

  // Double sweep: farthest from a max-degree start, then the midpoint of the
  // deep path found from there is a strong approximate center.
  uint32_t start = 0;
  {
    uint32_t best_deg = 0;
    for (uint32_t v = 0; v < n; ++v) {
      const uint32_t deg = cg.offsets[v + 1] - cg.offsets[v];
      if (deg > best_deg) {
        best_deg = deg;
        start = v;
      }
    }
  }
  uint32_t ecc_center = bfs_eccentricity(cg, start, work, nullptr);
  absorb_sweep(work, ecc_center);
  uint32_t lb = ecc_center;
  work.dist_center = work.dist;

  const uint32_t a = farthest_node(work);
  const uint32_t ecc_a = bfs_eccentricity(cg, a, work, &work.parent);
  absorb_sweep(work, ecc_a);
  lb = std::max(lb, ecc_a);

  uint32_t mid = farthest_node(work);
  for (uint32_t step = 0; step < ecc_a / 2; ++step) mid = work.parent[mid];
  const uint32_t ecc_mid = bfs_eccentricity(cg, mid, work, nullptr);
  absorb_sweep(work, ecc_mid);
  lb = std::max(lb, ecc_mid);
  if (ecc_mid < ecc_center) {
    ecc_center = ecc_mid;
    work.dist_center = work.dist;
  }

  work.undecided.clear();
  for (uint32_t v = 0; v < n; ++v) {
    if (work.ecc_up[v] > lb) work.undecided.push_back(v);
  }

  // Certify the lower bound batch by batch. Most slots go to the deepest
  // undecided nodes (they pin down far pairs and raise lb); a few go to the
  // most central unswept ones, whose exact eccentricities cap ecc_up for
  // every node near them.
  while (work.undecided.size() > 1) {
    // A pair can only beat lb if both endpoints are undecided: a decided
    // endpoint w bounds the pair by d(u, w) <= ecc(w) <= lb. Undecided pairs
    // are bounded through the center by the sum of their levels, so once the
    // two deepest undecided levels sum to at most lb, nothing can beat it.
    // By the same bound, a node whose level plus the deepest cannot exceed
    // lb is pair-safe against every other undecided node and drops out
    // without a sweep.
    uint32_t top1 = 0;
    uint32_t top2 = 0;
    for (const uint32_t v : work.undecided) {
      const uint32_t d = work.dist_center[v];
      if (d > top1) {
        top2 = top1;
        top1 = d;
      } else if (d > top2) {
        top2 = d;
      }
    }
    if (top1 + top2 <= lb) break;
    {
      size_t keep = 0;
      for (const uint32_t v : work.undecided) {
        if (work.dist_center[v] + top1 > lb) work.undecided[keep++] = v;
      }
      work.undecided.resize(keep);
    }
    if (work.undecided.size() <= 1) break;

    uint32_t count;
    if (work.undecided.size() <= 64) {
      count = static_cast<uint32_t>(work.undecided.size());
      std::copy(work.undecided.begin(), work.undecided.end(), srcs);
    } else {
      std::sort(work.undecided.begin(), work.undecided.end(),
                [&](uint32_t x, uint32_t y) {
                  if (work.dist_center[x] != work.dist_center[y]) {
                    return work.dist_center[x] > work.dist_center[y];
                  }
                  return x < y;
                });
      count = 64;
      std::copy(work.undecided.begin(), work.undecided.begin() + 64, srcs);
    }

    batch_bfs(cg, srcs, count, work, eccs);
    uint32_t best_j = kUnreached;
    for (uint32_t j = 0; j < count; ++j) {
      lb = std::max(lb, eccs[j]);
      if (eccs[j] < ecc_center) {
        ecc_center = eccs[j];
        best_j = j;
      }
    }
    if (best_j != kUnreached) {
      const uint32_t* arr = work.arrival.data() + static_cast<size_t>(best_j) * n;
      work.dist_center.assign(arr, arr + n);
    }
    // Only undecided nodes consult their bounds again, so cap just those.
    for (uint32_t j = 0; j < count; ++j) {
      const uint32_t* arr = work.arrival.data() + static_cast<size_t>(j) * n;
      const uint32_t e = eccs[j];
      for (const uint32_t v : work.undecided) {
        work.ecc_up[v] = std::min(work.ecc_up[v], e + arr[v]);
      }
    }

    size_t keep = 0;
    for (const uint32_t v : work.undecided) {
      if (work.ecc_up[v] > lb) work.undecided[keep++] = v;
    }
    work.undecided.resize(keep);
  }
  return lb;
}

uint32_t diameter_all_pairs(const CompactGraph& cg, DiameterWork& work) {
  uint32_t d = 0;
  for (uint32_t v = 0; v < cg.n(); ++v) {
    d = std::max(d, bfs_eccentricity(cg, v, work, nullptr));
  }
  return d;
}

}  // namespace qnet
