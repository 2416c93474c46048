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

#ifndef QNET_DIAMETER_HPP_
#define QNET_DIAMETER_HPP_

#include <cstdint>
#include <vector>

namespace qnet {

// Compact CSR view of a connected graph with nodes relabelled 0..n-1.
// This is the shape the Monte Carlo inner loop works with so that no Graph
// objects (validation, edge lists) are constructed per percolation run.
struct CompactGraph {
  std::vector<uint32_t> offsets;  // size n + 1
  std::vector<uint32_t> adj;      // size 2 * edge count
  uint32_t n() const { return offsets.empty() ? 0 : static_cast<uint32_t>(offsets.size() - 1); }
};

// Scratch buffers reused across diameter computations. Sized on demand.
struct DiameterWork {
  std::vector<uint32_t> dist;
  std::vector<uint32_t> queue;
  std::vector<uint32_t> parent;
  std::vector<uint32_t> ecc_lo;       // max distance seen from any BFS source
  std::vector<uint32_t> ecc_up;       // min over sources of ecc(src) + distance
  std::vector<uint32_t> undecided;    // nodes whose bounds still straddle lb
  std::vector<uint32_t> dist_center;  // distances from the best center found
  std::vector<uint64_t> reached;      // batch BFS: source bits that reached v
  std::vector<uint64_t> acc;          // batch BFS: bits arriving this level
  std::vector<uint64_t> front_bits;   // batch BFS: bits to spread from v
  std::vector<uint32_t> frontier;     // batch BFS: nodes with bits to spread
  std::vector<uint32_t> next_frontier;
  std::vector<uint32_t> touched;      // batch BFS: nodes written in acc
  std::vector<uint32_t> arrival;      // batch BFS: level of source j at v
};

// Runs up to 64 simultaneous BFS from sources[0..count) using bitmask
// frontiers: one word-OR spreads a whole batch across an edge, which makes a
// batch cost about diameter-many passes over the edge list instead of count
// full traversals. work.arrival[j * n + v] receives d(sources[j], v);
// ecc_out[j] receives the eccentricity of sources[j]. cg must be connected.
void batch_bfs(const CompactGraph& cg, const uint32_t* sources, uint32_t count,
               DiameterWork& work, uint32_t* ecc_out);

inline constexpr uint32_t kUnreached = 0xFFFFFFFFu;

// BFS from src over cg; fills work.dist (kUnreached elsewhere) and returns the
// eccentricity of src. If parents is non-null it receives the BFS tree.
uint32_t bfs_eccentricity(const CompactGraph& cg, uint32_t src, DiameterWork& work,
                          std::vector<uint32_t>* parents);

// Exact diameter via double-sweep lower bound + per-node eccentricity bound
// pruning. cg must be connected and non-empty. The bound bookkeeping keeps
// this exact: a node is only dropped once its eccentricity provably cannot
// exceed the certified lower bound.
uint32_t diameter_ifub(const CompactGraph& cg, DiameterWork& work);

// Exact diameter via all-pairs BFS. Reference oracle for tests.
uint32_t diameter_all_pairs(const CompactGraph& cg, DiameterWork& work);

}  // namespace qnet

#endif  // QNET_DIAMETER_HPP_
