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

#ifndef QNET_GRAPH_HPP_
#define QNET_GRAPH_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qnet {

struct Edge {
  uint32_t u = 0;
  uint32_t v = 0;
};

inline bool operator==(const Edge& a, const Edge& b) {
  return a.u == b.u && a.v == b.v;
}

// Simple undirected graph. Edges keep their insertion order and endpoint
// orientation exactly as given: resource assignments are index-aligned with
// the edge list, and edge-list files must round-trip byte for byte.
// Self-loops and duplicate edges (in either orientation) are rejected.
// Adjacency (CSR) is built eagerly so const instances can be shared across
// threads without synchronization.
class Graph {
 public:
  Graph(uint32_t node_count, std::vector<Edge> edges);

  uint32_t node_count() const { return node_count_; }
  uint64_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  // CSR adjacency: neighbors of v are adj()[adj_offsets()[v] .. adj_offsets()[v+1]).
  const std::vector<uint32_t>& adj_offsets() const { return offsets_; }
  const std::vector<uint32_t>& adj() const { return adjacency_; }

 private:
  uint32_t node_count_;
  std::vector<Edge> edges_;
  std::vector<uint32_t> offsets_;
  std::vector<uint32_t> adjacency_;
};

struct ComponentResult {
  // labels[v] is a dense component id; ids are assigned in order of the
  // smallest node contained, so labelling is independent of edge order.
  std::vector<uint32_t> labels;
  uint32_t component_count = 0;
  uint32_t largest_size = 0;   // 0 only for an empty graph
  uint32_t largest_label = 0;  // smallest label among the largest components
};

ComponentResult connected_components(const Graph& g);

// Nodes carrying the given label, ascending.
std::vector<uint32_t> component_nodes(const ComponentResult& cc, uint32_t label);

// Diameter of the subgraph induced by `component`, which must be non-empty
// and connected within g (throws std::invalid_argument otherwise).
// exact_diameter runs all-pairs BFS and exists as the reference oracle;
// fast_diameter runs 4-sweep + iFUB and returns the same exact value with far
// fewer traversals.
uint32_t exact_diameter(const Graph& g, std::span<const uint32_t> component);
uint32_t fast_diameter(const Graph& g, std::span<const uint32_t> component);

}  // namespace qnet

#endif  // QNET_GRAPH_HPP_
