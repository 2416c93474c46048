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

#include "qnet/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "qnet/diameter.hpp"

namespace qnet {

namespace {

uint64_t edge_key(uint32_t u, uint32_t v) {
  const uint32_t lo = std::min(u, v);
  const uint32_t hi = std::max(u, v);
  return (static_cast<uint64_t>(lo) << 32) | hi;
}

}  // namespace

Graph::Graph(uint32_t node_count, std::vector<Edge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  std::unordered_set<uint64_t> seen;
  seen.reserve(edges_.size() * 2);
  for (size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    if (e.u >= node_count_ || e.v >= node_count_) {
      throw std::invalid_argument("edge " + std::to_string(i) + " (" + std::to_string(e.u) +
                                  "-" + std::to_string(e.v) + ") references a node >= node count " +
                                  std::to_string(node_count_));
    }
    if (e.u == e.v) {
      throw std::invalid_argument("edge " + std::to_string(i) + " is a self-loop on node " +
                                  std::to_string(e.u));
    }
    if (!seen.insert(edge_key(e.u, e.v)).second) {
      throw std::invalid_argument("duplicate edge " + std::to_string(e.u) + "-" +
                                  std::to_string(e.v) + " at index " + std::to_string(i));
    }
  }

  offsets_.assign(static_cast<size_t>(node_count_) + 1, 0);
  for (const Edge& e : edges_) {
    offsets_[e.u + 1]++;
    offsets_[e.v + 1]++;
  }
  for (size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  adjacency_.resize(edges_.size() * 2);
  std::vector<uint32_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adjacency_[cursor[e.u]++] = e.v;
    adjacency_[cursor[e.v]++] = e.u;
  }
}

ComponentResult connected_components(const Graph& g) {
  const uint32_t n = g.node_count();
  ComponentResult result;
  result.labels.assign(n, kUnreached);

  std::vector<uint32_t> queue;
  queue.reserve(n);
  uint32_t label = 0;
  for (uint32_t s = 0; s < n; ++s) {
    if (result.labels[s] != kUnreached) continue;
    // BFS from the smallest unlabelled node: label order depends only on the
    // node numbering, never on edge order.
    uint32_t size = 0;
    queue.clear();
    queue.push_back(s);
    result.labels[s] = label;
    while (!queue.empty()) {
      const uint32_t v = queue.back();
      queue.pop_back();
      ++size;
      for (uint32_t i = g.adj_offsets()[v]; i < g.adj_offsets()[v + 1]; ++i) {
        const uint32_t w = g.adj()[i];
        if (result.labels[w] == kUnreached) {
          result.labels[w] = label;
          queue.push_back(w);
        }
      }
    }
    if (size > result.largest_size) {
      result.largest_size = size;
      result.largest_label = label;
    }
    ++label;
  }
  result.component_count = label;
  return result;
}

std::vector<uint32_t> component_nodes(const ComponentResult& cc, uint32_t label) {
  std::vector<uint32_t> nodes;
  for (uint32_t v = 0; v < cc.labels.size(); ++v) {
    if (cc.labels[v] == label) nodes.push_back(v);
  }
  return nodes;
}

namespace {

// Builds the compact CSR of the subgraph induced by `component` and verifies
// connectivity. Throws std::invalid_argument on an empty or disconnected set.
CompactGraph induced_compact(const Graph& g, std::span<const uint32_t> component) {
  if (component.empty()) throw std::invalid_argument("component node set is empty");
  const uint32_t n = static_cast<uint32_t>(component.size());

  std::vector<uint32_t> local(g.node_count(), kUnreached);
  for (uint32_t i = 0; i < n; ++i) {
    const uint32_t v = component[i];
    if (v >= g.node_count()) throw std::invalid_argument("component node out of range");
    if (local[v] != kUnreached) throw std::invalid_argument("component node set has duplicates");
    local[v] = i;
  }

  CompactGraph cg;
  cg.offsets.assign(static_cast<size_t>(n) + 1, 0);
  for (uint32_t i = 0; i < n; ++i) {
    const uint32_t v = component[i];
    for (uint32_t k = g.adj_offsets()[v]; k < g.adj_offsets()[v + 1]; ++k) {
      if (local[g.adj()[k]] != kUnreached) cg.offsets[i + 1]++;
    }
  }
  for (size_t i = 1; i < cg.offsets.size(); ++i) cg.offsets[i] += cg.offsets[i - 1];
  cg.adj.resize(cg.offsets.back());
  std::vector<uint32_t> cursor(cg.offsets.begin(), cg.offsets.end() - 1);
  for (uint32_t i = 0; i < n; ++i) {
    const uint32_t v = component[i];
    for (uint32_t k = g.adj_offsets()[v]; k < g.adj_offsets()[v + 1]; ++k) {
      const uint32_t w = local[g.adj()[k]];
      if (w != kUnreached) cg.adj[cursor[i]++] = w;
    }
  }

  DiameterWork work;
  bfs_eccentricity(cg, 0, work, nullptr);
  for (uint32_t i = 0; i < n; ++i) {
    if (work.dist[i] == kUnreached) {
      throw std::invalid_argument("component node set is not connected");
    }
  }
  return cg;
}

}  // namespace

uint32_t exact_diameter(const Graph& g, std::span<const uint32_t> component) {
  const CompactGraph cg = induced_compact(g, component);
  DiameterWork work;
  return diameter_all_pairs(cg, work);
}

uint32_t fast_diameter(const Graph& g, std::span<const uint32_t> component) {
  const CompactGraph cg = induced_compact(g, component);
  DiameterWork work;
  return diameter_ifub(cg, work);
}

}  // namespace qnet
