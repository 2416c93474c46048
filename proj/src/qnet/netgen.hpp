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

#ifndef QNET_NETGEN_HPP_
#define QNET_NETGEN_HPP_

#include <cstdint>

#include "qnet/graph.hpp"

namespace qnet {

enum class TopologyKind {
  kErdosRenyi,       // G(N, p) with p = c / (N - 1)
  kBarabasiAlbert,   // preferential attachment, m = c / 2 edges per new node
  kRandomGeometric,  // unit torus, connect within r = sqrt(c / (pi N))
};

struct TopologyConfig {
  TopologyKind kind = TopologyKind::kErdosRenyi;
  uint32_t node_count = 0;
  double mean_degree = 0.0;
  uint64_t seed = 0;
};

// Generates a random graph. Deterministic: identical configs produce
// identical edge lists. Throws std::invalid_argument when the config is
// outside the model's valid range:
//   ER:  requires 0 < c / (N - 1) <= 1
//   BA:  requires c an even positive integer and N > m = c / 2
//   RGG: requires r = sqrt(c / (pi N)) < 1/2 (torus distance cap)
Graph generate(const TopologyConfig& config);

}  // namespace qnet

#endif  // QNET_NETGEN_HPP_
