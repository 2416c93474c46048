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

#ifndef QNET_GRAPH_IO_HPP_
#define QNET_GRAPH_IO_HPP_

#include <stdexcept>
#include <string>

#include "qnet/graph.hpp"

namespace qnet {

// File could not be opened / written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// File content is malformed; message carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Edge-list format:
//   # nodes=<N>
//   <u>\t<v>
// one edge per line, in edge order. write(read(f)) reproduces f byte for byte
// because Graph preserves edge order and endpoint orientation.
void write_edge_list(const Graph& g, const std::string& path);
Graph read_edge_list(const std::string& path);

}  // namespace qnet

#endif  // QNET_GRAPH_IO_HPP_
