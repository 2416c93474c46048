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

#include "qnet/graph_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <unordered_set>

namespace qnet {

namespace {

// Parses an unsigned decimal; advances *s past the digits. Returns false if no
// digit is present or the value exceeds uint32_t.
bool parse_u32(const char** s, uint32_t* out) {
  const char* p = *s;
  if (*p < '0' || *p > '9') return false;
  uint64_t v = 0;
  while (*p >= '0' && *p <= '9') {
    v = v * 10 + static_cast<uint64_t>(*p - '0');
    if (v > std::numeric_limits<uint32_t>::max()) return false;
    ++p;
  }
  *s = p;
  *out = static_cast<uint32_t>(v);
  return true;
}

[[noreturn]] void parse_fail(const std::string& path, size_t line, const std::string& what) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing: " + std::strerror(errno));
  out << "# nodes=" << g.node_count() << "\n";
  for (const Edge& e : g.edges()) {
    out << e.u << "\t" << e.v << "\n";
  }
  out.flush();
  if (!out) throw IoError("write failed for " + path);
}

Graph read_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + ": " + std::strerror(errno));

  std::string line;
  size_t lineno = 0;

  if (!std::getline(in, line)) parse_fail(path, 1, "missing '# nodes=<N>' header");
  ++lineno;
  uint32_t node_count = 0;
  {
    const char* p = line.c_str();
    const char prefix[] = "# nodes=";
    if (std::strncmp(p, prefix, sizeof(prefix) - 1) != 0) {
      parse_fail(path, lineno, "expected '# nodes=<N>' header, got '" + line + "'");
    }
    p += sizeof(prefix) - 1;
    if (!parse_u32(&p, &node_count) || *p != '\0') {
      parse_fail(path, lineno, "malformed node count in header");
    }
  }

  // Structural problems are diagnosed here, with line numbers, rather than
  // left to the Graph constructor whose messages only carry edge indices.
  std::vector<Edge> edges;
  std::unordered_set<uint64_t> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) parse_fail(path, lineno, "empty line");
    const char* p = line.c_str();
    Edge e;
    if (!parse_u32(&p, &e.u)) parse_fail(path, lineno, "expected '<u>\\t<v>'");
    if (*p != '\t') parse_fail(path, lineno, "expected tab separator");
    ++p;
    if (!parse_u32(&p, &e.v) || *p != '\0') parse_fail(path, lineno, "expected '<u>\\t<v>'");
    if (e.u >= node_count || e.v >= node_count) {
      parse_fail(path, lineno, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                   " references a node >= node count " +
                                   std::to_string(node_count));
    }
    if (e.u == e.v) parse_fail(path, lineno, "self-loop on node " + std::to_string(e.u));
    const uint64_t key = (static_cast<uint64_t>(std::min(e.u, e.v)) << 32) | std::max(e.u, e.v);
    if (!seen.insert(key).second) {
      parse_fail(path, lineno,
                 "duplicate edge " + std::to_string(e.u) + "-" + std::to_string(e.v));
    }
    edges.push_back(e);
  }

  return Graph(node_count, std::move(edges));
}

}  // namespace qnet
