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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "qnet/qnet.h"
#include "test_util.hpp"

namespace {

// Frees the handle when the scope closes; keeps the C API tests leak-clean.
template <typename T, void (*FreeFn)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() { FreeFn(ptr); }
  T** slot() { return &ptr; }
  operator T*() const { return ptr; }
};

using GraphHandle = Handle<qnet_graph, qnet_graph_free>;
using ResourcesHandle = Handle<qnet_resources, qnet_resources_free>;
using CurveHandle = Handle<qnet_curve, qnet_curve_free>;
using BackboneHandle = Handle<qnet_backbone, qnet_backbone_free>;
using HysteresisHandle = Handle<qnet_hysteresis, qnet_hysteresis_free>;

// Synthetic D/S curve with a peak at x+y = 2 (see the core backbone tests).
qnet_status make_peak_curve(qnet_curve** out) {
  const double grid[] = {0.0, 1.0, 2.0, 3.0, 4.0};
  const double mean_d[] = {2.0, 6.0, 10.0, 4.0, 1.0};
  const double mean_s[] = {100.0, 80.0, 60.0, 40.0, 20.0};
  return qnet_curve_create(grid, mean_d, mean_s, 5, 1, 100, out);
}

}  // namespace

TEST_CASE("version and error reporting") {
  CHECK(std::strcmp(qnet_version(), "0.1.0") == 0);
  CHECK(qnet_last_error() != nullptr);

  double out = 0.0;
  CHECK(qnet_cstar(-1.0, &out) == QNET_ERR_INVALID_ARGUMENT);
  CHECK(std::string(qnet_last_error()).find("c_eff") != std::string::npos);
  CHECK(qnet_cstar(2.0, nullptr) == QNET_ERR_INVALID_ARGUMENT);
}

TEST_CASE("graph construction and validation") {
  GraphHandle g;
  REQUIRE(qnet_graph_create(5, g.slot()) == QNET_OK);
  CHECK(qnet_graph_node_count(g) == 5);
  CHECK(qnet_graph_add_edge(g, 0, 1) == QNET_OK);
  CHECK(qnet_graph_add_edge(g, 1, 2) == QNET_OK);
  CHECK(qnet_graph_edge_count(g) == 2);

  CHECK(qnet_graph_add_edge(g, 0, 1) == QNET_ERR_INVALID_ARGUMENT);
  CHECK(qnet_graph_add_edge(g, 1, 0) == QNET_ERR_INVALID_ARGUMENT);
  CHECK(std::string(qnet_last_error()).find("duplicate") != std::string::npos);
  CHECK(qnet_graph_add_edge(g, 2, 2) == QNET_ERR_INVALID_ARGUMENT);
  CHECK(qnet_graph_add_edge(g, 0, 9) == QNET_ERR_INVALID_ARGUMENT);
  CHECK(qnet_graph_edge_count(g) == 2);

  uint32_t u = 99, v = 99;
  CHECK(qnet_graph_edge(g, 1, &u, &v) == QNET_OK);
  CHECK(u == 1);
  CHECK(v == 2);
  CHECK(qnet_graph_edge(g, 2, &u, &v) == QNET_ERR_INVALID_ARGUMENT);
  CHECK(qnet_graph_create(1, nullptr) == QNET_ERR_INVALID_ARGUMENT);
}

TEST_CASE("generation, components, diameters") {
  GraphHandle g;
  REQUIRE(qnet_generate(QNET_TOPOLOGY_ER, 150, 4.0, 11, g.slot()) == QNET_OK);
  CHECK(qnet_graph_node_count(g) == 150);
  CHECK(qnet_graph_edge_count(g) > 0);

  std::vector<uint32_t> labels(150);
  uint32_t comp_count = 0, largest_size = 0, largest_label = 0;
  REQUIRE(qnet_connected_components(g, labels.data(), &comp_count, &largest_size,
                                    &largest_label) == QNET_OK);
  CHECK(comp_count >= 1);
  CHECK(largest_size >= 100);  // c = 4 is far above the giant threshold

  std::vector<uint32_t> members;
  for (uint32_t n = 0; n < 150; ++n) {
    if (labels[n] == largest_label) members.push_back(n);
  }
  REQUIRE(members.size() == largest_size);

  uint32_t exact = 0, fast = 0;
  REQUIRE(qnet_exact_diameter(g, members.data(), members.size(), &exact) == QNET_OK);
  REQUIRE(qnet_fast_diameter(g, members.data(), members.size(), &fast) == QNET_OK);
  CHECK(exact == fast);
  CHECK(exact >= 2);

  uint32_t size2 = 0, diam2 = 0;
  REQUIRE(qnet_largest_component(g, &size2, &diam2) == QNET_OK);
  CHECK(size2 == largest_size);
  CHECK(diam2 == exact);

  GraphHandle bad;
  CHECK(qnet_generate(QNET_TOPOLOGY_BA, 100, 5.0, 1, bad.slot()) ==
        QNET_ERR_INVALID_ARGUMENT);  // odd degree
  CHECK(qnet_generate((qnet_topology)9, 100, 4.0, 1, bad.slot()) ==
        QNET_ERR_INVALID_ARGUMENT);
}

TEST_CASE("graph files") {
  testutil::TempDir tmp("qnet_test_capi_graph");
  std::string path = tmp.file("g.edges");
  GraphHandle g;
  REQUIRE(qnet_graph_create(3, g.slot()) == QNET_OK);
  REQUIRE(qnet_graph_add_edge(g, 2, 0) == QNET_OK);
  REQUIRE(qnet_graph_add_edge(g, 0, 1) == QNET_OK);
  REQUIRE(qnet_graph_write(g, path.c_str()) == QNET_OK);

  GraphHandle r;
  REQUIRE(qnet_graph_read(path.c_str(), r.slot()) == QNET_OK);
  CHECK(qnet_graph_node_count(r) == 3);
  CHECK(qnet_graph_edge_count(r) == 2);
  uint32_t u = 0, v = 0;
  CHECK(qnet_graph_edge(r, 0, &u, &v) == QNET_OK);
  CHECK(u == 2);  // insertion order and orientation survive the round trip
  CHECK(v == 0);

  GraphHandle miss;
  CHECK(qnet_graph_read(tmp.file("absent.edges").c_str(), miss.slot()) == QNET_ERR_IO);
  testutil::spit(tmp.file("bad.edges"), "# nodes=2\n0 1\n");
  GraphHandle corrupt;
  CHECK(qnet_graph_read(tmp.file("bad.edges").c_str(), corrupt.slot()) == QNET_ERR_PARSE);
  CHECK(std::string(qnet_last_error()).find(":2") != std::string::npos);
}

TEST_CASE("resources through the c api") {
  testutil::TempDir tmp("qnet_test_capi_res");
  GraphHandle g;
  REQUIRE(qnet_graph_create(3, g.slot()) == QNET_OK);
  REQUIRE(qnet_graph_add_edge(g, 0, 1) == QNET_OK);
  REQUIRE(qnet_graph_add_edge(g, 1, 2) == QNET_OK);

  ResourcesHandle r;
  REQUIRE(qnet_resources_sample(g, QNET_DIST_EXPONENTIAL, 10.0, 0.0, 3, r.slot()) == QNET_OK);
  CHECK(qnet_resources_count(r) == 2);
  double value = -1.0;
  CHECK(qnet_resources_get(r, 0, &value) == QNET_OK);
  CHECK(value >= 0.0);
  CHECK(qnet_resources_get(r, 2, &value) == QNET_ERR_INVALID_ARGUMENT);

  std::string path = tmp.file("r.tsv");
  REQUIRE(qnet_resources_write(g, r, path.c_str()) == QNET_OK);
  ResourcesHandle back;
  REQUIRE(qnet_resources_read(g, path.c_str(), back.slot()) == QNET_OK);
  double a = 0.0, b = 0.0;
  CHECK(qnet_resources_get(r, 1, &a) == QNET_OK);
  CHECK(qnet_resources_get(back, 1, &b) == QNET_OK);
  CHECK(a == b);

  ResourcesHandle miss;
  CHECK(qnet_resources_read(g, tmp.file("absent.tsv").c_str(), miss.slot()) == QNET_ERR_IO);
  testutil::spit(tmp.file("bad.tsv"), "0\t1\t5\n1\t2\t-3\n");
  ResourcesHandle corrupt;
  CHECK(qnet_resources_read(g, tmp.file("bad.tsv").c_str(), corrupt.slot()) == QNET_ERR_PARSE);
  CHECK(qnet_resources_sample(g, QNET_DIST_POISSON, -1.0, 0.0, 3, miss.slot()) ==
        QNET_ERR_INVALID_ARGUMENT);
}

TEST_CASE("survival and path-length curves") {
  double out = 0.0;
  REQUIRE(qnet_survival(QNET_DIST_EXPONENTIAL, 10.0, 0.0, 10.0, &out) == QNET_OK);
  CHECK(out == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  REQUIRE(qnet_survival(QNET_DIST_UNIFORM, 10.0, 0.0, 10.0, &out) == QNET_OK);
  CHECK(out == doctest::Approx(0.5).epsilon(1e-12));
  REQUIRE(qnet_l_curve(QNET_DIST_EXPONENTIAL, 10.0, 0.0, 1.0, 0.5, &out) == QNET_OK);
  CHECK(out == doctest::Approx(5.0).epsilon(1e-12));
  REQUIRE(qnet_l_curve(QNET_DIST_GAUSSIAN, 10.0, 0.0, 2.0, 0.7, &out) == QNET_OK);
  double n_thresh = out * out;
  double s = 0.0;
  REQUIRE(qnet_survival(QNET_DIST_GAUSSIAN, 10.0, 0.0, n_thresh, &s) == QNET_OK);
  CHECK(-std::log(s) == doctest::Approx(0.7).epsilon(1e-6));
  CHECK(qnet_survival(QNET_DIST_UNIFORM, -2.0, 0.0, 1.0, &out) == QNET_ERR_INVALID_ARGUMENT);
  CHECK(qnet_l_curve((qnet_dist)7, 10.0, 0.0, 1.0, 0.5, &out) == QNET_ERR_INVALID_ARGUMENT);
}

TEST_CASE("percolation and measured curves") {
  GraphHandle g;
  REQUIRE(qnet_generate(QNET_TOPOLOGY_ER, 300, 4.0, 21, g.slot()) == QNET_OK);

  GraphHandle diluted;
  REQUIRE(qnet_bond_percolate(g, 0.5, 5, diluted.slot()) == QNET_OK);
  CHECK(qnet_graph_node_count(diluted) == 300);
  CHECK(qnet_graph_edge_count(diluted) < qnet_graph_edge_count(g));
  GraphHandle site;
  REQUIRE(qnet_node_percolate(g, 0.5, 5, site.slot()) == QNET_OK);
  CHECK(qnet_graph_node_count(site) == 300);
  GraphHandle bad;
  CHECK(qnet_bond_percolate(g, 1.5, 5, bad.slot()) == QNET_ERR_INVALID_ARGUMENT);

  CurveHandle curve;
  REQUIRE(qnet_measure_curve(g, 4.0, 0.5, 5, 9, 1, curve.slot()) == QNET_OK);
  REQUIRE(qnet_curve_size(curve) == 9);
  CHECK(qnet_curve_runs(curve) == 5);
  CHECK(qnet_curve_node_count(curve) == 300);

  double t = -1.0, md = -1.0, ms = -1.0, sd = -1.0, ss = -1.0;
  REQUIRE(qnet_curve_point(curve, 0, &t, &md, &ms, &sd, &ss) == QNET_OK);
  CHECK(t == 0.0);
  CHECK(ms > 250.0);  // giant component of the intact graph
  CHECK(sd == 0.0);
  const double ms0 = ms;
  CHECK(qnet_curve_point(curve, 9, &t, &md, &ms, &sd, &ss) == QNET_ERR_INVALID_ARGUMENT);

  double interp = 0.0;
  REQUIRE(qnet_curve_interp_s(curve, 0.0, &interp) == QNET_OK);
  CHECK(interp == ms0);
  double yc3 = 0.0;
  REQUIRE(qnet_estimate_yc3(curve, 0.0, &yc3) == QNET_OK);
  CHECK(yc3 > 0.5);
  CHECK(yc3 < 4.0);
  double peak = 0.0;
  REQUIRE(qnet_curve_d_max(curve, &peak) == QNET_OK);
  CHECK(peak > 0.0);

  double gm = 0.0;
  REQUIRE(qnet_default_grid_max(g, 1, &gm) == QNET_OK);
  CHECK(gm >= 1.0);
  double mls = 0.0;
  REQUIRE(qnet_mean_largest_component(g, 0.0, 2, 1, &mls) == QNET_OK);
  CHECK(mls == ms0);  // p = 1 is deterministic on both paths
}

TEST_CASE("curve files through the c api") {
  testutil::TempDir tmp("qnet_test_capi_curve");
  CurveHandle curve;
  REQUIRE(make_peak_curve(curve.slot()) == QNET_OK);
  std::string path = tmp.file("c.csv");
  REQUIRE(qnet_curve_write_csv(curve, path.c_str()) == QNET_OK);
  CurveHandle back;
  REQUIRE(qnet_curve_read_csv(path.c_str(), back.slot()) == QNET_OK);
  CHECK(qnet_curve_size(back) == 5);
  std::string again = tmp.file("c2.csv");
  REQUIRE(qnet_curve_write_csv(back, again.c_str()) == QNET_OK);
  CHECK(testutil::slurp(path) == testutil::slurp(again));

  CurveHandle miss;
  CHECK(qnet_curve_read_csv(tmp.file("absent.csv").c_str(), miss.slot()) == QNET_ERR_IO);
  testutil::spit(tmp.file("bad.csv"), "garbage\n");
  CurveHandle corrupt;
  CHECK(qnet_curve_read_csv(tmp.file("bad.csv").c_str(), corrupt.slot()) == QNET_ERR_PARSE);
}

TEST_CASE("synthetic curve validation") {
  CurveHandle c;
  const double one[] = {0.0};
  CHECK(qnet_curve_create(one, one, one, 1, 1, 10, c.slot()) == QNET_ERR_INVALID_ARGUMENT);
  const double unsorted[] = {0.0, 2.0, 1.0};
  const double vals[] = {1.0, 2.0, 3.0};
  CHECK(qnet_curve_create(unsorted, vals, vals, 3, 1, 10, c.slot()) ==
        QNET_ERR_INVALID_ARGUMENT);
  const double with_nan[] = {0.0, std::nan(""), 2.0};
  CHECK(qnet_curve_create(with_nan, vals, vals, 3, 1, 10, c.slot()) ==
        QNET_ERR_INVALID_ARGUMENT);
  CHECK(qnet_curve_create(nullptr, vals, vals, 3, 1, 10, c.slot()) ==
        QNET_ERR_INVALID_ARGUMENT);
}

TEST_CASE("fixed points and hysteresis through the c api") {
  CurveHandle curve;
  REQUIRE(make_peak_curve(curve.slot()) == QNET_OK);

  double roots[4];
  int regimes[4];
  size_t count = 0;
  REQUIRE(qnet_fixed_points(curve, QNET_DIST_EXPONENTIAL, 8.0, 0.0, 1.0, 1.0, roots, regimes,
                            4, &count) == QNET_OK);
  REQUIRE(count == 1);
  CHECK(std::abs(roots[0] - 8.0 / 7.0) < 2e-6);
  CHECK(regimes[0] == 1);

  REQUIRE(qnet_fixed_points(curve, QNET_DIST_EXPONENTIAL, 8.0, 0.0, 1.0, 0.0, roots, regimes,
                            4, &count) == QNET_OK);
  REQUIRE(count == 1);
  CHECK(std::abs(roots[0] - 0.5) < 2e-6);
  CHECK(regimes[0] == 0);
  CHECK(qnet_fixed_points(curve, QNET_DIST_EXPONENTIAL, 8.0, 0.0, 1.0, 9.0, roots, regimes, 4,
                          &count) == QNET_ERR_INVALID_ARGUMENT);

  HysteresisHandle h;
  REQUIRE(qnet_hysteresis_sweep(curve, QNET_DIST_EXPONENTIAL, 8.0, 0.0, 1.0, 3.0, 0.25,
                                h.slot()) == QNET_OK);
  CHECK(qnet_hysteresis_rows(h) == 13);
  double yc1 = 0.0, yc2 = 0.0;
  REQUIRE(qnet_hysteresis_yc1(h, &yc1) == QNET_OK);
  REQUIRE(qnet_hysteresis_yc2(h, &yc2) == QNET_OK);
  CHECK(std::abs(yc1 - 0.75) < 1e-8);
  CHECK(yc2 == 0.75);
  CHECK(qnet_hysteresis_discontinuous(h) == 0);

  double y = 0.0, x0_super = 0.0, x0_sub = 0.0, s_super = 0.0, s_sub = 0.0;
  REQUIRE(qnet_hysteresis_row(h, 0, &y, &x0_super, &x0_sub, &s_super, &s_sub) == QNET_OK);
  CHECK(y == 0.0);
  CHECK_FALSE(std::isnan(x0_super));
  CHECK(std::isnan(x0_sub));
  CHECK(qnet_hysteresis_row(h, 13, &y, &x0_super, &x0_sub, &s_super, &s_sub) ==
        QNET_ERR_INVALID_ARGUMENT);

  testutil::TempDir tmp("qnet_test_capi_hys");
  std::string path = tmp.file("h.csv");
  REQUIRE(qnet_hysteresis_write_csv(h, path.c_str()) == QNET_OK);
  CHECK(testutil::slurp(path).find("y,x0_super,x0_sub,S_super,S_sub") == 0);

  // A path-length curve too weak to ever reach the diameter: no roots on
  // either branch, so both bounds are absent and the sweep reports NUMERIC.
  HysteresisHandle flat;
  REQUIRE(qnet_hysteresis_sweep(curve, QNET_DIST_EXPONENTIAL, 0.1, 0.0, 1.0, 3.0, 0.5,
                                flat.slot()) == QNET_OK);
  CHECK(qnet_hysteresis_yc1(flat, &yc1) == QNET_ERR_NUMERIC);
  CHECK(qnet_hysteresis_yc2(flat, &yc2) == QNET_ERR_NUMERIC);
  CHECK(qnet_hysteresis_discontinuous(flat) == 0);

  // The y grid is clipped to the curve domain instead of failing.
  HysteresisHandle clipped;
  REQUIRE(qnet_hysteresis_sweep(curve, QNET_DIST_EXPONENTIAL, 8.0, 0.0, 1.0, 10.0, 1.0,
                                clipped.slot()) == QNET_OK);
  CHECK(qnet_hysteresis_rows(clipped) == 5);
}

TEST_CASE("backbone through the c api") {
  testutil::TempDir tmp("qnet_test_capi_backbone");
  GraphHandle g;
  REQUIRE(qnet_graph_create(3, g.slot()) == QNET_OK);
  REQUIRE(qnet_graph_add_edge(g, 0, 1) == QNET_OK);
  REQUIRE(qnet_graph_add_edge(g, 1, 2) == QNET_OK);
  std::string path = tmp.file("r.tsv");
  testutil::spit(path, "0\t1\t1\n1\t2\t8\n");
  ResourcesHandle r;
  REQUIRE(qnet_resources_read(g, path.c_str(), r.slot()) == QNET_OK);

  GraphHandle pruned;
  REQUIRE(qnet_prune(g, r, 2.0, 1.0, pruned.slot()) == QNET_OK);
  CHECK(qnet_graph_edge_count(pruned) == 1);

  BackboneHandle b;
  REQUIRE(qnet_compute_backbone(g, r, 1.0, b.slot()) == QNET_OK);
  CHECK(qnet_backbone_size(b) == 2);
  CHECK(qnet_backbone_l_fixed(b) == 8.0);
  CHECK(qnet_backbone_n_fixed(b) == 8.0);
  uint32_t nodes[4] = {99, 99, 99, 99};
  size_t written = 0;
  REQUIRE(qnet_backbone_nodes(b, nodes, 4, &written) == QNET_OK);
  REQUIRE(written == 2);
  CHECK(nodes[0] == 1);
  CHECK(nodes[1] == 2);
  // A short buffer truncates without error.
  REQUIRE(qnet_backbone_nodes(b, nodes, 1, &written) == QNET_OK);
  CHECK(written == 1);

  int connected = -1;
  REQUIRE(qnet_functional_oracle(g, r, 1.0, 1, 2, &connected) == QNET_OK);
  CHECK(connected == 1);
  REQUIRE(qnet_functional_oracle(g, r, 1.0, 0, 2, &connected) == QNET_OK);
  CHECK(connected == 0);  // the weak first hop cannot carry a 2-hop path
  CHECK(qnet_functional_oracle(g, r, 1.0, 0, 9, &connected) == QNET_ERR_INVALID_ARGUMENT);

  double size_at = 0.0;
  REQUIRE(qnet_backbone_size_at(g, 0.0, 0.0, 2, 1, &size_at) == QNET_OK);
  CHECK(size_at == 3.0);
}

TEST_CASE("analytics through the c api") {
  double out = 0.0;
  REQUIRE(qnet_cstar(6.0, &out) == QNET_OK);
  CHECK(out == doctest::Approx(0.015098773597).epsilon(1e-7));
  REQUIRE(qnet_er_diameter(100000, 6.0, 0.0, &out) == QNET_OK);
  CHECK(out == doctest::Approx(11.9167983502).epsilon(1e-8));
  CHECK(qnet_er_diameter(100000, 6.0, std::log(6.0), &out) == QNET_ERR_NUMERIC);

  CurveHandle curve;
  REQUIRE(make_peak_curve(curve.slot()) == QNET_OK);
  REQUIRE(qnet_y_function(curve, 8.0, 1.0, 1.5, &out) == QNET_OK);
  CHECK(out == doctest::Approx(1.5 - 8.0 / 8.0).epsilon(1e-12));

  // Five interior points are required; this grid has only three.
  CHECK(qnet_n_critical(curve, 1.0, 4.0, &out) == QNET_ERR_INVALID_ARGUMENT);
  CHECK(qnet_alpha_critical(curve, 4.0, &out) == QNET_ERR_INVALID_ARGUMENT);

  int broken = -1;
  REQUIRE(qnet_yc1_from_yc3(1.79, 30.0, 1.0, 60.0, &out, &broken) == QNET_OK);
  CHECK(out == doctest::Approx(1.29).epsilon(1e-12));
  CHECK(broken == 0);
  REQUIRE(qnet_yc1_from_yc3(1.79, 30.0, 2.0, 60.0, &out, &broken) == QNET_OK);
  CHECK(broken == 1);
}
