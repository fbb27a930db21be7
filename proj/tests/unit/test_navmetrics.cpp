// Copyright 2026 The vlnaug Authors
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

#include <gtest/gtest.h>

#include "graphs.hpp"
#include "oracles.hpp"
#include "vlnaug/error.hpp"
#include "vlnaug/navmetrics.hpp"

namespace {

using namespace vlnaug;
using namespace vlnaug::navmetrics;

corpus::ConnectivityGraph line_graph(int n, double spacing) {
  corpus::ConnectivityGraph g("line");
  for (int i = 0; i < n; ++i) g.add_node(std::string(1, static_cast<char>('A' + i)), {spacing * i, 0, 0});
  for (int i = 1; i < n; ++i)
    g.add_edge(std::string(1, static_cast<char>('A' + i - 1)), std::string(1, static_cast<char>('A' + i)));
  return g;
}

TEST(Metrics, IdentityEpisode) {
  const auto g = line_graph(4, 2.0);
  const auto m = evaluate({{"A", "B", "C"}, {"A", "B", "C"}}, g);
  EXPECT_NEAR(m.ne, 0.0, 1e-9);
  EXPECT_NEAR(m.sr, 1.0, 1e-9);
  EXPECT_NEAR(m.spl, 1.0, 1e-9);
  EXPECT_NEAR(m.ndtw, 1.0, 1e-9);
  EXPECT_NEAR(m.sdtw, 1.0, 1e-9);
  EXPECT_NEAR(m.cls, 1.0, 1e-9);
  EXPECT_NEAR(m.tl, 4.0, 1e-12);
}

TEST(Metrics, ThreeMetreBoundary) {
  corpus::ConnectivityGraph g("b");
  g.add_node("s", {0, 0, 0});
  g.add_node("near", {0, 0, -2.9});
  g.add_node("goal", {0, 0, 2.9});
  g.add_node("far", {0, 0, 6.0});
  g.add_edge("s", "goal");
  g.add_edge("goal", "far");
  g.add_edge("s", "near");
  // Stop 2.9 m short of the goal.
  auto m = evaluate({{"s"}, {"s", "goal"}}, g);
  EXPECT_NEAR(m.ne, 2.9, 1e-12);
  EXPECT_EQ(m.sr, 1.0);
  // Stop 3.1 m past it.
  m = evaluate({{"s", "goal", "far"}, {"s", "goal"}}, g);
  EXPECT_NEAR(m.ne, 3.1, 1e-12);
  EXPECT_EQ(m.sr, 0.0);
  EXPECT_EQ(m.osr, 1.0);
  EXPECT_EQ(m.spl, 0.0);
}

TEST(Metrics, FourNodeDetourHalvesSpl) {
  const auto g = line_graph(4, 2.0);
  const auto adj = testutil::adjacency_of(g);
  EXPECT_DOUBLE_EQ(oracle::shortest_by_enumeration(adj, "A", "C"), 4.0);
  const auto m = evaluate({{"A", "B", "C", "D", "C"}, {"A", "B", "C"}}, g);
  EXPECT_DOUBLE_EQ(m.tl, 8.0);
  EXPECT_EQ(m.sr, 1.0);
  EXPECT_EQ(m.spl, 0.5);
}

TEST(Metrics, SplEqualsSrWhenPathIsShortest) {
  const auto g = line_graph(5, 1.5);
  const auto m = evaluate({{"A", "B", "C", "D"}, {"A", "B", "C", "D"}}, g);
  EXPECT_DOUBLE_EQ(m.spl, m.sr);
}

TEST(Metrics, DtwHandCase) {
  const auto g = line_graph(3, 1.0);
  const ShortestPaths sp(g);
  // Best warp pairs (A,A), (C,B), (C,C) at cost 0 + 1 + 0.
  EXPECT_DOUBLE_EQ(dtw(sp, {"A", "C", "C"}, {"A", "B", "C"}), 1.0);
  EXPECT_DOUBLE_EQ(dtw(sp, {"A"}, {"A", "B", "C"}), 0 + 1 + 2);
}

TEST(Metrics, InequalitiesOnRandomEpisodes) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto r = testutil::random_episode(seed);
    const auto m = evaluate(r.episode, r.graph);
    EXPECT_LE(m.spl, m.sr + 1e-12) << seed;
    EXPECT_GE(m.spl, 0.0);
    EXPECT_LE(m.sr, 1.0);
    EXPECT_GE(m.ndtw, 0.0);
    EXPECT_LE(m.ndtw, 1.0 + 1e-12);
    EXPECT_LE(m.sdtw, std::min(m.sr, m.ndtw) + 1e-12) << seed;
    EXPECT_LE(m.sr, m.osr);
    EXPECT_GE(m.cls, 0.0);
    EXPECT_LE(m.cls, 1.0 + 1e-12);
  }
}

TEST(ShortestPathsTest, MatchesEnumerationOracle) {
  Rng rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = testutil::random_graph(rng, rng.between(2, 12), trial % 4 != 0, 0.2);
    const auto adj = testutil::adjacency_of(g);
    const ShortestPaths sp(g);
    for (const auto& a : g.node_ids())
      for (const auto& b : g.node_ids()) {
        const double want = oracle::shortest_by_enumeration(adj, a, b);
        if (std::isinf(want)) {
          try {
            sp.distance(a, b);
            ADD_FAILURE() << "expected a metric error for " << a << "->" << b;
          } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::kMetric);
          }
        } else {
          EXPECT_NEAR(sp.distance(a, b), want, 1e-9) << a << "->" << b;
        }
      }
  }
}

TEST(Metrics, DisconnectedGoalIsMetricError) {
  corpus::ConnectivityGraph g("d");
  g.add_node("a", {0, 0, 0});
  g.add_node("b", {1, 0, 0});
  g.add_node("island", {5, 0, 0});
  g.add_edge("a", "b");
  try {
    evaluate({{"a", "b"}, {"a", "island"}}, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kMetric);
    EXPECT_NE(std::string(e.what()).find("island"), std::string::npos);
  }
}

TEST(Metrics, NonAdjacentPredictedStep) {
  const auto g = line_graph(4, 2.0);
  EXPECT_THROW(evaluate({{"A", "C"}, {"A", "B"}}, g), Error);
}

TEST(Metrics, MeanAndJson) {
  Metrics a, b;
  a.sr = 1;
  a.spl = 0.5;
  b.sr = 0;
  const auto m = mean({a, b});
  EXPECT_DOUBLE_EQ(m.sr, 0.5);
  EXPECT_DOUBLE_EQ(m.spl, 0.25);
  const auto j = to_json(m);
  for (const char* k : {"TL", "NE", "SR", "SPL", "OSR", "nDTW", "sDTW", "CLS"}) EXPECT_TRUE(j.contains(k));
}

}  // namespace
