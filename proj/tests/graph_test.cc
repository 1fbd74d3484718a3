/*
 * Copyright 2026 The DKM Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "dkm/error.h"
#include "dkm/graph.h"
#include "testing/oracles.h"

namespace dkm {
namespace {

Graph FromEdges(int n, std::initializer_list<std::tuple<int, int, double>> edges) {
  Matrix w = Matrix::Zero(n, n);
  for (auto [i, j, x] : edges) w(i, j) = w(j, i) = x;
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  return Graph(ids, w);
}

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInternal;
}

TEST(GraphTest, RejectsInvalidWeights) {
  Matrix w(2, 2);
  w << 0, 1, 2, 0;
  EXPECT_EQ(CodeOf([&] { Graph({"a", "b"}, w); }), ErrorCode::kData);
  w << 0, -1, -1, 0;
  EXPECT_EQ(CodeOf([&] { Graph({"a", "b"}, w); }), ErrorCode::kData);
  w << 1, 0, 0, 0;
  EXPECT_EQ(CodeOf([&] { Graph({"a", "b"}, w); }), ErrorCode::kData);
  w << 0, 1, 1, 0;
  EXPECT_EQ(CodeOf([&] { Graph({"a", "a"}, w); }), ErrorCode::kData);
}

TEST(DenseMatrixTest, TwoByTwo) {
  std::istringstream in("0,1\n1,0\n");
  Graph g = ParseDenseMatrix(in, DenseFormat::kCsv);
  EXPECT_EQ(g.size(), 2);
  EXPECT_EQ(g.weights()(0, 1), 1.0);
  EXPECT_FALSE(g.symmetrized_input());
}

TEST(DenseMatrixTest, Singleton) {
  std::istringstream in("0\n");
  Graph g = ParseDenseMatrix(in, DenseFormat::kCsv);
  EXPECT_EQ(g.size(), 1);
  EXPECT_EQ(g.weights()(0, 0), 0.0);
}

TEST(DenseMatrixTest, AsymmetricInputIsAveraged) {
  std::istringstream in("0\t1\t0\n0\t0\t0\n0\t0\t0\n");
  Graph g = ParseDenseMatrix(in, DenseFormat::kTsv);
  EXPECT_EQ(g.weights()(0, 1), 0.5);
  EXPECT_EQ(g.weights()(1, 0), 0.5);
  EXPECT_TRUE(g.symmetrized_input());
}

TEST(DenseMatrixTest, HeaderAndIdColumn) {
  std::istringstream in("id,x,y\nx,0,2\ny,2,0\n");
  Graph g = ParseDenseMatrix(in, DenseFormat::kCsv);
  EXPECT_EQ(g.node_ids(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(g.weights()(1, 0), 2.0);
}

TEST(DenseMatrixTest, DiagonalIsZeroed) {
  std::istringstream in("5,1\n1,7\n");
  Graph g = ParseDenseMatrix(in, DenseFormat::kCsv);
  EXPECT_EQ(g.weights()(0, 0), 0.0);
  EXPECT_EQ(g.weights()(1, 1), 0.0);
}

TEST(DenseMatrixTest, RaggedRowIsDataError) {
  std::istringstream in("0,1\n1\n");
  EXPECT_EQ(CodeOf([&] { ParseDenseMatrix(in, DenseFormat::kCsv); }), ErrorCode::kData);
}

TEST(EdgeListTest, PathGraph) {
  std::istringstream in("a b\nb c\n");
  Graph g = ParseEdgeList(in);
  ASSERT_EQ(g.size(), 3);
  Vector deg = g.Degrees();
  EXPECT_EQ(deg[g.IndexOf("a")], 1.0);
  EXPECT_EQ(deg[g.IndexOf("b")], 2.0);
  EXPECT_EQ(deg[g.IndexOf("c")], 1.0);
}

TEST(EdgeListTest, LastWeightWins) {
  std::istringstream in("a b 0.5\na b 2.0\n");
  Graph g = ParseEdgeList(in);
  EXPECT_EQ(g.weights()(g.IndexOf("a"), g.IndexOf("b")), 2.0);
  EXPECT_EQ(g.weights()(g.IndexOf("b"), g.IndexOf("a")), 2.0);
}

TEST(EdgeListTest, SelfLoopIsDataError) {
  std::istringstream in("a a\n");
  EXPECT_EQ(CodeOf([&] { ParseEdgeList(in); }), ErrorCode::kData);
}

TEST(EdgeListTest, CommentsTabsAndNumericOrder) {
  std::istringstream in("# header\n10\t2\n2 1 3\n");
  Graph g = ParseEdgeList(in);
  EXPECT_EQ(g.node_ids(), (std::vector<std::string>{"1", "2", "10"}));
  EXPECT_EQ(g.weights()(0, 1), 3.0);
}

TEST(EdgeListTest, NHintAddsIsolatedNodes) {
  std::istringstream in("0 1\n");
  Graph g = ParseEdgeList(in, 4);
  EXPECT_EQ(g.size(), 4);
  EXPECT_EQ(g.Degrees()[3], 0.0);
}

TEST(EdgeListTest, NegativeWeightAndGarbage) {
  std::istringstream neg("a b -1\n");
  EXPECT_EQ(CodeOf([&] { ParseEdgeList(neg); }), ErrorCode::kData);
  std::istringstream bad("a b c d\n");
  EXPECT_EQ(CodeOf([&] { ParseEdgeList(bad); }), ErrorCode::kData);
}

TEST(LabelsTest, ParsesAndRejects) {
  Graph g = FromEdges(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  std::istringstream in("0 1\n1 ?\n2 2\n");
  LabelSet labels = ParseLabels(in, g);
  EXPECT_EQ(labels[0], Label::kClass1);
  EXPECT_EQ(labels[1], Label::kUnknown);
  EXPECT_EQ(labels[2], Label::kClass2);
  EXPECT_EQ(labels.observed(), (std::vector<int>{0, 2}));
  EXPECT_EQ(labels.missing(), (std::vector<int>{1}));

  std::istringstream unknown("7 1\n");
  EXPECT_EQ(CodeOf([&] { ParseLabels(unknown, g); }), ErrorCode::kData);
  std::istringstream contradictory("0 1\n0 2\n");
  EXPECT_EQ(CodeOf([&] { ParseLabels(contradictory, g); }), ErrorCode::kData);
  std::istringstream bad_label("0 3\n");
  EXPECT_EQ(CodeOf([&] { ParseLabels(bad_label, g); }), ErrorCode::kData);
}

TEST(DropIsolatedTest, Examples) {
  Graph triangle = FromEdges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  PrunedGraph p = DropIsolated(triangle);
  EXPECT_EQ(p.graph, triangle);
  EXPECT_TRUE(p.removed.empty());

  Graph with_isolated = FromEdges(4, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  p = DropIsolated(with_isolated);
  EXPECT_EQ(p.graph, triangle);
  EXPECT_EQ(p.removed, (std::vector<std::string>{"3"}));

  Graph star = FromEdges(4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}});
  EXPECT_EQ(DropIsolated(star).graph, star);
}

TEST(DropIsolatedTest, Idempotent) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix w = testing::RandomAdjacency(15, 0.08, gen);
    std::vector<std::string> ids;
    for (int i = 0; i < 15; ++i) ids.push_back("n" + std::to_string(i));
    Graph g(ids, w);
    Graph once = DropIsolated(g).graph;
    PrunedGraph twice = DropIsolated(once);
    EXPECT_EQ(twice.graph, once);
    EXPECT_TRUE(twice.removed.empty());
  }
}

TEST(DropIsolatedTest, AllIsolatedIsDataError) {
  Graph g({"a", "b"}, Matrix::Zero(2, 2));
  EXPECT_EQ(CodeOf([&] { DropIsolated(g); }), ErrorCode::kData);
}

TEST(BlendTest, Examples) {
  Graph friends = FromEdges(2, {{0, 1, 1.0}});
  Graph none = FromEdges(2, {});
  const double half[] = {0.5, 0.5};
  std::vector<Graph> a{friends, none};
  EXPECT_EQ(BlendSimilarity(a, half).weights()(0, 1), 0.5);
  std::vector<Graph> b{friends, friends};
  EXPECT_EQ(BlendSimilarity(b, half).weights()(0, 1), 1.0);
  const double one[] = {1.0};
  std::vector<Graph> c{friends};
  EXPECT_EQ(BlendSimilarity(c, one), friends);
}

TEST(BlendTest, MismatchedIdsIsDataError) {
  Graph a({"x", "y"}, Matrix::Zero(2, 2));
  Graph b({"y", "x"}, Matrix::Zero(2, 2));
  std::vector<Graph> graphs{a, b};
  const double w[] = {1.0, 1.0};
  EXPECT_EQ(CodeOf([&] { BlendSimilarity(graphs, w); }), ErrorCode::kData);
}

TEST(LaplacianTest, Examples) {
  Matrix l = Laplacian(FromEdges(2, {{0, 1, 1.0}})).matrix();
  EXPECT_EQ(l, (Matrix(2, 2) << 1, -1, -1, 1).finished());
  l = Laplacian(FromEdges(3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}})).matrix();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) EXPECT_EQ(l(i, j), i == j ? 2.0 : -1.0);
  }
  l = Laplacian(FromEdges(2, {{0, 1, 0.5}})).matrix();
  EXPECT_EQ(l, (Matrix(2, 2) << 0.5, -0.5, -0.5, 0.5).finished());
}

TEST(LaplacianTest, QuadraticFormAndPsd) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 12;
    Matrix w = Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (unit(gen) < 0.4) w(i, j) = w(j, i) = unit(gen) * 3.0;
      }
    }
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    Matrix l = Laplacian(Graph(ids, w)).matrix();
    EXPECT_LE(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-10 * n * w.maxCoeff());
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = unit(gen) * 2.0 - 1.0;
    double expected = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) expected += w(i, j) * (x[i] - x[j]) * (x[i] - x[j]);
    }
    EXPECT_NEAR(x.dot(l * x), expected, 1e-8 * std::max(1.0, std::abs(expected)));
    const double norm = l.cwiseAbs().rowwise().sum().maxCoeff();
    EXPECT_GE(testing::MinEigenvalue(l), -1e-8 * norm);
  }
}

TEST(SbmTest, DeterministicExtremes) {
  LabeledGraph g = GenerateSbm({{3, 3}, 1.0, 0.0, 9});
  EXPECT_EQ(g.graph.size(), 6);
  EXPECT_EQ(g.graph.weights().sum(), 12.0);  // 6 edges, both directions
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      EXPECT_EQ(g.graph.weights()(i, j), (i != j && (i < 3) == (j < 3)) ? 1.0 : 0.0);
    }
  }
  EXPECT_EQ(g.labels.count(Label::kClass1), 3);
  EXPECT_EQ(g.labels.count(Label::kClass2), 3);
  EXPECT_EQ(g.labels[0], Label::kClass1);
  EXPECT_EQ(g.labels[5], Label::kClass2);

  LabeledGraph empty = GenerateSbm({{4, 5}, 0.0, 0.0, 9});
  EXPECT_EQ(empty.graph.weights().sum(), 0.0);
}

TEST(SbmTest, SameSeedSameGraph) {
  const SbmSpec spec{{20, 20}, 0.3, 0.05, 42};
  EXPECT_EQ(GenerateSbm(spec).graph, GenerateSbm(spec).graph);
  SbmSpec other = spec;
  other.seed = 43;
  EXPECT_FALSE(GenerateSbm(spec).graph == GenerateSbm(other).graph);
}

double WithinBlockEdges(std::uint64_t seed) {
  LabeledGraph g = GenerateSbm({{20, 20}, 0.3, 0.05, seed});
  const Matrix& w = g.graph.weights();
  return (w.topLeftCorner(20, 20).sum() + w.bottomRightCorner(20, 20).sum()) / 2;
}

TEST(SbmTest, WithinBlockEdgeCountWithinThreeSigma) {
  // Expected 2 * C(20,2) * 0.3 = 114, variance 380 * 0.3 * 0.7.
  const double sigma = std::sqrt(380 * 0.3 * 0.7);
  EXPECT_NEAR(WithinBlockEdges(42), 114.0, 3.0 * sigma);

  const int seeds = 400;
  double total = 0.0;
  int outside = 0;
  for (int seed = 0; seed < seeds; ++seed) {
    const double within = WithinBlockEdges(seed);
    total += within;
    outside += std::abs(within - 114.0) > 3.0 * sigma;
  }
  EXPECT_NEAR(total / seeds, 114.0, 4.0 * sigma / std::sqrt(seeds));
  EXPECT_LE(outside, 8);  // about 1 expected
}

TEST(SbmTest, RoundTripThroughEdgeList) {
  LabeledGraph g = GenerateSbm({{8, 12}, 0.2, 0.05, 3});
  std::ostringstream edges;
  WriteEdgeList(edges, g.graph);
  std::istringstream in(edges.str());
  Graph loaded = ParseEdgeList(in, g.graph.size());
  EXPECT_EQ(loaded, g.graph);

  std::ostringstream labels;
  WriteLabels(labels, g.graph, g.labels);
  std::istringstream lin(labels.str());
  EXPECT_EQ(ParseLabels(lin, loaded), g.labels);
}

TEST(SbmTest, InvalidSpecIsConfigError) {
  EXPECT_EQ(CodeOf([] { GenerateSbm({{0, 3}, 0.5, 0.5, 1}); }), ErrorCode::kConfig);
  EXPECT_EQ(CodeOf([] { GenerateSbm({{3, 3}, 1.5, 0.5, 1}); }), ErrorCode::kConfig);
}

TEST(ReorderTest, PermutesWeights) {
  Graph g = FromEdges(3, {{0, 1, 2.0}, {1, 2, 3.0}});
  Graph r = ReorderNodes(g, {"2", "0", "1"});
  EXPECT_EQ(r.weights()(0, 2), 3.0);
  EXPECT_EQ(r.weights()(1, 2), 2.0);
  EXPECT_EQ(ReorderNodes(r, g.node_ids()), g);
}

}  // namespace
}  // namespace dkm
