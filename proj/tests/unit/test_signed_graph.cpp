#include <gtest/gtest.h>

#include <random>

#include "signet/error.hpp"
#include "signet/signed_graph.hpp"
#include "test_support.hpp"

using namespace signet;
using signet::testing::load_graph;
using signet::testing::random_graph;

namespace {

AgentSet labels(std::initializer_list<std::size_t> one_based) {
  AgentSet s;
  for (auto v : one_based) s.push_back(v - 1);
  return s;
}

}  // namespace

TEST(SignedWeight, SignAndAbs) {
  const MatrixGraph g = load_graph("g1.json");
  EXPECT_EQ(msgn(*g.weight(4, 1)), 1);   // A52
  EXPECT_EQ(msgn(*g.weight(1, 5)), -1);  // A26
  EXPECT_EQ(g.weight(6, 0), nullptr);
  EXPECT_EQ(mabs(*g.weight(1, 0)), (SymMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));
  EXPECT_EQ(mabs(SignedWeight(SymMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}})),
            (SymMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  const SignedWeight zero(SymMatrix::zero(3));
  EXPECT_EQ(zero.sign(), 0);
  EXPECT_EQ(zero.abs(), SymMatrix::zero(3));
  EXPECT_THROW(SignedWeight(SymMatrix{{1, 0}, {0, -1}}), Error);
}

TEST(SignedWeight, AbsIsPsdAndSignSquares) {
  const MatrixGraph g = load_graph("g2.json");
  for (const auto& [key, w] : g.edges()) {
    const Definiteness d = classify_definiteness(w.abs());
    EXPECT_TRUE(d == Definiteness::PositiveDefinite || d == Definiteness::PositiveSemiDefinite);
    EXPECT_EQ(static_cast<double>(w.sign() * w.sign()) * w.matrix(), w.matrix());
  }
}

TEST(NeighborSets, G1Examples) {
  const MatrixGraph g = load_graph("g1.json");
  const NeighborSets v2 = neighbor_sets(g, 1);
  EXPECT_EQ(v2.in, labels({1, 6}));
  EXPECT_EQ(v2.out, labels({1, 5}));
  EXPECT_EQ(v2.negative_in, labels({1, 6}));
  EXPECT_TRUE(v2.positive_in.empty());
  const NeighborSets v7 = neighbor_sets(g, 6);
  EXPECT_EQ(v7.in, labels({6}));
  EXPECT_TRUE(v7.out.empty());
  EXPECT_TRUE(v7.negative_in.empty());
  EXPECT_EQ(v7.positive_in, labels({6}));
  EXPECT_THROW(neighbor_sets(g, 7), Error);
}

TEST(NeighborSets, EmptyGraph) {
  const MatrixGraph g(4, 2);
  for (AgentId i = 0; i < 4; ++i) {
    const NeighborSets s = neighbor_sets(g, i);
    EXPECT_TRUE(s.in.empty() && s.out.empty() && s.negative_in.empty() && s.positive_in.empty());
  }
}

TEST(NeighborSets, OmegaAndGammaPartitionInNeighbors) {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 30; ++trial) {
    const MatrixGraph g = random_graph(rng, 3 + trial % 6, 1 + trial % 3);
    for (AgentId i = 0; i < g.n_agents(); ++i) {
      const NeighborSets s = neighbor_sets(g, i);
      AgentSet merged;
      std::merge(s.negative_in.begin(), s.negative_in.end(), s.positive_in.begin(),
                 s.positive_in.end(), std::back_inserter(merged));
      EXPECT_EQ(merged, s.in);
      for (AgentId j : s.negative_in)
        EXPECT_FALSE(std::binary_search(s.positive_in.begin(), s.positive_in.end(), j));
    }
  }
}

TEST(AntagonizedSet, Examples) {
  EXPECT_EQ(antagonized_set(load_graph("g1.json")), labels({2, 3}));
  EXPECT_EQ(antagonized_set(load_graph("g2.json")), labels({1, 2, 3, 4, 6}));
  EXPECT_EQ(antagonized_set(load_graph("g3.json")), labels({1, 2, 3, 6}));
  MatrixGraph positive(3, 1);
  positive.add_edge(0, 1, SymMatrix{{1.0}});
  EXPECT_TRUE(antagonized_set(positive).empty());
}

TEST(Laplacian, Examples) {
  MatrixGraph two(2, 2);
  two.add_edge(0, 1, SymMatrix::identity(2));
  const Matrix l = laplacian(two);
  EXPECT_EQ(l.block(0, 0, 2), Matrix::identity(2));
  EXPECT_EQ(l.block(0, 1, 2), -1.0 * Matrix::identity(2));
  EXPECT_EQ(l.block(1, 0, 2), Matrix(2, 2));
  EXPECT_EQ(l.block(1, 1, 2), Matrix(2, 2));

  const Matrix l1 = laplacian(load_graph("g1.json"));
  EXPECT_EQ(l1.block(0, 0, 3), (Matrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  EXPECT_EQ(laplacian(MatrixGraph(3, 2)), Matrix(6, 6));
}

TEST(Laplacian, DiagonalBlocksEqualAbsoluteInSums) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const MatrixGraph g = random_graph(rng, 3 + trial % 5, 1 + trial % 3);
    const Matrix l = laplacian(g);
    const std::size_t d = g.dim();
    for (AgentId i = 0; i < g.n_agents(); ++i) {
      Matrix diff = l.block(i, i, d);
      for (const auto& [key, w] : g.edges())
        if (key.first == i) diff -= w.abs().matrix();
      EXPECT_LT(diff.max_abs(), 1e-13);
    }
  }
}

TEST(ValidateGraph, G1IsAdmissible) {
  EXPECT_TRUE(validate_graph(io::read_raw_graph(signet::testing::asset("g1.json"))).empty());
}

TEST(ValidateGraph, Violations) {
  RawGraph raw{3, 2, {}};
  raw.edges.push_back({0, 1, Matrix{{1, 0}, {0, -1}}});
  raw.edges.push_back({1, 2, Matrix{{1, 2}, {0, 1}}});
  raw.edges.push_back({2, 2, Matrix{{1, 0}, {0, 1}}});
  raw.edges.push_back({0, 1, Matrix{{1, 0}, {0, 1}}});
  raw.edges.push_back({0, 5, Matrix{{1, 0}, {0, 1}}});
  raw.edges.push_back({1, 0, Matrix{{1.0}}});
  const auto v = validate_graph(raw);
  auto has = [&](std::size_t idx, ViolationKind k) {
    return std::any_of(v.begin(), v.end(),
                       [&](const Violation& x) { return x.edge_index == idx && x.kind == k; });
  };
  EXPECT_TRUE(has(0, ViolationKind::Indefinite));
  EXPECT_TRUE(has(1, ViolationKind::Asymmetric));
  EXPECT_TRUE(has(2, ViolationKind::SelfLoop));
  EXPECT_TRUE(has(3, ViolationKind::DuplicateEdge));
  EXPECT_TRUE(has(4, ViolationKind::AgentOutOfRange));
  EXPECT_TRUE(has(5, ViolationKind::DimensionMismatch));
  EXPECT_NE(v.front().message.find("A_1,2"), std::string::npos);
  EXPECT_THROW(MatrixGraph::from_raw(raw), Error);
}

TEST(MatrixGraph, ZeroEdgesAreDropped) {
  RawGraph raw{2, 2, {{0, 1, Matrix(2, 2)}}};
  const MatrixGraph g = MatrixGraph::from_raw(raw);
  EXPECT_EQ(g.edge_count(), 0u);
}

TEST(MatrixGraph, AddEdgeRejectsBadInput) {
  MatrixGraph g(2, 1);
  EXPECT_THROW(g.add_edge(0, 0, SymMatrix{{1.0}}), Error);
  EXPECT_THROW(g.add_edge(0, 2, SymMatrix{{1.0}}), Error);
  EXPECT_THROW(g.add_edge(0, 1, SymMatrix::identity(2)), Error);
  g.add_edge(0, 1, SymMatrix{{1.0}});
  EXPECT_THROW(g.add_edge(0, 1, SymMatrix{{2.0}}), Error);
}
