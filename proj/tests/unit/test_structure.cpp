#include <gtest/gtest.h>

#include <random>

#include "signet/error.hpp"
#include "signet/structure.hpp"
#include "test_support.hpp"

using namespace signet;
using signet::testing::load_graph;
using signet::testing::random_graph;
using signet::testing::random_spd;

TEST(InDegreeDominated, G1Examples) {
  const MatrixGraph g = load_graph("g1.json");
  const DominanceResult v1 = is_in_degree_dominated(g, 0);
  EXPECT_TRUE(v1.dominated);
  EXPECT_EQ(v1.witness, (SymMatrix{{0, 0, 0}, {0, 0, 0}, {0, 0, 2}}));
  const DominanceResult v7 = is_in_degree_dominated(g, 6);
  EXPECT_TRUE(v7.dominated);
  EXPECT_EQ(v7.witness, (SymMatrix{{3.1, 0, 0}, {0, 3.1, 0}, {0, 0, 3.2}}));
}

TEST(InDegreeDominated, IsolatedVertex) {
  const DominanceResult r = is_in_degree_dominated(MatrixGraph(3, 2), 1);
  EXPECT_TRUE(r.dominated);
  EXPECT_EQ(r.witness, SymMatrix::zero(2));
}

TEST(InDegreeDominated, SinkWithDefiniteInEdgesIsDominated) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    MatrixGraph g(4, 2);
    g.add_edge(3, 0, random_spd(rng, 2));
    g.add_edge(3, 1, -random_spd(rng, 2));
    g.add_edge(1, 0, random_spd(rng, 2));
    EXPECT_TRUE(is_in_degree_dominated(g, 3).dominated);
  }
}

TEST(PnPath, Examples) {
  const MatrixGraph g = load_graph("g1.json");
  EXPECT_TRUE(pn_path_exists(g, 1, 4));
  EXPECT_TRUE(pn_path_exists(g, 3, 3));
  EXPECT_FALSE(pn_path_exists(g, 6, 0));
  // v2 -> v1 uses A12 (strictly definite) so v1 is reachable from v2 ...
  EXPECT_TRUE(pn_path_exists(g, 1, 0));
  // ... but v1 -> v2 only via the semidefinite A21.
  EXPECT_FALSE(pn_path_exists(g, 0, 1));
}

TEST(PnPath, ReflexiveAndTransitive) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const MatrixGraph g = random_graph(rng, 3 + trial % 6, 2);
    const std::size_t n = g.n_agents();
    std::vector<std::vector<bool>> reach(n);
    for (AgentId i = 0; i < n; ++i) reach[i] = pn_reachable(g, {i});
    for (AgentId i = 0; i < n; ++i) {
      EXPECT_TRUE(reach[i][i]);
      for (AgentId j = 0; j < n; ++j)
        for (AgentId k = 0; k < n; ++k)
          if (reach[i][j] && reach[j][k]) EXPECT_TRUE(reach[i][k]);
    }
  }
}

TEST(VerifyDecomposition, G1Examples) {
  const MatrixGraph g = load_graph("g1.json");
  EXPECT_TRUE(verify_decomposition(g, Decomposition::from_v1(7, {1, 2})).ok);
  const DecompositionCheck empty = verify_decomposition(g, Decomposition::from_v1(7, {}));
  EXPECT_FALSE(empty.ok);
  EXPECT_FALSE(empty.failures.empty());
  EXPECT_TRUE(verify_decomposition(g, Decomposition::from_v1(7, {0, 1, 2, 3, 4, 5, 6})).ok);
}

TEST(VerifyDecomposition, NamesFailingClause) {
  const MatrixGraph g = load_graph("g1.json");
  // v2 is not in-degree-dominated (out-weights exceed in-weights), and with
  // V1 = {v3} nothing reaches v2.
  const DecompositionCheck c = verify_decomposition(g, Decomposition::from_v1(7, {2}));
  EXPECT_FALSE(c.ok);
  bool v2_unreachable = false;
  bool v2_not_dominated = false;
  for (const auto& f : c.failures) {
    if (f.vertex == 1 && f.clause == DecompositionClause::Unreachable) v2_unreachable = true;
    if (f.vertex == 1 && f.clause == DecompositionClause::NotInDegreeDominated)
      v2_not_dominated = true;
  }
  EXPECT_TRUE(v2_unreachable);
  EXPECT_TRUE(v2_not_dominated);
}

TEST(VerifyDecomposition, RejectsNonPartition) {
  const MatrixGraph g = load_graph("g1.json");
  Decomposition bad{{0, 1}, {1, 2, 3, 4, 5, 6}};
  const DecompositionCheck c = verify_decomposition(g, bad);
  EXPECT_FALSE(c.ok);
  EXPECT_EQ(c.failures.front().clause, DecompositionClause::NotPartition);
}

TEST(FindDecomposition, MinimalSplits) {
  EXPECT_EQ(find_decomposition(load_graph("g1.json")).v1, (AgentSet{1, 2}));
  EXPECT_EQ(find_decomposition(load_graph("g2.json")).v1, (AgentSet{0, 1, 2, 3}));
  EXPECT_EQ(find_decomposition(load_graph("g3.json")).v1, (AgentSet{0, 1, 2, 3, 6}));
  EXPECT_EQ(find_decomposition(MatrixGraph(1, 2)).v1, (AgentSet{0}));
  // Two isolated vertices: each is its own source.
  EXPECT_EQ(find_decomposition(MatrixGraph(2, 1)).v1, (AgentSet{0, 1}));
}

TEST(FindDecomposition, ResultAlwaysVerifies) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const MatrixGraph g = random_graph(rng, 2 + trial % 8, 1 + trial % 2);
    const Decomposition dec = find_decomposition(g);
    EXPECT_TRUE(verify_decomposition(g, dec).ok);
  }
}

TEST(FindDecomposition, TooLarge) {
  EXPECT_THROW(find_decomposition(MatrixGraph(17, 1)), Error);
  try {
    find_decomposition(MatrixGraph(5, 1), 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}

TEST(BoundedWeights, Examples) {
  const std::vector<MatrixGraph> all{load_graph("g1.json"), load_graph("g2.json"),
                                     load_graph("g3.json")};
  const BoundedWeights b = check_bounded_weights(all);
  EXPECT_EQ(b.bound, 12.0);
  EXPECT_TRUE(b.ok);
  EXPECT_EQ(check_bounded_weights(std::span(all).first(1)).bound, 12.0);
  const std::vector<MatrixGraph> empty{MatrixGraph(3, 2)};
  EXPECT_EQ(check_bounded_weights(empty).bound, 0.0);
}

TEST(BoundedWeights, MatchesBruteForceScan) {
  std::mt19937_64 rng(43);
  std::vector<MatrixGraph> gs;
  for (int k = 0; k < 5; ++k) gs.push_back(random_graph(rng, 5, 3));
  double brute = 0.0;
  for (const auto& g : gs)
    for (const auto& [key, w] : g.edges())
      for (double v : w.matrix().matrix().data()) brute = std::max(brute, std::abs(v));
  EXPECT_EQ(check_bounded_weights(gs).bound, brute);
}
