#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "signet/error.hpp"
#include "signet/protocol.hpp"
#include "test_support.hpp"

using namespace signet;
using signet::testing::kTheta;
using signet::testing::load_graph;
using signet::testing::random_graph;

namespace {

constexpr double kC2G1 = 7.14399606948021;  // generalized-eigenvalue oracle

ProtocolDesign g1_design() {
  return synthesize(load_graph("g1.json"), Decomposition::from_v1(7, {1, 2}), kTheta);
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidInput;
}

}  // namespace

TEST(ComputeCi, G1Values) {
  const MatrixGraph g = load_graph("g1.json");
  EXPECT_NEAR(compute_ci(g, 2), 4.5, 1e-12);
  EXPECT_NEAR(compute_ci(g, 1), kC2G1, 1e-12);
  EXPECT_EQ(code_of([&] { compute_ci(g, 0); }), Errc::OmegaSumNotPD);
}

TEST(ComputeCi, BalancedVertexGivesZero) {
  MatrixGraph g(3, 2);
  const SymMatrix w{{2, 1}, {1, 3}};
  g.add_edge(1, 0, -w);
  g.add_edge(2, 1, w);
  EXPECT_NEAR(compute_ci(g, 1), 0.0, 1e-15);
}

TEST(ComputeCi, SemidefiniteOmegaSumRejected) {
  const MatrixGraph g = load_graph("g2.json");
  // v6 only has the semidefinite negative in-edge A62.
  EXPECT_EQ(code_of([&] { compute_ci(g, 5); }), Errc::OmegaSumNotPD);
}

TEST(Synthesize, G1Constants) {
  const ProtocolDesign d = g1_design();
  ASSERT_TRUE(d.lower_bound.has_value());
  EXPECT_NEAR(*d.lower_bound, kC2G1, 1e-12);
  EXPECT_NEAR(d.delta, 7.2440, 5e-5);
  EXPECT_EQ(d.k1, 1.0 + 2.0 / d.delta);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(d.x0[k], d.k1 * kTheta[k]);
  EXPECT_NEAR(d.x0[0], 1.2761, 5e-5);
  EXPECT_NEAR(d.x0[1], 2.5522, 5e-5);
  EXPECT_NEAR(d.x0[2], -1.2761, 5e-5);
  EXPECT_EQ(d.informed, (AgentSet{1, 2}));
  EXPECT_EQ(d.coupling.at(1), (SymMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}));
  EXPECT_EQ(d.coupling.at(2), (SymMatrix{{0.1, 0, 0}, {0, 0.1, 0}, {0, 0, 0.2}}));
  EXPECT_TRUE(d.lemma_applicable);
}

TEST(Synthesize, G1GroundedBlock) {
  const ProtocolDesign d = g1_design();
  const Matrix b = d.grounded_laplacian.block(1, 1, 3);
  EXPECT_LT((b - 8.24399606948021 * Matrix::identity(3)).max_abs(), 1e-12);
  // Naive agents keep their Laplacian blocks.
  const Matrix l = laplacian(load_graph("g1.json"));
  EXPECT_EQ(d.grounded_laplacian.block(4, 4, 3), l.block(4, 4, 3));
}

TEST(Synthesize, SwitchingDesignsWithDeltaOverrides) {
  SynthesisOptions o2;
  o2.delta = 7.0495;
  const ProtocolDesign d2 =
      synthesize(load_graph("g2.json"), Decomposition::from_v1(7, {0, 1, 2, 3}), kTheta, o2);
  EXPECT_NEAR(*d2.lower_bound, 6.949489742783174, 1e-12);
  EXPECT_NEAR(d2.x0[0], 1.2837, 5e-5);
  EXPECT_NEAR(d2.x0[1], 2.5674, 5e-5);
  EXPECT_NEAR(d2.x0[2], -1.2837, 5e-5);
  EXPECT_EQ(d2.informed, (AgentSet{0, 1, 2, 3, 5}));
  EXPECT_FALSE(d2.notes.empty());  // |B_6| only semidefinite

  SynthesisOptions o3;
  o3.delta = 3.1;
  const ProtocolDesign d3 =
      synthesize(load_graph("g3.json"), Decomposition::from_v1(7, {0, 1, 2, 3, 6}), kTheta, o3);
  EXPECT_NEAR(*d3.lower_bound, 3.0, 1e-12);
  EXPECT_NEAR(d3.x0[0], 1.6452, 5e-5);
  EXPECT_NEAR(d3.x0[1], 3.2903, 5e-5);
  EXPECT_NEAR(d3.x0[2], -1.6452, 5e-5);
}

TEST(Synthesize, Errors) {
  const MatrixGraph g = load_graph("g1.json");
  const Decomposition dec = Decomposition::from_v1(7, {1, 2});
  EXPECT_EQ(code_of([&] { synthesize(g, dec, Vector{0, 0, 0}); }), Errc::InvalidInput);
  EXPECT_EQ(code_of([&] { synthesize(g, dec, Vector{1, 2}); }), Errc::InvalidInput);
  EXPECT_EQ(code_of([&] { synthesize(g, Decomposition::from_v1(7, {2}), kTheta); }),
            Errc::InvalidInput);
  SynthesisOptions low;
  low.delta = 7.0;
  EXPECT_EQ(code_of([&] { synthesize(g, dec, kTheta, low); }), Errc::DeltaBelowBound);
  // V1 = {v1, v2, v3}: v1 has no negative in-edge and is skipped; v2 and v3
  // still define C.
  EXPECT_NEAR(*synthesize(g, Decomposition::from_v1(7, {0, 1, 2}), kTheta).lower_bound, kC2G1,
              1e-12);
}

TEST(Synthesize, EmptyV1WithAntagonism) {
  MatrixGraph g(3, 1);
  g.add_edge(1, 0, SymMatrix{{1.0}});
  g.add_edge(2, 1, SymMatrix{{-1.0}});
  EXPECT_EQ(code_of([&] { synthesize(g, Decomposition::from_v1(3, {0}), Vector{1.0}); }),
            Errc::EmptyV1WithAntagonism);
}

TEST(Synthesize, PurelyCooperativeGraphIsFlagged) {
  MatrixGraph g(2, 1);
  g.add_edge(1, 0, SymMatrix{{1.0}});
  const ProtocolDesign d = synthesize(g, Decomposition::from_v1(2, {0}), Vector{1.0});
  EXPECT_FALSE(d.lemma_applicable);
  EXPECT_TRUE(d.informed.empty());
  EXPECT_EQ(d.grounded_laplacian, laplacian(g));
  EXPECT_FALSE(certify_design(d, CertificationMode::Fixed).passed);
}

TEST(GroundedLaplacian, Examples) {
  const MatrixGraph g = load_graph("g1.json");
  std::map<AgentId, SymMatrix> coupling{{1, SymMatrix::identity(3)}};
  EXPECT_EQ(grounded_laplacian(g, coupling, 0.0), laplacian(g));
  const MatrixGraph single(1, 2);
  EXPECT_EQ(grounded_laplacian(single, {{0, SymMatrix::identity(2)}}, 1.0), Matrix::identity(2));
  EXPECT_THROW(grounded_laplacian(g, {{0, SymMatrix::identity(2)}}, 1.0), Error);
}

TEST(Certify, G1FixedIsHurwitz) {
  const ProtocolDesign d = g1_design();
  const CertificationReport r = certify_design(d, CertificationMode::Fixed);
  EXPECT_TRUE(r.passed);
  EXPECT_TRUE(r.hurwitz.hurwitz());
  EXPECT_LE(r.hurwitz.residual, 1e-8);
  EXPECT_LT(r.stationarity, 1e-9);
  // The certificate satisfies -P L_B - L_B^T P = -I.
  const SymMatrix& p = *r.hurwitz.lyapunov;
  EXPECT_LE(lyapunov_residual(-1.0 * d.grounded_laplacian, p, SymMatrix::identity(21)), 1e-8);
}

TEST(Certify, SwitchingDesignsHavePdSymmetricPart) {
  const auto sched = signet::testing::load_schedule("switching.json");
  for (const auto& top : sched->topologies()) {
    const CertificationReport r = certify_design(top.design, CertificationMode::TimeVarying);
    EXPECT_TRUE(r.symmetric_part_pd) << top.id;
    EXPECT_TRUE(r.passed) << top.id;
  }
}

TEST(Certify, UngroundedNegativeEdgeIsNotHurwitz) {
  MatrixGraph g(2, 1);
  g.add_edge(0, 1, SymMatrix{{-1.0}});
  const Matrix l = grounded_laplacian(g, {}, 0.0);
  EXPECT_FALSE(is_hurwitz(-1.0 * l).hurwitz());
}

TEST(Stationarity, RandomAdmissibleGraphs) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const std::size_t d = 1 + trial % 3;
    const MatrixGraph g = random_graph(rng, n, d);
    Vector theta(d);
    for (double& v : theta) v = u(rng);
    std::vector<AgentId> all(n);
    std::iota(all.begin(), all.end(), 0);
    const ProtocolDesign des = synthesize(g, Decomposition::from_v1(n, all), theta);
    EXPECT_LE(stationarity_residual(des), stationarity_tolerance(des));
  }
}

TEST(Synthesize, ThetaScaleEquivariance) {
  const MatrixGraph g = load_graph("g1.json");
  const Decomposition dec = Decomposition::from_v1(7, {1, 2});
  const ProtocolDesign base = synthesize(g, dec, kTheta);
  for (double s : {-2.0, 0.5, 3.0}) {
    Vector theta = kTheta;
    for (double& v : theta) v *= s;
    const ProtocolDesign scaled = synthesize(g, dec, theta);
    EXPECT_EQ(scaled.delta, base.delta);
    EXPECT_EQ(scaled.grounded_laplacian, base.grounded_laplacian);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_DOUBLE_EQ(scaled.x0[k], s * base.x0[k]);
  }
}

TEST(Synthesize, PermutationEquivariance) {
  const MatrixGraph g = load_graph("g1.json");
  const std::vector<AgentId> perm{3, 0, 6, 5, 1, 2, 4};  // old index -> new index
  MatrixGraph h(7, 3);
  for (const auto& [key, w] : g.edges()) h.add_edge(perm[key.first], perm[key.second], w.matrix());
  const ProtocolDesign a = synthesize(g, Decomposition::from_v1(7, {1, 2}), kTheta);
  const ProtocolDesign b =
      synthesize(h, Decomposition::from_v1(7, {perm[1], perm[2]}), kTheta);
  EXPECT_NEAR(*a.lower_bound, *b.lower_bound, 1e-13);
  for (const auto& [i, m] : a.coupling) EXPECT_EQ(b.coupling.at(perm[i]), m);
  for (AgentId i = 0; i < 7; ++i)
    for (AgentId j = 0; j < 7; ++j)
      EXPECT_LT((a.grounded_laplacian.block(i, j, 3) - b.grounded_laplacian.block(perm[i], perm[j], 3))
                    .max_abs(),
                1e-13);
}
