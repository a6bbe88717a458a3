#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "signet/error.hpp"
#include "signet/linalg.hpp"
#include "test_support.hpp"

using namespace signet;
using signet::testing::random_spd;
using signet::testing::random_sym;

TEST(Matrix, BlockRoundTrip) {
  Matrix m(6, 6);
  const Matrix b{{1, 2}, {3, 4}};
  m.set_block(1, 2, b);
  EXPECT_EQ(m.block(1, 2, 2), b);
  m.add_block(1, 2, b, -2.0);
  EXPECT_EQ(m.block(1, 2, 2), -1.0 * b);
  EXPECT_EQ(m(2, 4), -1.0);
}

TEST(Matrix, ProductAndTranspose) {
  const Matrix a{{1, 2, 3}, {4, 5, 6}};
  const Matrix at = a.transpose();
  const Matrix p = a * at;
  EXPECT_EQ(p, (Matrix{{14, 32}, {32, 77}}));
  const Vector y = a * Vector{1, 0, -1};
  EXPECT_EQ(y, (Vector{-2, -2}));
}

TEST(SymEigen, DiagonalMatrix) {
  const SymEigen e = sym_eigen(SymMatrix{{3, 0, 0}, {0, -1, 0}, {0, 0, 2}});
  EXPECT_EQ(e.values, (Vector{-1, 2, 3}));
}

TEST(SymEigen, MatchesCharacteristicPolynomialRoots) {
  // Independent oracle: roots of det(lambda I - A65).
  const SymEigen e = sym_eigen(SymMatrix{{7, 1, 1}, {1, 6, 0}, {1, 0, 5}});
  EXPECT_NEAR(e.values[0], 4.467911113762062, 1e-12);
  EXPECT_NEAR(e.values[1], 5.652703644666119, 1e-12);
  EXPECT_NEAR(e.values[2], 7.879385241571815, 1e-12);
}

TEST(SymEigen, ReconstructsRandomMatrices) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 9;
    const SymMatrix q = random_sym(rng, n, 3.0);
    const SymEigen e = sym_eigen(q);
    Matrix recon(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
          recon(r, c) += e.values[k] * e.vectors(r, k) * e.vectors(c, k);
    EXPECT_LT((recon - q.matrix()).max_abs(), 1e-12 * std::max(1.0, q.matrix().max_abs()));
    const Matrix vtv = e.vectors.transpose() * e.vectors;
    EXPECT_LT((vtv - Matrix::identity(n)).max_abs(), 1e-12);
    for (std::size_t k = 1; k < n; ++k) EXPECT_LE(e.values[k - 1], e.values[k]);
  }
}

TEST(SymEigen, RejectsNonFinite) {
  EXPECT_THROW(sym_eigen(SymMatrix{{1, NAN}, {NAN, 1}}), Error);
}

TEST(Definiteness, Examples) {
  EXPECT_EQ(classify_definiteness(SymMatrix{{1, 0, 0}, {0, 1, 0}, {0, 0, 2}}),
            Definiteness::PositiveDefinite);
  EXPECT_EQ(classify_definiteness(SymMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, 0}}),
            Definiteness::NegativeSemiDefinite);
  EXPECT_EQ(classify_definiteness(SymMatrix{{1, 0}, {0, -1}}), Definiteness::Indefinite);
  EXPECT_EQ(classify_definiteness(SymMatrix::zero(3)), Definiteness::Zero);
  EXPECT_EQ(classify_definiteness(SymMatrix{{1, 1}, {1, 1}}), Definiteness::PositiveSemiDefinite);
}

TEST(Definiteness, SignMirror) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const SymMatrix q = random_sym(rng, 1 + trial % 5);
    const Definiteness a = classify_definiteness(q);
    const Definiteness b = classify_definiteness(-q);
    switch (a) {
      case Definiteness::PositiveDefinite: EXPECT_EQ(b, Definiteness::NegativeDefinite); break;
      case Definiteness::NegativeDefinite: EXPECT_EQ(b, Definiteness::PositiveDefinite); break;
      case Definiteness::PositiveSemiDefinite:
        EXPECT_EQ(b, Definiteness::NegativeSemiDefinite);
        break;
      case Definiteness::NegativeSemiDefinite:
        EXPECT_EQ(b, Definiteness::PositiveSemiDefinite);
        break;
      default: EXPECT_EQ(b, a);
    }
  }
}

TEST(Cholesky, FactorsSpdAndRejectsOthers) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const SymMatrix q = random_spd(rng, 1 + trial % 8);
    const auto l = cholesky(q);
    ASSERT_TRUE(l.has_value());
    EXPECT_LT((*l * l->transpose() - q.matrix()).max_abs(), 1e-12 * q.matrix().max_abs());
  }
  EXPECT_FALSE(cholesky(SymMatrix{{1, 2}, {2, 1}}).has_value());
  EXPECT_FALSE(cholesky(SymMatrix{{1, 1}, {1, 1}}).has_value());
}

TEST(SolveLinear, RecoversSolutionAndDetectsSingular) {
  const Matrix a{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  const Vector x{1, -2, 3};
  const Vector b = a * x;
  const Vector got = solve_linear(a, b);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(got[k], x[k], 1e-14);
  EXPECT_THROW(solve_linear(Matrix{{1, 2}, {2, 4}}, Vector{1, 2}), Error);
}

TEST(Lyapunov, ScalarCase) {
  // a p + p a = -q with a = -2, q = 1 gives p = 1/4.
  const SymMatrix p = solve_lyapunov(Matrix{{-2.0}}, SymMatrix{{1.0}});
  EXPECT_DOUBLE_EQ(p(0, 0), 0.25);
}

TEST(Lyapunov, ResidualSmallOnRandomStableMatrices) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 7;
    const Matrix a = -1.0 * random_spd(rng, n).matrix();
    Matrix skew = random_sym(rng, n).matrix();
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < r; ++c) skew(r, c) = -skew(c, r);
    const Matrix stable = a + skew;  // symmetric part negative definite
    const SymMatrix q = SymMatrix::identity(n);
    const SymMatrix p = solve_lyapunov(stable, q);
    EXPECT_LT(lyapunov_residual(stable, p, q), 1e-10);
  }
}

TEST(Hurwitz, NegatedGramPlusIdentityIsHurwitz) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const Matrix a = -1.0 * random_spd(rng, n, 1.0).matrix();
    const HurwitzCertificate cert = is_hurwitz(a);
    EXPECT_TRUE(cert.hurwitz());
    EXPECT_LT(cert.residual, 1e-10);
  }
}

TEST(Hurwitz, UnstableAndMarginal) {
  EXPECT_EQ(is_hurwitz(Matrix{{1, 0}, {0, -2}}).verdict, HurwitzVerdict::NotHurwitz);
  // Eigenvalues +-i: the Lyapunov operator is singular.
  EXPECT_EQ(is_hurwitz(Matrix{{0, 1}, {-1, 0}}).verdict, HurwitzVerdict::Inconclusive);
  // Non-normal but stable.
  EXPECT_TRUE(is_hurwitz(Matrix{{-1, 100}, {0, -2}}).hurwitz());
}

TEST(Lyapunov, RejectsOversizedSystems) {
  EXPECT_THROW(solve_lyapunov(Matrix::identity(65), SymMatrix::identity(65)), Error);
}
