#pragma once

// Dense kernels for the small matrices that appear in matrix-weighted
// networks: d <= ~8 edge weights and Nd <= ~64 block Laplacians.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace signet {

using Vector = std::vector<double>;

/// Row-major dense matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const noexcept { return data_; }
  std::span<double> data() noexcept { return data_; }

  Matrix transpose() const;
  double max_abs() const noexcept;
  double frobenius_norm() const noexcept;
  bool all_finite() const noexcept;

  /// d x d block (bi, bj) of a block matrix.
  Matrix block(std::size_t bi, std::size_t bj, std::size_t d) const;
  void set_block(std::size_t bi, std::size_t bj, const Matrix& b);
  void add_block(std::size_t bi, std::size_t bj, const Matrix& b, double scale = 1.0);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);

double norm2(std::span<const double> x) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// Exactly symmetric matrix. Construction from an arbitrary square matrix
/// stores (A + A^T) / 2, so entries (k, l) and (l, k) are bitwise equal.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const Matrix& m);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : SymMatrix(Matrix(rows)) {}

  static SymMatrix identity(std::size_t n) { return SymMatrix(Matrix::identity(n)); }
  static SymMatrix zero(std::size_t n) { return SymMatrix(Matrix(n, n)); }

  std::size_t dim() const noexcept { return m_.rows(); }
  double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const Matrix& matrix() const noexcept { return m_; }

  SymMatrix& operator+=(const SymMatrix& o);
  SymMatrix& operator-=(const SymMatrix& o);
  SymMatrix& operator*=(double s);

  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  Matrix m_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(double s, SymMatrix a);
inline SymMatrix operator-(SymMatrix a) { return -1.0 * std::move(a); }

enum class Definiteness {
  PositiveDefinite,
  PositiveSemiDefinite,
  Zero,
  NegativeSemiDefinite,
  NegativeDefinite,
  Indefinite,
};

std::string_view to_string(Definiteness d) noexcept;

struct SymEigen {
  Vector values;   // ascending
  Matrix vectors;  // column k pairs with values[k]
};

/// Cyclic Jacobi rotations. Throws Errc::InvalidInput on non-finite entries.
SymEigen sym_eigen(const SymMatrix& q);

inline constexpr double kDefinitenessRelTol = 1e-10;
inline constexpr double kDefinitenessAbsTol = 1e-12;

/// Eigenvalues within max(rel_tol * max|lambda|, abs_tol) of zero count as
/// zero.
Definiteness classify_definiteness(const SymMatrix& q,
                                   double rel_tol = kDefinitenessRelTol,
                                   double abs_tol = kDefinitenessAbsTol);

/// Lower-triangular L with L L^T = q, or nullopt when a pivot is <= 0.
std::optional<Matrix> cholesky(const SymMatrix& q);

/// Gaussian elimination with partial pivoting. Throws Errc::Singular when a
/// pivot magnitude falls to 1e-12 * max|entry| or below.
Vector solve_linear(const Matrix& a, std::span<const double> b);

/// Solves A^T P + P A = -Q by dense vectorization. Throws Errc::Singular when
/// the vectorized operator is singular (A has eigenvalues summing to zero).
SymMatrix solve_lyapunov(const Matrix& a, const SymMatrix& q);

/// max |A^T P + P A + Q|
double lyapunov_residual(const Matrix& a, const SymMatrix& p, const SymMatrix& q);

enum class HurwitzVerdict { Hurwitz, NotHurwitz, Inconclusive };

std::string_view to_string(HurwitzVerdict v) noexcept;

struct HurwitzCertificate {
  HurwitzVerdict verdict = HurwitzVerdict::Inconclusive;
  std::optional<SymMatrix> lyapunov;  // P solving A^T P + P A = -I
  double residual = 0.0;

  bool hurwitz() const noexcept { return verdict == HurwitzVerdict::Hurwitz; }
};

/// A is Hurwitz iff A^T P + P A = -I has a positive definite solution.
HurwitzCertificate is_hurwitz(const Matrix& a);

}  // namespace signet
