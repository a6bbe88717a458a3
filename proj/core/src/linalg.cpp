#include "signet/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "signet/error.hpp"

namespace signet {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::Singular: return "Singular";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::OmegaSumNotPD: return "OmegaSumNotPD";
    case Errc::EmptyV1WithAntagonism: return "EmptyV1WithAntagonism";
    case Errc::DeltaBelowBound: return "DeltaBelowBound";
    case Errc::TooLarge: return "TooLarge";
    case Errc::NumericalBlowup: return "NumericalBlowup";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(Errc::DimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
  Matrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius_norm() const noexcept { return norm2(data_); }

bool Matrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(),
                     [](double v) { return std::isfinite(v); });
}

Matrix Matrix::block(std::size_t bi, std::size_t bj, std::size_t d) const {
  Matrix b(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) b(r, c) = (*this)(bi * d + r, bj * d + c);
  return b;
}

void Matrix::set_block(std::size_t bi, std::size_t bj, const Matrix& b) {
  const std::size_t d = b.rows();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) (*this)(bi * d + r, bj * d + c) = b(r, c);
}

void Matrix::add_block(std::size_t bi, std::size_t bj, const Matrix& b, double scale) {
  const std::size_t d = b.rows();
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < b.cols(); ++c)
      (*this)(bi * d + r, bj * d + c) += scale * b(r, c);
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(Errc::DimensionMismatch, "matrix sum with mismatched shapes");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(Errc::DimensionMismatch, "matrix difference with mismatched shapes");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& v : data_) v *= s;
  return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows())
    throw Error(Errc::DimensionMismatch, "matrix product with mismatched shapes");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Vector operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size())
    throw Error(Errc::DimensionMismatch, "matrix-vector product with mismatched shapes");
  Vector y(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = dot(a.row(i), x);
  return y;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

double norm2(std::span<const double> x) noexcept { return std::sqrt(dot(x, x)); }

// ---------------------------------------------------------------------------
// SymMatrix

SymMatrix::SymMatrix(const Matrix& m) : m_(m.rows(), m.cols()) {
  if (!m.square()) throw Error(Errc::DimensionMismatch, "symmetric matrix must be square");
  const std::size_t n = m.rows();
  for (std::size_t r = 0; r < n; ++r) {
    m_(r, r) = m(r, r);
    for (std::size_t c = r + 1; c < n; ++c) {
      const double v = 0.5 * (m(r, c) + m(c, r));
      m_(r, c) = v;
      m_(c, r) = v;
    }
  }
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
  m_ += o.m_;
  return *this;
}
SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
  m_ -= o.m_;
  return *this;
}
SymMatrix& SymMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

std::string_view to_string(Definiteness d) noexcept {
  switch (d) {
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
    case Definiteness::PositiveSemiDefinite: return "PositiveSemiDefinite";
    case Definiteness::Zero: return "Zero";
    case Definiteness::NegativeSemiDefinite: return "NegativeSemiDefinite";
    case Definiteness::NegativeDefinite: return "NegativeDefinite";
    case Definiteness::Indefinite: return "Indefinite";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Symmetric eigensolver

SymEigen sym_eigen(const SymMatrix& q) {
  const std::size_t n = q.dim();
  if (!q.matrix().all_finite())
    throw Error(Errc::InvalidInput, "sym_eigen: non-finite matrix entry");

  Matrix a = q.matrix();
  Matrix v = Matrix::identity(n);

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t r = p + 1; r < n; ++r) off += a(p, r) * a(p, r);
    if (off == 0.0 || std::sqrt(off) <= 1e-16 * scale) break;

    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const double apr = a(p, r);
        if (apr == 0.0) continue;
        // Rotation angle that annihilates a(p, r); t is the smaller root of
        // t^2 + 2 theta t - 1 = 0.
        const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkr = v(k, r);
          v(k, p) = c * vkp - s * vkr;
          v(k, r) = s * vkp + c * vkr;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SymEigen out{Vector(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

Definiteness classify_definiteness(const SymMatrix& q, double rel_tol, double abs_tol) {
  if (q.dim() == 0) return Definiteness::Zero;
  const Vector ev = sym_eigen(q).values;
  const double lo = ev.front();
  const double hi = ev.back();
  const double tol = std::max(rel_tol * std::max(std::abs(lo), std::abs(hi)), abs_tol);

  const bool pos = hi > tol;
  const bool neg = lo < -tol;
  if (pos && neg) return Definiteness::Indefinite;
  if (pos) return lo > tol ? Definiteness::PositiveDefinite : Definiteness::PositiveSemiDefinite;
  if (neg) return hi < -tol ? Definiteness::NegativeDefinite : Definiteness::NegativeSemiDefinite;
  return Definiteness::Zero;
}

std::optional<Matrix> cholesky(const SymMatrix& q) {
  const std::size_t n = q.dim();
  Matrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double pivot = q(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > 0.0)) return std::nullopt;
    const double ljj = std::sqrt(pivot);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = q(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

Vector solve_linear(const Matrix& a_in, std::span<const double> b_in) {
  if (!a_in.square() || a_in.rows() != b_in.size())
    throw Error(Errc::DimensionMismatch, "solve_linear: shape mismatch");
  const std::size_t n = a_in.rows();
  Matrix a = a_in;
  Vector b(b_in.begin(), b_in.end());
  const double threshold = 1e-12 * a.max_abs();

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (!(std::abs(a(piv, col)) > threshold))
      throw Error(Errc::Singular, "solve_linear: matrix is numerically singular");
    if (piv != col) {
      auto rp = a.row(piv);
      auto rc = a.row(col);
      std::swap_ranges(rp.begin(), rp.end(), rc.begin());
      std::swap(b[piv], b[col]);
    }
    const double inv = 1.0 / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) * inv;
      if (f == 0.0) continue;
      a(r, col) = 0.0;
      for (std::size_t c = col + 1; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }

  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a(i, c) * x[c];
    x[i] = s / a(i, i);
  }
  return x;
}

SymMatrix solve_lyapunov(const Matrix& a, const SymMatrix& q) {
  if (!a.square() || a.rows() != q.dim())
    throw Error(Errc::DimensionMismatch, "solve_lyapunov: shape mismatch");
  const std::size_t n = a.rows();
  if (n > 64) throw Error(Errc::TooLarge, "solve_lyapunov: dimension above 64");

  // Unknown P(u, w) sits at index u * n + w. Row (r, c) of the system is
  // sum_k A(k, r) P(k, c) + sum_k P(r, k) A(k, c) = -Q(r, c).
  const std::size_t m = n * n;
  Matrix k(m, m);
  Vector rhs(m);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t row = r * n + c;
      for (std::size_t j = 0; j < n; ++j) {
        k(row, j * n + c) += a(j, r);
        k(row, r * n + j) += a(j, c);
      }
      rhs[row] = -q(r, c);
    }
  }
  const Vector p = solve_linear(k, rhs);
  Matrix pm(n, n);
  std::copy(p.begin(), p.end(), pm.data().begin());
  return SymMatrix(pm);
}

double lyapunov_residual(const Matrix& a, const SymMatrix& p, const SymMatrix& q) {
  const Matrix r = a.transpose() * p.matrix() + p.matrix() * a + q.matrix();
  return r.max_abs();
}

std::string_view to_string(HurwitzVerdict v) noexcept {
  switch (v) {
    case HurwitzVerdict::Hurwitz: return "Hurwitz";
    case HurwitzVerdict::NotHurwitz: return "NotHurwitz";
    case HurwitzVerdict::Inconclusive: return "Inconclusive";
  }
  return "Unknown";
}

HurwitzCertificate is_hurwitz(const Matrix& a) {
  HurwitzCertificate cert;
  const SymMatrix eye = SymMatrix::identity(a.rows());
  SymMatrix p;
  try {
    p = solve_lyapunov(a, eye);
  } catch (const Error& e) {
    if (e.code() != Errc::Singular) throw;
    return cert;
  }
  cert.residual = lyapunov_residual(a, p, eye);
  cert.verdict = cholesky(p) ? HurwitzVerdict::Hurwitz : HurwitzVerdict::NotHurwitz;
  cert.lyapunov = std::move(p);
  return cert;
}

}  // namespace signet
