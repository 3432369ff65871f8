#pragma once

#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "qpart/errors.hpp"

namespace qpart {

using Complex = std::complex<double>;

// Default absolute tolerance (max-norm) for Hermiticity / positivity checks.
// Inputs throughout are products of unit-scale amplitudes.
inline constexpr double kDefaultTol = 1e-9;

/// Dense complex matrix, row-major. The universal numeric carrier for
/// density matrices, spin-flip matrices and their 4x4 blocks.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}

  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), entries_(checked_size(rows, cols)) {}

  ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
      : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != checked_size(rows, cols))
      throw DimensionMismatch("entry count does not match dimensions");
  }

  static ComplexMatrix zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

  static ComplexMatrix identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const Complex& operator()(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex s) {
    for (auto& e : entries_) e *= s;
    return *this;
  }

 private:
  // Validates before any allocation can act on a bogus size.
  static std::size_t checked_size(int rows, int cols) {
    if (rows <= 0 || cols <= 0) throw DimensionMismatch("matrix dimensions must be positive");
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
  }

  void require_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw DimensionMismatch("matrix shapes differ: " + shape_string() + " vs " + o.shape_string());
  }
  std::string shape_string() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  int rows_, cols_;
  std::vector<Complex> entries_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

/// Standard matrix product. Throws DimensionMismatch when the inner
/// dimensions disagree.
inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

/// Entrywise complex conjugate (not the transpose).
inline ComplexMatrix conjugate(const ComplexMatrix& m) {
  ComplexMatrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = std::conj(m(i, j));
  return out;
}

inline ComplexMatrix transpose(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

/// Conjugate transpose.
inline ComplexMatrix adjoint(const ComplexMatrix& m) {
  ComplexMatrix out(m.cols(), m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(j, i) = std::conj(m(i, j));
  return out;
}

inline Complex trace(const ComplexMatrix& m) {
  if (!m.square()) throw DimensionMismatch("trace of a non-square matrix");
  Complex t = 0.0;
  for (int i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

/// out[k][l] = m[indices[k]][indices[l]]. The given index order defines the
/// output order; indices need not be increasing.
inline ComplexMatrix principal_submatrix(const ComplexMatrix& m, const std::vector<int>& indices) {
  if (!m.square()) throw DimensionMismatch("principal submatrix of a non-square matrix");
  for (int idx : indices)
    if (idx < 0 || idx >= m.rows())
      throw IndexOutOfRange("submatrix index " + std::to_string(idx) + " outside 0.." +
                            std::to_string(m.rows() - 1));
  const int n = static_cast<int>(indices.size());
  if (n == 0) throw IndexOutOfRange("submatrix index list is empty");
  ComplexMatrix out(n, n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) out(k, l) = m(indices[k], indices[l]);
  return out;
}

/// Largest entry magnitude (max-norm).
inline double max_abs(const ComplexMatrix& m) {
  double v = 0.0;
  for (const auto& e : m.entries()) v = std::max(v, std::abs(e));
  return v;
}

inline double frobenius_norm(const ComplexMatrix& m) {
  double s = 0.0;
  for (const auto& e : m.entries()) s += std::norm(e);
  return std::sqrt(s);
}

/// max_ij |m_ij - conj(m_ji)|; zero for an exactly Hermitian matrix.
inline double hermitian_deviation(const ComplexMatrix& m) {
  if (!m.square()) throw DimensionMismatch("hermitian deviation of a non-square matrix");
  double v = 0.0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j) - std::conj(m(j, i))));
  return v;
}

inline bool all_finite(const ComplexMatrix& m) {
  for (const auto& e : m.entries())
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
  return true;
}

inline bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j) - b(i, j)) > tol) return false;
  return true;
}

}  // namespace qpart
