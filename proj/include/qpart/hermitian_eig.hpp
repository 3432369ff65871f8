#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "qpart/complex_matrix.hpp"
#include "qpart/errors.hpp"

namespace qpart {

/// Real eigenvalues of a Hermitian matrix, sorted ascending.
struct EigenSpectrum {
  std::vector<double> values;
};

/// Full eigendecomposition m = V diag(values) V^dagger with unitary V
/// (eigenvectors in columns), values ascending.
struct HermitianEigensystem {
  std::vector<double> values;
  ComplexMatrix vectors;
};

namespace detail {

// Off-diagonal Frobenius norm, counting both triangles.
inline double offdiag_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int p = 0; p < a.rows(); ++p)
    for (int q = p + 1; q < a.cols(); ++q) s += 2.0 * std::norm(a(p, q));
  return std::sqrt(s);
}

}  // namespace detail

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Each rotation is the unitary that annihilates one off-diagonal entry
/// a_pq: with a_pq = |a_pq| e^{i phi}, the 2x2 slice of the rotation is
///   [ cos t        -e^{i phi} sin t ]
///   [ e^{-i phi} sin t       cos t  ]
/// with tan(2t) = 2|a_pq| / (a_pp - a_qq). Sweeps repeat until the
/// off-diagonal Frobenius norm drops below 1e-12 * ||m||_F. Dimensions in
/// this library stay tiny (<= ~32), where Jacobi is simple and accurate.
///
/// Throws NotHermitian when ||m - m^dagger||_max > tol and NoConvergence
/// if the sweep budget is exhausted.
inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& m, double tol = kDefaultTol) {
  if (!m.square()) throw DimensionMismatch("eigendecomposition of a non-square matrix");
  const double dev = hermitian_deviation(m);
  if (dev > tol)
    throw NotHermitian("hermitian deviation " + std::to_string(dev) + " exceeds tolerance");

  const int n = m.rows();
  // Work on the Hermitian part; the deviation is below tol by the check above.
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (int j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  ComplexMatrix vec = ComplexMatrix::identity(n);

  const double norm = frobenius_norm(a);
  const double threshold = 1e-12 * norm;
  constexpr int kMaxSweeps = 100;

  bool converged = (n == 1) || detail::offdiag_norm(a) <= threshold;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double abs_apq = std::abs(apq);
        if (abs_apq == 0.0) continue;

        const Complex phase = apq / abs_apq;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * abs_apq);
        // Smaller-magnitude root of t^2 - 2*zeta*t - 1 = 0 (|t| <= 1).
        const double t = (zeta >= 0.0) ? -1.0 / (zeta + std::sqrt(1.0 + zeta * zeta))
                                       : 1.0 / (-zeta + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = t * cs;

        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = cs * akp + std::conj(phase) * sn * akq;
          a(k, q) = -phase * sn * akp + cs * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = app * cs * cs + aqq * sn * sn + 2.0 * sn * cs * abs_apq;
        a(q, q) = app * sn * sn + aqq * cs * cs - 2.0 * sn * cs * abs_apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (int k = 0; k < n; ++k) {
          const Complex vkp = vec(k, p);
          const Complex vkq = vec(k, q);
          vec(k, p) = cs * vkp + std::conj(phase) * sn * vkq;
          vec(k, q) = -phase * sn * vkp + cs * vkq;
        }
      }
    }
    converged = detail::offdiag_norm(a) <= threshold;
  }
  if (!converged) throw NoConvergence("Jacobi eigensolver exceeded its sweep budget");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  HermitianEigensystem out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (int c = 0; c < n; ++c) {
    out.values[c] = a(order[c], order[c]).real();
    for (int r = 0; r < n; ++r) out.vectors(r, c) = vec(r, order[c]);
  }
  return out;
}

/// Eigenvalues only, ascending.
inline EigenSpectrum hermitian_eigenvalues(const ComplexMatrix& m, double tol = kDefaultTol) {
  return EigenSpectrum{hermitian_eigensystem(m, tol).values};
}

/// Hermitian square root of a positive-semidefinite matrix:
/// R = V diag(sqrt(lambda)) V^dagger with R*R ~= m.
///
/// Eigenvalues in [-tol, 0) (roundoff negatives) are clamped to zero; the
/// number of clamps is reported through clamp_count when given. An
/// eigenvalue below -tol throws NotPositiveSemidefinite.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m, double tol = kDefaultTol,
                              std::size_t* clamp_count = nullptr) {
  HermitianEigensystem es = hermitian_eigensystem(m, tol);
  const int n = m.rows();
  std::size_t clamped = 0;
  std::vector<double> roots(n);
  for (int i = 0; i < n; ++i) {
    double v = es.values[i];
    if (v < 0.0) {
      if (v < -tol)
        throw NotPositiveSemidefinite("eigenvalue " + std::to_string(v) + " below -tolerance");
      v = 0.0;
      ++clamped;
    }
    roots[i] = std::sqrt(v);
  }
  if (clamp_count) *clamp_count = clamped;

  ComplexMatrix out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Complex s = 0.0;
      for (int k = 0; k < n; ++k) s += es.vectors(i, k) * roots[k] * std::conj(es.vectors(j, k));
      // Exact Hermitian symmetry by construction.
      if (i == j) {
        out(i, i) = s.real();
      } else {
        out(i, j) = s;
        out(j, i) = std::conj(s);
      }
    }
  return out;
}

}  // namespace qpart
