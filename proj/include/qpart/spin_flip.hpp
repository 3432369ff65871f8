#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qpart/bound_report.hpp"
#include "qpart/complex_matrix.hpp"
#include "qpart/density_matrix.hpp"
#include "qpart/errors.hpp"
#include "qpart/hermitian_eig.hpp"

namespace qpart {

/// Spin-flip matrix S^{ij} on the full 2d-dimensional qubit-qudit space.
/// All entries vanish except
///   S[i][j+d] = S[j+d][i] = +1,   S[j][i+d] = S[i+d][j] = -1,
/// which is -sigma_y^A (x) sigma_y^{B,(ij)} restricted to the embedded
/// two-qubit subspace. Symmetric, real, exactly four nonzero entries.
inline ComplexMatrix build_s_full(QuditDim d, BlockPair pair) {
  require_pair_in_dim(pair, d);
  const int n = 2 * d.value;
  ComplexMatrix s(n, n);
  s(pair.i, pair.j + d.value) = 1.0;
  s(pair.j + d.value, pair.i) = 1.0;
  s(pair.j, pair.i + d.value) = -1.0;
  s(pair.i + d.value, pair.j) = -1.0;
  return s;
}

/// The single two-qubit spin-flip matrix sigma_y (x) sigma_y:
///   [  0  0  0 -1 ]
///   [  0  0  1  0 ]
///   [  0  1  0  0 ]
///   [ -1  0  0  0 ]
/// Note build_s_2q() == -build_s_full(2, {0,1}); the sign never affects the
/// lambda spectrum.
inline ComplexMatrix build_s_2q() {
  ComplexMatrix s(4, 4);
  s(0, 3) = -1.0;
  s(1, 2) = 1.0;
  s(2, 1) = 1.0;
  s(3, 0) = -1.0;
  return s;
}

namespace detail {

// Flip the global sign of b so the first nonzero entry (row-major) has
// positive real part (or, if exactly imaginary, positive imaginary part).
// Collapses b and -b onto one representative, which makes the spectrum
// routine bitwise invariant under s -> -s.
inline void sign_canonicalize(ComplexMatrix& b) {
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      const Complex v = b(i, j);
      if (v == 0.0) continue;
      const bool flip = v.real() < 0.0 || (v.real() == 0.0 && v.imag() < 0.0);
      if (flip) b *= Complex(-1.0, 0.0);
      return;
    }
}

// Lambda spectrum given the PSD square root r of the state.
//
// The lambdas are the square roots of the eigenvalues of rho S rho* S,
// equivalently of the Hermitian sandwich A = sqrt(rho) S rho* S sqrt(rho).
// Since A = B^dagger B with B = conj(r) S r, they are exactly the singular
// values of B. Computing them through the Hermitian embedding
//   [[0, B], [B^dagger, 0]]  (eigenvalues {+sigma_k} U {-sigma_k})
// keeps the absolute error near machine epsilon. Taking square roots of
// eigenvalues of A instead would turn roundoff-sized eigenvalues into
// O(1e-8) lambdas and spoil rank-deficient states.
inline std::array<double, 4> lambda_spectrum_from_sqrt(const ComplexMatrix& r,
                                                       const ComplexMatrix& s, double tol) {
  ComplexMatrix b = conjugate(r) * s * r;
  sign_canonicalize(b);

  const int n = b.rows();
  ComplexMatrix h(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      h(i, n + j) = b(i, j);
      h(n + j, i) = std::conj(b(i, j));
    }
  const EigenSpectrum spec = hermitian_eigenvalues(h, tol);

  std::array<double, 4> lambdas{0.0, 0.0, 0.0, 0.0};
  const int take = std::min(4, n);
  for (int k = 0; k < take; ++k) {
    double v = spec.values[2 * n - 1 - k];
    if (v < 0.0) {
      if (v < -tol)
        throw NotPositiveSemidefinite("spectrum value " + std::to_string(v) + " below -tolerance");
      v = 0.0;
    }
    lambdas[k] = v;
  }
  return lambdas;
}

}  // namespace detail

/// Square roots of the four largest eigenvalues of rho_like S rho_like* S,
/// descending. rho_like must be Hermitian PSD within tol; unit trace is not
/// required (subnormalized blocks are fine). Dimensions below 4 pad with
/// zeros. Values in [-tol, 0) are clamped to 0.
inline std::array<double, 4> lambda_spectrum(const ComplexMatrix& rho_like, const ComplexMatrix& s,
                                             double tol = kDefaultTol) {
  if (rho_like.rows() != s.rows() || rho_like.cols() != s.cols())
    throw DimensionMismatch("state and spin-flip matrix dimensions differ");
  const ComplexMatrix r = psd_sqrt(rho_like, tol);
  return detail::lambda_spectrum_from_sqrt(r, s, tol);
}

/// C_ij = max(0, lambda_1 - lambda_2 - lambda_3 - lambda_4) for a
/// descending lambda list.
inline double pair_concurrence(const std::array<double, 4>& lambdas) {
  for (int k = 0; k + 1 < 4; ++k)
    if (lambdas[k] < lambdas[k + 1]) throw NotSorted("lambda spectrum must be descending");
  return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

/// Reference route: per-pair concurrences from the full-space S^{ij}
/// matrices, aggregated as C_db = sqrt(sum_ij C_ij^2).
inline BoundReport c_db_full(const DensityMatrix& rho, double tol = kDefaultTol) {
  const ComplexMatrix r = psd_sqrt(rho.matrix(), tol);
  std::vector<PairConcurrence> per_pair;
  for (const BlockPair& pair : enumerate_pairs(rho.qudit_dim())) {
    const ComplexMatrix s = build_s_full(rho.qudit_dim(), pair);
    const double c = pair_concurrence(detail::lambda_spectrum_from_sqrt(r, s, tol));
    per_pair.push_back({pair, c});
  }
  return make_bound_report(std::move(per_pair), Route::full);
}

}  // namespace qpart
