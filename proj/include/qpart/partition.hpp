#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "qpart/bound_report.hpp"
#include "qpart/complex_matrix.hpp"
#include "qpart/density_matrix.hpp"
#include "qpart/errors.hpp"
#include "qpart/spin_flip.hpp"

namespace qpart {

/// Entries outside the main and anti diagonal must be below this for a 4x4
/// block to qualify for the closed-form concurrence.
inline constexpr double kXFormTol = 1e-10;

/// Subnormalized 4x4 slice of a qubit-qudit state on the qubit-pair (i,j)
/// of the qudit. Basis order |0 i>, |0 j>, |1 i>, |1 j>; the trace is the
/// weight of the pair subspace, not 1.
struct TwoQubitBlock {
  BlockPair pair;
  ComplexMatrix mat;
  int parent_d;
};

/// Principal submatrix of rho at parent indices {i, j, d+i, d+j}.
/// Deliberately not renormalized: the aggregate bound needs the raw weights.
inline TwoQubitBlock extract_block(const DensityMatrix& rho, BlockPair pair) {
  const int d = rho.d();
  require_pair_in_dim(pair, rho.qudit_dim());
  const std::vector<int> idx{pair.i, pair.j, d + pair.i, d + pair.j};
  return TwoQubitBlock{pair, principal_submatrix(rho.matrix(), idx), d};
}

/// True when the 4x4 matrix has support only on the main and anti diagonal.
inline bool is_x_form(const ComplexMatrix& m, double tol = kXFormTol) {
  if (m.rows() != 4 || m.cols() != 4) throw DimensionMismatch("X-form test expects a 4x4 matrix");
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j || i + j == 3) continue;
      if (std::abs(m(i, j)) > tol) return false;
    }
  return true;
}

/// Closed-form concurrence of an X-form 4x4 block:
///   2 max(0, |m03| - sqrt(m11 m22), |m12| - sqrt(m00 m33)).
/// Valid for subnormalized blocks (the expression is homogeneous of degree
/// one in the entries). Throws NotXForm when the block has off-pattern
/// support.
inline double xform_concurrence(const ComplexMatrix& m, double tol = kXFormTol) {
  if (!is_x_form(m, tol)) throw NotXForm("matrix has support outside the X pattern");
  const auto diag = [&m](int k) { return std::max(0.0, m(k, k).real()); };
  const double inner = std::abs(m(0, 3)) - std::sqrt(diag(1) * diag(2));
  const double outer = std::abs(m(1, 2)) - std::sqrt(diag(0) * diag(3));
  return 2.0 * std::max({0.0, inner, outer});
}

inline bool is_x_form(const TwoQubitBlock& block, double tol = kXFormTol) {
  return is_x_form(block.mat, tol);
}

inline double xform_concurrence(const TwoQubitBlock& block, double tol = kXFormTol) {
  return xform_concurrence(block.mat, tol);
}

/// Concurrence of one extracted block through the spectral route with the
/// single two-qubit spin-flip matrix.
inline double block_concurrence(const TwoQubitBlock& block, double tol = kDefaultTol) {
  return pair_concurrence(lambda_spectrum(block.mat, build_s_2q(), tol));
}

/// Partition route: slice the state into its C(d,2) qubit-pair blocks and
/// aggregate the per-block concurrences. Equivalent to c_db_full but needs
/// only the one 4x4 spin-flip matrix. Blocks in X form take the closed
/// form; in debug builds the spectral route cross-checks it.
inline BoundReport c_db_partition(const DensityMatrix& rho, double tol = kDefaultTol) {
  const ComplexMatrix s2q = build_s_2q();
  std::vector<PairConcurrence> per_pair;
  for (const BlockPair& pair : enumerate_pairs(rho.qudit_dim())) {
    const TwoQubitBlock block = extract_block(rho, pair);
    double c = 0.0;
    if (is_x_form(block.mat)) {
      c = xform_concurrence(block.mat);
#ifndef NDEBUG
      const double spectral = pair_concurrence(lambda_spectrum(block.mat, s2q, tol));
      if (std::abs(c - spectral) > 1e-9)
        throw NoConvergence("X-form closed form disagrees with the spectral route");
#endif
    } else {
      c = pair_concurrence(lambda_spectrum(block.mat, s2q, tol));
    }
    per_pair.push_back({pair, c});
  }
  return make_bound_report(std::move(per_pair), Route::partition);
}

}  // namespace qpart
