#pragma once

#include <string>
#include <vector>

#include "qpart/complex_matrix.hpp"
#include "qpart/errors.hpp"
#include "qpart/hermitian_eig.hpp"

namespace qpart {

/// Number of qudit levels. d = 2 is admitted and recovers the plain
/// two-qubit case.
struct QuditDim {
  int value;
  explicit QuditDim(int d) : value(d) {
    if (d < 2) throw OutOfRange("qudit dimension must be >= 2, got " + std::to_string(d));
  }
};

/// A pair of qudit levels (i, j) with 0 <= i < j, naming one embedded
/// two-qubit subsystem.
struct BlockPair {
  int i;
  int j;
  BlockPair(int i_, int j_) : i(i_), j(j_) {
    if (i < 0 || j <= i)
      throw InvalidPair("level pair requires 0 <= i < j, got (" + std::to_string(i_) + "," +
                        std::to_string(j_) + ")");
  }
  bool operator==(const BlockPair& o) const { return i == o.i && j == o.j; }
  std::string label() const { return std::to_string(i) + std::to_string(j); }
};

inline void require_pair_in_dim(const BlockPair& pair, QuditDim d) {
  if (pair.j >= d.value)
    throw InvalidPair("level pair (" + std::to_string(pair.i) + "," + std::to_string(pair.j) +
                      ") outside qudit dimension " + std::to_string(d.value));
}

/// All d(d-1)/2 level pairs in lexicographic order.
inline std::vector<BlockPair> enumerate_pairs(QuditDim d) {
  std::vector<BlockPair> pairs;
  pairs.reserve(static_cast<std::size_t>(d.value) * (d.value - 1) / 2);
  for (int i = 0; i + 1 < d.value; ++i)
    for (int j = i + 1; j < d.value; ++j) pairs.emplace_back(i, j);
  return pairs;
}

/// Validated qubit x qudit density matrix of dimension 2d x 2d.
///
/// Basis ordering: index alpha*d + k <-> |alpha_A, k_B> with alpha in {0,1}
/// and k in {0..d-1}, i.e. |0,0>, |0,1>, ..., |1,d-1>.
///
/// Construction enforces (within tol, max-norm): Hermiticity, unit trace,
/// eigenvalues >= -tol, finite entries. Throws InvalidState with a message
/// naming the violated invariant.
class DensityMatrix {
 public:
  DensityMatrix(QuditDim d, ComplexMatrix mat, double tol = kDefaultTol)
      : d_(d), mat_(std::move(mat)) {
    const int dim = 2 * d_.value;
    if (mat_.rows() != dim || mat_.cols() != dim)
      throw InvalidState("dimension: expected " + std::to_string(dim) + "x" + std::to_string(dim) +
                         " matrix for d = " + std::to_string(d_.value));
    if (!all_finite(mat_)) throw InvalidState("finite: matrix contains NaN or Inf entries");
    const double herm = hermitian_deviation(mat_);
    if (herm > tol)
      throw InvalidState("hermitian: deviation " + std::to_string(herm) + " exceeds tolerance");
    const Complex tr = trace(mat_);
    if (std::abs(tr - 1.0) > tol)
      throw InvalidState("trace: deviates from 1 by " + std::to_string(std::abs(tr - 1.0)));
    const EigenSpectrum spec = hermitian_eigenvalues(mat_, tol);
    if (spec.values.front() < -tol)
      throw InvalidState("positive-semidefinite: eigenvalue " +
                         std::to_string(spec.values.front()) + " below -tolerance");
  }

  QuditDim qudit_dim() const { return d_; }
  int d() const { return d_.value; }
  const ComplexMatrix& matrix() const { return mat_; }

 private:
  QuditDim d_;
  ComplexMatrix mat_;
};

}  // namespace qpart
