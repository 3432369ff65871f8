#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "qpart/complex_matrix.hpp"
#include "qpart/density_matrix.hpp"

namespace qpart {

/// SplitMix64 (Steele, Lea & Flood 2014; the java.util.SplittableRandom
/// finalizer). Chosen as the verification-suite generator because the
/// stream is fully specified by three integer constants, so seeded runs
/// are bit-identical across platforms and standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). Plain modulo: the bias for the tiny
  /// bounds used here (< 100) is far below anything observable.
  int below(int bound) { return static_cast<int>(next() % static_cast<std::uint64_t>(bound)); }

  /// Standard normal via Box-Muller; pairs are generated together.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]; keeps the log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(angle);
    have_spare_ = true;
    return r * std::cos(angle);
  }

  Complex complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return Complex(re, im);
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/// Normalized random complex vector (Haar-distributed direction).
inline std::vector<Complex> random_unit_vector(SplitMix64& rng, int dim) {
  std::vector<Complex> v(static_cast<std::size_t>(dim));
  double norm2 = 0.0;
  for (auto& entry : v) {
    entry = rng.complex_gaussian();
    norm2 += std::norm(entry);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& entry : v) entry *= inv;
  return v;
}

/// Projector |v><v| as a matrix; exactly Hermitian entrywise.
inline ComplexMatrix outer_product(const std::vector<Complex>& v) {
  const int n = static_cast<int>(v.size());
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = v[static_cast<std::size_t>(i)] * std::conj(v[static_cast<std::size_t>(j)]);
  return m;
}

/// Full-rank random state: rho = G G^dag / tr(G G^dag) with G a square
/// matrix of independent standard complex Gaussians (Ginibre ensemble).
inline DensityMatrix ginibre_density(SplitMix64& rng, QuditDim d, double tol = kDefaultTol) {
  const int n = 2 * d.value;
  ComplexMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
  ComplexMatrix rho = g * adjoint(g);
  const double tr = trace(rho).real();
  rho *= Complex(1.0 / tr, 0.0);
  return DensityMatrix(d, rho, tol);
}

/// Haar-random pure state of the 2 x d system, returned as amplitudes
/// indexed alpha*d + k.
inline std::vector<Complex> random_pure_state(SplitMix64& rng, QuditDim d) {
  return random_unit_vector(rng, 2 * d.value);
}

/// Random separable state: equal-weight mixture of 2d independent products
/// of Haar-random qubit and qudit pure states. The 2d terms give generic
/// (full) rank while staying exactly separable.
inline DensityMatrix random_separable_density(SplitMix64& rng, QuditDim d,
                                              double tol = kDefaultTol) {
  const int n = 2 * d.value;
  const int terms = n;
  ComplexMatrix rho(n, n);
  for (int t = 0; t < terms; ++t) {
    const std::vector<Complex> qubit = random_unit_vector(rng, 2);
    const std::vector<Complex> qudit = random_unit_vector(rng, d.value);
    std::vector<Complex> product(static_cast<std::size_t>(n));
    for (int a = 0; a < 2; ++a)
      for (int k = 0; k < d.value; ++k)
        product[static_cast<std::size_t>(a * d.value + k)] =
            qubit[static_cast<std::size_t>(a)] * qudit[static_cast<std::size_t>(k)];
    rho += outer_product(product);
  }
  rho *= Complex(1.0 / terms, 0.0);
  return DensityMatrix(d, rho, tol);
}

/// Random 2x2 unitary: Gram-Schmidt on two complex Gaussian columns.
inline ComplexMatrix haar_qubit_unitary(SplitMix64& rng) {
  Complex a = rng.complex_gaussian();
  Complex b = rng.complex_gaussian();
  const double n1 = std::sqrt(std::norm(a) + std::norm(b));
  a /= n1;
  b /= n1;
  Complex c = rng.complex_gaussian();
  Complex d = rng.complex_gaussian();
  const Complex overlap = std::conj(a) * c + std::conj(b) * d;
  c -= overlap * a;
  d -= overlap * b;
  const double n2 = std::sqrt(std::norm(c) + std::norm(d));
  c /= n2;
  d /= n2;
  ComplexMatrix u(2, 2);
  u(0, 0) = a;
  u(1, 0) = b;
  u(0, 1) = c;
  u(1, 1) = d;
  return u;
}

/// Fisher-Yates shuffle of {0, ..., n-1}.
inline std::vector<int> random_permutation(SplitMix64& rng, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(rng.below(i + 1))]);
  return perm;
}

}  // namespace qpart
