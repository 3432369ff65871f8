#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "qpart/complex_matrix.hpp"
#include "qpart/density_matrix.hpp"
#include "qpart/errors.hpp"

namespace qpart {

/// Pure state over atom A (x) atom B (x) cavity C, index (a*2 + b)*d + k
/// with a, b the atomic levels and k the cavity slot.
using StateVector = std::vector<Complex>;

/// Cavity levels that participate when starting from Fock number n:
/// {n, n+1, n+2} for n = 0, plus n-1 for n = 1, plus n-2 beyond.
inline int cavity_dim(int n) {
  if (n < 0) throw OutOfRange("Fock number must be nonnegative");
  if (n == 0) return 3;
  if (n == 1) return 4;
  return 5;
}

/// Fock number of cavity slot 0.
inline int level_offset(int n) {
  if (n < 0) throw OutOfRange("Fock number must be nonnegative");
  return n > 2 ? n - 2 : 0;
}

/// Two atoms coupled to one cavity mode, H = g[(s_A + s_B) a^dag + h.c.],
/// starting from (alpha |0_A 0_B> + beta |1_A 1_B>) |n_C>. Time enters only
/// through the dimensionless product g*t.
struct TCParams {
  Complex alpha;
  Complex beta;
  int n;
  double gt;

  TCParams(Complex alpha_, Complex beta_, int n_, double gt_)
      : alpha(alpha_), beta(beta_), n(n_), gt(gt_) {
    const double norm2 = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm2 - 1.0) > 1e-12)
      throw InvalidState("normalization: |alpha|^2 + |beta|^2 = " + std::to_string(norm2));
    if (n < 0) throw InvalidState("fock-number: n must be nonnegative");
    if (!std::isfinite(gt)) throw InvalidState("time: gt must be finite");
  }
};

/// The six evolution amplitudes. c1..c3 multiply the beta branch
/// (|1 1>|n> coupling upward), c4..c6 the alpha branch (|0 0>|n> coupling
/// downward).
struct TCAmplitudes {
  Complex c1, c2, c3, c4, c5, c6;
  int n;

  double norm2() const {
    return std::norm(c1) + std::norm(c2) + std::norm(c3) + std::norm(c4) + std::norm(c5) +
           std::norm(c6);
  }
};

/// Closed-form solution of the Schroedinger equation in the two
/// three-dimensional invariant subspaces. The alpha branch needs n >= 1
/// (for n = 0 the cavity cannot lend a photon, so c4 = alpha stays put and
/// c5 = c6 = 0); c6 vanishes for n = 1 through the sqrt(n(n-1)) factor.
inline TCAmplitudes amplitudes(const TCParams& p) {
  const double n = p.n;
  const Complex i(0.0, 1.0);

  const double wb = std::sqrt(2.0 * (2.0 * n + 3.0));
  const double cb = std::cos(wb * p.gt);
  const double sb = std::sin(wb * p.gt);

  TCAmplitudes a;
  a.n = p.n;
  a.c1 = -p.beta * std::sqrt((n + 1.0) * (n + 2.0)) / (2.0 * n + 3.0) * (1.0 - cb);
  a.c2 = -i * p.beta * std::sqrt(n + 1.0) / std::sqrt(2.0 * n + 3.0) * sb;
  a.c3 = p.beta * (1.0 - (n + 1.0) / (2.0 * n + 3.0) * (1.0 - cb));

  if (p.n == 0) {
    a.c4 = p.alpha;
    a.c5 = 0.0;
    a.c6 = 0.0;
  } else {
    const double wa = std::sqrt(2.0 * (2.0 * n - 1.0));
    const double ca = std::cos(wa * p.gt);
    const double sa = std::sin(wa * p.gt);
    a.c4 = p.alpha * (1.0 - n / (2.0 * n - 1.0) * (1.0 - ca));
    a.c5 = -i * p.alpha * std::sqrt(n) / std::sqrt(2.0 * n - 1.0) * sa;
    a.c6 = p.n == 1 ? Complex(0.0)
                    : -p.alpha * std::sqrt(n * (n - 1.0)) / (2.0 * n - 1.0) * (1.0 - ca);
  }

  if (std::abs(a.norm2() - 1.0) > 1e-10)
    throw InvalidState("normalization: sum |c_k|^2 = " + std::to_string(a.norm2()));
  return a;
}

/// Expand the amplitudes into the tripartite state vector. The symmetric
/// one-excitation terms (|1 0> + |0 1>)/sqrt(2) contribute 1/sqrt(2) of c2
/// (cavity slot n+1) and c5 (slot n-1) to each atomic order.
inline StateVector build_state(const TCAmplitudes& a, int n) {
  const int d = cavity_dim(n);
  const int off = level_offset(n);
  StateVector psi(static_cast<std::size_t>(4 * d), Complex(0.0));

  const auto at = [&psi, d, off](int atom_a, int atom_b, int fock) -> Complex& {
    return psi[static_cast<std::size_t>((atom_a * 2 + atom_b) * d + (fock - off))];
  };
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  at(0, 0, n + 2) = a.c1;
  at(1, 0, n + 1) += a.c2 * inv_sqrt2;
  at(0, 1, n + 1) += a.c2 * inv_sqrt2;
  at(1, 1, n) = a.c3;
  at(0, 0, n) = a.c4;
  if (n >= 1) {
    at(1, 0, n - 1) += a.c5 * inv_sqrt2;
    at(0, 1, n - 1) += a.c5 * inv_sqrt2;
    if (n >= 2) at(1, 1, n - 2) = a.c6;
  }
  return psi;
}

/// Qubit-qudit state of atom A and the cavity after tracing out atom B:
/// rho_AC = sum_b <b_B|psi><psi|b_B>, index alpha*d + k.
struct ReducedState {
  QuditDim d;
  DensityMatrix rho_ac;
  int level_offset;
};

inline ReducedState reduce_over_b(const StateVector& psi, int n) {
  const int d = cavity_dim(n);
  if (psi.size() != static_cast<std::size_t>(4 * d))
    throw DimensionMismatch("state vector length does not match 4 * cavity_dim(n)");

  ComplexMatrix rho(2 * d, 2 * d);
  for (int b = 0; b < 2; ++b) {
    // v_b = <b_B|psi>, a vector over A (x) C.
    std::vector<Complex> v(static_cast<std::size_t>(2 * d));
    for (int atom_a = 0; atom_a < 2; ++atom_a)
      for (int k = 0; k < d; ++k)
        v[static_cast<std::size_t>(atom_a * d + k)] =
            psi[static_cast<std::size_t>((atom_a * 2 + b) * d + k)];
    for (int r = 0; r < 2 * d; ++r)
      for (int c = 0; c < 2 * d; ++c)
        rho(r, c) += v[static_cast<std::size_t>(r)] * std::conj(v[static_cast<std::size_t>(c)]);
  }
  return ReducedState{QuditDim(d), DensityMatrix(QuditDim(d), rho), level_offset(n)};
}

/// Closed-form aggregate bound for the n = 0 qubit-qutrit reduction:
/// sqrt(2 [ |c1 c2|^2 + (|c2 c4| - |c2 c3|)^2 ]).
inline double c_ac_qutrit_closed(const TCAmplitudes& a) {
  const double t1 = std::abs(a.c1) * std::abs(a.c2);
  const double t2 = std::abs(a.c2) * std::abs(a.c4) - std::abs(a.c2) * std::abs(a.c3);
  return std::sqrt(2.0 * (t1 * t1 + t2 * t2));
}

/// Closed-form aggregate bound for the n >= 2 qubit-d=5 reduction:
/// sqrt(2) sqrt( (|c2 c3|-|c2 c4|)^2 + (|c3 c5|-|c4 c5|)^2
///              + |c1 c2|^2 + |c1 c5|^2 + |c2 c6|^2 + |c5 c6|^2 ).
inline double c_b5_closed(const TCAmplitudes& a) {
  const double m1 = std::abs(a.c1);
  const double m2 = std::abs(a.c2);
  const double m3 = std::abs(a.c3);
  const double m4 = std::abs(a.c4);
  const double m5 = std::abs(a.c5);
  const double m6 = std::abs(a.c6);
  const double d34a = m2 * m3 - m2 * m4;
  const double d34b = m3 * m5 - m4 * m5;
  return std::sqrt(2.0 * (d34a * d34a + d34b * d34b + m1 * m1 * m2 * m2 + m1 * m1 * m5 * m5 +
                          m2 * m2 * m6 * m6 + m5 * m5 * m6 * m6));
}

/// Dimensionless-time conventions of the two reference settings:
/// n = 0 uses tau = sqrt(6) gt / (2 pi), n = 2 uses tau = sqrt(14) gt / (6 pi).
/// Other Fock numbers have no tau convention; address them in gt directly.
inline double tau_to_gt(double tau, int n) {
  if (n == 0) return 2.0 * std::numbers::pi * tau / std::sqrt(6.0);
  if (n == 2) return 6.0 * std::numbers::pi * tau / std::sqrt(14.0);
  throw UnsupportedTauConvention("no tau convention for n = " + std::to_string(n));
}

inline double gt_to_tau(double gt, int n) {
  if (n == 0) return std::sqrt(6.0) * gt / (2.0 * std::numbers::pi);
  if (n == 2) return std::sqrt(14.0) * gt / (6.0 * std::numbers::pi);
  throw UnsupportedTauConvention("no tau convention for n = " + std::to_string(n));
}

}  // namespace qpart
