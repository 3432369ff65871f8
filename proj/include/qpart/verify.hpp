#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "qpart/complex_matrix.hpp"
#include "qpart/density_matrix.hpp"
#include "qpart/matrix_io.hpp"
#include "qpart/partition.hpp"
#include "qpart/rng.hpp"
#include "qpart/spin_flip.hpp"
#include "qpart/tavis_cummings.hpp"

namespace qpart {

struct VerifyOptions {
  int trials = 100;
  std::vector<int> d_list{3, 4, 5};
  std::uint64_t seed = 42;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_deviation = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  double full_route_seconds = 0.0;
  double partition_route_seconds = 0.0;

  bool all_passed() const {
    for (const SuiteResult& s : suites)
      if (!s.passed) return false;
    return true;
  }
};

namespace detail {

inline ComplexMatrix herm4(std::initializer_list<std::tuple<int, int, Complex>> upper) {
  ComplexMatrix m(4, 4);
  for (const auto& [i, j, v] : upper) {
    m(i, j) = v;
    if (i != j) m(j, i) = std::conj(v);
  }
  return m;
}

/// Reduced-state 4x4 blocks written out directly in the amplitudes, used as
/// an independent target for the build_state -> reduce_over_b ->
/// extract_block pipeline. Derived once by hand from
/// rho_AC = sum_b <b|psi><psi|b> and frozen here.
inline ComplexMatrix expected_block(int n, BlockPair pair, const TCAmplitudes& a) {
  const double s2 = 1.0 / std::sqrt(2.0);
  const auto sq = [](Complex c) { return Complex(std::norm(c), 0.0); };
  const Complex half(0.5, 0.0);

  if (n == 0) {
    if (pair == BlockPair(0, 1))
      return herm4({{0, 0, sq(a.c4)},
                    {1, 1, half * sq(a.c2)},
                    {2, 2, sq(a.c3)},
                    {3, 3, half * sq(a.c2)},
                    {0, 3, a.c4 * std::conj(a.c2) * s2},
                    {1, 2, a.c2 * std::conj(a.c3) * s2}});
    if (pair == BlockPair(0, 2))
      return herm4({{0, 0, sq(a.c4)},
                    {1, 1, sq(a.c1)},
                    {2, 2, sq(a.c3)},
                    {0, 1, a.c4 * std::conj(a.c1)}});
    if (pair == BlockPair(1, 2))
      return herm4({{0, 0, half * sq(a.c2)},
                    {1, 1, sq(a.c1)},
                    {2, 2, half * sq(a.c2)},
                    {1, 2, a.c1 * std::conj(a.c2) * s2}});
    throw InvalidPair("no frozen block pattern for this qutrit pair");
  }

  if (pair == BlockPair(0, 1))
    return herm4({{1, 1, half * sq(a.c5)},
                  {2, 2, sq(a.c6)},
                  {3, 3, half * sq(a.c5)},
                  {1, 2, a.c5 * std::conj(a.c6) * s2}});
  if (pair == BlockPair(0, 2))
    return herm4({{1, 1, sq(a.c4)},
                  {2, 2, sq(a.c6)},
                  {3, 3, sq(a.c3)},
                  {2, 3, a.c6 * std::conj(a.c3)}});
  if (pair == BlockPair(0, 3))
    return herm4({{1, 1, half * sq(a.c2)},
                  {2, 2, sq(a.c6)},
                  {3, 3, half * sq(a.c2)},
                  {1, 2, a.c2 * std::conj(a.c6) * s2}});
  if (pair == BlockPair(0, 4)) return herm4({{1, 1, sq(a.c1)}, {2, 2, sq(a.c6)}});
  if (pair == BlockPair(1, 2))
    return herm4({{0, 0, half * sq(a.c5)},
                  {1, 1, sq(a.c4)},
                  {2, 2, half * sq(a.c5)},
                  {3, 3, sq(a.c3)},
                  {0, 3, a.c5 * std::conj(a.c3) * s2},
                  {1, 2, a.c4 * std::conj(a.c5) * s2}});
  if (pair == BlockPair(1, 3))
    return herm4({{0, 0, half * sq(a.c5)},
                  {1, 1, half * sq(a.c2)},
                  {2, 2, half * sq(a.c5)},
                  {3, 3, half * sq(a.c2)},
                  {0, 1, a.c5 * std::conj(a.c2) * half},
                  {2, 3, a.c5 * std::conj(a.c2) * half}});
  if (pair == BlockPair(1, 4))
    return herm4({{0, 0, half * sq(a.c5)},
                  {1, 1, sq(a.c1)},
                  {2, 2, half * sq(a.c5)},
                  {1, 2, a.c1 * std::conj(a.c5) * s2}});
  if (pair == BlockPair(2, 3))
    return herm4({{0, 0, sq(a.c4)},
                  {1, 1, half * sq(a.c2)},
                  {2, 2, sq(a.c3)},
                  {3, 3, half * sq(a.c2)},
                  {0, 3, a.c4 * std::conj(a.c2) * s2},
                  {1, 2, a.c2 * std::conj(a.c3) * s2}});
  if (pair == BlockPair(2, 4))
    return herm4({{0, 0, sq(a.c4)},
                  {1, 1, sq(a.c1)},
                  {2, 2, sq(a.c3)},
                  {0, 1, a.c4 * std::conj(a.c1)}});
  if (pair == BlockPair(3, 4))
    return herm4({{0, 0, half * sq(a.c2)},
                  {1, 1, sq(a.c1)},
                  {2, 2, half * sq(a.c2)},
                  {1, 2, a.c1 * std::conj(a.c2) * s2}});
  throw InvalidPair("no frozen block pattern for this d=5 pair");
}

/// Interaction Hamiltonian (g = 1) on the truncated A (x) B (x) C space:
/// H = (s_A + s_B) a^dag + h.c., with s the atomic lowering operator and
/// the cavity kept to the slots participating for initial Fock number n.
/// Couplings that would leave the retained range act on amplitudes that
/// stay exactly zero for the initial states used here.
inline ComplexMatrix tc_hamiltonian(int n) {
  const int d = cavity_dim(n);
  const int off = level_offset(n);
  const int dim = 4 * d;
  ComplexMatrix h(dim, dim);
  const auto idx = [d](int a, int b, int k) { return (a * 2 + b) * d + k; };
  for (int b = 0; b < 2; ++b)
    for (int k = 0; k + 1 < d; ++k) {
      const double amp = std::sqrt(static_cast<double>(k + off + 1));
      // Atom A: |1, b, k> <-> |0, b, k+1>
      h(idx(0, b, k + 1), idx(1, b, k)) += amp;
      h(idx(1, b, k), idx(0, b, k + 1)) += amp;
      // Atom B: |b', 1, k> <-> |b', 0, k+1> reusing b as the A label
      h(idx(b, 0, k + 1), idx(b, 1, k)) += amp;
      h(idx(b, 1, k), idx(b, 0, k + 1)) += amp;
    }
  return h;
}

inline StateVector apply_schroedinger(const ComplexMatrix& h, const StateVector& psi) {
  const int dim = h.rows();
  StateVector out(psi.size(), Complex(0.0));
  const Complex minus_i(0.0, -1.0);
  for (int r = 0; r < dim; ++r) {
    Complex acc(0.0);
    for (int c = 0; c < dim; ++c) {
      const Complex hrc = h(r, c);
      if (hrc != 0.0) acc += hrc * psi[static_cast<std::size_t>(c)];
    }
    out[static_cast<std::size_t>(r)] = minus_i * acc;
  }
  return out;
}

/// Classic fixed-step fourth-order Runge-Kutta for psi' = -i H psi.
inline void rk4_step(const ComplexMatrix& h, StateVector& psi, double dt) {
  const std::size_t dim = psi.size();
  const StateVector k1 = apply_schroedinger(h, psi);
  StateVector tmp(dim);
  for (std::size_t q = 0; q < dim; ++q) tmp[q] = psi[q] + 0.5 * dt * k1[q];
  const StateVector k2 = apply_schroedinger(h, tmp);
  for (std::size_t q = 0; q < dim; ++q) tmp[q] = psi[q] + 0.5 * dt * k2[q];
  const StateVector k3 = apply_schroedinger(h, tmp);
  for (std::size_t q = 0; q < dim; ++q) tmp[q] = psi[q] + dt * k3[q];
  const StateVector k4 = apply_schroedinger(h, tmp);
  for (std::size_t q = 0; q < dim; ++q)
    psi[q] += dt / 6.0 * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q]);
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

/// Both routes on seeded Ginibre states must agree pairwise and in the
/// aggregate. Also accumulates wall-clock spent in each route.
inline SuiteResult suite_route_equivalence(const VerifyOptions& opts, std::uint64_t seed,
                                           double* full_seconds = nullptr,
                                           double* partition_seconds = nullptr) {
  constexpr double kPairTol = 1e-8;
  constexpr double kAggregateTol = 1e-10;
  SplitMix64 rng(seed);
  double max_pair_dev = 0.0;
  double max_cdb_dev = 0.0;
  double full_s = 0.0;
  double part_s = 0.0;
  for (int d : opts.d_list)
    for (int t = 0; t < opts.trials; ++t) {
      const DensityMatrix rho = ginibre_density(rng, QuditDim(d));
      auto t0 = std::chrono::steady_clock::now();
      const BoundReport full = c_db_full(rho);
      full_s += detail::seconds_since(t0);
      t0 = std::chrono::steady_clock::now();
      const BoundReport part = c_db_partition(rho);
      part_s += detail::seconds_since(t0);
      for (std::size_t k = 0; k < full.per_pair.size(); ++k)
        max_pair_dev = std::max(
            max_pair_dev, std::abs(full.per_pair[k].concurrence - part.per_pair[k].concurrence));
      max_cdb_dev = std::max(max_cdb_dev, std::abs(full.c_db - part.c_db));
    }
  if (full_seconds) *full_seconds = full_s;
  if (partition_seconds) *partition_seconds = part_s;
  SuiteResult r;
  r.name = "route-equivalence";
  r.max_deviation = max_pair_dev;
  r.threshold = kPairTol;
  r.passed = max_pair_dev < kPairTol && max_cdb_dev < kAggregateTol;
  r.detail = "max |C_db| delta " + format_double(max_cdb_dev) + " (tol 1e-10)";
  return r;
}

/// For pure states the aggregate bound is tight:
/// C_db = sqrt(2 (1 - tr rho_A^2)), with the qubit purity computed straight
/// from the amplitudes as an independent oracle.
inline SuiteResult suite_pure_saturation(const VerifyOptions& opts, std::uint64_t seed) {
  constexpr double kTol = 1e-8;
  SplitMix64 rng(seed);
  double max_dev = 0.0;
  for (int d : opts.d_list)
    for (int t = 0; t < opts.trials; ++t) {
      const std::vector<Complex> amp = random_pure_state(rng, QuditDim(d));
      const DensityMatrix rho(QuditDim(d), outer_product(amp));
      const BoundReport report = c_db_partition(rho);

      Complex a00(0.0), a01(0.0), a11(0.0);
      for (int k = 0; k < d; ++k) {
        const Complex top = amp[static_cast<std::size_t>(k)];
        const Complex bottom = amp[static_cast<std::size_t>(d + k)];
        a00 += top * std::conj(top);
        a11 += bottom * std::conj(bottom);
        a01 += top * std::conj(bottom);
      }
      const double purity = std::norm(a00) + std::norm(a11) + 2.0 * std::norm(a01);
      const double oracle = std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
      max_dev = std::max(max_dev, std::abs(report.c_db - oracle));
    }
  SuiteResult r;
  r.name = "pure-state-saturation";
  r.max_deviation = max_dev;
  r.threshold = kTol;
  r.passed = max_dev < kTol;
  return r;
}

/// Separable mixtures carry no entanglement, so the lower bound must sit at
/// zero up to roundoff.
inline SuiteResult suite_separable_zero(const VerifyOptions& opts, std::uint64_t seed) {
  constexpr double kTol = 1e-7;
  SplitMix64 rng(seed);
  double max_cdb = 0.0;
  for (int d : opts.d_list)
    for (int t = 0; t < opts.trials; ++t) {
      const DensityMatrix rho = random_separable_density(rng, QuditDim(d));
      max_cdb = std::max(max_cdb, c_db_partition(rho).c_db);
    }
  SuiteResult r;
  r.name = "separable-zero";
  r.max_deviation = max_cdb;
  r.threshold = kTol;
  r.passed = max_cdb < kTol;
  return r;
}

/// Wherever a block is in X form, the closed form and the spectral route
/// must agree: on every block of the two reference evolutions, on the
/// qutrit read-out expressions for C_01 / C_12, and on random X states.
inline SuiteResult suite_xform_consistency(const VerifyOptions& opts, std::uint64_t seed) {
  constexpr double kTol = 1e-9;
  double max_dev = 0.0;

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int n : {0, 2}) {
    const double tau_max = n == 0 ? 2.0 : 1.0;
    for (int step = 0; step <= 200; ++step) {
      const double gt = tau_to_gt(tau_max * step / 200.0, n);
      const TCAmplitudes a = amplitudes(TCParams(inv_sqrt2, inv_sqrt2, n, gt));
      const ReducedState red = reduce_over_b(build_state(a, n), n);
      for (const BlockPair& pair : enumerate_pairs(red.d)) {
        const TwoQubitBlock block = extract_block(red.rho_ac, pair);
        if (!is_x_form(block)) continue;
        const double closed = xform_concurrence(block);
        const double spectral = block_concurrence(block);
        max_dev = std::max(max_dev, std::abs(closed - spectral));
        if (n == 0 && pair == BlockPair(0, 1)) {
          const double readout =
              std::sqrt(2.0) * std::abs(std::abs(a.c2 * a.c4) - std::abs(a.c2 * a.c3));
          max_dev = std::max(max_dev, std::abs(closed - readout));
        }
        if (n == 0 && pair == BlockPair(1, 2)) {
          const double readout = std::sqrt(2.0) * std::abs(a.c1 * a.c2);
          max_dev = std::max(max_dev, std::abs(closed - readout));
        }
      }
    }
  }

  // Random X states: zeroing the off-pattern entries of a state is a direct
  // sum of two PSD 2x2 principal blocks, hence still a valid state.
  SplitMix64 rng(seed);
  for (int t = 0; t < opts.trials; ++t) {
    ComplexMatrix m = ginibre_density(rng, QuditDim(2)).matrix();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (i != j && i + j != 3) m(i, j) = 0.0;
    const double closed = xform_concurrence(m);
    const double spectral = pair_concurrence(lambda_spectrum(m, build_s_2q()));
    max_dev = std::max(max_dev, std::abs(closed - spectral));
  }

  SuiteResult r;
  r.name = "x-form-consistency";
  r.max_deviation = max_dev;
  r.threshold = kTol;
  r.passed = max_dev < kTol;
  return r;
}

/// The closed-form amplitudes against a fixed-step RK4 integration of the
/// Schroedinger equation built from the raw interaction Hamiltonian —
/// no shared code with amplitudes().
inline SuiteResult suite_propagator_oracle() {
  constexpr double kTol = 1e-6;
  constexpr int kSamples = 101;
  constexpr double kGtMax = 10.0;
  constexpr int kSubsteps = 100;
  double max_dev = 0.0;
  for (int n : {0, 1, 2, 3}) {
    const ComplexMatrix h = detail::tc_hamiltonian(n);
    for (const auto& [alpha, beta] :
         {std::pair<Complex, Complex>{Complex(0.6), Complex(0.0, 0.8)},
          std::pair<Complex, Complex>{Complex(1.0 / std::sqrt(2.0)), Complex(1.0 / std::sqrt(2.0))}}) {
      const int d = cavity_dim(n);
      const int slot_n = n - level_offset(n);
      StateVector psi(static_cast<std::size_t>(4 * d), Complex(0.0));
      psi[static_cast<std::size_t>(0 * d + slot_n)] = alpha;       // |0_A 0_B, n>
      psi[static_cast<std::size_t>(3 * d + slot_n)] = beta;        // |1_A 1_B, n>
      const double grid_step = kGtMax / (kSamples - 1);
      const double dt = grid_step / kSubsteps;
      for (int sample = 0; sample < kSamples; ++sample) {
        const double gt = grid_step * sample;
        const StateVector closed = build_state(amplitudes(TCParams(alpha, beta, n, gt)), n);
        for (std::size_t q = 0; q < psi.size(); ++q)
          max_dev = std::max(max_dev, std::abs(psi[q] - closed[q]));
        if (sample + 1 < kSamples)
          for (int sub = 0; sub < kSubsteps; ++sub) detail::rk4_step(h, psi, dt);
      }
    }
  }
  SuiteResult r;
  r.name = "propagator-oracle";
  r.max_deviation = max_dev;
  r.threshold = kTol;
  r.passed = max_dev < kTol;
  return r;
}

/// The full pipeline (amplitudes -> state -> reduction -> block slicing)
/// against the hand-derived entrywise block patterns, on a 21-point grid.
inline SuiteResult suite_block_reproduction() {
  constexpr double kTol = 1e-12;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  double max_dev = 0.0;
  for (int n : {0, 2})
    for (int step = 0; step <= 20; ++step) {
      const double gt = 0.5 * step;
      const TCAmplitudes a = amplitudes(TCParams(inv_sqrt2, inv_sqrt2, n, gt));
      const ReducedState red = reduce_over_b(build_state(a, n), n);
      for (const BlockPair& pair : enumerate_pairs(red.d)) {
        const TwoQubitBlock block = extract_block(red.rho_ac, pair);
        const ComplexMatrix expected = detail::expected_block(n, pair, a);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            max_dev = std::max(max_dev, std::abs(block.mat(i, j) - expected(i, j)));
      }
    }
  SuiteResult r;
  r.name = "block-reproduction";
  r.max_deviation = max_dev;
  r.threshold = kTol;
  r.passed = max_dev < kTol;
  return r;
}

/// All six suites with deterministic per-suite sub-seeds.
inline VerifyReport run_verify(const VerifyOptions& opts = {}) {
  if (opts.trials < 1) throw OutOfRange("trials must be at least 1");
  if (opts.d_list.empty()) throw OutOfRange("d-list must not be empty");
  for (int d : opts.d_list)
    if (d < 2) throw OutOfRange("every d must be at least 2");

  SplitMix64 seeder(opts.seed);
  const std::uint64_t seed_route = seeder.next();
  const std::uint64_t seed_pure = seeder.next();
  const std::uint64_t seed_separable = seeder.next();
  const std::uint64_t seed_xform = seeder.next();

  VerifyReport report;
  report.suites.push_back(suite_route_equivalence(opts, seed_route, &report.full_route_seconds,
                                                  &report.partition_route_seconds));
  report.suites.push_back(suite_pure_saturation(opts, seed_pure));
  report.suites.push_back(suite_separable_zero(opts, seed_separable));
  report.suites.push_back(suite_xform_consistency(opts, seed_xform));
  report.suites.push_back(suite_propagator_oracle());
  report.suites.push_back(suite_block_reproduction());
  return report;
}

}  // namespace qpart
