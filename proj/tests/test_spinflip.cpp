#include <algorithm>
#include <array>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <vector>

#include "qpart/rng.hpp"
#include "qpart/spin_flip.hpp"
#include "test_helpers.hpp"

using qpart::BlockPair;
using qpart::Complex;
using qpart::ComplexMatrix;
using qpart::QuditDim;

namespace {

ComplexMatrix from_ints(int n, const std::vector<int>& vals) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = static_cast<double>(vals[static_cast<std::size_t>(i * n + j)]);
  return m;
}

bool exactly_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  return qpart::approx_equal(a, b, 0.0);
}

ComplexMatrix embedded_bell(int d) {
  std::vector<Complex> v(static_cast<std::size_t>(2 * d), Complex(0.0));
  v[0] = 1.0 / std::sqrt(2.0);
  v[static_cast<std::size_t>(d + 1)] = 1.0 / std::sqrt(2.0);
  return qpart::outer_product(v);
}

}  // namespace

TEST_CASE("the three d=3 spin-flip matrices, entry by entry") {
  // clang-format off
  const ComplexMatrix s01 = from_ints(6, {
      0,  0,  0,  0,  1,  0,
      0,  0,  0, -1,  0,  0,
      0,  0,  0,  0,  0,  0,
      0, -1,  0,  0,  0,  0,
      1,  0,  0,  0,  0,  0,
      0,  0,  0,  0,  0,  0});
  const ComplexMatrix s02 = from_ints(6, {
      0,  0,  0,  0,  0,  1,
      0,  0,  0,  0,  0,  0,
      0,  0,  0, -1,  0,  0,
      0,  0, -1,  0,  0,  0,
      0,  0,  0,  0,  0,  0,
      1,  0,  0,  0,  0,  0});
  const ComplexMatrix s12 = from_ints(6, {
      0,  0,  0,  0,  0,  0,
      0,  0,  0,  0,  0,  1,
      0,  0,  0,  0, -1,  0,
      0,  0,  0,  0,  0,  0,
      0,  0, -1,  0,  0,  0,
      0,  1,  0,  0,  0,  0});
  // clang-format on
  REQUIRE(exactly_equal(qpart::build_s_full(QuditDim(3), BlockPair(0, 1)), s01));
  REQUIRE(exactly_equal(qpart::build_s_full(QuditDim(3), BlockPair(0, 2)), s02));
  REQUIRE(exactly_equal(qpart::build_s_full(QuditDim(3), BlockPair(1, 2)), s12));
}

TEST_CASE("the single two-qubit spin-flip matrix") {
  const ComplexMatrix s = qpart::build_s_2q();
  // clang-format off
  REQUIRE(exactly_equal(s, from_ints(4, {
      0,  0,  0, -1,
      0,  0,  1,  0,
      0,  1,  0,  0,
     -1,  0,  0,  0})));
  // clang-format on
  REQUIRE(exactly_equal(s * s, ComplexMatrix::identity(4)));
  REQUIRE(exactly_equal(s * Complex(-1.0),
                        qpart::build_s_full(QuditDim(2), BlockPair(0, 1))));
}

TEST_CASE("spin-flip matrices are sparse, symmetric involutions on their support") {
  for (int d : {2, 3, 4, 5, 6})
    for (const BlockPair& pair : qpart::enumerate_pairs(QuditDim(d))) {
      const ComplexMatrix s = qpart::build_s_full(QuditDim(d), pair);
      int nonzeros = 0;
      for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j)
          if (s(i, j) != 0.0) ++nonzeros;
      REQUIRE(nonzeros == 4);
      REQUIRE(exactly_equal(s, qpart::transpose(s)));

      const ComplexMatrix sq = s * s;
      int ones = 0;
      for (int i = 0; i < sq.rows(); ++i)
        for (int j = 0; j < sq.cols(); ++j) {
          if (i == j) {
            REQUIRE((sq(i, j) == 0.0 || sq(i, j) == 1.0));
            if (sq(i, j) == 1.0) ++ones;
          } else {
            REQUIRE(sq(i, j) == 0.0);
          }
        }
      REQUIRE(ones == 4);
    }
}

TEST_CASE("pair validation") {
  REQUIRE_THROWS_AS(BlockPair(1, 1), qpart::InvalidPair);
  REQUIRE_THROWS_AS(BlockPair(2, 1), qpart::InvalidPair);
  REQUIRE_THROWS_AS(BlockPair(-1, 0), qpart::InvalidPair);
  REQUIRE_THROWS_AS(qpart::build_s_full(QuditDim(3), BlockPair(1, 3)), qpart::InvalidPair);
  REQUIRE_THROWS_AS(QuditDim(1), qpart::OutOfRange);
}

TEST_CASE("lambda spectrum on known states") {
  SECTION("bell state") {
    const auto lambdas = qpart::lambda_spectrum(embedded_bell(2), qpart::build_s_2q());
    REQUIRE(lambdas[0] == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(lambdas[1] == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(lambdas[2] == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(lambdas[3] == Catch::Approx(0.0).margin(1e-12));
  }

  SECTION("maximally mixed two-qubit state") {
    const ComplexMatrix mixed = ComplexMatrix::identity(4) * Complex(0.25);
    const auto lambdas = qpart::lambda_spectrum(mixed, qpart::build_s_2q());
    for (double v : lambdas) REQUIRE(v == Catch::Approx(0.25).margin(1e-12));
  }

  SECTION("mismatched dimensions throw") {
    REQUIRE_THROWS_AS(
        qpart::lambda_spectrum(ComplexMatrix::identity(4) * Complex(0.25),
                               qpart::build_s_full(QuditDim(3), BlockPair(0, 1))),
        qpart::DimensionMismatch);
  }
}

TEST_CASE("lambda spectrum is exactly invariant under flipping the sign of S") {
  qpart::SplitMix64 rng(101);
  for (int d : {2, 3}) {
    const qpart::DensityMatrix rho = qpart::ginibre_density(rng, QuditDim(d));
    for (const BlockPair& pair : qpart::enumerate_pairs(QuditDim(d))) {
      const ComplexMatrix s = qpart::build_s_full(QuditDim(d), pair);
      const auto plus = qpart::lambda_spectrum(rho.matrix(), s);
      const auto minus = qpart::lambda_spectrum(rho.matrix(), s * Complex(-1.0));
      REQUIRE(plus == minus);  // bitwise
    }
  }
}

TEST_CASE("pure states collapse to a rank-1 spectrum") {
  qpart::SplitMix64 rng(103);
  for (int d : {3, 4, 5}) {
    const std::vector<Complex> psi = qpart::random_pure_state(rng, QuditDim(d));
    const ComplexMatrix rho = qpart::outer_product(psi);
    for (const BlockPair& pair : qpart::enumerate_pairs(QuditDim(d))) {
      const ComplexMatrix s = qpart::build_s_full(QuditDim(d), pair);
      const auto lambdas = qpart::lambda_spectrum(rho, s);

      // <psi| S |psi*> reduces to twice a 2x2 amplitude determinant.
      const Complex det = psi[static_cast<std::size_t>(pair.i)] *
                              psi[static_cast<std::size_t>(d + pair.j)] -
                          psi[static_cast<std::size_t>(pair.j)] *
                              psi[static_cast<std::size_t>(d + pair.i)];
      REQUIRE(lambdas[0] == Catch::Approx(2.0 * std::abs(det)).margin(1e-9));
      REQUIRE(lambdas[1] == Catch::Approx(0.0).margin(1e-9));
      REQUIRE(lambdas[2] == Catch::Approx(0.0).margin(1e-9));
      REQUIRE(lambdas[3] == Catch::Approx(0.0).margin(1e-9));
    }
  }
}

TEST_CASE("pair concurrence") {
  REQUIRE(qpart::pair_concurrence({1.0, 0.0, 0.0, 0.0}) == 1.0);
  REQUIRE(qpart::pair_concurrence({0.25, 0.25, 0.25, 0.25}) == 0.0);
  REQUIRE(qpart::pair_concurrence({0.9, 0.3, 0.2, 0.1}) == Catch::Approx(0.3));
  REQUIRE_THROWS_AS(qpart::pair_concurrence({0.1, 0.2, 0.0, 0.0}), qpart::NotSorted);
}

TEST_CASE("full-route aggregate bound") {
  SECTION("product state gives zero") {
    std::vector<Complex> v(6, Complex(0.0));
    v[0] = 1.0;  // |0_A, 0_B>
    const qpart::DensityMatrix rho(QuditDim(3), qpart::outer_product(v));
    const qpart::BoundReport report = qpart::c_db_full(rho);
    REQUIRE(report.route == qpart::Route::full);
    REQUIRE(report.per_pair.size() == 3);
    for (const auto& pc : report.per_pair) REQUIRE(pc.concurrence == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(report.c_db == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(report.eof == Catch::Approx(0.0).margin(1e-12));
  }

  SECTION("embedded bell state is maximally entangled on one pair") {
    const qpart::DensityMatrix rho(QuditDim(3), embedded_bell(3));
    const qpart::BoundReport report = qpart::c_db_full(rho);
    REQUIRE(report.per_pair[0].pair == BlockPair(0, 1));
    REQUIRE(report.per_pair[0].concurrence == Catch::Approx(1.0).margin(1e-10));
    REQUIRE(report.per_pair[1].concurrence == Catch::Approx(0.0).margin(1e-10));
    REQUIRE(report.per_pair[2].concurrence == Catch::Approx(0.0).margin(1e-10));
    REQUIRE(report.c_db == Catch::Approx(1.0).margin(1e-10));
    REQUIRE(report.eof == Catch::Approx(1.0).margin(1e-9));
  }

  SECTION("pairs are reported in lexicographic order") {
    qpart::SplitMix64 rng(107);
    const qpart::DensityMatrix rho = qpart::ginibre_density(rng, QuditDim(4));
    const qpart::BoundReport report = qpart::c_db_full(rho);
    const auto pairs = qpart::enumerate_pairs(QuditDim(4));
    REQUIRE(report.per_pair.size() == pairs.size());
    for (std::size_t k = 0; k < pairs.size(); ++k) REQUIRE(report.per_pair[k].pair == pairs[k]);
  }
}

TEST_CASE("pure-state saturation of the aggregate bound") {
  qpart::SplitMix64 rng(109);
  for (int d : {3, 4, 5})
    for (int trial = 0; trial < 5; ++trial) {
      const std::vector<Complex> psi = qpart::random_pure_state(rng, QuditDim(d));
      const qpart::DensityMatrix rho(QuditDim(d), qpart::outer_product(psi));

      Complex a00(0.0), a01(0.0), a11(0.0);
      for (int k = 0; k < d; ++k) {
        a00 += psi[static_cast<std::size_t>(k)] * std::conj(psi[static_cast<std::size_t>(k)]);
        a11 += psi[static_cast<std::size_t>(d + k)] *
               std::conj(psi[static_cast<std::size_t>(d + k)]);
        a01 += psi[static_cast<std::size_t>(k)] * std::conj(psi[static_cast<std::size_t>(d + k)]);
      }
      const double purity = std::norm(a00) + std::norm(a11) + 2.0 * std::norm(a01);
      const double expected = std::sqrt(std::max(0.0, 2.0 * (1.0 - purity)));
      REQUIRE(qpart::c_db_full(rho).c_db == Catch::Approx(expected).margin(1e-8));
    }
}

TEST_CASE("qubit-side local unitaries leave every pair concurrence unchanged") {
  qpart::SplitMix64 rng(113);
  const int d = 3;
  const qpart::DensityMatrix rho = qpart::ginibre_density(rng, QuditDim(d));
  const qpart::BoundReport base = qpart::c_db_full(rho);

  for (int trial = 0; trial < 3; ++trial) {
    const ComplexMatrix u = qpart::haar_qubit_unitary(rng);
    ComplexMatrix k(2 * d, 2 * d);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int level = 0; level < d; ++level) k(a * d + level, b * d + level) = u(a, b);
    const ComplexMatrix rotated = k * rho.matrix() * qpart::adjoint(k);
    const qpart::BoundReport turned = qpart::c_db_full(qpart::DensityMatrix(QuditDim(d), rotated));
    for (std::size_t p = 0; p < base.per_pair.size(); ++p)
      REQUIRE(turned.per_pair[p].concurrence ==
              Catch::Approx(base.per_pair[p].concurrence).margin(1e-9));
  }
}

TEST_CASE("qudit level permutations permute the pair concurrences") {
  qpart::SplitMix64 rng(127);
  const int d = 4;
  const qpart::DensityMatrix rho = qpart::ginibre_density(rng, QuditDim(d));
  const qpart::BoundReport base = qpart::c_db_full(rho);
  const std::vector<int> perm = qpart::random_permutation(rng, d);

  ComplexMatrix permuted(2 * d, 2 * d);
  const auto relabel = [&](int idx) {
    const int level = idx % d;
    return (idx / d) * d + perm[static_cast<std::size_t>(level)];
  };
  for (int r = 0; r < 2 * d; ++r)
    for (int c = 0; c < 2 * d; ++c) permuted(relabel(r), relabel(c)) = rho.matrix()(r, c);

  const qpart::BoundReport mapped = qpart::c_db_full(qpart::DensityMatrix(QuditDim(d), permuted));
  REQUIRE(mapped.c_db == Catch::Approx(base.c_db).margin(1e-10));

  for (const auto& pc : base.per_pair) {
    const int pi = perm[static_cast<std::size_t>(pc.pair.i)];
    const int pj = perm[static_cast<std::size_t>(pc.pair.j)];
    const BlockPair target(std::min(pi, pj), std::max(pi, pj));
    bool found = false;
    for (const auto& mapped_pc : mapped.per_pair)
      if (mapped_pc.pair == target) {
        REQUIRE(mapped_pc.concurrence == Catch::Approx(pc.concurrence).margin(1e-9));
        found = true;
      }
    REQUIRE(found);
  }
}
