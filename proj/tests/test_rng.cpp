#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "qpart/hermitian_eig.hpp"
#include "qpart/rng.hpp"

using qpart::Complex;
using qpart::ComplexMatrix;
using qpart::QuditDim;
using qpart::SplitMix64;

TEST_CASE("splitmix64 golden sequence for seed 42") {
  SplitMix64 rng(42);
  REQUIRE(rng.next() == 0xbdd732262feb6e95ULL);
  REQUIRE(rng.next() == 0x28efe333b266f103ULL);
  REQUIRE(rng.next() == 0x47526757130f9f52ULL);
  REQUIRE(rng.next() == 0x581ce1ff0e4ae394ULL);

  SplitMix64 again(42);
  REQUIRE(again.uniform01() == 0.74156487877182331);
  REQUIRE(again.uniform01() == 0.1599103928769201);
  REQUIRE(again.uniform01() == 0.27860113025513866);
  REQUIRE(again.uniform01() == 0.34419071652363753);
}

TEST_CASE("uniform01 stays in [0, 1)") {
  SplitMix64 rng(7);
  for (int draw = 0; draw < 10000; ++draw) {
    const double u = rng.uniform01();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("below covers its range") {
  SplitMix64 rng(8);
  std::vector<int> counts(6, 0);
  for (int draw = 0; draw < 6000; ++draw) {
    const int v = rng.below(6);
    REQUIRE(v >= 0);
    REQUIRE(v < 6);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (int c : counts) REQUIRE(c > 0);
}

TEST_CASE("gaussian moments") {
  SplitMix64 rng(9);
  const int draws = 100000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int k = 0; k < draws; ++k) {
    const double g = rng.gaussian();
    sum += g;
    sum_sq += g * g;
  }
  const double mean = sum / draws;
  const double variance = sum_sq / draws - mean * mean;
  REQUIRE(std::abs(mean) < 0.02);
  REQUIRE(variance == Catch::Approx(1.0).margin(0.05));
}

TEST_CASE("outer product is exactly hermitian") {
  SplitMix64 rng(10);
  const std::vector<Complex> v = qpart::random_unit_vector(rng, 5);
  const ComplexMatrix m = qpart::outer_product(v);
  REQUIRE(qpart::hermitian_deviation(m) == 0.0);
  REQUIRE(qpart::trace(m).real() == Catch::Approx(1.0).margin(1e-14));
}

TEST_CASE("ginibre draws are valid full-rank states") {
  SplitMix64 rng(11);
  for (int d : {3, 4, 5}) {
    const qpart::DensityMatrix rho = qpart::ginibre_density(rng, QuditDim(d));
    REQUIRE(qpart::hermitian_deviation(rho.matrix()) == 0.0);
    REQUIRE(qpart::trace(rho.matrix()).real() == Catch::Approx(1.0).margin(1e-12));
    const auto eigs = qpart::hermitian_eigenvalues(rho.matrix());
    REQUIRE(eigs.values.front() > 1e-9);  // full rank
  }
}

TEST_CASE("seeded draws are reproducible") {
  SplitMix64 a(12);
  SplitMix64 b(12);
  const qpart::DensityMatrix ra = qpart::ginibre_density(a, QuditDim(3));
  const qpart::DensityMatrix rb = qpart::ginibre_density(b, QuditDim(3));
  REQUIRE(qpart::approx_equal(ra.matrix(), rb.matrix(), 0.0));
}

TEST_CASE("random pure states are normalized") {
  SplitMix64 rng(13);
  for (int d : {2, 3, 7}) {
    double norm2 = 0.0;
    for (const Complex& c : qpart::random_pure_state(rng, QuditDim(d))) norm2 += std::norm(c);
    REQUIRE(norm2 == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("separable draws satisfy the state contract") {
  SplitMix64 rng(14);
  const qpart::DensityMatrix rho = qpart::random_separable_density(rng, QuditDim(4));
  REQUIRE(rho.d() == 4);
  REQUIRE(qpart::trace(rho.matrix()).real() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("haar qubit unitaries are unitary") {
  SplitMix64 rng(15);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix u = qpart::haar_qubit_unitary(rng);
    REQUIRE(qpart::approx_equal(qpart::adjoint(u) * u, ComplexMatrix::identity(2), 1e-12));
    REQUIRE(qpart::approx_equal(u * qpart::adjoint(u), ComplexMatrix::identity(2), 1e-12));
  }
}

TEST_CASE("random permutations") {
  SplitMix64 rng(16);
  for (int n : {1, 2, 5, 9}) {
    std::vector<int> perm = qpart::random_permutation(rng, n);
    REQUIRE(static_cast<int>(perm.size()) == n);
    std::sort(perm.begin(), perm.end());
    std::vector<int> expected(static_cast<std::size_t>(n));
    std::iota(expected.begin(), expected.end(), 0);
    REQUIRE(perm == expected);
  }

  SplitMix64 x(17);
  SplitMix64 y(17);
  REQUIRE(qpart::random_permutation(x, 8) == qpart::random_permutation(y, 8));
}
