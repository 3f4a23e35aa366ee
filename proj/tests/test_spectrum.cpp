#include "doctest.h"

#include "kepler/spectrum.hpp"

using namespace kepler;

namespace {

// Number of degree-l monomials in `even` commuting and `odd` anticommuting
// variables, by direct enumeration of exponent vectors.
long countMonomials(int even, int odd, int l) {
  if (even == 0 && odd == 0) return l == 0 ? 1 : 0;
  long total = 0;
  if (odd > 0) {
    for (int e = 0; e <= std::min(1, l); ++e) total += countMonomials(even, odd - 1, l - e);
  } else {
    for (int e = 0; e <= l; ++e) total += countMonomials(even - 1, 0, l - e);
  }
  return total;
}

// Explicit sum L_j^{(a)}(x) = sum_i (-1)^i C(j+a, j-i) x^i / i!, integer a.
RationalPoly laguerreOracle(int j, int a) {
  RationalPoly out(j + 1);
  mpz_class fact = 1;
  for (int i = 0; i <= j; ++i) {
    if (i > 0) fact *= i;
    mpq_class c(binomial(j + a, j - i), fact);
    c.canonicalize();
    out[i] = (i % 2) ? mpq_class(-c) : c;
  }
  return out;
}

}  // namespace

TEST_CASE("energies and rates") {
  CHECK(boundStateEnergy(0, 3, 0) == mpq_class(-1, 2));
  CHECK(boundStateEnergy(1, 3, 0) == mpq_class(-1, 8));
  CHECK(boundStateEnergy(2, 3, 0) == mpq_class(-1, 18));
  CHECK(boundStateEnergy(3, 3, 0) == mpq_class(-1, 32));
  CHECK(boundStateEnergy(0, 4, 1) == -2);
  CHECK(boundStateEnergy(1, 4, 1) == mpq_class(-2, 9));
  CHECK(boundStateEnergy(2, 4, 1) == mpq_class(-2, 25));
  CHECK(boundStateEnergy(0, 5, 1) == mpq_class(-1, 2));  // d = 3
  for (int k = 0; k < 5; ++k) {
    const mpq_class mu = dilationRate(k, 6, 2);
    CHECK(-mu * mu / 2 == boundStateEnergy(k, 6, 2));
  }
  CHECK_THROWS_AS(boundStateEnergy(0, 3, 1), DimensionError);
}

TEST_CASE("groundState") {
  auto g3 = groundState(3, 0);
  CHECK(g3.energy == mpq_class(-1, 2));
  CHECK(g3.verified);
  CHECK(g3.psi == RadialExpFunction::exponential(g3.psi.space(), 1));
  auto g4 = groundState(4, 1);
  CHECK(g4.energy == -2);
  CHECK(g4.verified);
  CHECK(g4.psi == RadialExpFunction::exponential(g4.psi.space(), 2));
  CHECK(groundState(5, 1).energy == mpq_class(-1, 2));
  CHECK_THROWS_AS(groundState(3, 1), DimensionError);
}

TEST_CASE("degeneracy") {
  CHECK(degeneracy(0, 3, 0) == 1);
  CHECK(degeneracy(0, 6, 2) == 1);
  CHECK(degeneracy(1, 3, 0) == 4);
  CHECK(degeneracy(2, 4, 1) == 25);
  for (int l = 0; l <= 6; ++l) CHECK(degeneracy(l, 3, 0) == static_cast<std::uint64_t>((l + 1) * (l + 1)));
  CHECK_THROWS_AS(degeneracy(1, 3, 1), DimensionError);
}

TEST_CASE("property: degeneracy equals dim S_l - dim S_{l-2} of the (D+1|2n) space") {
  for (auto [D, n] : {std::pair{3, 0}, {4, 1}, {5, 1}, {6, 2}, {8, 3}}) {
    for (int l = 0; l <= 6; ++l) {
      const long expected = countMonomials(D + 1, 2 * n, l) - (l >= 2 ? countMonomials(D + 1, 2 * n, l - 2) : 0);
      CHECK(degeneracy(l, D, n) == static_cast<std::uint64_t>(expected));
    }
  }
  for (int D = 2; D <= 7; ++D) {
    for (int l = 0; l <= 5; ++l) {
      const mpz_class classical = binomial(D + l, l) - binomial(D + l - 2, l - 2);
      CHECK(degeneracy(l, D, 0) == classical.get_ui());
    }
  }
}

TEST_CASE("parabolic annihilation of Phi0") {
  for (auto [D, n] : {std::pair{3, 0}, {4, 1}, {5, 1}}) {
    auto t = GeneratorTable::build(D, n);
    CHECK(verifyParabolicHWV(t).ok());
    auto sp = t.space();
    auto phi = RadialExpFunction::exponential(sp, 1);
    const auto I = GaussianRational::imaginaryUnit();
    for (int a = 1; a <= sp->dim(); ++a) {
      auto expected = RadialExpFunction::fromPart(sp, 1, LocalizedPoly::polynomial(sp->lowered(a))) * (-I);
      CHECK(applyOperator(t.M(a), phi) == expected);
    }
  }
}

TEST_CASE("buildLevel") {
  auto t3 = GeneratorTable::build(3, 0);
  auto l0 = buildLevel(t3, 0);
  REQUIRE(l0.basis.size() == 1);
  CHECK(l0.basis[0] == RadialExpFunction::exponential(t3.space(), 1));
  CHECK(buildLevel(t3, 1).degeneracy == 4);
  auto t4 = GeneratorTable::build(4, 1);
  auto l1 = buildLevel(t4, 1);
  CHECK(l1.degeneracy == 7);
  CHECK(l1.candidates == 7);
  CHECK(l1.labels.front() == "K0 Phi0");
  // K0^2, K0 K_a, K_a K_b (odd labels once): 1 + 6 + 21 - 2 = 26 monomials, one relation (K)^2 = 0
  auto l2 = buildLevel(t4, 2);
  CHECK(l2.candidates == 26);
  CHECK(l2.degeneracy == 25);
}

TEST_CASE("eigenstates, h0 weights and the wrong-rate control") {
  for (auto [D, n, kmax] : {std::tuple{3, 0, 2}, {4, 1, 2}}) {
    auto t = GeneratorTable::build(D, n);
    for (int k = 0; k <= kmax; ++k) {
      auto level = buildLevel(t, k);
      CHECK(level.degeneracy == degeneracy(k, D, n));
      CHECK(level.degeneracy > 0);
      CHECK(verifyEigenstates(level).ok());
      CHECK(verifyH0Weights(t, level).ok());
      CHECK_FALSE(verifyEigenstates(level, dilationRate(k + 1, D, n)).ok());
    }
  }
  auto t = GeneratorTable::build(3, 0);
  auto states = eigenstates(buildLevel(t, 1));
  CHECK(states.size() == 4);
  for (const auto& psi : states) CHECK(hamiltonianApply(psi) == psi * GaussianRational::fraction(-1, 8));
}

TEST_CASE("spectrumTable") {
  auto rows = spectrumTable(3, 0, 3);
  REQUIRE(rows.size() == 4);
  const long degs[] = {1, 4, 9, 16};
  const long dens[] = {2, 8, 18, 32};
  for (int k = 0; k < 4; ++k) {
    CHECK(rows[k].energy == mpq_class(-1, dens[k]));
    CHECK(rows[k].degeneracy == static_cast<std::uint64_t>(degs[k]));
  }
  auto r4 = spectrumTable(4, 1, 1);
  CHECK(r4[0].energy == -2);
  CHECK(r4[1].energy == mpq_class(-2, 9));
  CHECK(r4[1].degeneracy == 7);
  auto r5 = spectrumTable(5, 1, 0);
  CHECK(r5.size() == 1);
  CHECK(r5[0].energy == mpq_class(-1, 2));
  CHECK_THROWS_AS(spectrumTable(3, 0, -1), std::invalid_argument);
}

TEST_CASE("laguerre recurrence matches the explicit sum") {
  for (int a = 0; a <= 6; ++a) {
    for (int j = 0; j <= 6; ++j) CHECK(laguerre(j, a) == laguerreOracle(j, a));
  }
}

TEST_CASE("radial residual") {
  auto s = radialSolution(0, 1, 3, 0);
  CHECK(s.kappa == mpq_class(1, 2));
  CHECK(s.chi.coeffs == std::map<int, mpq_class>{{0, 2}, {1, -1}});
  auto g = radialSolution(0, 0, 3, 0);
  CHECK(g.chi.coeffs == std::map<int, mpq_class>{{0, 1}});
  CHECK(g.kappa == 1);
  for (auto [D, n] : {std::pair{3, 0}, {4, 1}, {5, 1}}) {
    for (int l = 0; l <= 3; ++l) {
      for (int j = 0; l + j <= 3; ++j) {
        CHECK(radialResidual(l, j, D, n).isZero());
        const mpq_class wrong = dilationRate(l + j, D, n) + 1;
        CHECK_FALSE(radialResidual(l, j, D, n, wrong).isZero());
      }
    }
  }
}

TEST_CASE("decimalString") {
  CHECK(decimalString(mpq_class(-1, 8)) == "-0.125");
  CHECK(decimalString(mpq_class(-2)) == "-2");
}
