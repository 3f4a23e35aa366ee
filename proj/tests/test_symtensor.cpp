#include "doctest.h"

#include <bit>

#include "kepler/spectrum.hpp"
#include "kepler/symtensor.hpp"

using namespace kepler;

namespace {

// Independent count of degree-l monomials: polynomial coefficients of
// (1-t)^-M (1+t)^2n, multiplied out term by term.
std::vector<long> seriesCounts(int M, int n, int lMax) {
  std::vector<long> c(lMax + 1, 0);
  c[0] = 1;
  for (int i = 0; i < M; ++i) {
    for (int l = 1; l <= lMax; ++l) c[l] += c[l - 1];
  }
  for (int j = 0; j < 2 * n; ++j) {
    for (int l = lMax; l >= 1; --l) c[l] += c[l - 1];
  }
  return c;
}

long countOracle(int M, int n, int l) { return l < 0 ? 0 : seriesCounts(M, n, l)[l]; }

}  // namespace

TEST_CASE("symDimension matches a generating-function count") {
  for (auto [M, n] : {std::pair{3, 0}, {4, 1}, {5, 1}, {6, 2}, {7, 2}}) {
    for (int l = 0; l <= 6; ++l) {
      CHECK(symDimension(M, n, l) == static_cast<std::uint64_t>(countOracle(M, n, l)));
      CHECK(SymBasis(M, n, l).size() == symDimension(M, n, l));
    }
  }
  CHECK(symDimension(5, 1, 2) == 26);  // 15 + 10 + 1
  CHECK(symDimension(5, 1, -1) == 0);
}

TEST_CASE("SymBasis coordinates") {
  SymBasis B(4, 1, 2);
  for (std::size_t i = 0; i < B.size(); ++i) {
    SparseRow r = B.coordinates(B.element(i));
    REQUIRE(r.size() == 1);
    CHECK(r[0].first == i);
    CHECK(r[0].second.isOne());
  }
  // odd variables appear at most once, so the degree splits as even + popcount
  for (std::size_t i = 0; i < B.size(); ++i) {
    int even = 0;
    for (int a = 0; a < 4; ++a) even += B.monomial(i).even[a];
    CHECK(even + std::popcount(B.monomial(i).odd.bits) == 2);
  }
  CHECK_THROWS_AS(B.coordinates(SymBasis(4, 1, 1).element(0)), std::invalid_argument);
}

TEST_CASE("box operators: small examples") {
  SymTensorSpace S(5, 1);
  // T is scalar (M-2n)/2 + l
  CHECK(S.T(3) == scalarMatrix(S.basis(3).size(), GaussianRational::fraction(3, 2) + GaussianRational(3)));
  // box kills constants and linear forms
  CHECK(S.box(0).rank() == 0);
  CHECK(S.box(1).rank() == 0);
  // box(box*(1)) = T(1) on S_0
  CHECK(compose(S.box(2), S.boxStar(0)) == scalarMatrix(1, GaussianRational::fraction(3, 2)));
  CHECK_THROWS_AS(SymTensorSpace(3, 1), DimensionError);
  CHECK_THROWS_AS(SymTensorSpace(2, 1), DimensionError);
}

TEST_CASE("verifySU11") {
  for (auto [M, n] : {std::pair{4, 1}, {5, 1}, {6, 2}}) {
    auto r = verifySU11(M, n, 4);
    CHECK(r.ok());
    CHECK(r.checks.size() == 13);
  }
  CHECK(verifySU11(3, 0, 4).ok());
}

TEST_CASE("harmonicDim") {
  for (auto [M, n] : {std::pair{4, 1}, {5, 1}, {6, 2}}) {
    CHECK(harmonicDim(M, n, 0) == 1);
    CHECK(harmonicDim(M, n, 1) == static_cast<std::size_t>(M + 2 * n));
    for (int l = 0; l <= 4; ++l) {
      CHECK(harmonicDim(M, n, l) ==
            static_cast<std::size_t>(countOracle(M, n, l) - countOracle(M, n, l - 2)));
    }
  }
  CHECK(harmonicDim(5, 1, 2) == 25);
  // classical count for n = 0: C(M+l-1,l) - C(M+l-3,l-2)
  CHECK(harmonicDim(3, 0, 3) == 7);
  CHECK(harmonicDim(4, 0, 2) == 9);
}

TEST_CASE("verifyDecomposition") {
  CHECK(verifyDecomposition(5, 1, 2).ok());
  CHECK(verifyDecomposition(5, 1, 3).ok());
  for (auto [M, n] : {std::pair{4, 1}, {6, 2}}) {
    for (int l = 2; l <= 4; ++l) CHECK(verifyDecomposition(M, n, l).ok());
  }
  CHECK_THROWS_AS(verifyDecomposition(5, 1, 1), std::invalid_argument);
}

TEST_CASE("cyclicSpanCheck") {
  for (int l = 1; l <= 3; ++l) {
    auto r = cyclicSpanCheck(5, 1, l);
    CHECK(r.ok());
    CHECK(r.highestWeightHarmonic);
    CHECK(r.spanDim == r.harmonicDim);
  }
  CHECK(cyclicSpanCheck(5, 1, 1).spanDim == 7);
  CHECK(cyclicSpanCheck(5, 1, 2).spanDim == 25);
  CHECK(cyclicSpanCheck(4, 1, 3).ok());
}

TEST_CASE("branchingCheck") {
  auto r = branchingCheck(5, 1, 2);
  CHECK(r.ok());
  CHECK(r.toString() == "25 = 18+6+1");
  CHECK(branchingCheck(5, 1, 0).toString() == "1 = 1");
  for (int l = 0; l <= 3; ++l) CHECK(branchingCheck(5, 1, l).ok());
  CHECK(branchingCheck(5, 1, 3).toString() == "63 = 38+18+6+1");
  // right-hand side from the generating-function oracle
  long rhs = 0;
  for (int k = 0; k <= 3; ++k) rhs += countOracle(4, 1, 3 - k) - countOracle(4, 1, 1 - k);
  CHECK(rhs == 63);
  CHECK_THROWS_AS(branchingCheck(4, 1, 2), DimensionError);
}

TEST_CASE("ospInvarianceCheck") {
  CHECK(ospInvarianceCheck(5, 1, 3).ok());
  CHECK(ospInvarianceCheck(6, 1, 3).ok());
}

TEST_CASE("natural module carries the osp relations") {
  CHECK(verifyNaturalModule(4, 1).ok());
  CHECK(verifyNaturalModule(5, 1).ok());
  CHECK(verifyNaturalModule(3, 0).ok());
}

TEST_CASE("negative controls: perturbed pairing") {
  CHECK_FALSE(verifySU11(5, 1, 3, Perturbation::Box).ok());
  CHECK_FALSE(verifySU11(5, 1, 3, Perturbation::BoxStar).ok());
  CHECK_FALSE(ospInvarianceCheck(5, 1, 2, Perturbation::Box).ok());
  CHECK_FALSE(ospInvarianceCheck(5, 1, 2, Perturbation::BoxStar).ok());
  CHECK_FALSE(verifyDecomposition(5, 1, 2, Perturbation::BoxStar).ok());
}

TEST_CASE("degeneracy equals the harmonic dimension one size up") {
  for (auto [D, n] : {std::pair{3, 0}, {4, 1}, {5, 1}, {6, 2}}) {
    for (int l = 0; l <= 3; ++l) CHECK(degeneracy(l, D, n) == harmonicDim(D + 1, n, l));
  }
}

TEST_CASE("weights") {
  CHECK(naturalWeight(5, 1, 1).toString() == "(1,0,0)");
  CHECK(naturalWeight(5, 1, 3).toString() == "(0,0,0)");
  CHECK(naturalWeight(5, 1, 5).toString() == "(-1,0,0)");
  CHECK(naturalWeight(5, 1, 6).toString() == "(0,0,1)");
  CHECK(naturalWeight(5, 1, 7).toString() == "(0,0,-1)");
  CHECK_THROWS_AS(naturalWeight(5, 1, 8), std::out_of_range);
  CHECK(symmetricHighestWeight(5, 1, 3).toString() == "(3,0,0)");
  SymTensorSpace S(5, 1);
  SuperMonomial top;
  top.even[0] = 3;
  CHECK(monomialWeight(5, 1, top) == symmetricHighestWeight(5, 1, 3));
  CHECK(S.basis(3).coordinates(S.highestWeightVector(3)).size() == 1);
  // a pairing quadric has weight zero
  SuperMonomial m;
  m.even[0] = 1;
  m.even[4] = 1;
  CHECK(monomialWeight(5, 1, m) == WeightVector{{0, 0}, {0}});
}
