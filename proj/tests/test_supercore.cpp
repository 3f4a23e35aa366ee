#include "doctest.h"

#include "kepler/localized.hpp"
#include "kepler/operator.hpp"
#include "kepler/superpoly.hpp"
#include "support.hpp"

using namespace kepler;

namespace {

SuperPolynomial X(Shape s, int a) { return SuperPolynomial::coordinate(s, a); }

const GaussianRational I = GaussianRational::imaginaryUnit();

}  // namespace

TEST_CASE("gaussian rationals are exact and canonical") {
  GaussianRational half = GaussianRational::fraction(2, 4);
  CHECK(half.toString() == "1/2");
  CHECK((half + half).isOne());
  CHECK((I * I) == GaussianRational(-1));
  CHECK((GaussianRational(1) / I) == -I);
  CHECK((GaussianRational::fraction(1, 2) + I * GaussianRational::fraction(-3, 4)).toString() ==
        "1/2-3/4i");
  CHECK_THROWS_AS(GaussianRational(1) / GaussianRational(0), std::domain_error);
}

TEST_CASE("metric block structure") {
  Metric m = Metric::superspace(4, 1);
  CHECK(m.dim() == 6);
  CHECK(m.superDim() == 2);
  CHECK(m.lower(1, 1) == 1);
  CHECK(m.lower(5, 6) == -1);
  CHECK(m.lower(6, 5) == 1);
  // eta^{ab} eta_{bc} = delta
  for (int a = 1; a <= m.dim(); ++a) {
    for (int c = 1; c <= m.dim(); ++c) {
      int s = 0;
      for (int b = 1; b <= m.dim(); ++b) s += m.upper(a, b) * m.lower(b, c);
      CHECK(s == (a == c ? 1 : 0));
    }
  }
  CHECK(m.indexParity(4).parity == 0);
  CHECK(m.indexParity(5).parity == 1);
  CHECK(m.keplerAdmissible());
  CHECK_FALSE(Metric::superspace(3, 1).keplerAdmissible());
  CHECK_THROWS_AS(Metric::superspace(3, 1).requireKepler(), DimensionError);

  Metric w = Metric::weightBasis(5, 1);
  for (int a = 1; a <= w.dim(); ++a) {
    for (int c = 1; c <= w.dim(); ++c) {
      int s = 0;
      for (int b = 1; b <= w.dim(); ++b) s += w.upper(a, b) * w.lower(b, c);
      CHECK(s == (a == c ? 1 : 0));
    }
  }
  CHECK(w.partner(1) == 5);
  CHECK(w.partner(3) == 3);
  CHECK(w.upper(6, 7) == 1);
  CHECK(w.upper(7, 6) == -1);
}

TEST_CASE("grassmannMul") {
  const auto t1 = GrassmannWord::single(0);
  const auto t2 = GrassmannWord::single(1);
  auto a = grassmannMul(t1, t2);
  REQUIRE(a);
  CHECK(a->sign == 1);
  CHECK(a->word.bits == 0b11U);
  auto b = grassmannMul(t2, t1);
  REQUIRE(b);
  CHECK(b->sign == -1);
  CHECK(b->word.bits == 0b11U);
  CHECK_FALSE(grassmannMul(t1, t1));
  // theta3 * (theta1 theta2) = theta1 theta2 theta3, two transpositions
  auto c = grassmannMul(GrassmannWord::single(2), GrassmannWord{0b11U});
  REQUIRE(c);
  CHECK(c->sign == 1);
}

TEST_CASE("polyArith examples") {
  const Shape s{3, 2};  // D = 3, n = 1: odd coordinates X4, X5
  SuperPolynomial lhs = (X(s, 1) + X(s, 4)) * X(s, 4);
  CHECK(lhs == X(s, 1) * X(s, 4));
  CHECK(((X(s, 4) * X(s, 5)) * X(s, 5)).isZero());
  CHECK((X(s, 1) * X(s, 2) - X(s, 2) * X(s, 1)).isZero());
  CHECK((X(s, 4) * X(s, 5) + X(s, 5) * X(s, 4)).isZero());
  CHECK_THROWS_AS(X(s, 1) + X(Shape{2, 2}, 1), std::invalid_argument);
  CHECK_THROWS_AS(X(s, 1) * X(Shape{3, 0}, 1), std::invalid_argument);
}

TEST_CASE("buildQ") {
  {
    const Metric m = Metric::superspace(2, 0);
    const Shape s = m.shape();
    CHECK(buildQ(m) == X(s, 1) * X(s, 1) + X(s, 2) * X(s, 2));
  }
  {
    // Theta^2 = X3 eta_34 X4 + X4 eta_43 X3 = -X3X4 + X4X3 = -2 X3X4
    const Metric m = Metric::superspace(2, 1);
    const Shape s = m.shape();
    SuperPolynomial expected = X(s, 1) * X(s, 1) + X(s, 2) * X(s, 2) -
                               GaussianRational(2) * (X(s, 3) * X(s, 4));
    CHECK(buildQ(m) == expected);
    CHECK(buildQ(m).parity() == 0);
  }
  for (auto [D, n] : {std::pair{3, 0}, {4, 1}, {5, 1}, {6, 2}}) {
    auto space = Superspace::kepler(D, n);
    SuperPolynomial lap = applyToPolynomial(OperatorElement::laplacian(space), space->Q());
    CHECK(lap == SuperPolynomial::constant(space->shape(), 2 * (D - 2 * n)));
    // Q is central in the coordinate algebra.
    for (int a = 1; a <= space->dim(); ++a) {
      CHECK(space->Q() * space->coordinate(a) == space->coordinate(a) * space->Q());
    }
  }
}

TEST_CASE("barConjugate") {
  const Metric m = Metric::superspace(3, 1);
  const Shape s = m.shape();
  CHECK(barConjugate(X(s, 1) * I, m) == X(s, 1) * (-I));
  // bar(X^4) = X_4 = eta_45 X^5 = -X^5
  CHECK(barConjugate(X(s, 4), m) == -X(s, 5));
  CHECK(barConjugate(X(s, 1) * X(s, 4), m) == -(X(s, 1) * X(s, 5)));
  CHECK(barConjugate(buildQ(m), m) == buildQ(m));
  // bar o bar is -1 on odd coordinates
  CHECK(barConjugate(barConjugate(X(s, 4), m), m) == -X(s, 4));
}

TEST_CASE("exactQuotientByQ") {
  auto space = Superspace::kepler(4, 1);
  const Shape s = space->shape();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    SuperPolynomial f = testing::randomPolynomial(rng, s, 3, 4);
    auto q = exactQuotientByQ(space->Q() * f, space->Q());
    REQUIRE(q);
    CHECK(*q == f);
  }
  CHECK_FALSE(exactQuotientByQ(X(s, 1) * X(s, 1), space->Q()));
  CHECK_FALSE(exactQuotientByQ(X(s, 2), space->Q()));
}

TEST_CASE("property: ring axioms with Grassmann signs") {
  std::mt19937_64 rng(2024);
  for (auto [D, n] : {std::pair{1, 1}, {2, 1}, {3, 2}, {2, 3}, {3, 3}}) {
    const Shape s{D, 2 * n};
    for (int trial = 0; trial < 15; ++trial) {
      auto p = testing::randomPolynomial(rng, s, 4, 4);
      auto q = testing::randomPolynomial(rng, s, 4, 4);
      auto r = testing::randomPolynomial(rng, s, 4, 4);
      CHECK((p * q) * r == p * (q * r));
      CHECK(p * (q + r) == p * q + p * r);

      auto pe = testing::randomPolynomial(rng, s, 4, 3, 0);
      auto po = testing::randomPolynomial(rng, s, 4, 3, 1);
      auto qo = testing::randomPolynomial(rng, s, 4, 3, 1);
      CHECK(pe * qo == qo * pe);
      CHECK(po * qo == -(qo * po));
      // parity additivity
      if (!(po * qo).isZero()) CHECK((po * qo).parity() == 0);
      if (!(pe * qo).isZero()) CHECK((pe * qo).parity() == 1);
    }
  }
}

TEST_CASE("property: Q is not a zero divisor") {
  std::mt19937_64 rng(11);
  for (auto [D, n] : {std::pair{2, 1}, {3, 1}, {3, 2}}) {
    const Metric m = Metric::superspace(D, n);
    const SuperPolynomial Q = buildQ(m);
    for (int trial = 0; trial < 20; ++trial) {
      auto f = testing::randomPolynomial(rng, m.shape(), 4, 3);
      if (f.isZero()) continue;
      CHECK_FALSE((Q * f).isZero());
    }
  }
}

TEST_CASE("property: bar is a conjugate-linear automorphism") {
  std::mt19937_64 rng(5);
  for (auto [D, n] : {std::pair{2, 1}, {3, 2}}) {
    const Metric m = Metric::superspace(D, n);
    for (int trial = 0; trial < 15; ++trial) {
      auto p = testing::randomPolynomial(rng, m.shape(), 3, 4);
      auto q = testing::randomPolynomial(rng, m.shape(), 3, 4);
      auto c = testing::randomScalar(rng);
      CHECK(barConjugate(p * q, m) == barConjugate(p, m) * barConjugate(q, m));
      CHECK(barConjugate(p * c, m) == barConjugate(p, m) * c.conj());
      CHECK(barConjugate(p + q, m) == barConjugate(p, m) + barConjugate(q, m));
    }
  }
}
