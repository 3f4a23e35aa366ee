#include "doctest.h"

#include <random>
#include <set>

#include "kepler/dynsym.hpp"

using namespace kepler;

namespace {

GaussianRational q(long a, long b) { return GaussianRational::fraction(a, b); }
const GaussianRational I = GaussianRational::imaginaryUnit();

int paritySign(const GeneratorTable& t, std::pair<int, int> g) {
  return (t.metric().parity(g.first) + t.metric().parity(g.second)) % 2;
}

}  // namespace

TEST_CASE("buildGenerators examples") {
  auto t = GeneratorTable::build(3, 0);
  const auto& sp = t.space();
  CHECK(t.T() == OperatorElement::euler(sp) + OperatorElement::identity(sp));
  for (auto [D, n] : {std::pair{3, 0}, {4, 1}}) {
    auto g = GeneratorTable::build(D, n);
    const auto& s = g.space();
    auto R = OperatorElement::radial(s, 1);
    auto one = OperatorElement::identity(s);
    for (int a = 1; a <= s->dim(); ++a) CHECK(g.J(-2, a) == R * OperatorElement::derivative(s, a));
    CHECK(g.K(0) == q(1, 2) * R * (OperatorElement::laplacian(s) + one) - g.T());
    CHECK(g.J(-2, -1) == g.parts().J0);
    CHECK(g.J(-1, 0) == g.parts().Jm2);
    CHECK(g.J(-2, 0) == -g.parts().Jm1);
  }
  CHECK_THROWS_AS(GeneratorTable::build(3, 1), DimensionError);
  CHECK_THROWS_AS(GeneratorTable::build(1, 0), DimensionError);
}

TEST_CASE("ExtendedMetric") {
  ExtendedMetric e(Metric::superspace(4, 1));
  CHECK(e.labels().size() == 9);
  CHECK(e.lower(-2, -2) == -1);
  CHECK(e.lower(-1, -1) == -1);
  CHECK(e.lower(0, 0) == 1);
  CHECK(e.lower(-2, 1) == 0);
  CHECK(e.lower(5, 6) == -1);
  CHECK(e.upper(5, 6) == 1);
  CHECK(e.parity(0) == 0);
  CHECK(e.parity(6) == 1);
  CHECK_THROWS_AS(e.lower(-3, 0), std::out_of_range);
}

TEST_CASE("expectedBracket examples") {
  auto t = GeneratorTable::build(4, 1);
  const auto& eta = t.metric();
  const int N = eta.maxLabel();
  for (int a = 1; a <= N; ++a) {
    for (int b = 1; b <= N; ++b) {
      // [Gamma_a, Gamma_b] -> J_ab
      CHECK(isZero(expectedBracket({-2, a}, {-2, b}, t) - t.J(a, b)));
      // [A_a, M_b] = [-J_{0a}, J_{-1b}] -> -eta_ba J_{-2}
      CHECK(isZero(-expectedBracket({0, a}, {-1, b}, t) +
                   GaussianRational(eta.lower(b, a)) * t.parts().Jm2));
      for (int c = 1; c <= N; ++c) {
        const GaussianRational s = (eta.parity(b) && eta.parity(c)) ? -1 : 1;
        auto rhs = GaussianRational(eta.lower(c, b)) * t.J(-2, a) -
                   s * GaussianRational(eta.lower(c, a)) * t.J(-2, b);
        CHECK(isZero(expectedBracket({a, b}, {-2, c}, t) - rhs));
      }
    }
  }
}

TEST_CASE("table is super-antisymmetric with consistent parities") {
  auto t = GeneratorTable::build(4, 1);
  for (int K : t.metric().labels()) {
    for (int L : t.metric().labels()) {
      const GaussianRational s = (t.metric().parity(K) && t.metric().parity(L)) ? -1 : 1;
      CHECK(isZero(t.J(K, L) + s * t.J(L, K)));
      if (!t.J(K, L).isZero()) {
        CHECK(t.J(K, L).parity() == (paritySign(t, {K, L}) ? Parity::Odd : Parity::Even));
      }
    }
  }
  CHECK(t.J(5, 5) == GaussianRational(2) * OperatorElement::lowered(t.space(), 5) *
                         OperatorElement::derivative(t.space(), 5));
  CHECK(t.J(1, 1).isZero());
}

TEST_CASE("verifyAlgebra: full tables") {
  auto t3 = GeneratorTable::build(3, 0);
  auto r3 = verifyAlgebra(t3, {});
  CHECK(r3.checks.size() == 441);
  CHECK(r3.failures() == 0);
  auto t4 = GeneratorTable::build(4, 1);
  auto r4 = verifyAlgebra(t4, {});
  CHECK(r4.checks.size() == 2025);
  CHECK(r4.failures() == 0);
}

TEST_CASE("verifyAlgebra: serial and parallel reports agree") {
  auto t = GeneratorTable::build(4, 1);
  SweepOptions serial;
  serial.execution = Execution::Serial;
  SweepOptions parallel;
  parallel.execution = Execution::Parallel;
  parallel.jobs = 4;
  auto a = verifyAlgebra(t, serial);
  auto b = verifyAlgebra(t, parallel);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].label == b.checks[i].label);
    CHECK(a.checks[i].passed == b.checks[i].passed);
  }
}

TEST_CASE("selectPairs: sampled selection is seeded and covers small labels") {
  auto t = GeneratorTable::build(5, 1);
  SweepOptions o;
  o.pairs = PairSelection::Sample;
  auto p1 = selectPairs(t, o);
  auto p2 = selectPairs(t, o);
  CHECK(p1 == p2);
  o.seed = 7;
  auto p3 = selectPairs(t, o);
  CHECK(p1 != p3);
  std::size_t small = 0;
  for (const auto& [g, h] : p1) {
    if (std::max({g.first, g.second, h.first, h.second}) <= 3) ++small;
  }
  // labels -2..3 with K <= L: 21 generators
  CHECK(small == 21 * 21);
  CHECK(p1.size() == small + 500);
  std::set<decltype(p1)::value_type> unique(p1.begin(), p1.end());
  CHECK(unique.size() == p1.size());
}

TEST_CASE("so(2,1), named relations, proof identities, (K)^2, grading") {
  for (auto [D, n] : {std::pair{3, 0}, {4, 1}, {5, 1}}) {
    auto t = GeneratorTable::build(D, n);
    CHECK(verifySo21(t).ok());
    CHECK(verifyNamedRelations(t).ok());
    CHECK(verifyProofIdentities(t).ok());
    CHECK(verifyKSquared(t).ok());
    CHECK(verifyGrading(t).ok());
  }
}

TEST_CASE("grading examples") {
  auto t = GeneratorTable::build(3, 0);
  for (int a = 1; a <= 3; ++a) {
    CHECK(isZero(superBracket(t.h0(), t.K(a)) + t.K(a)));
    CHECK(isZero(superBracket(t.K(0), t.K(a))));
  }
}

TEST_CASE("negative control: perturbed J_{-1}") {
  auto sp = Superspace::kepler(3, 0);
  auto parts = GeneratorParts::build(sp);
  parts.Jm1 += OperatorElement::identity(sp);
  auto t = GeneratorTable::fromParts(sp, parts);
  CHECK(verifyAlgebra(t, {}).failures() > 0);
  CHECK_FALSE(verifySo21(t).ok());
  CHECK_FALSE(verifyKSquared(t).ok());
}

TEST_CASE("negative control: single sign flips in generators") {
  auto sp = Superspace::kepler(4, 1);
  for (int which = 0; which < 3; ++which) {
    auto parts = GeneratorParts::build(sp);
    if (which == 0) parts.Gamma[5] = -parts.Gamma[5];
    if (which == 1) parts.M[2] = -parts.M[2];
    if (which == 2) parts.A[6] = -parts.A[6];
    auto t = GeneratorTable::fromParts(sp, parts);
    CHECK(verifyAlgebra(t, {}).failures() > 0);
  }
}

TEST_CASE("negative control: K_0 + 1") {
  auto t = GeneratorTable::build(3, 0);
  std::vector<OperatorElement> K;
  for (int A = 0; A <= 3; ++A) K.push_back(t.K(A));
  CHECK(isZero(kSquared(K, t.metric())));
  K[0] += OperatorElement::identity(t.space());
  CHECK_FALSE(isZero(kSquared(K, t.metric())));
}

TEST_CASE("property: super-Jacobi on random generator triples") {
  auto t = GeneratorTable::build(4, 1);
  const auto basis = t.basisLabels();
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int trial = 0; trial < 40; ++trial) {
    auto x = basis[pick(rng)], y = basis[pick(rng)], z = basis[pick(rng)];
    const int px = paritySign(t, x), py = paritySign(t, y), pz = paritySign(t, z);
    auto s = [](int u, int v) { return GaussianRational((u & v) ? -1 : 1); };
    const auto& X = t.J(x.first, x.second);
    const auto& Y = t.J(y.first, y.second);
    const auto& Z = t.J(z.first, z.second);
    auto jac = s(px, pz) * superBracket(X, superBracket(Y, Z)) +
               s(py, px) * superBracket(Y, superBracket(Z, X)) +
               s(pz, py) * superBracket(Z, superBracket(X, Y));
    CHECK(isZero(jac));
  }
}

TEST_CASE("operatorRows gives exact span membership") {
  auto t = GeneratorTable::build(3, 0);
  std::vector<OperatorElement> ops{t.K(0), t.K(1), t.K(0) * I + t.K(1) * q(3, 2), t.Kplus(1)};
  auto rows = operatorRows(ops);
  CHECK(bareissRank(rows) == 3);
  IncrementalBasis b;
  b.add(rows[0]);
  b.add(rows[1]);
  CHECK(b.contains(rows[2]));
  CHECK_FALSE(b.contains(rows[3]));
}
