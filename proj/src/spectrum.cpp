#include "kepler/spectrum.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace kepler {

namespace {

int superDim(int D, int n) {
  Metric::superspace(D, n).requireKepler();
  return D - 2 * n;
}

GaussianRational gq(const mpq_class& x) { return GaussianRational(x); }

}  // namespace

mpq_class boundStateEnergy(int k, int D, int n) {
  const mpq_class mu = dilationRate(k, D, n);
  return -mu * mu / 2;
}

mpq_class dilationRate(int k, int D, int n) {
  if (k < 0) throw std::invalid_argument("level must be nonnegative");
  const int d = superDim(D, n);
  mpq_class mu(2, d - 1 + 2 * k);
  mu.canonicalize();
  return mu;
}

mpz_class binomial(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(a), static_cast<unsigned long>(b));
  return out;
}

std::uint64_t degeneracy(int l, int D, int n) {
  superDim(D, n);
  if (l < 0) throw std::invalid_argument("level must be nonnegative");
  mpz_class total = 0;
  for (int k = 0; k <= l; ++k) {
    total += binomial(D + k, k) * (binomial(2 * n, l - k) - binomial(2 * n, l - 2 - k));
  }
  return total.get_ui();
}

GroundState groundState(int D, int n) {
  auto space = Superspace::kepler(D, n);
  const mpq_class mu = dilationRate(0, D, n);
  GroundState g{boundStateEnergy(0, D, n), RadialExpFunction::exponential(space, mu), false};
  g.verified = hamiltonianApply(g.psi) == g.psi * gq(g.energy);
  return g;
}

CheckReport verifyParabolicHWV(const GeneratorTable& table) {
  CheckReport report{"parabolic annihilation", {}};
  const SpacePtr& sp = table.space();
  const int N = sp->dim();
  const int d = sp->metric().superDim();
  DerivativeCache phi0(RadialExpFunction::exponential(sp, 1));
  for (int a = 1; a <= N; ++a) {
    for (int b = a; b <= N; ++b) {
      if (table.J(a, b).isZero()) continue;
      report.add(labelString(a, b) + " Phi0 = 0", phi0.apply(table.J(a, b)).isZero());
    }
  }
  for (int a = 1; a <= N; ++a) {
    report.add("A" + std::to_string(a) + " Phi0 = 0", phi0.apply(table.A(a)).isZero());
  }
  for (int a = 1; a <= N; ++a) {
    report.add("(M" + std::to_string(a) + " - i Gamma" + std::to_string(a) + ") Phi0 = 0",
               phi0.apply(table.Kplus(a)).isZero());
  }
  report.add("i(J-1 - i J-2) Phi0 = 0", phi0.apply(table.Kplus(0)).isZero());
  const RadialExpFunction phi = RadialExpFunction::exponential(sp, 1);
  report.add("h0 Phi0 = -(d-1)/2 Phi0",
             phi0.apply(table.h0()) == phi * GaussianRational::fraction(-(d - 1), 2));
  return report;
}

BoundStateLevel buildLevel(const GeneratorTable& table, int k) {
  if (k < 0) throw std::invalid_argument("level must be nonnegative");
  const SpacePtr& sp = table.space();
  const int N = sp->dim();
  const int D = sp->metric().evenDim();
  const int n = sp->metric().oddHalf();

  using Word = std::vector<int>;
  std::map<Word, RadialExpFunction> level;
  level.emplace(Word{}, RadialExpFunction::exponential(sp, 1));
  for (int step = 0; step < k; ++step) {
    std::map<Word, RadialExpFunction> next;
    for (const auto& [word, state] : level) {
      DerivativeCache cache(state);
      const int first = word.empty() ? N : word.front();
      for (int A = 0; A <= first; ++A) {
        const bool odd = A >= 1 && sp->isOdd(A);
        if (odd && !word.empty() && A == first) continue;
        Word w{A};
        w.insert(w.end(), word.begin(), word.end());
        next.emplace(std::move(w), cache.apply(table.K(A)));
      }
    }
    level = std::move(next);
  }

  BoundStateLevel out;
  out.k = k;
  out.energy = boundStateEnergy(k, D, n);
  out.rate = dilationRate(k, D, n);
  out.candidates = level.size();
  std::vector<RadialExpFunction> states;
  std::vector<std::string> names;
  for (const auto& [word, state] : level) {
    std::string name;
    for (int A : word) name += "K" + std::to_string(A) + " ";
    names.push_back(name + "Phi0");
    states.push_back(state);
  }
  const auto rows = coordinateRows(states);
  IncrementalBasis basis;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (basis.add(rows[i])) {
      out.basis.push_back(states[i]);
      out.labels.push_back(names[i]);
    }
  }
  out.degeneracy = basis.rank();
  return out;
}

std::vector<BoundStateLevel> spectrumTable(int D, int n, int kMax) {
  if (kMax < 0) throw std::invalid_argument("kmax must be nonnegative");
  std::vector<BoundStateLevel> out;
  for (int k = 0; k <= kMax; ++k) {
    BoundStateLevel level;
    level.k = k;
    level.energy = boundStateEnergy(k, D, n);
    level.rate = dilationRate(k, D, n);
    level.degeneracy = degeneracy(k, D, n);
    out.push_back(std::move(level));
  }
  return out;
}

std::vector<RadialExpFunction> eigenstates(const BoundStateLevel& level,
                                           std::optional<mpq_class> rate) {
  const mpq_class mu = rate.value_or(level.rate);
  std::vector<RadialExpFunction> out;
  for (const auto& v : level.basis) out.push_back(dilate(v, mu));
  return out;
}

CheckReport verifyEigenstates(const BoundStateLevel& level, std::optional<mpq_class> rate) {
  CheckReport report{"eigen-equation k=" + std::to_string(level.k), {}};
  const auto states = eigenstates(level, rate);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& psi = states[i];
    report.add("H psi = E psi for " + level.labels.at(i),
               !psi.isZero() && hamiltonianApply(psi) == psi * gq(level.energy));
  }
  return report;
}

CheckReport verifyH0Weights(const GeneratorTable& table, const BoundStateLevel& level) {
  CheckReport report{"h0 weights k=" + std::to_string(level.k), {}};
  const int d = table.space()->metric().superDim();
  const GaussianRational weight = GaussianRational::fraction(-(d - 1) - 2 * level.k, 2);
  for (std::size_t i = 0; i < level.basis.size(); ++i) {
    const auto& v = level.basis[i];
    report.add("h0 v = (-(d-1)/2 - k) v for " + level.labels.at(i),
               !v.isZero() && applyOperator(table.h0(), v) == v * weight);
  }
  return report;
}

RationalPoly laguerre(int j, const mpq_class& alpha) {
  if (j < 0) throw std::invalid_argument("Laguerre degree must be nonnegative");
  RationalPoly prev{1};
  if (j == 0) return prev;
  RationalPoly cur{1 + alpha, -1};
  for (int m = 1; m < j; ++m) {
    // (m+1) L_{m+1} = (2m+1+alpha-x) L_m - (m+alpha) L_{m-1}
    RationalPoly next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i] += (2 * m + 1 + alpha) * cur[i];
      next[i + 1] -= cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= (m + alpha) * prev[i];
    for (auto& c : next) c /= m + 1;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

void RadialSeries::add(int power, const mpq_class& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = coeffs.try_emplace(power, 0);
  it->second += c;
  if (sgn(it->second) == 0) coeffs.erase(it);
}

RadialSeries RadialSeries::derivative() const {
  RadialSeries out{kappa, {}};
  for (const auto& [p, c] : coeffs) {
    out.add(p - 1, c * p);
    out.add(p, -kappa * c);
  }
  return out;
}

RadialSeries RadialSeries::shifted(int powers) const {
  RadialSeries out{kappa, {}};
  for (const auto& [p, c] : coeffs) out.add(p + powers, c);
  return out;
}

RadialSeries RadialSeries::scaled(const mpq_class& s) const {
  RadialSeries out{kappa, {}};
  for (const auto& [p, c] : coeffs) out.add(p, c * s);
  return out;
}

RadialSeries& RadialSeries::operator+=(const RadialSeries& o) {
  if (kappa != o.kappa) throw std::invalid_argument("radial series with different exponents");
  for (const auto& [p, c] : o.coeffs) add(p, c);
  return *this;
}

std::string RadialSeries::toString() const {
  if (coeffs.empty()) return "0";
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& [p, c] : coeffs) {
    if (!first) os << " + ";
    first = false;
    os << rationalString(c);
    if (p != 0) os << "*r^" << p;
  }
  os << ")*exp(-" << rationalString(kappa) << "r)";
  return os.str();
}

RadialSolution radialSolution(int l, int j, int D, int n, std::optional<mpq_class> kappa) {
  if (l < 0 || j < 0) throw std::invalid_argument("l and j must be nonnegative");
  const int d = superDim(D, n);
  RadialSolution s;
  s.l = l;
  s.j = j;
  s.kappa = kappa.value_or(dilationRate(l + j, D, n));
  s.chi.kappa = s.kappa;
  const RationalPoly L = laguerre(j, mpq_class(2 * l + d - 2));
  const mpq_class x = 2 * s.kappa;
  for (std::size_t i = 0; i < L.size(); ++i) {
    s.chi.add(l + static_cast<int>(i), L[i] * rationalPow(x, static_cast<int>(i)));
  }
  return s;
}

RadialSeries radialResidual(int l, int j, int D, int n, std::optional<mpq_class> kappa) {
  const int d = superDim(D, n);
  const RadialSeries chi = radialSolution(l, j, D, n, kappa).chi;
  const RadialSeries d1 = chi.derivative();
  RadialSeries inner = d1.derivative();
  inner += d1.shifted(-1).scaled(d - 1);
  inner += chi.shifted(-2).scaled(-l * (d - 2 + l));
  RadialSeries out = inner.scaled(mpq_class(-1, 2));
  out += chi.shifted(-1).scaled(-1);
  out += chi.scaled(-boundStateEnergy(l + j, D, n));
  return out;
}

std::string decimalString(const mpq_class& x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x.get_d());
  return buf;
}

}  // namespace kepler
