#include "kepler/dynsym.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace kepler {

namespace {

GaussianRational q(long a, long b) { return GaussianRational::fraction(a, b); }
const GaussianRational kI = GaussianRational::imaginaryUnit();

GaussianRational sign(bool negative) { return negative ? GaussianRational(-1) : GaussianRational(1); }

}  // namespace

std::vector<int> ExtendedMetric::labels() const {
  std::vector<int> out;
  for (int K = -2; K <= maxLabel(); ++K) out.push_back(K);
  return out;
}

int ExtendedMetric::lower(int K, int L) const {
  if (!valid(K) || !valid(L)) throw std::out_of_range("label out of range");
  if (K <= 0 || L <= 0) {
    if (K != L) return 0;
    return K == 0 ? 1 : -1;
  }
  return metric_.lower(K, L);
}

int ExtendedMetric::upper(int K, int L) const {
  if (!valid(K) || !valid(L)) throw std::out_of_range("label out of range");
  if (K <= 0 || L <= 0) return lower(K, L);
  return metric_.upper(K, L);
}

GeneratorParts GeneratorParts::build(const SpacePtr& space) {
  space->metric().requireKepler();
  const int N = space->dim();
  const int d = space->metric().superDim();
  auto one = OperatorElement::identity(space);
  auto lap = OperatorElement::laplacian(space);
  auto R = OperatorElement::radial(space, 1);
  auto T = OperatorElement::euler(space) + OperatorElement::scalar(space, q(d - 1, 2));
  const GaussianRational halfI = kI * q(1, 2);

  GeneratorParts p{T, halfI * R * (-lap - one), halfI * R * (-lap + one), {}, {}, {}, {}};
  p.Gamma.assign(N + 1, OperatorElement(space));
  p.A.assign(N + 1, OperatorElement(space));
  p.M.assign(N + 1, OperatorElement(space));
  p.Jab.assign(N + 1, std::vector<OperatorElement>(N + 1, OperatorElement(space)));
  for (int a = 1; a <= N; ++a) {
    auto da = OperatorElement::derivative(space, a);
    auto Xa = OperatorElement::lowered(space, a);
    p.Gamma[a] = R * da;
    p.A[a] = halfI * Xa * (lap + one) - kI * (T * da);
    p.M[a] = halfI * Xa * (lap - one) - kI * (T * da);
    for (int b = 1; b <= N; ++b) {
      const bool odd = space->isOdd(a) && space->isOdd(b);
      p.Jab[a][b] = Xa * OperatorElement::derivative(space, b) -
                    sign(odd) * (OperatorElement::lowered(space, b) * da);
    }
  }
  return p;
}

GeneratorTable GeneratorTable::build(int D, int n) {
  auto space = Superspace::kepler(D, n);
  return fromParts(space, GeneratorParts::build(space));
}

GeneratorTable GeneratorTable::fromParts(const SpacePtr& space, GeneratorParts parts) {
  return GeneratorTable(space, std::move(parts));
}

GeneratorTable::GeneratorTable(SpacePtr space, GeneratorParts parts)
    : space_(std::move(space)),
      metric_(space_->metric()),
      parts_(std::move(parts)),
      size_(space_->dim() + 3),
      h0_(kI * parts_.J0) {
  const int N = space_->dim();
  table_.reserve(static_cast<std::size_t>(size_) * size_);
  auto low = [&](int K, int L) -> OperatorElement {
    if (K >= 1 && L >= 1) return parts_.Jab[K][L];
    if (K <= 0 && L <= 0) {
      // J_{ij} = eps_{ijk} J_k with eps_{-2,-1,0} = 1
      if (K == L) return OperatorElement(space_);
      if (K == -2 && L == -1) return parts_.J0;
      if (K == -1 && L == 0) return parts_.Jm2;
      if (K == -2 && L == 0) return -parts_.Jm1;
      if (K == -1 && L == -2) return -parts_.J0;
      if (K == 0 && L == -1) return -parts_.Jm2;
      return parts_.Jm1;  // (0, -2)
    }
    const bool swapped = K >= 1;
    const int i = swapped ? L : K;
    const int a = swapped ? K : L;
    OperatorElement op = i == -2 ? parts_.Gamma[a] : i == -1 ? parts_.M[a] : -parts_.A[a];
    return swapped ? -op : op;
  };
  for (int K = -2; K <= N; ++K) {
    for (int L = -2; L <= N; ++L) table_.push_back(low(K, L));
  }
  K_.push_back(kI * parts_.Jm1 - parts_.Jm2);
  Kplus_.push_back(kI * parts_.Jm1 + parts_.Jm2);
  for (int a = 1; a <= N; ++a) {
    K_.push_back(parts_.M[a] + kI * parts_.Gamma[a]);
    Kplus_.push_back(parts_.M[a] - kI * parts_.Gamma[a]);
  }
}

const OperatorElement& GeneratorTable::J(int K, int L) const {
  if (!metric_.valid(K) || !metric_.valid(L)) throw std::out_of_range("label out of range");
  return table_[static_cast<std::size_t>(K + 2) * size_ + (L + 2)];
}

std::vector<std::pair<int, int>> GeneratorTable::basisLabels() const {
  std::vector<std::pair<int, int>> out;
  for (int K = -2; K <= metric_.maxLabel(); ++K) {
    for (int L = K; L <= metric_.maxLabel(); ++L) out.emplace_back(K, L);
  }
  return out;
}

std::string labelString(int K, int L) {
  std::ostringstream os;
  os << "J(" << K << "," << L << ")";
  return os.str();
}

OperatorElement expectedBracket(std::pair<int, int> KL, std::pair<int, int> PQ,
                                const GeneratorTable& table) {
  const auto& eta = table.metric();
  const auto [K, L] = KL;
  const auto [P, Q] = PQ;
  const int pK = eta.parity(K), pL = eta.parity(L), pP = eta.parity(P), pQ = eta.parity(Q);
  OperatorElement out(table.space());
  auto add = [&](int coeff, int A, int B) {
    if (coeff != 0) out += table.J(A, B) * GaussianRational(coeff);
  };
  add(eta.lower(P, L), K, Q);
  add(((pK * (pL + pP)) % 2 ? -1 : 1) * eta.lower(Q, K), L, P);
  add(-((pP * pQ) % 2 ? -1 : 1) * eta.lower(Q, L), K, P);
  add(-((pK * pL) % 2 ? -1 : 1) * eta.lower(P, K), L, Q);
  return out;
}

std::size_t CheckReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.passed; }));
}

std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> selectPairs(
    const GeneratorTable& table, const SweepOptions& options) {
  using Pair = std::pair<std::pair<int, int>, std::pair<int, int>>;
  const auto basis = table.basisLabels();
  std::vector<Pair> all;
  all.reserve(basis.size() * basis.size());
  for (const auto& g : basis) {
    for (const auto& h : basis) all.emplace_back(g, h);
  }
  if (options.pairs == PairSelection::All) return all;

  std::vector<char> chosen(all.size(), 0);
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& [g, h] = all[i];
    if (std::max({g.first, g.second, h.first, h.second}) <= 3) {
      chosen[i] = 1;
    } else {
      rest.push_back(i);
    }
  }
  // Partial Fisher-Yates driven directly by the engine output, so the
  // selection does not depend on the standard library's distributions.
  std::mt19937_64 rng(options.seed);
  const std::size_t take = std::min(options.sampleSize, rest.size());
  for (std::size_t i = 0; i < take; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (rest.size() - i));
    std::swap(rest[i], rest[j]);
    chosen[rest[i]] = 1;
  }
  std::vector<Pair> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (chosen[i]) out.push_back(all[i]);
  }
  return out;
}

CheckReport verifyAlgebra(const GeneratorTable& table, const SweepOptions& options) {
  const auto pairs = selectPairs(table, options);
  std::vector<char> passed(pairs.size(), 0);
  const long count = static_cast<long>(pairs.size());
  auto check = [&](long i) {
    const auto& [g, h] = pairs[static_cast<std::size_t>(i)];
    OperatorElement actual = superBracket(table.J(g.first, g.second), table.J(h.first, h.second));
    passed[static_cast<std::size_t>(i)] = isZero(actual - expectedBracket(g, h, table));
  };
  if (options.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, options.jobs))
    for (long i = 0; i < count; ++i) check(i);
  } else {
    for (long i = 0; i < count; ++i) check(i);
  }
  CheckReport report{"commutator table", {}};
  report.checks.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [g, h] = pairs[i];
    report.add("[" + labelString(g.first, g.second) + ", " + labelString(h.first, h.second) + "]",
               passed[i]);
  }
  return report;
}

namespace {

// c * J_{KL}
struct Gen {
  GaussianRational c;
  int K, L;
  std::string name;
};

struct RelationChecker {
  const GeneratorTable& table;
  CheckReport& report;

  OperatorElement op(const Gen& g) const { return table.J(g.K, g.L) * g.c; }

  void relation(const Gen& x, const Gen& y, const OperatorElement& rhs, const std::string& rhsName) {
    const std::string label = "[" + x.name + ", " + y.name + "] = " + rhsName;
    report.add(label, isZero(superBracket(op(x), op(y)) - rhs));
    OperatorElement formula = expectedBracket({x.K, x.L}, {y.K, y.L}, table) * (x.c * y.c);
    report.add(label + " (structure constants)", isZero(formula - rhs));
  }
};

std::string idx(const char* name, int a) { return std::string(name) + std::to_string(a); }

}  // namespace

CheckReport verifySo21(const GeneratorTable& table) {
  CheckReport report{"so(2,1)", {}};
  const auto& p = table.parts();
  report.add("[J-1, J0] = J-2", isZero(superBracket(p.Jm1, p.J0) - p.Jm2));
  report.add("[J-2, J-1] = -J0", isZero(superBracket(p.Jm2, p.Jm1) + p.J0));
  report.add("[J0, J-2] = J-1", isZero(superBracket(p.J0, p.Jm2) - p.Jm1));
  return report;
}

CheckReport verifyNamedRelations(const GeneratorTable& table) {
  CheckReport report{"named relations", {}};
  RelationChecker rc{table, report};
  const auto& p = table.parts();
  const auto& eta = table.metric();
  const int N = eta.maxLabel();
  const SpacePtr& sp = table.space();
  const OperatorElement zero(sp);

  const Gen Jm2{1, -1, 0, "J-2"}, Jm1{-1, -2, 0, "J-1"}, J0{1, -2, -1, "J0"};
  auto Gamma = [](int a) { return Gen{1, -2, a, idx("Gamma", a)}; };
  auto A = [](int a) { return Gen{-1, 0, a, idx("A", a)}; };
  auto M = [](int a) { return Gen{1, -1, a, idx("M", a)}; };
  auto Jab = [](int a, int b) { return Gen{1, a, b, labelString(a, b)}; };

  rc.relation(Jm1, J0, p.Jm2, "J-2");
  rc.relation(Jm2, Jm1, -p.J0, "-J0");
  rc.relation(J0, Jm2, p.Jm1, "J-1");

  for (int a = 1; a <= N; ++a) {
    rc.relation(Jm2, Gamma(a), zero, "0");
    rc.relation(Jm1, Gamma(a), p.A[a], idx("A", a));
    rc.relation(J0, Gamma(a), p.M[a], idx("M", a));
    for (int b = 1; b <= N; ++b) {
      const GaussianRational e = eta.lower(b, a);
      const std::string es = "eta(" + std::to_string(b) + "," + std::to_string(a) + ")";
      rc.relation(Gamma(a), Gamma(b), p.Jab[a][b], labelString(a, b));
      rc.relation(Gamma(a), A(b), -e * p.Jm1, "-" + es + " J-1");
      rc.relation(Gamma(a), M(b), -e * p.J0, "-" + es + " J0");
      rc.relation(A(a), A(b), -p.Jab[a][b], "-" + labelString(a, b));
      rc.relation(M(a), M(b), p.Jab[a][b], labelString(a, b));
      rc.relation(A(a), M(b), -e * p.Jm2, "-" + es + " J-2");
      for (const Gen& g : {Jm2, Jm1, J0}) rc.relation(Jab(a, b), g, zero, "0");
      for (int c = 1; c <= N; ++c) {
        for (int i = -2; i <= 0; ++i) {
          const Gen ic{1, i, c, labelString(i, c)};
          const bool odd = eta.parity(b) && eta.parity(c);
          OperatorElement rhs = table.J(i, a) * GaussianRational(eta.lower(c, b)) -
                                table.J(i, b) * (sign(odd) * GaussianRational(eta.lower(c, a)));
          rc.relation(Jab(a, b), ic, rhs, "eta(c,b) J(i,a) -+ eta(c,a) J(i,b)");
        }
      }
    }
  }
  return report;
}

CheckReport verifyProofIdentities(const GeneratorTable& table) {
  CheckReport report{"proof identities", {}};
  const SpacePtr& sp = table.space();
  const int N = sp->dim();
  const int d = sp->metric().superDim();
  const auto& p = table.parts();
  auto one = OperatorElement::identity(sp);
  auto lap = OperatorElement::laplacian(sp);
  auto E = OperatorElement::euler(sp);
  auto R = OperatorElement::radial(sp, 1);
  auto Rinv = OperatorElement::radial(sp, -1);
  const auto& T = p.Jm2;
  auto RDp = R * (lap + one);
  auto RDm = R * (lap - one);
  auto check = [&](const std::string& label, const OperatorElement& lhs, const OperatorElement& rhs) {
    report.add(label, isZero(lhs - rhs));
  };
  auto raised = [&](const std::vector<OperatorElement>& v, int a) {
    OperatorElement out(sp);
    for (int b = 1; b <= N; ++b) {
      const int e = sp->metric().upper(a, b);
      if (e != 0) out += v[b] * GaussianRational(e);
    }
    return out;
  };

  check("K0 = R(Delta+1)/2 - T", table.K(0), q(1, 2) * RDp - T);
  check("[R(Delta+1), T] = R(Delta-1)", superBracket(RDp, T), RDm);
  check("K0^2 expansion", table.K(0) * table.K(0),
        q(1, 4) * (RDp * RDp) - T * RDp - q(1, 2) * RDm + T * T);
  check("[Delta, R] = 2 R^-1 T", superBracket(lap, R), GaussianRational(2) * Rinv * T);
  check("R^2 (Delta+1)^2 = (R(Delta+1))^2 - 2T(Delta+1)",
        R * R * (lap + one) * (lap + one), RDp * RDp - GaussianRational(2) * T * (lap + one));

  OperatorElement mm(sp), gg(sp), mg(sp), kk(sp);
  for (int a = 1; a <= N; ++a) {
    mm += raised(p.M, a) * p.M[a];
    gg += raised(p.Gamma, a) * p.Gamma[a];
    mg += raised(p.M, a) * p.Gamma[a] + raised(p.Gamma, a) * p.M[a];
    std::vector<OperatorElement> K(N + 1, OperatorElement(sp));
    for (int b = 1; b <= N; ++b) K[b] = table.K(b);
    kk += raised(K, a) * table.K(a);
  }
  check("sum M^a M_a", mm, q(-1, 4) * R * R * (lap - one) * (lap - one) - q(1, 2) * T * (lap + one) - T * T + E);
  check("sum Gamma^a Gamma_a", gg, E + R * R * lap);
  check("i sum (M^a Gamma_a + Gamma^a M_a)", kI * mg, q(1, 2) * RDm + T * RDp);
  check("sum K^a K_a", kk, q(-1, 4) * (RDp * RDp) + T * RDp + q(1, 2) * RDm - T * T);

  OperatorElement s1(sp), s2(sp), s3(sp);
  for (int a = 1; a <= N; ++a) {
    auto da = OperatorElement::derivative(sp, a);
    auto dA = OperatorElement::raisedDerivative(sp, a);
    s1 += OperatorElement::coordinate(sp, a) * (lap - one) * R * da;
    s2 += R * dA * OperatorElement::lowered(sp, a) * (lap - one);
    s3 += T * dA * R * da + R * dA * T * da;
  }
  check("sum X^a (Delta-1) R d_a", s1, GaussianRational(2) * T * Rinv * E + R * E * (lap - one));
  check("sum R d^a X_a (Delta-1)", s2, R * (OperatorElement::scalar(sp, d) + E) * (lap - one));
  check("2 sum (T d^a R d_a + R d^a T d_a)", GaussianRational(2) * s3,
        GaussianRational(2) * T * Rinv * E + GaussianRational(4) * T * R * lap);

  for (int a = 1; a <= N; ++a) {
    auto da = OperatorElement::derivative(sp, a);
    auto Xa = OperatorElement::lowered(sp, a);
    check(idx("[Delta, X_", a) + "] = 2 d_a", superBracket(lap, Xa), GaussianRational(2) * da);
    for (int b = 1; b <= N; ++b) {
      auto db = OperatorElement::derivative(sp, b);
      auto Xb = OperatorElement::lowered(sp, b);
      const GaussianRational s = sign(sp->isOdd(a) && sp->isOdd(b));
      const GaussianRational eba = sp->metric().lower(b, a);
      const std::string ab = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
      check("[R d_a, T d_b] " + ab, superBracket(R * da, T * db), -s * (Xb * Rinv * T * da));
      check("[R d_a, X_b Delta] " + ab, superBracket(R * da, Xb * lap),
            eba * (R * lap) - s * GaussianRational(2) * (Xb * Rinv * T * da));
      check("[T d_a, T d_b] " + ab, superBracket(T * da, T * db), OperatorElement(sp));
      check("[T d_a, X_b] " + ab, superBracket(T * da, Xb), eba * T + s * (Xb * da));
      check("[T d_a, X_b Delta] " + ab, superBracket(T * da, Xb * lap), (eba * T - s * (Xb * da)) * lap);
    }
  }
  return report;
}

OperatorElement kSquared(const std::vector<OperatorElement>& K, const ExtendedMetric& metric) {
  const int N = metric.maxLabel();
  if (K.size() != static_cast<std::size_t>(N + 1)) throw std::invalid_argument("kSquared: need K_0..K_N");
  OperatorElement out(K.front().space());
  for (int A = 0; A <= N; ++A) {
    for (int B = 0; B <= N; ++B) {
      const int e = metric.upper(B, A);
      if (e != 0) out += (K[A] * K[B]) * GaussianRational(e);
    }
  }
  return out;
}

CheckReport verifyKSquared(const GeneratorTable& table) {
  std::vector<OperatorElement> K;
  for (int A = 0; A <= table.metric().maxLabel(); ++A) K.push_back(table.K(A));
  CheckReport report{"(K)^2", {}};
  report.add("(K)^2 = 0", isZero(kSquared(K, table.metric())));
  return report;
}

std::vector<SparseRow> operatorRows(const std::vector<OperatorElement>& ops) {
  std::map<SuperMonomial, int> denoms;
  for (const auto& op : ops) {
    for (const auto& [alpha, f] : op.parts()) {
      auto [it, inserted] = denoms.try_emplace(alpha, f.denom);
      it->second = std::max(it->second, f.denom);
    }
  }
  CoordinateIndex<std::tuple<SuperMonomial, SuperMonomial, int>> index;
  std::vector<SparseRow> rows;
  for (const auto& op : ops) {
    std::vector<std::pair<std::size_t, GaussianRational>> entries;
    for (const auto& [alpha, f] : op.parts()) {
      LocalizedPoly lifted = localized::lift(*op.space(), f, denoms.at(alpha));
      for (const auto& [m, v] : lifted.n0.terms()) entries.emplace_back(index.column({alpha, m, 0}), v);
      for (const auto& [m, v] : lifted.n1.terms()) entries.emplace_back(index.column({alpha, m, 1}), v);
    }
    rows.push_back(canonicalRow(std::move(entries)));
  }
  return rows;
}

CheckReport verifyGrading(const GeneratorTable& table) {
  CheckReport report{"ad(h0) grading", {}};
  const int N = table.metric().maxLabel();
  const auto& h0 = table.h0();
  auto kname = [](const char* s, int A) { return std::string(s) + std::to_string(A); };

  for (int A = 0; A <= N; ++A) {
    report.add("[h0, " + kname("K+", A) + "] = +" + kname("K+", A),
               isZero(superBracket(h0, table.Kplus(A)) - table.Kplus(A)));
    report.add("[h0, " + kname("K", A) + "] = -" + kname("K", A),
               isZero(superBracket(h0, table.K(A)) + table.K(A)));
  }

  std::vector<std::pair<std::string, OperatorElement>> g0;
  g0.emplace_back("h0", h0);
  for (int a = 1; a <= N; ++a) g0.emplace_back(kname("A", a), table.A(a));
  for (int a = 1; a <= N; ++a) {
    for (int b = a; b <= N; ++b) {
      if (!table.J(a, b).isZero()) g0.emplace_back(labelString(a, b), table.J(a, b));
    }
  }
  for (const auto& [name, Y] : g0) report.add("[h0, " + name + "] = 0", isZero(superBracket(h0, Y)));

  for (int A = 0; A <= N; ++A) {
    for (int B = A; B <= N; ++B) {
      report.add("[" + kname("K+", A) + ", " + kname("K+", B) + "] = 0",
                 isZero(superBracket(table.Kplus(A), table.Kplus(B))));
      report.add("[" + kname("K", A) + ", " + kname("K", B) + "] = 0",
                 isZero(superBracket(table.K(A), table.K(B))));
    }
  }

  for (int sgn = 0; sgn < 2; ++sgn) {
    const char* tag = sgn == 0 ? "K+" : "K";
    std::vector<OperatorElement> ops;
    for (int A = 0; A <= N; ++A) ops.push_back(sgn == 0 ? table.Kplus(A) : table.K(A));
    std::vector<std::string> names;
    for (const auto& [name, Y] : g0) {
      for (int A = 0; A <= N; ++A) {
        ops.push_back(superBracket(Y, sgn == 0 ? table.Kplus(A) : table.K(A)));
        names.push_back("[" + name + ", " + kname(tag, A) + "] in span");
      }
    }
    const auto rows = operatorRows(ops);
    IncrementalBasis basis;
    for (int A = 0; A <= N; ++A) basis.add(rows[A]);
    report.add(std::string("span of ") + tag + " has full rank",
               basis.rank() == static_cast<std::size_t>(N + 1));
    for (std::size_t i = 0; i < names.size(); ++i) {
      report.add(names[i], basis.contains(rows[N + 1 + i]));
    }
  }
  return report;
}

}  // namespace kepler
