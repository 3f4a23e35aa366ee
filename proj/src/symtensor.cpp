#include "kepler/symtensor.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <sstream>

#include "kepler/spectrum.hpp"

namespace kepler {

namespace {

void enumerate(int M, int oddCount, int l, std::vector<SuperMonomial>& out) {
  // odd part first (at most one of each), then distribute the rest over the evens
  for (std::uint32_t bits = 0; bits < (std::uint32_t{1} << oddCount); ++bits) {
    const int k = std::popcount(bits);
    if (k > l) continue;
    SuperMonomial m;
    m.odd.bits = bits;
    std::function<void(int, int)> fill = [&](int i, int left) {
      if (i == M - 1) {
        m.even[i] = static_cast<std::uint8_t>(left);
        out.push_back(m);
        return;
      }
      for (int e = left; e >= 0; --e) {
        m.even[i] = static_cast<std::uint8_t>(e);
        fill(i + 1, left - e);
      }
      m.even[i] = 0;
    };
    fill(0, l - k);
  }
}

void requireCondition(int M, int n) {
  if (M - 2 * n <= 1) {
    throw DimensionError("symmetric tensor suite needs M - 2n > 1, got M=" + std::to_string(M) +
                         ", n=" + std::to_string(n));
  }
}

}  // namespace

SymBasis::SymBasis(int M, int n, int l) : M_(M), n_(n), l_(l) {
  if (M < 1 || M > kMaxEvenCoordinates || n < 0 || 2 * n > kMaxOddCoordinates) {
    throw DimensionError("symmetric tensor sizes out of range");
  }
  if (l >= 0) enumerate(M, 2 * n, l, monomials_);
  std::sort(monomials_.begin(), monomials_.end());
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], i);
}

SuperPolynomial SymBasis::element(std::size_t i) const {
  return SuperPolynomial::monomial(shape(), monomials_.at(i));
}

SparseRow SymBasis::coordinates(const SuperPolynomial& p) const {
  std::vector<std::pair<std::size_t, GaussianRational>> entries;
  for (const auto& [m, c] : p.terms()) {
    auto it = index_.find(m);
    if (it == index_.end()) throw std::invalid_argument("element is not homogeneous of the basis degree");
    entries.emplace_back(it->second, c);
  }
  return canonicalRow(std::move(entries));
}

std::uint64_t symDimension(int M, int n, int l) {
  if (l < 0) return 0;
  mpz_class total = 0;
  for (int k = 0; k <= l; ++k) total += binomial(M - 1 + k, k) * binomial(2 * n, l - k);
  return total.get_ui();
}

SparseRow SparseMatrix::apply(const SparseRow& v) const {
  SparseRow out;
  for (const auto& [j, c] : v) out = combineRows(1, out, c, columns.at(j));
  return out;
}

SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix out{a.rows, {}};
  out.columns.reserve(b.cols());
  for (const auto& col : b.columns) out.columns.push_back(a.apply(col));
  return out;
}

SparseMatrix combine(const GaussianRational& alpha, const SparseMatrix& a,
                     const GaussianRational& beta, const SparseMatrix& b) {
  if (a.rows != b.rows || a.cols() != b.cols()) throw std::invalid_argument("matrix shapes differ");
  SparseMatrix out{a.rows, {}};
  for (std::size_t j = 0; j < a.cols(); ++j) {
    out.columns.push_back(combineRows(alpha, a.columns[j], beta, b.columns[j]));
  }
  return out;
}

SparseMatrix scalarMatrix(std::size_t size, const GaussianRational& c) {
  SparseMatrix out{size, std::vector<SparseRow>(size)};
  if (!c.isZero()) {
    for (std::size_t j = 0; j < size; ++j) out.columns[j] = {{j, c}};
  }
  return out;
}

SymTensorSpace::SymTensorSpace(int M, int n, Perturbation perturbation)
    : M_(M), n_(n), metric_((requireCondition(M, n), Metric::weightBasis(M, n))),
      perturbation_(perturbation), boxStarPoly_(metric_.shape()) {
  const Shape s = metric_.shape();
  for (int a = 1; a <= metric_.dim(); ++a) {
    const int b = metric_.partner(a);
    GaussianRational e = metric_.lower(a, b);
    if (perturbation_ == Perturbation::BoxStar && ((a == 1 && b == M) || (a == M && b == 1))) e = -e;
    boxStarPoly_ += SuperPolynomial::coordinate(s, a) * SuperPolynomial::coordinate(s, b) *
                    (e * GaussianRational::fraction(1, 2));
  }
}

const SymBasis& SymTensorSpace::basis(int l) {
  auto it = bases_.find(l);
  if (it == bases_.end()) it = bases_.emplace(l, SymBasis(M_, n_, l)).first;
  return it->second;
}

SparseMatrix SymTensorSpace::fromAction(int l, int target,
                                        const std::function<SuperPolynomial(const SuperPolynomial&)>& f) {
  const SymBasis& src = basis(l);
  const SymBasis& dst = basis(target);
  SparseMatrix out{dst.size(), {}};
  out.columns.reserve(src.size());
  for (std::size_t j = 0; j < src.size(); ++j) {
    SuperPolynomial image = f(src.element(j));
    out.columns.push_back(image.isZero() ? SparseRow{} : dst.coordinates(image));
  }
  return out;
}

SparseMatrix SymTensorSpace::box(int l) {
  return fromAction(l, l - 2, [&](const SuperPolynomial& p) {
    SuperPolynomial out(metric_.shape());
    for (int a = 1; a <= metric_.dim(); ++a) {
      const int b = metric_.partner(a);
      GaussianRational e = metric_.upper(b, a);
      if (perturbation_ == Perturbation::Box && ((a == 1 && b == M_) || (a == M_ && b == 1))) e = -e;
      out += p.derivative(b).derivative(a) * (e * GaussianRational::fraction(1, 2));
    }
    return out;
  });
}

SparseMatrix SymTensorSpace::boxStar(int l) {
  return fromAction(l, l + 2, [&](const SuperPolynomial& p) { return boxStarPoly_ * p; });
}

SparseMatrix SymTensorSpace::T(int l) {
  const GaussianRational value = GaussianRational::fraction(M_ - 2 * n_, 2) + GaussianRational(l);
  return scalarMatrix(basis(l).size(), value);
}

SparseMatrix SymTensorSpace::J(int a, int b, int l) {
  const SuperPolynomial va = loweredCoordinate(metric_, a);
  const SuperPolynomial vb = loweredCoordinate(metric_, b);
  const GaussianRational s = (metric_.parity(a) && metric_.parity(b)) ? -1 : 1;
  return fromAction(l, l, [&](const SuperPolynomial& p) {
    return va * p.derivative(b) - (vb * p.derivative(a)) * s;
  });
}

SuperPolynomial SymTensorSpace::highestWeightVector(int l) const {
  SuperMonomial m;
  m.even[0] = static_cast<std::uint8_t>(l);
  return SuperPolynomial::monomial(metric_.shape(), m);
}

namespace {

std::string at(const char* what, int l) { return std::string(what) + " on S_" + std::to_string(l); }

}  // namespace

CheckReport verifySU11(int M, int n, int lMax, Perturbation perturbation) {
  SymTensorSpace S(M, n, perturbation);
  CheckReport report{"su(1,1)", {}};
  for (int l = 0; l <= lMax; ++l) {
    auto bs = S.boxStar(l);
    report.add(at("[T, box*] = 2 box*", l), combine(1, compose(S.T(l + 2), bs), -1, compose(bs, S.T(l))) ==
                                                 combine(2, bs, 0, bs));
    auto b = S.box(l);
    if (l >= 2) {
      report.add(at("[T, box] = -2 box", l), combine(1, compose(S.T(l - 2), b), -1, compose(b, S.T(l))) ==
                                                 combine(-2, b, 0, b));
    }
    SparseMatrix bsb = l >= 2 ? compose(S.boxStar(l - 2), b) : scalarMatrix(S.basis(l).size(), 0);
    report.add(at("[box*, box] = -T", l),
               combine(1, bsb, -1, compose(S.box(l + 2), bs)) == combine(-1, S.T(l), 0, S.T(l)));
  }
  return report;
}

std::size_t harmonicDim(int M, int n, int l) {
  SymTensorSpace S(M, n);
  if (l < 0) return 0;
  const std::size_t dim = S.basis(l).size();
  return l < 2 ? dim : dim - S.box(l).rank();
}

CheckReport verifyDecomposition(int M, int n, int l, Perturbation perturbation) {
  if (l < 2) throw std::invalid_argument("decomposition check needs l >= 2");
  SymTensorSpace S(M, n, perturbation);
  CheckReport report{"harmonic decomposition", {}};
  const std::size_t dimL = S.basis(l).size();
  const std::size_t dimL2 = S.basis(l - 2).size();
  const std::size_t kernel = dimL - S.box(l).rank();
  const std::size_t image = S.boxStar(l - 2).rank();
  report.add(at("ker box meets im box* trivially", l), compose(S.box(l), S.boxStar(l - 2)).rank() == dimL2);
  report.add(at("dim ker box + dim im box* = dim S", l), kernel + image == dimL);
  report.add(at("dim ker box = dim S_l - dim S_{l-2}", l), kernel == dimL - dimL2);
  // box box* = T + box* box on S_{l-2}, the relation behind the splitting
  SparseMatrix lower = l >= 4 ? compose(S.boxStar(l - 4), S.box(l - 2)) : scalarMatrix(dimL2, 0);
  report.add(at("box box* = T + box* box", l - 2),
             compose(S.box(l), S.boxStar(l - 2)) == combine(1, S.T(l - 2), 1, lower));
  return report;
}

CyclicSpanResult cyclicSpanCheck(int M, int n, int l) {
  SymTensorSpace S(M, n);
  CyclicSpanResult r;
  const SymBasis& B = S.basis(l);
  const SparseRow start = B.coordinates(S.highestWeightVector(l));
  r.highestWeightHarmonic = l < 2 || S.box(l).apply(start).empty();
  r.harmonicDim = B.size() - (l < 2 ? 0 : S.box(l).rank());

  const int N = S.metric().dim();
  std::vector<SparseMatrix> gens;
  for (int a = 1; a <= N; ++a) {
    for (int b = a; b <= N; ++b) {
      SparseMatrix j = S.J(a, b, l);
      bool zero = std::all_of(j.columns.begin(), j.columns.end(), [](const SparseRow& c) { return c.empty(); });
      if (!zero) gens.push_back(std::move(j));
    }
  }
  IncrementalBasis span;
  std::deque<SparseRow> queue;
  if (span.add(start)) queue.push_back(start);
  while (!queue.empty()) {
    SparseRow v = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      SparseRow w = g.apply(v);
      if (!w.empty() && span.add(w)) queue.push_back(std::move(w));
    }
  }
  r.spanDim = span.rank();
  return r;
}

bool BranchingResult::ok() const {
  std::size_t total = 0;
  for (auto t : terms) total += t;
  return total == lhs;
}

std::string BranchingResult::toString() const {
  std::ostringstream os;
  os << lhs << " = ";
  for (std::size_t i = 0; i < terms.size(); ++i) os << (i ? "+" : "") << terms[i];
  return os.str();
}

BranchingResult branchingCheck(int M, int n, int l) {
  requireCondition(M, n);
  if (M - 1 - 2 * n <= 1) {
    throw DimensionError("branching needs M - 1 - 2n > 1, got M=" + std::to_string(M) +
                         ", n=" + std::to_string(n));
  }
  BranchingResult r;
  r.lhs = harmonicDim(M, n, l);
  for (int k = 0; k <= l; ++k) r.terms.push_back(harmonicDim(M - 1, n, l - k));
  return r;
}

CheckReport ospInvarianceCheck(int M, int n, int lMax, Perturbation perturbation) {
  SymTensorSpace S(M, n, perturbation);
  CheckReport report{"osp invariance", {}};
  const int N = S.metric().dim();
  for (int l = 0; l <= lMax; ++l) {
    auto bs = S.boxStar(l);
    auto b = S.box(l);
    auto t = S.T(l);
    bool boxOk = true, starOk = true, tOk = true;
    for (int a = 1; a <= N; ++a) {
      for (int c = a; c <= N; ++c) {
        auto J = S.J(a, c, l);
        starOk = starOk && compose(S.J(a, c, l + 2), bs) == compose(bs, J);
        if (l >= 2) boxOk = boxOk && compose(S.J(a, c, l - 2), b) == compose(b, J);
        tOk = tOk && compose(t, J) == compose(J, t);
      }
    }
    report.add(at("[J, box*] = 0", l), starOk);
    if (l >= 2) report.add(at("[J, box] = 0", l), boxOk);
    report.add(at("[J, T] = 0", l), tOk);
  }
  return report;
}

CheckReport verifyNaturalModule(int M, int n) {
  SymTensorSpace S(M, n);
  CheckReport report{"natural module", {}};
  const Metric& eta = S.metric();
  const int N = eta.dim();
  auto Jm = [&](int a, int b) { return S.J(a, b, 1); };
  auto sgn = [](int x) { return GaussianRational(x % 2 ? -1 : 1); };
  for (int K = 1; K <= N; ++K) {
    for (int L = 1; L <= N; ++L) {
      for (int P = 1; P <= N; ++P) {
        for (int Q = 1; Q <= N; ++Q) {
          const int pK = eta.parity(K), pL = eta.parity(L), pP = eta.parity(P), pQ = eta.parity(Q);
          auto A = Jm(K, L);
          auto B = Jm(P, Q);
          const GaussianRational s = sgn(S.parity(K, L) * S.parity(P, Q));
          auto lhs = combine(1, compose(A, B), -s, compose(B, A));
          auto rhs = scalarMatrix(A.rows, 0);
          rhs = combine(1, rhs, eta.lower(P, L), Jm(K, Q));
          rhs = combine(1, rhs, sgn(pK * (pL + pP)) * GaussianRational(eta.lower(Q, K)), Jm(L, P));
          rhs = combine(1, rhs, -sgn(pP * pQ) * GaussianRational(eta.lower(Q, L)), Jm(K, P));
          rhs = combine(1, rhs, -sgn(pK * pL) * GaussianRational(eta.lower(P, K)), Jm(L, Q));
          if (!(lhs == rhs)) {
            report.add("[" + labelString(K, L) + ", " + labelString(P, Q) + "] on S_1", false);
          }
        }
      }
    }
  }
  if (report.checks.empty()) report.add("all structure relations on S_1", true);
  return report;
}

std::string WeightVector::toString() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int e : eps) os << (first ? "" : ",") << e, first = false;
  for (int d : delta) os << (first ? "" : ",") << d, first = false;
  os << ")";
  return os.str();
}

WeightVector naturalWeight(int M, int n, int a) {
  WeightVector w{std::vector<int>(M / 2, 0), std::vector<int>(n, 0)};
  if (a < 1 || a > M + 2 * n) throw std::out_of_range("natural module index out of range");
  if (a <= M) {
    if (a <= M / 2) w.eps[a - 1] = 1;
    else if (M + 1 - a <= M / 2) w.eps[M - a] = -1;
  } else {
    const int j = a - M;
    if (j <= n) w.delta[j - 1] = 1;
    else w.delta[2 * n - j] = -1;
  }
  return w;
}

WeightVector symmetricHighestWeight(int M, int n, int l) {
  WeightVector w{std::vector<int>(M / 2, 0), std::vector<int>(n, 0)};
  if (!w.eps.empty()) w.eps[0] = l;
  return w;
}

WeightVector monomialWeight(int M, int n, const SuperMonomial& m) {
  WeightVector w{std::vector<int>(M / 2, 0), std::vector<int>(n, 0)};
  auto addTimes = [&](int a, int times) {
    const WeightVector v = naturalWeight(M, n, a);
    for (std::size_t i = 0; i < w.eps.size(); ++i) w.eps[i] += times * v.eps[i];
    for (std::size_t i = 0; i < w.delta.size(); ++i) w.delta[i] += times * v.delta[i];
  };
  for (int a = 1; a <= M; ++a) addTimes(a, m.even[a - 1]);
  for (int j = 0; j < 2 * n; ++j) {
    if (m.odd.contains(j)) addTimes(M + 1 + j, 1);
  }
  return w;
}

}  // namespace kepler
