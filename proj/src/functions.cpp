#include "kepler/functions.hpp"

#include <sstream>
#include <stdexcept>
#include <tuple>

namespace kepler {

namespace {

void requireSame(const RadialExpFunction& a, const RadialExpFunction& b) {
  if (!(a.space()->metric() == b.space()->metric())) {
    throw std::invalid_argument("functions live on different superspaces");
  }
}

}  // namespace

RadialExpFunction RadialExpFunction::exponential(const SpacePtr& space, const mpq_class& rate) {
  return fromPart(space, rate, LocalizedPoly::polynomial(space->one()));
}

RadialExpFunction RadialExpFunction::fromPart(const SpacePtr& space, const mpq_class& rate,
                                              const LocalizedPoly& p) {
  RadialExpFunction out(space);
  out.addPart(rate, p);
  return out;
}

RadialExpFunction RadialExpFunction::polynomial(const SpacePtr& space, const SuperPolynomial& p) {
  return fromPart(space, 0, LocalizedPoly::polynomial(p));
}

int RadialExpFunction::parity() const {
  int result = 0;
  bool seen = false;
  for (const auto& [c, p] : parts_) {
    const int q = p.parity();
    if (q < 0) return -1;
    if (seen && q != result) return -1;
    result = q;
    seen = true;
  }
  return result;
}

void RadialExpFunction::addPart(const mpq_class& rate, const LocalizedPoly& p) {
  if (sgn(rate) < 0) throw std::domain_error("exponential rate must be nonnegative");
  if (p.isZero()) return;
  auto it = parts_.find(rate);
  if (it == parts_.end()) {
    LocalizedPoly q = p;
    localized::normalize(*space_, q);
    parts_.emplace(rate, std::move(q));
    return;
  }
  it->second = localized::add(*space_, it->second, p);
  if (it->second.isZero()) parts_.erase(it);
}

RadialExpFunction& RadialExpFunction::operator+=(const RadialExpFunction& o) {
  requireSame(*this, o);
  for (const auto& [c, p] : o.parts_) addPart(c, p);
  return *this;
}

RadialExpFunction& RadialExpFunction::operator-=(const RadialExpFunction& o) {
  requireSame(*this, o);
  for (const auto& [c, p] : o.parts_) addPart(c, localized::scale(p, -1));
  return *this;
}

RadialExpFunction& RadialExpFunction::operator*=(const GaussianRational& c) {
  if (c.isZero()) {
    parts_.clear();
    return *this;
  }
  for (auto& [r, p] : parts_) p = localized::scale(p, c);
  return *this;
}

RadialExpFunction RadialExpFunction::operator-() const {
  RadialExpFunction out = *this;
  return out *= -1;
}

bool operator==(const RadialExpFunction& a, const RadialExpFunction& b) {
  return a.space()->metric() == b.space()->metric() && a.parts_ == b.parts_;
}

std::string RadialExpFunction::toString() const {
  if (parts_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, p] : parts_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << localized::toString(p) << ")";
    if (sgn(c) != 0) os << "*exp(-" << rationalString(c) << "R)";
  }
  return os.str();
}

RadialExpFunction multiply(const RadialExpFunction& f, const RadialExpFunction& g) {
  requireSame(f, g);
  RadialExpFunction out(f.space());
  for (const auto& [c1, p1] : f.parts()) {
    for (const auto& [c2, p2] : g.parts()) {
      out.addPart(c1 + c2, localized::mul(*f.space(), p1, p2));
    }
  }
  return out;
}

RadialExpFunction multiply(const LocalizedPoly& p, const RadialExpFunction& f) {
  RadialExpFunction out(f.space());
  for (const auto& [c, q] : f.parts()) out.addPart(c, localized::mul(*f.space(), p, q));
  return out;
}

RadialExpFunction derive(int a, const RadialExpFunction& f) {
  const Superspace& sp = *f.space();
  if (a < 1 || a > sp.dim()) throw std::out_of_range("derivative index out of range");
  // d_a e^{-cR} = -c X_a R^{-1} e^{-cR}; X_a sits to the left.
  LocalizedPoly xaOverR(1, sp.lowered(a), SuperPolynomial(sp.shape()));
  RadialExpFunction out(f.space());
  for (const auto& [c, p] : f.parts()) {
    LocalizedPoly part = localized::derive(sp, p, a);
    if (sgn(c) != 0) {
      part = localized::sub(sp, part, localized::scale(localized::mul(sp, xaOverR, p), GaussianRational(c)));
    }
    out.addPart(c, part);
  }
  return out;
}

std::size_t DerivativeCache::Hash::operator()(const SuperMonomial& m) const {
  std::size_t h = m.odd.bits;
  for (auto e : m.even) h = h * 131 + e;
  return h;
}

DerivativeCache::DerivativeCache(RadialExpFunction f) : f_(std::move(f)) {}

const RadialExpFunction& DerivativeCache::get(const SuperMonomial& alpha) {
  auto it = cache_.find(alpha);
  if (it != cache_.end()) return it->second;
  if (alpha.isOne()) return cache_.emplace(alpha, f_).first->second;
  auto [lead, rest] = splitLeadingDerivative(*f_.space(), alpha);
  RadialExpFunction value = derive(lead, get(rest));
  return cache_.emplace(alpha, std::move(value)).first->second;
}

RadialExpFunction DerivativeCache::apply(const OperatorElement& A) {
  if (!(A.space()->metric() == f_.space()->metric())) {
    throw std::invalid_argument("operator and function live on different superspaces");
  }
  RadialExpFunction out(f_.space());
  for (const auto& [alpha, coeff] : A.parts()) out += multiply(coeff, get(alpha));
  return out;
}

RadialExpFunction applyOperator(const OperatorElement& A, const RadialExpFunction& f) {
  return DerivativeCache(f).apply(A);
}

OperatorElement hamiltonian(const SpacePtr& space) {
  space->metric().requireKepler();
  return OperatorElement::laplacian(space) * GaussianRational::fraction(-1, 2) -
         OperatorElement::radial(space, -1);
}

RadialExpFunction hamiltonianApply(const RadialExpFunction& f) {
  return applyOperator(hamiltonian(f.space()), f);
}

RadialExpFunction dilate(const RadialExpFunction& f, const mpq_class& lambda) {
  if (sgn(lambda) <= 0) throw std::domain_error("dilation factor must be positive");
  RadialExpFunction out(f.space());
  for (const auto& [c, p] : f.parts()) out.addPart(c * lambda, localized::dilate(p, lambda));
  return out;
}

RadialExpFunction barFunction(const RadialExpFunction& f) {
  RadialExpFunction out(f.space());
  for (const auto& [c, p] : f.parts()) out.addPart(c, localized::bar(*f.space(), p));
  return out;
}

std::vector<SparseRow> coordinateRows(const std::vector<RadialExpFunction>& fs) {
  std::map<mpq_class, int> denoms;
  for (const auto& f : fs) {
    if (!fs.empty()) requireSame(fs.front(), f);
    for (const auto& [c, p] : f.parts()) {
      auto [it, inserted] = denoms.try_emplace(c, p.denom);
      if (p.denom > it->second) it->second = p.denom;
    }
  }
  CoordinateIndex<std::tuple<mpq_class, SuperMonomial, int>> index;
  std::vector<SparseRow> rows;
  rows.reserve(fs.size());
  for (const auto& f : fs) {
    std::vector<std::pair<std::size_t, GaussianRational>> entries;
    for (const auto& [c, p] : f.parts()) {
      LocalizedPoly lifted = localized::lift(*f.space(), p, denoms.at(c));
      for (const auto& [m, v] : lifted.n0.terms()) entries.emplace_back(index.column({c, m, 0}), v);
      for (const auto& [m, v] : lifted.n1.terms()) entries.emplace_back(index.column({c, m, 1}), v);
    }
    rows.push_back(canonicalRow(std::move(entries)));
  }
  return rows;
}

std::size_t rank(const std::vector<RadialExpFunction>& fs) {
  return bareissRank(coordinateRows(fs));
}

}  // namespace kepler
