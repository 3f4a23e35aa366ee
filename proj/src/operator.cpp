#include "kepler/operator.hpp"

#include <bit>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace kepler {

namespace {

void requireSameSpace(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return;
  if (!a || !b || !(a->metric() == b->metric())) {
    throw std::invalid_argument("operators live on different superspaces");
  }
}

int termParity(int coefficientParity, const SuperMonomial& d) {
  return coefficientParity ^ (d.odd.degree() & 1);
}

using Pushed = OperatorElement::Parts;

// d_a o (sum g_gamma d^gamma) in normal order, without final normalization of
// the accumulated parts.
Pushed applyDerivLeft(const Superspace& space, int a, const Pushed& in) {
  Pushed out;
  const bool odd = space.isOdd(a);
  auto put = [&](const SuperMonomial& idx, const LocalizedPoly& f) {
    if (f.isZero()) return;
    auto it = out.find(idx);
    if (it == out.end()) {
      out.emplace(idx, f);
    } else {
      localized::accumulate(space, it->second, f);
    }
  };
  for (const auto& [gamma, g] : in) {
    put(gamma, localized::derive(space, g, a));
    auto moved = derivTimesIndex(space, a, gamma);
    if (!moved) continue;
    if (!odd) {
      put(moved->second, moved->first > 0 ? g : localized::scale(g, -1));
      continue;
    }
    // (-1)^{[a]|g|}: odd coefficient components flip sign.
    LocalizedPoly even = g.evenPart();
    LocalizedPoly oddPart = g.oddPart();
    LocalizedPoly signedG = localized::sub(space, even, oddPart);
    put(moved->second, moved->first > 0 ? signedG : localized::scale(signedG, -1));
  }
  for (auto it = out.begin(); it != out.end();) {
    localized::normalize(space, it->second);
    it = it->second.isZero() ? out.erase(it) : std::next(it);
  }
  return out;
}

struct MonomialHash {
  std::size_t operator()(const SuperMonomial& m) const noexcept {
    std::size_t h = m.odd.bits;
    for (auto e : m.even) h = h * 131 + e;
    return h;
  }
};

// d^alpha o f, memoized over alpha for one coefficient f.
class PushThrough {
 public:
  PushThrough(const Superspace& space, const LocalizedPoly& f) : space_(space) {
    Pushed base;
    if (!f.isZero()) base.emplace(SuperMonomial{}, f);
    cache_.emplace(SuperMonomial{}, std::move(base));
  }

  const Pushed& get(const SuperMonomial& alpha) {
    if (auto it = cache_.find(alpha); it != cache_.end()) return it->second;
    auto [lead, rest] = splitLeadingDerivative(space_, alpha);
    Pushed value = applyDerivLeft(space_, lead, get(rest));
    return cache_.emplace(alpha, std::move(value)).first->second;
  }

 private:
  const Superspace& space_;
  std::unordered_map<SuperMonomial, Pushed, MonomialHash> cache_;
};

}  // namespace

std::optional<std::pair<int, SuperMonomial>> derivTimesIndex(const Superspace& space, int a,
                                                             const SuperMonomial& gamma) {
  SuperMonomial out = gamma;
  const int D = space.shape().even;
  if (a <= D) {
    out.even[a - 1]++;
    return std::pair{1, out};
  }
  auto w = grassmannMul(GrassmannWord::single(a - D - 1), gamma.odd);
  if (!w) return std::nullopt;
  out.odd = w->word;
  return std::pair{w->sign, out};
}

std::pair<int, SuperMonomial> splitLeadingDerivative(const Superspace& space,
                                                     const SuperMonomial& alpha) {
  const int D = space.shape().even;
  SuperMonomial rest = alpha;
  for (int i = 0; i < D; ++i) {
    if (rest.even[i] > 0) {
      rest.even[i]--;
      return {i + 1, rest};
    }
  }
  if (rest.odd.empty()) throw std::logic_error("splitLeadingDerivative: empty index");
  const int j = std::countr_zero(rest.odd.bits);
  rest.odd.bits &= rest.odd.bits - 1;
  return {D + 1 + j, rest};
}

OperatorElement OperatorElement::scalar(const SpacePtr& space, const GaussianRational& c) {
  return polynomial(space, SuperPolynomial::constant(space->shape(), c));
}

OperatorElement OperatorElement::multiplication(const SpacePtr& space, const LocalizedPoly& f) {
  OperatorElement out(space);
  out.addPart(SuperMonomial{}, f);
  return out;
}

OperatorElement OperatorElement::polynomial(const SpacePtr& space, const SuperPolynomial& p) {
  return multiplication(space, LocalizedPoly::polynomial(p));
}

OperatorElement OperatorElement::coordinate(const SpacePtr& space, int a) {
  return polynomial(space, space->coordinate(a));
}

OperatorElement OperatorElement::lowered(const SpacePtr& space, int a) {
  return polynomial(space, space->lowered(a));
}

OperatorElement OperatorElement::derivative(const SpacePtr& space, int a) {
  OperatorElement out(space);
  auto idx = derivTimesIndex(*space, a, SuperMonomial{});
  out.addPart(idx->second, LocalizedPoly::polynomial(space->one()));
  return out;
}

OperatorElement OperatorElement::raisedDerivative(const SpacePtr& space, int a) {
  const int b = space->metric().partner(a);
  return derivative(space, b) * GaussianRational(space->metric().upper(a, b));
}

OperatorElement OperatorElement::radial(const SpacePtr& space, int k) {
  return multiplication(space, LocalizedPoly::radialPower(*space, k));
}

OperatorElement OperatorElement::laplacian(const SpacePtr& space) {
  OperatorElement out(space);
  for (int a = 1; a <= space->dim(); ++a) {
    out += raisedDerivative(space, a) * derivative(space, a);
  }
  return out;
}

OperatorElement OperatorElement::euler(const SpacePtr& space) {
  OperatorElement out(space);
  for (int a = 1; a <= space->dim(); ++a) {
    out += coordinate(space, a) * derivative(space, a);
  }
  return out;
}

OperatorElement OperatorElement::fromTerms(const SpacePtr& space,
                                           const std::vector<OperatorTerm>& terms) {
  OperatorElement out(space);
  for (const auto& t : terms) {
    LocalizedPoly f = localized::mulRadial(
        *space,
        LocalizedPoly::polynomial(SuperPolynomial::monomial(space->shape(), t.xPart, t.coefficient)),
        t.rExponent);
    out.addPart(t.dPart, f);
  }
  return out;
}

void OperatorElement::addPart(const DerivIndex& index, const LocalizedPoly& f) {
  if (f.isZero()) return;
  auto it = parts_.find(index);
  if (it == parts_.end()) {
    LocalizedPoly g = f;
    localized::normalize(*space_, g);
    if (!g.isZero()) parts_.emplace(index, std::move(g));
    return;
  }
  it->second = localized::add(*space_, it->second, f);
  if (it->second.isZero()) parts_.erase(it);
}

Parity OperatorElement::parity() const {
  bool hasEven = false;
  bool hasOdd = false;
  for (const auto& [d, f] : parts_) {
    const int p = f.parity();
    if (p < 0) return Parity::Mixed;
    (termParity(p, d) ? hasOdd : hasEven) = true;
  }
  if (hasEven && hasOdd) return Parity::Mixed;
  return hasOdd ? Parity::Odd : Parity::Even;
}

OperatorElement OperatorElement::evenPart() const {
  OperatorElement out(space_);
  for (const auto& [d, f] : parts_) {
    out.addPart(d, (d.odd.degree() & 1) ? f.oddPart() : f.evenPart());
  }
  return out;
}

OperatorElement OperatorElement::oddPart() const {
  OperatorElement out(space_);
  for (const auto& [d, f] : parts_) {
    out.addPart(d, (d.odd.degree() & 1) ? f.evenPart() : f.oddPart());
  }
  return out;
}

std::vector<OperatorTerm> OperatorElement::terms() const {
  std::vector<OperatorTerm> out;
  for (const auto& [d, f] : parts_) {
    for (const auto& [m, c] : f.n0.terms()) out.push_back({c, m, -f.denom, d});
    for (const auto& [m, c] : f.n1.terms()) out.push_back({c, m, 1 - f.denom, d});
  }
  return out;
}

std::size_t OperatorElement::termCount() const {
  std::size_t n = 0;
  for (const auto& [d, f] : parts_) n += f.termCount();
  return n;
}

OperatorElement& OperatorElement::operator+=(const OperatorElement& o) {
  requireSameSpace(space_, o.space_);
  for (const auto& [d, f] : o.parts_) addPart(d, f);
  return *this;
}

OperatorElement& OperatorElement::operator-=(const OperatorElement& o) {
  requireSameSpace(space_, o.space_);
  for (const auto& [d, f] : o.parts_) addPart(d, localized::scale(f, -1));
  return *this;
}

OperatorElement& OperatorElement::operator*=(const GaussianRational& c) {
  if (c.isZero()) {
    parts_.clear();
    return *this;
  }
  for (auto& [d, f] : parts_) f = localized::scale(f, c);
  return *this;
}

OperatorElement OperatorElement::operator-() const {
  OperatorElement out = *this;
  return out *= GaussianRational(-1);
}

bool operator==(const OperatorElement& a, const OperatorElement& b) {
  requireSameSpace(a.space_, b.space_);
  return a.parts_ == b.parts_;
}

OperatorElement compose(const OperatorElement& a, const OperatorElement& b) {
  requireSameSpace(a.space(), b.space());
  const Superspace& space = *a.space();
  std::map<SuperMonomial, LocalizedPoly> acc;
  for (const auto& [beta, fB] : b.parts()) {
    PushThrough pushed(space, fB);
    for (const auto& [alpha, fA] : a.parts()) {
      for (const auto& [gamma, g] : pushed.get(alpha)) {
        // d^gamma d^beta: even parts add, odd parts multiply as a Grassmann word.
        auto w = grassmannMul(gamma.odd, beta.odd);
        if (!w) continue;
        SuperMonomial idx = gamma;
        idx.odd = w->word;
        for (std::size_t i = 0; i < idx.even.size(); ++i) {
          idx.even[i] = static_cast<std::uint8_t>(idx.even[i] + beta.even[i]);
        }
        LocalizedPoly term = localized::mul(space, fA, g);
        if (w->sign < 0) term = localized::scale(term, -1);
        auto it = acc.find(idx);
        if (it == acc.end()) {
          acc.emplace(idx, std::move(term));
        } else {
          localized::accumulate(space, it->second, term);
        }
      }
    }
  }
  OperatorElement out(a.space());
  for (auto& [idx, f] : acc) out.addPart(idx, f);
  return out;
}

OperatorElement operator*(const OperatorElement& a, const OperatorElement& b) {
  return compose(a, b);
}

namespace {

OperatorElement homogeneousBracket(const OperatorElement& a, int pa, const OperatorElement& b,
                                   int pb) {
  OperatorElement ab = compose(a, b);
  OperatorElement ba = compose(b, a);
  return (pa & pb) ? ab + ba : ab - ba;
}

}  // namespace

OperatorElement superBracket(const OperatorElement& a, const OperatorElement& b) {
  const Parity pa = a.parity();
  const Parity pb = b.parity();
  if (pa != Parity::Mixed && pb != Parity::Mixed) {
    return homogeneousBracket(a, pa == Parity::Odd, b, pb == Parity::Odd);
  }
  const OperatorElement as[2] = {a.evenPart(), a.oddPart()};
  const OperatorElement bs[2] = {b.evenPart(), b.oddPart()};
  OperatorElement out(a.space());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (as[i].isZero() || bs[j].isZero()) continue;
      out += homogeneousBracket(as[i], i, bs[j], j);
    }
  }
  return out;
}

bool isZero(const OperatorElement& a) {
  // Parts are normalized on insertion: each is R^-m (N0 + R N1) with N0, N1
  // polynomial, and {1, R} is free over polynomials, so a part vanishes
  // exactly when both numerators do, i.e. when it is absent.
  return a.isZero();
}

OperatorElement dilationConjugate(const OperatorElement& a, const mpq_class& lambda) {
  if (sgn(lambda) <= 0) throw std::domain_error("dilation factor must be positive");
  const mpq_class inv = 1 / lambda;
  OperatorElement out(a.space());
  for (const auto& [d, f] : a.parts()) {
    LocalizedPoly g = localized::dilate(f, inv);
    out.addPart(d, localized::scale(g, GaussianRational(rationalPow(lambda, d.degree()))));
  }
  return out;
}

SuperPolynomial applyToPolynomial(const OperatorElement& a, const SuperPolynomial& p) {
  const Superspace& space = *a.space();
  requireSameShape(space.shape(), p.shape());
  std::unordered_map<SuperMonomial, SuperPolynomial, MonomialHash> cache;
  cache.emplace(SuperMonomial{}, p);
  std::function<const SuperPolynomial&(const SuperMonomial&)> derived =
      [&](const SuperMonomial& alpha) -> const SuperPolynomial& {
    if (auto it = cache.find(alpha); it != cache.end()) return it->second;
    auto [lead, rest] = splitLeadingDerivative(space, alpha);
    SuperPolynomial value = derived(rest).derivative(lead);
    return cache.emplace(alpha, std::move(value)).first->second;
  };
  SuperPolynomial out(p.shape());
  for (const auto& [d, f] : a.parts()) {
    if (f.denom != 0 || !f.n1.isZero()) {
      throw std::invalid_argument("applyToPolynomial: operator has non-polynomial coefficients");
    }
    out += f.n0 * derived(d);
  }
  return out;
}

std::string OperatorElement::toString() const {
  if (parts_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, f] : parts_) {
    if (!first) os << " + ";
    first = false;
    os << '[' << localized::toString(f) << ']';
    if (!d.isOne()) {
      os << "*d(" << monomialString(d, space_->shape().even) << ')';
    }
  }
  return os.str();
}

}  // namespace kepler
