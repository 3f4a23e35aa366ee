#include "kepler/superpoly.hpp"

#include <sstream>
#include <vector>

namespace kepler {

std::optional<SignedWord> grassmannMul(GrassmannWord lhs, GrassmannWord rhs) {
  if ((lhs.bits & rhs.bits) != 0) return std::nullopt;
  // Each rhs factor moves left past every lhs factor with a larger index.
  int swaps = 0;
  for (std::uint32_t rest = rhs.bits; rest != 0; rest &= rest - 1) {
    const int t = std::countr_zero(rest);
    const std::uint32_t above = t >= 31 ? 0U : ~((std::uint32_t{1} << (t + 1)) - 1);
    swaps += std::popcount(lhs.bits & above);
  }
  return SignedWord{(swaps & 1) ? -1 : 1, GrassmannWord{lhs.bits | rhs.bits}};
}

int SuperMonomial::evenDegree() const {
  int s = 0;
  for (auto e : even) s += e;
  return s;
}

std::strong_ordering operator<=>(const SuperMonomial& a, const SuperMonomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (std::size_t i = 0; i < a.even.size(); ++i) {
    if (a.even[i] != b.even[i]) return b.even[i] <=> a.even[i];
  }
  return a.odd.bits <=> b.odd.bits;
}

std::optional<SignedMonomial> monomialMul(const SuperMonomial& lhs, const SuperMonomial& rhs) {
  auto w = grassmannMul(lhs.odd, rhs.odd);
  if (!w) return std::nullopt;
  SignedMonomial out;
  out.sign = w->sign;
  out.monomial.odd = w->word;
  for (std::size_t i = 0; i < lhs.even.size(); ++i) {
    out.monomial.even[i] = static_cast<std::uint8_t>(lhs.even[i] + rhs.even[i]);
  }
  return out;
}

void requireSameShape(Shape a, Shape b) {
  if (!(a == b)) {
    throw std::invalid_argument("mismatched superspace shapes (" + std::to_string(a.even) + "|" +
                                std::to_string(a.odd) + " vs " + std::to_string(b.even) + "|" +
                                std::to_string(b.odd) + ")");
  }
}

SuperPolynomial SuperPolynomial::constant(Shape shape, const GaussianRational& c) {
  SuperPolynomial p(shape);
  p.addTerm(SuperMonomial{}, c);
  return p;
}

SuperPolynomial SuperPolynomial::coordinate(Shape shape, int a) {
  if (a < 1 || a > shape.dim()) throw std::out_of_range("coordinate index out of range");
  SuperMonomial m;
  if (a <= shape.even) {
    m.even[a - 1] = 1;
  } else {
    m.odd = GrassmannWord::single(a - shape.even - 1);
  }
  return monomial(shape, m);
}

SuperPolynomial SuperPolynomial::monomial(Shape shape, const SuperMonomial& m,
                                          const GaussianRational& c) {
  SuperPolynomial p(shape);
  p.addTerm(m, c);
  return p;
}

void SuperPolynomial::addTerm(const SuperMonomial& m, const GaussianRational& c) {
  if (c.isZero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.isZero()) terms_.erase(it);
  }
}

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
  requireSameShape(shape_, o.shape_);
  for (const auto& [m, c] : o.terms_) addTerm(m, c);
  return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& o) {
  requireSameShape(shape_, o.shape_);
  for (const auto& [m, c] : o.terms_) addTerm(m, -c);
  return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const GaussianRational& c) {
  if (c.isZero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

SuperPolynomial SuperPolynomial::operator-() const {
  SuperPolynomial out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
  requireSameShape(a.shape_, b.shape_);
  SuperPolynomial out(a.shape_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto prod = monomialMul(ma, mb);
      if (!prod) continue;
      GaussianRational c = ca * cb;
      if (prod->sign < 0) c = -c;
      out.addTerm(prod->monomial, c);
    }
  }
  return out;
}

SuperPolynomial SuperPolynomial::derivative(int a) const {
  if (a < 1 || a > shape_.dim()) throw std::out_of_range("derivative index out of range");
  SuperPolynomial out(shape_);
  if (a <= shape_.even) {
    const int i = a - 1;
    for (const auto& [m, c] : terms_) {
      if (m.even[i] == 0) continue;
      SuperMonomial r = m;
      const long e = r.even[i]--;
      out.addTerm(r, c * GaussianRational(e));
    }
  } else {
    const int j = a - shape_.even - 1;
    const std::uint32_t below = (std::uint32_t{1} << j) - 1;
    for (const auto& [m, c] : terms_) {
      if (!m.odd.contains(j)) continue;
      SuperMonomial r = m;
      r.odd.bits &= ~(std::uint32_t{1} << j);
      const bool flip = std::popcount(m.odd.bits & below) & 1;
      out.addTerm(r, flip ? -c : c);
    }
  }
  return out;
}

SuperPolynomial SuperPolynomial::evenPart() const {
  SuperPolynomial out(shape_);
  for (const auto& [m, c] : terms_) {
    if (m.parity() == 0) out.terms_.emplace(m, c);
  }
  return out;
}

SuperPolynomial SuperPolynomial::oddPart() const {
  SuperPolynomial out(shape_);
  for (const auto& [m, c] : terms_) {
    if (m.parity() == 1) out.terms_.emplace(m, c);
  }
  return out;
}

int SuperPolynomial::parity() const {
  bool hasEven = false;
  bool hasOdd = false;
  for (const auto& [m, c] : terms_) (m.parity() ? hasOdd : hasEven) = true;
  if (hasEven && hasOdd) return -1;
  return hasOdd ? 1 : 0;
}

SuperPolynomial SuperPolynomial::dilated(const mpq_class& lambda) const {
  if (sgn(lambda) == 0) throw std::domain_error("dilation by zero");
  SuperPolynomial out(shape_);
  for (const auto& [m, c] : terms_) {
    out.terms_.emplace(m, c * GaussianRational(rationalPow(lambda, m.degree())));
  }
  return out;
}

std::string monomialString(const SuperMonomial& m, int evenDim) {
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << '*';
    first = false;
  };
  for (int i = 0; i < evenDim; ++i) {
    if (m.even[i] == 0) continue;
    sep();
    os << 'X' << (i + 1);
    if (m.even[i] > 1) os << '^' << static_cast<int>(m.even[i]);
  }
  for (std::uint32_t rest = m.odd.bits; rest != 0; rest &= rest - 1) {
    sep();
    os << 'X' << (evenDim + 1 + std::countr_zero(rest));
  }
  if (first) os << '1';
  return os.str();
}

std::string SuperPolynomial::toString() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    std::string cs = c.toString();
    const bool compound = !c.isReal() && sgn(c.real()) != 0;
    if (!first) os << " + ";
    first = false;
    if (m.isOne()) {
      os << cs;
      continue;
    }
    if (c.isOne()) {
      os << monomialString(m, shape_.even);
    } else {
      os << (compound ? "(" + cs + ")" : cs) << '*' << monomialString(m, shape_.even);
    }
  }
  return os.str();
}

SuperPolynomial loweredCoordinate(const Metric& metric, int a) {
  const int b = metric.partner(a);
  return SuperPolynomial::coordinate(metric.shape(), b) * GaussianRational(metric.lower(a, b));
}

SuperPolynomial buildQ(const Metric& metric) {
  SuperPolynomial q(metric.shape());
  for (int a = 1; a <= metric.dim(); ++a) {
    q += SuperPolynomial::coordinate(metric.shape(), a) * loweredCoordinate(metric, a);
  }
  return q;
}

SuperPolynomial barConjugate(const SuperPolynomial& p, const Metric& metric) {
  requireSameShape(p.shape(), metric.shape());
  const Shape shape = p.shape();
  std::vector<SuperPolynomial> oddImage;
  for (int j = 0; j < shape.odd; ++j) {
    oddImage.push_back(loweredCoordinate(metric, shape.even + 1 + j));
  }
  SuperPolynomial out(shape);
  for (const auto& [m, c] : p.terms()) {
    SuperMonomial evenOnly = m;
    evenOnly.odd = {};
    SuperPolynomial image = SuperPolynomial::monomial(shape, evenOnly, c.conj());
    for (std::uint32_t rest = m.odd.bits; rest != 0; rest &= rest - 1) {
      image = image * oddImage[std::countr_zero(rest)];
    }
    out += image;
  }
  return out;
}

std::optional<SuperPolynomial> exactQuotientByQ(const SuperPolynomial& p, const SuperPolynomial& Q) {
  requireSameShape(p.shape(), Q.shape());
  SuperMonomial x1sq;
  x1sq.even[0] = 2;
  SuperPolynomial rest = Q;
  {
    auto it = Q.terms().find(x1sq);
    if (it == Q.terms().end() || !it->second.isOne()) {
      throw std::logic_error("exactQuotientByQ: Q is not monic in X1^2");
    }
    rest.addTerm(x1sq, -1);
    for (const auto& [m, c] : rest.terms()) {
      if (m.even[0] != 0) throw std::logic_error("exactQuotientByQ: Q mixes X1 with lower terms");
    }
  }
  if (p.isZero()) return SuperPolynomial(p.shape());

  int top = 0;
  for (const auto& [m, c] : p.terms()) top = std::max<int>(top, m.even[0]);
  if (top < 2) return std::nullopt;

  std::vector<SuperPolynomial> buckets(top + 1, SuperPolynomial(p.shape()));
  for (const auto& [m, c] : p.terms()) buckets[m.even[0]].addTerm(m, c);

  SuperPolynomial quotient(p.shape());
  for (int k = top; k >= 2; --k) {
    if (buckets[k].isZero()) continue;
    SuperPolynomial step(p.shape());
    for (const auto& [m, c] : buckets[k].terms()) {
      SuperMonomial r = m;
      r.even[0] = static_cast<std::uint8_t>(r.even[0] - 2);
      step.addTerm(r, c);
    }
    quotient += step;
    buckets[k - 2] -= step * rest;
  }
  if (!buckets[0].isZero() || !buckets[1].isZero()) return std::nullopt;
  return quotient;
}

}  // namespace kepler
