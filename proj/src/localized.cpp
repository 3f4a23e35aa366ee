#include "kepler/localized.hpp"

#include <sstream>

namespace kepler {

namespace {
constexpr int kCachedQPowers = 4;
}

Superspace::Superspace(const Metric& metric)
    : metric_(metric), q_(buildQ(metric)) {
  const Shape s = metric.shape();
  qPowers_.push_back(SuperPolynomial::constant(s, 1));
  for (int k = 1; k <= kCachedQPowers; ++k) qPowers_.push_back(qPowers_.back() * q_);
  coordinates_.assign(metric.dim() + 1, SuperPolynomial(s));
  lowered_.assign(metric.dim() + 1, SuperPolynomial(s));
  for (int a = 1; a <= metric.dim(); ++a) {
    coordinates_[a] = SuperPolynomial::coordinate(s, a);
    lowered_[a] = loweredCoordinate(metric, a);
  }
}

std::shared_ptr<const Superspace> Superspace::make(const Metric& metric) {
  return std::make_shared<const Superspace>(metric);
}

SuperPolynomial Superspace::qPower(int k) const {
  if (k < 0) throw std::invalid_argument("negative power of Q");
  if (k < static_cast<int>(qPowers_.size())) return qPowers_[k];
  SuperPolynomial out = qPowers_.back();
  for (int j = static_cast<int>(qPowers_.size()) - 1; j < k; ++j) out = out * q_;
  return out;
}

LocalizedPoly LocalizedPoly::polynomial(SuperPolynomial p) {
  const Shape s = p.shape();
  return {0, std::move(p), SuperPolynomial(s)};
}

LocalizedPoly LocalizedPoly::radialPower(const Superspace& space, int k) {
  if (!space.supportsRadial()) throw std::logic_error("R is undefined on this metric");
  const Shape s = space.shape();
  if (k < 0) return {-k, space.one(), SuperPolynomial(s)};
  if (k % 2 == 0) return {0, space.qPower(k / 2), SuperPolynomial(s)};
  return {0, SuperPolynomial(s), space.qPower(k / 2)};
}

int LocalizedPoly::parity() const {
  const int p0 = n0.parity();
  const int p1 = n1.parity();
  if (n0.isZero()) return p1;
  if (n1.isZero()) return p0;
  return p0 == p1 ? p0 : -1;
}

LocalizedPoly LocalizedPoly::evenPart() const { return {denom, n0.evenPart(), n1.evenPart()}; }

LocalizedPoly LocalizedPoly::oddPart() const { return {denom, n0.oddPart(), n1.oddPart()}; }

namespace localized {

LocalizedPoly lift(const Superspace& space, const LocalizedPoly& p, int target) {
  const int j = target - p.denom;
  if (j < 0) throw std::logic_error("lift below current denominator");
  if (j == 0) return p;
  if (p.isZero()) return {target, p.n0, p.n1};
  const SuperPolynomial qj = space.qPower(j / 2);
  if (j % 2 == 0) return {target, p.n0 * qj, p.n1 * qj};
  // R (n0 + R n1) = Q n1 + R n0
  return {target, space.Q() * p.n1 * qj, p.n0 * qj};
}

void normalize(const Superspace& space, LocalizedPoly& p) {
  if (p.isZero()) {
    p.denom = 0;
    return;
  }
  while (p.denom > 0) {
    if (!space.supportsRadial()) throw std::logic_error("R is undefined on this metric");
    auto q = exactQuotientByQ(p.n0, space.Q());
    if (!q) break;
    // n0 + R n1 = R (n1 + R n0/Q)
    p.n0 = std::move(p.n1);
    p.n1 = std::move(*q);
    --p.denom;
  }
}

void accumulate(const Superspace& space, LocalizedPoly& acc, const LocalizedPoly& p) {
  if (p.isZero()) return;
  if (acc.isZero()) {
    acc = p;
    return;
  }
  if (acc.denom < p.denom) acc = lift(space, acc, p.denom);
  if (acc.denom > p.denom) {
    LocalizedPoly lifted = lift(space, p, acc.denom);
    acc.n0 += lifted.n0;
    acc.n1 += lifted.n1;
  } else {
    acc.n0 += p.n0;
    acc.n1 += p.n1;
  }
}

namespace {

LocalizedPoly combine(const Superspace& space, const LocalizedPoly& a, const LocalizedPoly& b,
                      bool subtract) {
  if (b.isZero()) return a;
  if (a.isZero()) return subtract ? scale(b, -1) : b;
  const int m = std::max(a.denom, b.denom);
  LocalizedPoly out = lift(space, a, m);
  LocalizedPoly rhs = lift(space, b, m);
  if (subtract) {
    out.n0 -= rhs.n0;
    out.n1 -= rhs.n1;
  } else {
    out.n0 += rhs.n0;
    out.n1 += rhs.n1;
  }
  normalize(space, out);
  return out;
}

}  // namespace

LocalizedPoly add(const Superspace& space, const LocalizedPoly& a, const LocalizedPoly& b) {
  return combine(space, a, b, false);
}

LocalizedPoly sub(const Superspace& space, const LocalizedPoly& a, const LocalizedPoly& b) {
  return combine(space, a, b, true);
}

LocalizedPoly mul(const Superspace& space, const LocalizedPoly& a, const LocalizedPoly& b) {
  const Shape s = a.shape();
  if (a.isZero() || b.isZero()) return LocalizedPoly(s);
  if (a.n1.isZero() && b.n1.isZero()) {
    LocalizedPoly out{a.denom + b.denom, a.n0 * b.n0, SuperPolynomial(s)};
    if (out.denom > 0) normalize(space, out);
    return out;
  }
  SuperPolynomial n0 = a.n0 * b.n0;
  if (!a.n1.isZero() && !b.n1.isZero()) n0 += space.Q() * (a.n1 * b.n1);
  SuperPolynomial n1 = a.n0 * b.n1;
  n1 += a.n1 * b.n0;
  LocalizedPoly out{a.denom + b.denom, std::move(n0), std::move(n1)};
  normalize(space, out);
  return out;
}

LocalizedPoly scale(const LocalizedPoly& p, const GaussianRational& c) {
  if (c.isZero()) return LocalizedPoly(p.shape());
  return {p.denom, p.n0 * c, p.n1 * c};
}

LocalizedPoly mulRadial(const Superspace& space, const LocalizedPoly& p, int k) {
  return mul(space, LocalizedPoly::radialPower(space, k), p);
}

LocalizedPoly derive(const Superspace& space, const LocalizedPoly& p, int a) {
  const Shape s = p.shape();
  if (p.isZero()) return LocalizedPoly(s);
  if (p.denom == 0 && p.n1.isZero()) return LocalizedPoly::polynomial(p.n0.derivative(a));
  // d_a [R^-m (N0 + R N1)] = R^-(m+2) ([Q dN0 - m X_a N0] + R [Q dN1 + (1-m) X_a N1])
  const int m = p.denom;
  const SuperPolynomial& Xa = space.lowered(a);
  SuperPolynomial n0 = space.Q() * p.n0.derivative(a);
  if (m != 0) n0 -= (Xa * p.n0) * GaussianRational(m);
  SuperPolynomial n1 = space.Q() * p.n1.derivative(a);
  if (m != 1) n1 += (Xa * p.n1) * GaussianRational(1 - m);
  LocalizedPoly out{m + 2, std::move(n0), std::move(n1)};
  normalize(space, out);
  return out;
}

LocalizedPoly dilate(const LocalizedPoly& p, const mpq_class& lambda) {
  if (sgn(lambda) <= 0) throw std::domain_error("dilation factor must be positive");
  const Shape s = p.shape();
  LocalizedPoly out(s);
  out.denom = p.denom;
  for (const auto& [m, c] : p.n0.terms()) {
    out.n0.addTerm(m, c * GaussianRational(rationalPow(lambda, m.degree() - p.denom)));
  }
  for (const auto& [m, c] : p.n1.terms()) {
    out.n1.addTerm(m, c * GaussianRational(rationalPow(lambda, m.degree() + 1 - p.denom)));
  }
  return out;
}

LocalizedPoly bar(const Superspace& space, const LocalizedPoly& p) {
  return {p.denom, barConjugate(p.n0, space.metric()), barConjugate(p.n1, space.metric())};
}

std::string toString(const LocalizedPoly& p) {
  if (p.isZero()) return "0";
  std::ostringstream os;
  const bool both = !p.n0.isZero() && !p.n1.isZero();
  if (p.denom > 0) os << "R^-" << p.denom << "*";
  if (both || p.denom > 0) os << "(";
  if (!p.n0.isZero()) os << p.n0.toString();
  if (both) os << " + ";
  if (!p.n1.isZero()) os << "R*(" << p.n1.toString() << ")";
  if (both || p.denom > 0) os << ")";
  return os.str();
}

}  // namespace localized

}  // namespace kepler
