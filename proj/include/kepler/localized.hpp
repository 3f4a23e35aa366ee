#pragma once

#include <memory>
#include <vector>

#include "kepler/metric.hpp"
#include "kepler/superpoly.hpp"

namespace kepler {

/// Shared, immutable data for one superspace: the metric, Q = R^2 and the
/// coordinate polynomials X^a, X_a.
class Superspace {
 public:
  static std::shared_ptr<const Superspace> make(const Metric& metric);
  static std::shared_ptr<const Superspace> kepler(int D, int n) {
    return make(Metric::superspace(D, n));
  }

  const Metric& metric() const { return metric_; }
  Shape shape() const { return metric_.shape(); }
  int dim() const { return metric_.dim(); }
  bool isOdd(int a) const { return metric_.parity(a) == 1; }

  const SuperPolynomial& Q() const { return q_; }
  /// Q^k; powers up to a small bound are cached at construction.
  SuperPolynomial qPower(int k) const;
  const SuperPolynomial& coordinate(int a) const { return coordinates_.at(a); }
  const SuperPolynomial& lowered(int a) const { return lowered_.at(a); }
  SuperPolynomial one() const { return SuperPolynomial::constant(shape(), 1); }

  /// R only makes sense where Q is monic in X^1 (the Kepler superspace).
  bool supportsRadial() const { return metric_.layout() == Metric::Layout::Superspace; }

  explicit Superspace(const Metric& metric);

 private:
  Metric metric_;
  SuperPolynomial q_;
  std::vector<SuperPolynomial> qPowers_;
  std::vector<SuperPolynomial> coordinates_;  // slot 0 unused
  std::vector<SuperPolynomial> lowered_;
};

using SpacePtr = std::shared_ptr<const Superspace>;

/// Element R^{-denom} (n0 + R n1) of the coordinate ring localized at R,
/// with R^2 = Q. After normalize() the pair (denom, n0, n1) is unique:
/// denom is minimal, so R does not divide the numerator when denom > 0.
struct LocalizedPoly {
  int denom = 0;
  SuperPolynomial n0;
  SuperPolynomial n1;

  explicit LocalizedPoly(Shape shape) : n0(shape), n1(shape) {}
  LocalizedPoly(int d, SuperPolynomial a, SuperPolynomial b)
      : denom(d), n0(std::move(a)), n1(std::move(b)) {}

  static LocalizedPoly polynomial(SuperPolynomial p);
  /// R^k for any integer k.
  static LocalizedPoly radialPower(const Superspace& space, int k);

  Shape shape() const { return n0.shape(); }
  bool isZero() const { return n0.isZero() && n1.isZero(); }
  /// Same convention as SuperPolynomial::parity.
  int parity() const;
  LocalizedPoly evenPart() const;
  LocalizedPoly oddPart() const;
  std::size_t termCount() const { return n0.size() + n1.size(); }

  friend bool operator==(const LocalizedPoly& a, const LocalizedPoly& b) {
    return a.denom == b.denom && a.n0 == b.n0 && a.n1 == b.n1;
  }
};

namespace localized {

/// Multiply the numerator by R^(target - denom); target >= denom.
LocalizedPoly lift(const Superspace& space, const LocalizedPoly& p, int target);
/// Cancel R from numerator and denominator while possible.
void normalize(const Superspace& space, LocalizedPoly& p);

/// acc += p at a common denominator, without normalizing.
void accumulate(const Superspace& space, LocalizedPoly& acc, const LocalizedPoly& p);

LocalizedPoly add(const Superspace& space, const LocalizedPoly& a, const LocalizedPoly& b);
LocalizedPoly sub(const Superspace& space, const LocalizedPoly& a, const LocalizedPoly& b);
LocalizedPoly mul(const Superspace& space, const LocalizedPoly& a, const LocalizedPoly& b);
LocalizedPoly scale(const LocalizedPoly& p, const GaussianRational& c);
LocalizedPoly mulRadial(const Superspace& space, const LocalizedPoly& p, int k);

/// Left derivative d/dX^a using d_a R = X_a / R.
LocalizedPoly derive(const Superspace& space, const LocalizedPoly& p, int a);

/// Substitution X -> lambda X (so R -> lambda R).
LocalizedPoly dilate(const LocalizedPoly& p, const mpq_class& lambda);

/// Bar conjugation; R is fixed.
LocalizedPoly bar(const Superspace& space, const LocalizedPoly& p);

std::string toString(const LocalizedPoly& p);

}  // namespace localized

}  // namespace kepler
