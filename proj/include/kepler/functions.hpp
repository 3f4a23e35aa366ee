#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "kepler/linalg.hpp"
#include "kepler/operator.hpp"

namespace kepler {

/// Finite sum  sum_c P_c * e^{-cR}  with P_c a localized polynomial and
/// distinct nonnegative rational rates c. Zero parts are never stored.
class RadialExpFunction {
 public:
  using Parts = std::map<mpq_class, LocalizedPoly>;

  explicit RadialExpFunction(SpacePtr space) : space_(std::move(space)) {}

  /// e^{-cR}
  static RadialExpFunction exponential(const SpacePtr& space, const mpq_class& rate);
  static RadialExpFunction fromPart(const SpacePtr& space, const mpq_class& rate,
                                    const LocalizedPoly& p);
  static RadialExpFunction polynomial(const SpacePtr& space, const SuperPolynomial& p);

  const SpacePtr& space() const { return space_; }
  const Parts& parts() const { return parts_; }
  bool isZero() const { return parts_.empty(); }
  /// 0 even, 1 odd, -1 mixed; zero counts as even.
  int parity() const;

  /// Adds p * e^{-rate R}.
  void addPart(const mpq_class& rate, const LocalizedPoly& p);

  RadialExpFunction& operator+=(const RadialExpFunction& o);
  RadialExpFunction& operator-=(const RadialExpFunction& o);
  RadialExpFunction& operator*=(const GaussianRational& c);
  RadialExpFunction operator-() const;

  friend RadialExpFunction operator+(RadialExpFunction a, const RadialExpFunction& b) { return a += b; }
  friend RadialExpFunction operator-(RadialExpFunction a, const RadialExpFunction& b) { return a -= b; }
  friend RadialExpFunction operator*(RadialExpFunction a, const GaussianRational& c) { return a *= c; }
  friend RadialExpFunction operator*(const GaussianRational& c, RadialExpFunction a) { return a *= c; }
  friend bool operator==(const RadialExpFunction& a, const RadialExpFunction& b);

  std::string toString() const;

 private:
  SpacePtr space_;
  Parts parts_;
};

/// Pointwise product (rates add).
RadialExpFunction multiply(const RadialExpFunction& f, const RadialExpFunction& g);
/// Left multiplication by a localized polynomial.
RadialExpFunction multiply(const LocalizedPoly& p, const RadialExpFunction& f);

/// Left derivative d/dX^a.
RadialExpFunction derive(int a, const RadialExpFunction& f);

/// Memoized derivatives d^alpha f of one function, shared between the
/// operators applied to it.
class DerivativeCache {
 public:
  explicit DerivativeCache(RadialExpFunction f);
  const RadialExpFunction& get(const SuperMonomial& alpha);
  RadialExpFunction apply(const OperatorElement& A);

 private:
  struct Hash {
    std::size_t operator()(const SuperMonomial& m) const;
  };
  RadialExpFunction f_;
  std::unordered_map<SuperMonomial, RadialExpFunction, Hash> cache_;
};

RadialExpFunction applyOperator(const OperatorElement& A, const RadialExpFunction& f);

/// H = -1/2 Delta - 1/R; throws DimensionError unless D > 2n+1.
OperatorElement hamiltonian(const SpacePtr& space);
RadialExpFunction hamiltonianApply(const RadialExpFunction& f);

/// Substitution X -> lambda X; throws std::domain_error for lambda <= 0.
RadialExpFunction dilate(const RadialExpFunction& f, const mpq_class& lambda);

RadialExpFunction barFunction(const RadialExpFunction& f);

/// Exact coordinates of each function in a shared column system: per rate,
/// every function is brought to the largest R-denominator occurring in the list.
std::vector<SparseRow> coordinateRows(const std::vector<RadialExpFunction>& fs);

/// Dimension of the span.
std::size_t rank(const std::vector<RadialExpFunction>& fs);

}  // namespace kepler
