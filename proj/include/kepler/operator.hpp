#pragma once

#include <map>
#include <string>
#include <vector>

#include "kepler/localized.hpp"

namespace kepler {

enum class Parity { Even, Odd, Mixed };

/// One normal-ordered term: coefficient * xPart * R^rExponent * dPart.
struct OperatorTerm {
  GaussianRational coefficient;
  SuperMonomial xPart;
  int rExponent = 0;
  SuperMonomial dPart;
};

/// Element of the Weyl-type superalgebra generated by X^a, d_a and R^{+-1},
/// stored in normal order: for every derivative multi-index a localized
/// coefficient function sits to its left. Parts are kept normalized, so an
/// element is zero exactly when no parts remain.
class OperatorElement {
 public:
  using DerivIndex = SuperMonomial;
  using Parts = std::map<DerivIndex, LocalizedPoly>;

  explicit OperatorElement(SpacePtr space) : space_(std::move(space)) {}

  static OperatorElement scalar(const SpacePtr& space, const GaussianRational& c);
  static OperatorElement identity(const SpacePtr& space) { return scalar(space, 1); }
  static OperatorElement multiplication(const SpacePtr& space, const LocalizedPoly& f);
  static OperatorElement polynomial(const SpacePtr& space, const SuperPolynomial& p);
  /// X^a
  static OperatorElement coordinate(const SpacePtr& space, int a);
  /// X_a = eta_{ab} X^b
  static OperatorElement lowered(const SpacePtr& space, int a);
  /// d_a
  static OperatorElement derivative(const SpacePtr& space, int a);
  /// d^a = eta^{ab} d_b
  static OperatorElement raisedDerivative(const SpacePtr& space, int a);
  /// R^k
  static OperatorElement radial(const SpacePtr& space, int k);
  /// Delta = sum_a d^a d_a
  static OperatorElement laplacian(const SpacePtr& space);
  /// E = sum_a X^a d_a
  static OperatorElement euler(const SpacePtr& space);
  static OperatorElement fromTerms(const SpacePtr& space, const std::vector<OperatorTerm>& terms);

  const SpacePtr& space() const { return space_; }
  const Parts& parts() const { return parts_; }
  bool isZero() const { return parts_.empty(); }

  /// Even for zero.
  Parity parity() const;
  OperatorElement evenPart() const;
  OperatorElement oddPart() const;

  /// Expanded term list in deterministic order.
  std::vector<OperatorTerm> terms() const;
  std::size_t termCount() const;

  OperatorElement& operator+=(const OperatorElement& o);
  OperatorElement& operator-=(const OperatorElement& o);
  OperatorElement& operator*=(const GaussianRational& c);
  OperatorElement operator-() const;

  friend OperatorElement operator+(OperatorElement a, const OperatorElement& b) { return a += b; }
  friend OperatorElement operator-(OperatorElement a, const OperatorElement& b) { return a -= b; }
  friend OperatorElement operator*(OperatorElement a, const GaussianRational& c) { return a *= c; }
  friend OperatorElement operator*(const GaussianRational& c, OperatorElement a) { return a *= c; }
  /// Composition.
  friend OperatorElement operator*(const OperatorElement& a, const OperatorElement& b);

  /// Structural equality of normalized forms; agrees with isZero(a - b).
  friend bool operator==(const OperatorElement& a, const OperatorElement& b);

  std::string toString() const;

  /// Adds f * d^index (normalized).
  void addPart(const DerivIndex& index, const LocalizedPoly& f);

 private:
  SpacePtr space_;
  Parts parts_;
};

/// Associative product in normal order.
OperatorElement compose(const OperatorElement& a, const OperatorElement& b);

/// [A, B] = AB - (-1)^{|A||B|} BA, extended bilinearly to mixed parities.
OperatorElement superBracket(const OperatorElement& a, const OperatorElement& b);

/// Zero test in the localization at R.
bool isZero(const OperatorElement& a);

/// Automorphism X -> X/lambda, d -> lambda d, R^k -> lambda^-k R^k.
OperatorElement dilationConjugate(const OperatorElement& a, const mpq_class& lambda);

/// Action on a polynomial; every coefficient of the operator must be polynomial.
SuperPolynomial applyToPolynomial(const OperatorElement& a, const SuperPolynomial& p);

/// Sign and index for d_a * d^gamma in normal order; std::nullopt when an odd
/// derivative repeats.
std::optional<std::pair<int, SuperMonomial>> derivTimesIndex(const Superspace& space, int a,
                                                             const SuperMonomial& gamma);

/// Splits d^alpha = d_lead * d^rest (lead is the leftmost factor, sign +1).
std::pair<int, SuperMonomial> splitLeadingDerivative(const Superspace& space,
                                                     const SuperMonomial& alpha);

}  // namespace kepler
