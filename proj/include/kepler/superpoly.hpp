#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "kepler/metric.hpp"
#include "kepler/scalar.hpp"

namespace kepler {

/// Product of distinct odd coordinates in ascending index order. Bit j is
/// the (j+1)-th odd coordinate, i.e. X^{D+1+j}.
struct GrassmannWord {
  std::uint32_t bits = 0;

  static GrassmannWord single(int j) { return {std::uint32_t{1} << j}; }
  int degree() const { return std::popcount(bits); }
  bool contains(int j) const { return (bits >> j) & 1U; }
  bool empty() const { return bits == 0; }

  friend auto operator<=>(const GrassmannWord&, const GrassmannWord&) = default;
};

struct SignedWord {
  int sign = 1;
  GrassmannWord word;
};

/// Anticommutative product; std::nullopt when the words share an index.
std::optional<SignedWord> grassmannMul(GrassmannWord lhs, GrassmannWord rhs);

/// x^alpha * theta^S with the odd factor in ascending order. The same
/// layout doubles as a derivative multi-index.
struct SuperMonomial {
  std::array<std::uint8_t, kMaxEvenCoordinates> even{};
  GrassmannWord odd;

  int evenDegree() const;
  int degree() const { return evenDegree() + odd.degree(); }
  int parity() const { return odd.degree() & 1; }
  bool isOne() const { return odd.empty() && evenDegree() == 0; }

  friend bool operator==(const SuperMonomial&, const SuperMonomial&) = default;
  friend std::strong_ordering operator<=>(const SuperMonomial& a, const SuperMonomial& b);
};

struct SignedMonomial {
  int sign = 1;
  SuperMonomial monomial;
};

std::optional<SignedMonomial> monomialMul(const SuperMonomial& lhs, const SuperMonomial& rhs);

/// Exact polynomial in D even and 2n odd coordinates over Q(i).
class SuperPolynomial {
 public:
  using Terms = std::map<SuperMonomial, GaussianRational>;

  explicit SuperPolynomial(Shape shape) : shape_(shape) {}

  static SuperPolynomial constant(Shape shape, const GaussianRational& c);
  /// X^a for 1 <= a <= D + 2n.
  static SuperPolynomial coordinate(Shape shape, int a);
  static SuperPolynomial monomial(Shape shape, const SuperMonomial& m,
                                  const GaussianRational& c = 1);

  Shape shape() const { return shape_; }
  const Terms& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void addTerm(const SuperMonomial& m, const GaussianRational& c);

  SuperPolynomial& operator+=(const SuperPolynomial& o);
  SuperPolynomial& operator-=(const SuperPolynomial& o);
  SuperPolynomial& operator*=(const GaussianRational& c);
  SuperPolynomial operator-() const;

  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
  friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);
  friend SuperPolynomial operator*(SuperPolynomial a, const GaussianRational& c) { return a *= c; }
  friend SuperPolynomial operator*(const GaussianRational& c, SuperPolynomial a) { return a *= c; }
  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
    return a.shape_ == b.shape_ && a.terms_ == b.terms_;
  }

  /// Left derivative d/dX^a.
  SuperPolynomial derivative(int a) const;

  SuperPolynomial evenPart() const;
  SuperPolynomial oddPart() const;
  /// 0 or 1 for a nonzero homogeneous polynomial, -1 for mixed, 0 for zero.
  int parity() const;

  /// Substitution X -> lambda X.
  SuperPolynomial dilated(const mpq_class& lambda) const;

  std::string toString() const;

 private:
  Shape shape_;
  Terms terms_;
};

void requireSameShape(Shape a, Shape b);

std::string monomialString(const SuperMonomial& m, int evenDim);

/// X_a = sum_b eta_{ab} X^b.
SuperPolynomial loweredCoordinate(const Metric& metric, int a);

/// Q = sum_a X^a X_a = r^2 + Theta^2.
SuperPolynomial buildQ(const Metric& metric);

/// Conjugate-linear automorphism: X^mu -> X_mu on odd coordinates, even
/// coordinates fixed, complex conjugation on coefficients.
SuperPolynomial barConjugate(const SuperPolynomial& p, const Metric& metric);

/// Exact quotient p / Q for the superspace metric (Q is monic of degree two
/// in X^1); std::nullopt when Q does not divide p.
std::optional<SuperPolynomial> exactQuotientByQ(const SuperPolynomial& p, const SuperPolynomial& Q);

}  // namespace kepler
