#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace kepler {

/// Raised when a dimension precondition (D > 2n+1, M - 2n > 1, ...) fails.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxEvenCoordinates = 16;
inline constexpr int kMaxOddCoordinates = 32;

/// Number of even and odd coordinates; two values built on different
/// shapes never mix.
struct Shape {
  int even = 0;
  int odd = 0;  // always 2n

  int dim() const { return even + odd; }
  friend bool operator==(const Shape&, const Shape&) = default;
};

/// Index with its Z2 parity; indices are 1-based and [a] = 0 iff a <= D.
struct IndexParity {
  int index = 1;
  int parity = 0;
};

/// Non-degenerate graded form on a superspace with D even and 2n odd
/// coordinates. Every row of the form has exactly one nonzero entry, so it
/// is stored as a partner permutation plus signs.
///
/// Two layouts exist:
///  - superspace(D, n): eta = I_D (+) [[0,-I_n],[I_n,0]], the Kepler metric.
///  - weightBasis(M, n): the antidiagonal pairing <v^a, v^b> of a weight basis
///    for the natural osp(M|2n) module (even part pairs e_i with e_{M+1-i},
///    odd part pairs o_j with o_{2n+1-j} with symplectic sign).
class Metric {
 public:
  enum class Layout { Superspace, WeightBasis };

  static Metric superspace(int D, int n);
  static Metric weightBasis(int M, int n);

  Layout layout() const { return layout_; }
  Shape shape() const { return {even_, 2 * oddHalf_}; }
  int evenDim() const { return even_; }
  int oddHalf() const { return oddHalf_; }
  int dim() const { return even_ + 2 * oddHalf_; }
  /// Super dimension D - 2n (written d for the Kepler problem).
  int superDim() const { return even_ - 2 * oddHalf_; }

  int parity(int a) const;
  IndexParity indexParity(int a) const { return {a, parity(a)}; }

  /// The unique b with eta_{ab} != 0 (equivalently eta^{ab} != 0).
  int partner(int a) const;
  /// eta_{ab} and eta^{ab}; zero unless b == partner(a).
  int lower(int a, int b) const;
  int upper(int a, int b) const;

  /// D > 2n + 1.
  bool keplerAdmissible() const { return even_ > 2 * oddHalf_ + 1; }
  void requireKepler() const;

  std::string describe() const;

  friend bool operator==(const Metric& a, const Metric& b) {
    return a.layout_ == b.layout_ && a.even_ == b.even_ && a.oddHalf_ == b.oddHalf_;
  }

 private:
  Metric(Layout layout, int even, int oddHalf);
  void checkIndex(int a) const;

  Layout layout_;
  int even_;
  int oddHalf_;
  std::vector<int> partner_;     // 1-based, slot 0 unused
  std::vector<int> upperSign_;   // eta^{a, partner(a)}
};

}  // namespace kepler
