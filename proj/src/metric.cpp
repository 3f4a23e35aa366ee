#include "kepler/metric.hpp"

namespace kepler {

Metric::Metric(Layout layout, int even, int oddHalf)
    : layout_(layout), even_(even), oddHalf_(oddHalf) {
  if (even < 1) throw DimensionError("metric needs at least one even coordinate");
  if (oddHalf < 0) throw DimensionError("odd half-dimension must be nonnegative");
  if (even > kMaxEvenCoordinates || 2 * oddHalf > kMaxOddCoordinates) {
    throw DimensionError("metric dimensions exceed the supported coordinate count");
  }
  const int N = dim();
  partner_.assign(N + 1, 0);
  upperSign_.assign(N + 1, 0);
  if (layout == Layout::Superspace) {
    for (int a = 1; a <= even; ++a) {
      partner_[a] = a;
      upperSign_[a] = 1;
    }
    // eta_{D+j, D+n+j} = -1, eta_{D+n+j, D+j} = +1; the inverse flips both.
    for (int j = 1; j <= oddHalf; ++j) {
      const int lo = even + j;
      const int hi = even + oddHalf + j;
      partner_[lo] = hi;
      partner_[hi] = lo;
      upperSign_[lo] = 1;
      upperSign_[hi] = -1;
    }
  } else {
    for (int a = 1; a <= even; ++a) {
      partner_[a] = even + 1 - a;
      upperSign_[a] = 1;
    }
    const int odd = 2 * oddHalf;
    for (int j = 1; j <= odd; ++j) {
      partner_[even + j] = even + odd + 1 - j;
      upperSign_[even + j] = j <= oddHalf ? 1 : -1;
    }
  }
}

Metric Metric::superspace(int D, int n) { return {Layout::Superspace, D, n}; }

Metric Metric::weightBasis(int M, int n) { return {Layout::WeightBasis, M, n}; }

void Metric::checkIndex(int a) const {
  if (a < 1 || a > dim()) {
    throw std::out_of_range("metric index " + std::to_string(a) + " outside 1.." +
                            std::to_string(dim()));
  }
}

int Metric::parity(int a) const {
  checkIndex(a);
  return a > even_ ? 1 : 0;
}

int Metric::partner(int a) const {
  checkIndex(a);
  return partner_[a];
}

int Metric::upper(int a, int b) const {
  checkIndex(a);
  checkIndex(b);
  return partner_[a] == b ? upperSign_[a] : 0;
}

// eta^{ap} s = 1 with eta_{pa} = s forces eta_{a, p(a)} = eta^{p(a), a}.
int Metric::lower(int a, int b) const {
  checkIndex(a);
  checkIndex(b);
  return partner_[a] == b ? upperSign_[b] : 0;
}

void Metric::requireKepler() const {
  if (!keplerAdmissible()) {
    throw DimensionError("bound states need D > 2n+1 (D=" + std::to_string(even_) +
                         ", n=" + std::to_string(oddHalf_) + ")");
  }
}

std::string Metric::describe() const {
  return std::string(layout_ == Layout::Superspace ? "R^" : "V^") + std::to_string(even_) + "|" +
         std::to_string(2 * oddHalf_);
}

}  // namespace kepler
