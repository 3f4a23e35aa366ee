#pragma once

// Hand-rolled generators for property tests.

#include <random>

#include "kepler/operator.hpp"
#include "kepler/superpoly.hpp"

namespace kepler::testing {

inline GaussianRational randomScalar(std::mt19937_64& rng, bool complex = true) {
  std::uniform_int_distribution<long> num(-4, 4);
  std::uniform_int_distribution<long> den(1, 3);
  GaussianRational re = GaussianRational::fraction(num(rng), den(rng));
  if (!complex) return re;
  GaussianRational im = GaussianRational::fraction(num(rng), den(rng));
  return re + im * GaussianRational::imaginaryUnit();
}

inline SuperMonomial randomMonomial(std::mt19937_64& rng, Shape shape, int maxDegree,
                                    int forcedParity = -1) {
  std::uniform_int_distribution<int> deg(0, maxDegree);
  std::uniform_int_distribution<int> var(1, shape.dim());
  for (;;) {
    SuperMonomial m;
    const int d = deg(rng);
    bool ok = true;
    for (int k = 0; k < d; ++k) {
      const int a = var(rng);
      if (a <= shape.even) {
        m.even[a - 1]++;
      } else {
        const int j = a - shape.even - 1;
        if (m.odd.contains(j)) {
          ok = false;
          break;
        }
        m.odd.bits |= 1U << j;
      }
    }
    if (!ok) continue;
    if (forcedParity >= 0 && m.parity() != forcedParity) continue;
    return m;
  }
}

inline SuperPolynomial randomPolynomial(std::mt19937_64& rng, Shape shape, int maxDegree,
                                        int terms, int forcedParity = -1) {
  SuperPolynomial p(shape);
  for (int t = 0; t < terms; ++t) {
    p.addTerm(randomMonomial(rng, shape, maxDegree, forcedParity), randomScalar(rng));
  }
  return p;
}

/// Small random operator; parity -1 means unconstrained.
inline OperatorElement randomOperator(std::mt19937_64& rng, const SpacePtr& space, int terms,
                                      int forcedParity = -1, bool withRadial = true) {
  std::uniform_int_distribution<int> rexp(-2, 1);
  std::vector<OperatorTerm> out;
  const Shape shape = space->shape();
  for (int t = 0; t < terms; ++t) {
    SuperMonomial d = randomMonomial(rng, shape, 2);
    int xParity = -1;
    if (forcedParity >= 0) xParity = forcedParity ^ d.parity();
    SuperMonomial x = randomMonomial(rng, shape, 2, xParity);
    out.push_back({randomScalar(rng), x, withRadial ? rexp(rng) : 0, d});
  }
  return OperatorElement::fromTerms(space, out);
}

}  // namespace kepler::testing
