#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kepler/dynsym.hpp"
#include "kepler/functions.hpp"

namespace kepler {

/// E_k = -1/2 (1/((d-1)/2 + k))^2 with d = D - 2n.
mpq_class boundStateEnergy(int k, int D, int n);
/// mu_k = sqrt(-2 E_k) = 2/(d-1+2k).
mpq_class dilationRate(int k, int D, int n);

/// C(a, b), zero when b < 0 or b > a.
mpz_class binomial(long a, long b);

/// sum_k C(D+k,k) (C(2n,l-k) - C(2n,l-2-k)).
std::uint64_t degeneracy(int l, int D, int n);

struct GroundState {
  mpq_class energy;
  RadialExpFunction psi;
  bool verified = false;
};

/// Psi_0 = e^{-2R/(d-1)} with H Psi_0 = E_0 Psi_0 checked exactly.
GroundState groundState(int D, int n);

/// Annihilation conditions and h0 weight of Phi_0 = e^{-R}.
CheckReport verifyParabolicHWV(const GeneratorTable& table);

struct BoundStateLevel {
  int k = 0;
  mpq_class energy;
  mpq_class rate;
  std::uint64_t degeneracy = 0;
  /// Independent K-monomials applied to Phi_0, with their labels.
  std::vector<RadialExpFunction> basis;
  std::vector<std::string> labels;
  /// Number of monomials generated before rank reduction.
  std::size_t candidates = 0;
};

/// Degree-k monomials K_{A1}...K_{Ak} Phi_0 (A1 <= ... <= Ak, odd labels at
/// most once) in graded lexicographic order, reduced to an independent set.
/// degeneracy is the rank of the span.
BoundStateLevel buildLevel(const GeneratorTable& table, int k);

/// Energies and formula degeneracies for k = 0..kMax (no bases).
std::vector<BoundStateLevel> spectrumTable(int D, int n, int kMax);

/// Basis of the level dilated by the given rate (mu_k when omitted).
std::vector<RadialExpFunction> eigenstates(const BoundStateLevel& level,
                                           std::optional<mpq_class> rate = std::nullopt);

/// H psi = E_k psi for every dilated state.
CheckReport verifyEigenstates(const BoundStateLevel& level,
                              std::optional<mpq_class> rate = std::nullopt);

/// h0 v = (-(d-1)/2 - k) v for every basis state.
CheckReport verifyH0Weights(const GeneratorTable& table, const BoundStateLevel& level);

/// Polynomial in x with rational coefficients, index = power.
using RationalPoly = std::vector<mpq_class>;

/// Generalized Laguerre polynomial L_j^{(alpha)} by the three-term recurrence.
RationalPoly laguerre(int j, const mpq_class& alpha);

/// Finite Laurent series in r times e^{-kappa r}.
struct RadialSeries {
  mpq_class kappa;
  std::map<int, mpq_class> coeffs;  // power -> coefficient, no zeros stored

  bool isZero() const { return coeffs.empty(); }
  void add(int power, const mpq_class& c);
  RadialSeries derivative() const;
  RadialSeries shifted(int powers) const;
  RadialSeries scaled(const mpq_class& c) const;
  RadialSeries& operator+=(const RadialSeries& o);
  std::string toString() const;
};

struct RadialSolution {
  int l = 0, j = 0;
  mpq_class kappa;
  RadialSeries chi;
};

/// chi_{l,j} = r^l e^{-kappa r} L_j^{(2l+d-2)}(2 kappa r), kappa = 2/(d-1+2(l+j)).
RadialSolution radialSolution(int l, int j, int D, int n,
                              std::optional<mpq_class> kappa = std::nullopt);

/// -1/2(chi'' + (d-1)/r chi' - l(d-2+l)/r^2 chi) - chi/r - E_{l+j} chi.
RadialSeries radialResidual(int l, int j, int D, int n,
                            std::optional<mpq_class> kappa = std::nullopt);

/// Decimal rendering of an exact rational (for reports only).
std::string decimalString(const mpq_class& x, int digits = 12);

}  // namespace kepler
