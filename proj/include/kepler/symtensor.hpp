#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "kepler/dynsym.hpp"
#include "kepler/linalg.hpp"
#include "kepler/superpoly.hpp"

namespace kepler {

/// Degree-l monomials in M even and 2n odd generators v^a of S(V), in the
/// weight-basis layout (v^1 even of highest weight).
class SymBasis {
 public:
  SymBasis(int M, int n, int l);

  int M() const { return M_; }
  int n() const { return n_; }
  int degree() const { return l_; }
  Shape shape() const { return {M_, 2 * n_}; }
  std::size_t size() const { return monomials_.size(); }
  const SuperMonomial& monomial(std::size_t i) const { return monomials_.at(i); }
  SuperPolynomial element(std::size_t i) const;
  /// Coordinates of a homogeneous degree-l element.
  SparseRow coordinates(const SuperPolynomial& p) const;

 private:
  int M_, n_, l_;
  std::vector<SuperMonomial> monomials_;
  std::map<SuperMonomial, std::size_t> index_;
};

/// sum_k C(M-1+k,k) C(2n,l-k).
std::uint64_t symDimension(int M, int n, int l);

/// Linear map stored column-wise: column j is the image of source basis vector j.
struct SparseMatrix {
  std::size_t rows = 0;
  std::vector<SparseRow> columns;

  std::size_t cols() const { return columns.size(); }
  SparseRow apply(const SparseRow& v) const;
  std::size_t rank() const { return bareissRank(columns); }
  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;
};

SparseMatrix compose(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix combine(const GaussianRational& alpha, const SparseMatrix& a,
                     const GaussianRational& beta, const SparseMatrix& b);
SparseMatrix scalarMatrix(std::size_t size, const GaussianRational& c);

/// Testing hook: flip the sign of the eta(1, M) pairing entry inside one operator only.
enum class Perturbation { None, Box, BoxStar };

/// S(V) for osp(M|2n) with the operators
///   box* = 1/2 sum v^a eta_ab v^b,  box = 1/2 sum eta^ba d_a d_b,  T = (M-2n)/2 + E,
/// and the superderivations J_ab = v_a d_b - (-1)^{[a][b]} v_b d_a.
class SymTensorSpace {
 public:
  /// Throws DimensionError unless M - 2n > 1.
  SymTensorSpace(int M, int n, Perturbation perturbation = Perturbation::None);

  int M() const { return M_; }
  int n() const { return n_; }
  const Metric& metric() const { return metric_; }
  const SymBasis& basis(int l);

  /// S_l -> S_{l-2}; empty target when l < 2.
  SparseMatrix box(int l);
  /// S_l -> S_{l+2}
  SparseMatrix boxStar(int l);
  /// S_l -> S_l
  SparseMatrix T(int l);
  /// S_l -> S_l
  SparseMatrix J(int a, int b, int l);
  int parity(int a, int b) const { return (metric_.parity(a) + metric_.parity(b)) % 2; }
  /// (v^1)^l
  SuperPolynomial highestWeightVector(int l) const;

 private:
  SparseMatrix fromAction(int l, int target, const std::function<SuperPolynomial(const SuperPolynomial&)>& f);

  int M_, n_;
  Metric metric_;
  Perturbation perturbation_;
  std::map<int, SymBasis> bases_;
  SuperPolynomial boxStarPoly_;
};

/// [T, box*] = 2 box*, [T, box] = -2 box, [box*, box] = -T on S_l, l <= lMax.
CheckReport verifySU11(int M, int n, int lMax, Perturbation perturbation = Perturbation::None);

/// dim ker(box) on S_l.
std::size_t harmonicDim(int M, int n, int l);

/// ker box on S_l meets box* S_{l-2} trivially and the dimensions add to dim S_l.
CheckReport verifyDecomposition(int M, int n, int l, Perturbation perturbation = Perturbation::None);

struct CyclicSpanResult {
  bool highestWeightHarmonic = false;
  std::size_t spanDim = 0;
  std::size_t harmonicDim = 0;
  bool ok() const { return highestWeightHarmonic && spanDim == harmonicDim; }
};

/// Closure of (v^1)^l under the J_ab.
CyclicSpanResult cyclicSpanCheck(int M, int n, int l);

struct BranchingResult {
  std::size_t lhs = 0;               // dim L_(l,0..0) for osp(M|2n)
  std::vector<std::size_t> terms;    // dim L_(l-k,0..0) for osp(M-1|2n), k = 0..l
  bool ok() const;
  std::string toString() const;      // "25 = 18+6+1"
};

/// Both sides computed as exact harmonic dimensions; requires M - 1 - 2n > 1.
BranchingResult branchingCheck(int M, int n, int l);

/// [J_ab, box] = [J_ab, box*] = [J_ab, T] = 0 on S_l, l <= lMax.
CheckReport ospInvarianceCheck(int M, int n, int lMax, Perturbation perturbation = Perturbation::None);

/// The J_ab on S_1 satisfy the orthosymplectic structure relations.
CheckReport verifyNaturalModule(int M, int n);

/// Coordinates in the eps_i, delta_j basis (eps first).
struct WeightVector {
  std::vector<int> eps;
  std::vector<int> delta;
  std::string toString() const;
  friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

/// Weight of v^a in the natural module of osp(M|2n).
WeightVector naturalWeight(int M, int n, int a);
/// (l, 0, ..., 0)
WeightVector symmetricHighestWeight(int M, int n, int l);
/// Weight of a monomial of S(V).
WeightVector monomialWeight(int M, int n, const SuperMonomial& m);

}  // namespace kepler
