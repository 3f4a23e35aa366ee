#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "kepler/linalg.hpp"
#include "kepler/operator.hpp"

namespace kepler {

/// eta_{KL} on the labels -2, -1, 0, 1, ..., D+2n: diag(-1, -1, 1) on the
/// first three labels and the superspace metric on the rest.
class ExtendedMetric {
 public:
  explicit ExtendedMetric(Metric metric) : metric_(std::move(metric)) {}

  const Metric& base() const { return metric_; }
  int maxLabel() const { return metric_.dim(); }
  std::vector<int> labels() const;
  bool valid(int K) const { return K >= -2 && K <= maxLabel(); }
  int parity(int K) const { return K <= 0 ? 0 : metric_.parity(K); }
  int lower(int K, int L) const;
  int upper(int K, int L) const;

 private:
  Metric metric_;
};

/// The building blocks of the generator table. Perturbing a field and
/// reassembling gives the negative controls.
struct GeneratorParts {
  OperatorElement Jm2, Jm1, J0;
  std::vector<OperatorElement> Gamma, A, M;  // slot 0 unused
  std::vector<std::vector<OperatorElement>> Jab;

  static GeneratorParts build(const SpacePtr& space);
};

/// All J_{KL} for K, L in {-2, ..., D+2n}, plus the derived operators.
class GeneratorTable {
 public:
  /// Throws DimensionError unless D > 2n+1.
  static GeneratorTable build(int D, int n);
  static GeneratorTable fromParts(const SpacePtr& space, GeneratorParts parts);

  const SpacePtr& space() const { return space_; }
  const ExtendedMetric& metric() const { return metric_; }
  const GeneratorParts& parts() const { return parts_; }

  const OperatorElement& J(int K, int L) const;
  const OperatorElement& T() const { return parts_.Jm2; }
  const OperatorElement& h0() const { return h0_; }
  const OperatorElement& Gamma(int a) const { return parts_.Gamma.at(a); }
  const OperatorElement& A(int a) const { return parts_.A.at(a); }
  const OperatorElement& M(int a) const { return parts_.M.at(a); }
  /// K_0 = i(J_{-1} + i J_{-2}), K_a = M_a + i Gamma_a.
  const OperatorElement& K(int A) const { return K_.at(A); }
  /// i(J_{-1} - i J_{-2}), M_a - i Gamma_a.
  const OperatorElement& Kplus(int A) const { return Kplus_.at(A); }

  /// Basis labels (K, L) with K <= L, in the fixed sweep order.
  std::vector<std::pair<int, int>> basisLabels() const;

 private:
  GeneratorTable(SpacePtr space, GeneratorParts parts);

  SpacePtr space_;
  ExtendedMetric metric_;
  GeneratorParts parts_;
  std::vector<OperatorElement> table_;  // (K+2) * size + (L+2)
  int size_ = 0;
  OperatorElement h0_;
  std::vector<OperatorElement> K_, Kplus_;
};

std::string labelString(int K, int L);

/// eta_{PL}J_{KQ} + (-1)^{[K]([L]+[P])}eta_{QK}J_{LP} - (-1)^{[P][Q]}eta_{QL}J_{KP}
///   - (-1)^{[K][L]}eta_{PK}J_{LQ}
OperatorElement expectedBracket(std::pair<int, int> KL, std::pair<int, int> PQ,
                                const GeneratorTable& table);

struct CheckResult {
  std::string label;
  bool passed = false;
};

struct CheckReport {
  std::string suite;
  std::vector<CheckResult> checks;

  std::size_t failures() const;
  bool ok() const { return failures() == 0; }
  void add(std::string label, bool passed) { checks.push_back({std::move(label), passed}); }
};

enum class PairSelection { All, Sample };
enum class Execution { Serial, Parallel };

struct SweepOptions {
  PairSelection pairs = PairSelection::All;
  std::uint64_t seed = 0;
  std::size_t sampleSize = 500;
  Execution execution = Execution::Parallel;
  int jobs = 1;
};

/// Ordered generator pairs visited by the sweep, in report order.
std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> selectPairs(
    const GeneratorTable& table, const SweepOptions& options);

/// [J_KL, J_PQ] - expectedBracket for every selected pair.
CheckReport verifyAlgebra(const GeneratorTable& table, const SweepOptions& options);

/// The so(2,1) relations alone.
CheckReport verifySo21(const GeneratorTable& table);

/// Named relations from the construction lemmas. Each is checked against the
/// operators and, separately, against the structure-constant formula.
CheckReport verifyNamedRelations(const GeneratorTable& table);

/// Intermediate operator identities used in the (K)^2 computation.
CheckReport verifyProofIdentities(const GeneratorTable& table);

/// sum_{A,B} eta^{BA} K_A K_B over A, B = 0..D+2n.
OperatorElement kSquared(const std::vector<OperatorElement>& K, const ExtendedMetric& metric);
CheckReport verifyKSquared(const GeneratorTable& table);

/// ad_{h0} eigenvalues, abelian nilradicals, and g_0-stability of g_{+1}, g_{-1}.
CheckReport verifyGrading(const GeneratorTable& table);

/// Exact coordinates of operators in a shared column system.
std::vector<SparseRow> operatorRows(const std::vector<OperatorElement>& ops);

}  // namespace kepler
