// keplerctl: command-line driver for the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kepler/dynsym.hpp"
#include "kepler/functions.hpp"
#include "kepler/spectrum.hpp"
#include "kepler/symtensor.hpp"

using namespace kepler;
using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

enum class Fault { None, Generator, Pairing, Rate };

struct Config {
  int D = 3, n = 0, M = 5, l = 2, kMax = 2;
  std::string pairs = "sample";
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out;
  int jobs = 1;
  bool checkStates = false;
  Fault fault = Fault::None;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Run {
  json body;
  bool failed = false;
  std::vector<std::string> csv;  // set only for CSV output

  void suite(const CheckReport& r) {
    json failures = json::array();
    for (const auto& c : r.checks) {
      if (!c.passed) failures.push_back(c.label);
    }
    body["suites"].push_back({{"name", r.suite},
                              {"checks", r.checks.size()},
                              {"failures", failures.size()},
                              {"failed", failures}});
    failed = failed || !failures.empty();
  }
};

GeneratorTable buildTable(const Config& cfg) {
  GeneratorTable table = GeneratorTable::build(cfg.D, cfg.n);
  if (cfg.fault != Fault::Generator) return table;
  GeneratorParts parts = table.parts();
  parts.Jm1 = parts.Jm1 + OperatorElement::identity(table.space());
  return GeneratorTable::fromParts(table.space(), std::move(parts));
}

Perturbation pairingFault(const Config& cfg) {
  return cfg.fault == Fault::Pairing ? Perturbation::BoxStar : Perturbation::None;
}

void requireKMax(int k) {
  if (k < 0) throw UsageError("--kmax must be >= 0");
}

json parametersDn(const Config& cfg) {
  return {{"D", cfg.D}, {"n", cfg.n}};
}

void runAlgebraSuites(const Config& cfg, const GeneratorTable& table, Run& run) {
  SweepOptions opt;
  opt.pairs = cfg.pairs == "all" ? PairSelection::All : PairSelection::Sample;
  opt.seed = cfg.seed;
  opt.jobs = cfg.jobs;
  opt.execution = cfg.jobs > 1 ? Execution::Parallel : Execution::Serial;
  run.suite(verifySo21(table));
  run.suite(verifyAlgebra(table, opt));
  run.suite(verifyNamedRelations(table));
  run.suite(verifyProofIdentities(table));
  run.suite(verifyKSquared(table));
  run.suite(verifyGrading(table));
  run.suite(verifyParabolicHWV(table));
}

json spectrumRow(const BoundStateLevel& level) {
  return {{"k", level.k},
          {"energy_exact", level.energy.get_str()},
          {"energy_decimal", decimalString(level.energy)},
          {"degeneracy", level.degeneracy}};
}

// Decay rate 2/(d-1+2k); the rate fault flips the sign of the 1.
mpq_class stateRate(const Config& cfg, int k) {
  if (cfg.fault != Fault::Rate) return dilationRate(k, cfg.D, cfg.n);
  return mpq_class(2, cfg.D - 2 * cfg.n + 1 + 2 * k);
}

CheckReport groundStateSuite(const Config& cfg) {
  CheckReport r{"ground state", {}};
  auto space = Superspace::kepler(cfg.D, cfg.n);
  auto psi = RadialExpFunction::exponential(space, stateRate(cfg, 0));
  r.add("H psi_0 = E_0 psi_0", hamiltonianApply(psi) ==
                                   psi * GaussianRational(boundStateEnergy(0, cfg.D, cfg.n)));
  return r;
}

void runStateSuites(const Config& cfg, const GeneratorTable& table, Run& run) {
  run.suite(groundStateSuite(cfg));
  CheckReport ranks{"level ranks", {}};
  for (int k = 0; k <= cfg.kMax; ++k) {
    BoundStateLevel level = buildLevel(table, k);
    const std::uint64_t expected = degeneracy(k, cfg.D, cfg.n);
    ranks.add("rank of level " + std::to_string(k) + " = " + std::to_string(expected),
              level.degeneracy == expected);
    CheckReport eig = verifyEigenstates(level, stateRate(cfg, k));
    eig.suite = "eigenstates k=" + std::to_string(k);
    run.suite(eig);
    CheckReport h0 = verifyH0Weights(table, level);
    h0.suite = "h0 weights k=" + std::to_string(k);
    run.suite(h0);
  }
  run.suite(ranks);
}

Run cmdVerify(const Config& cfg) {
  Run run;
  run.body["parameters"] = parametersDn(cfg);
  run.body["parameters"]["pairs"] = cfg.pairs;
  run.body["parameters"]["seed"] = cfg.seed;
  run.body["parameters"]["jobs"] = cfg.jobs;
  run.body["suites"] = json::array();
  GeneratorTable table = buildTable(cfg);
  runAlgebraSuites(cfg, table, run);
  run.suite(groundStateSuite(cfg));
  return run;
}

Run cmdSpectrum(const Config& cfg) {
  requireKMax(cfg.kMax);
  Run run;
  run.body["parameters"] = parametersDn(cfg);
  run.body["parameters"]["kmax"] = cfg.kMax;
  run.body["parameters"]["check_states"] = cfg.checkStates;
  json rows = json::array();
  for (const auto& level : spectrumTable(cfg.D, cfg.n, cfg.kMax)) rows.push_back(spectrumRow(level));
  run.body["spectrum"] = rows;
  run.body["suites"] = json::array();
  if (cfg.checkStates) runStateSuites(cfg, buildTable(cfg), run);
  if (cfg.format == "csv") {
    run.csv.push_back("k,energy_exact,energy_decimal,degeneracy");
    for (const auto& r : rows) {
      std::ostringstream line;
      line << r["k"].get<int>() << ',' << r["energy_exact"].get<std::string>() << ','
           << r["energy_decimal"].get<std::string>() << ',' << r["degeneracy"].get<std::uint64_t>();
      run.csv.push_back(line.str());
    }
  }
  return run;
}

void runSymTensorSuites(int M, int n, int l, Perturbation p, Run& run) {
  run.suite(verifySU11(M, n, l, p));
  for (int j = 2; j <= l; ++j) run.suite(verifyDecomposition(M, n, j, p));
  run.suite(ospInvarianceCheck(M, n, std::min(l, 3), p));
}

Run cmdHarmonic(const Config& cfg) {
  if (cfg.l < 0) throw UsageError("--l must be >= 0");
  Run run;
  run.body["parameters"] = {{"M", cfg.M}, {"n", cfg.n}, {"l", cfg.l}};
  SymTensorSpace space(cfg.M, cfg.n);  // precondition check
  const std::size_t dimS = symDimension(cfg.M, cfg.n, cfg.l);
  const std::size_t dimS2 = symDimension(cfg.M, cfg.n, cfg.l - 2);
  const std::size_t harmonic = harmonicDim(cfg.M, cfg.n, cfg.l);
  CyclicSpanResult cyc = cyclicSpanCheck(cfg.M, cfg.n, cfg.l);
  run.body["dim_S"] = dimS;
  run.body["dim_S_minus_2"] = dimS2;
  run.body["harmonic_dim"] = harmonic;
  run.body["highest_weight"] = symmetricHighestWeight(cfg.M, cfg.n, cfg.l).toString();
  run.body["cyclic_span_dim"] = cyc.spanDim;
  run.body["suites"] = json::array();
  CheckReport dims{"harmonic dimension", {}};
  dims.add("harmonic = dim S_l - dim S_{l-2}", harmonic == dimS - dimS2);
  dims.add("highest weight vector is harmonic", cyc.highestWeightHarmonic);
  dims.add("cyclic span = harmonic space", cyc.ok());
  run.suite(dims);
  runSymTensorSuites(cfg.M, cfg.n, cfg.l, pairingFault(cfg), run);
  const bool decompositionOk =
      std::all_of(run.body["suites"].begin(), run.body["suites"].end(), [](const json& s) {
        return s["name"] != "harmonic decomposition" || s["failures"] == 0;
      });
  run.body["decomposition"] = cfg.l < 2 ? "trivial" : (decompositionOk ? "ok" : "failed");
  return run;
}

Run cmdBranching(const Config& cfg) {
  if (cfg.l < 0) throw UsageError("--l must be >= 0");
  Run run;
  run.body["parameters"] = {{"M", cfg.M}, {"n", cfg.n}, {"l", cfg.l}};
  BranchingResult b = branchingCheck(cfg.M, cfg.n, cfg.l);
  run.body["lhs"] = b.lhs;
  run.body["terms"] = b.terms;
  run.body["identity"] = b.toString();
  run.body["suites"] = json::array();
  CheckReport r{"branching", {}};
  r.add(b.toString(), b.ok());
  run.suite(r);
  return run;
}

Run cmdReport(const Config& cfg) {
  requireKMax(cfg.kMax);
  Run run;
  run.body["parameters"] = parametersDn(cfg);
  run.body["parameters"]["kmax"] = cfg.kMax;
  run.body["parameters"]["pairs"] = cfg.pairs;
  run.body["parameters"]["seed"] = cfg.seed;
  run.body["parameters"]["jobs"] = cfg.jobs;
  json rows = json::array();
  for (const auto& level : spectrumTable(cfg.D, cfg.n, cfg.kMax)) rows.push_back(spectrumRow(level));
  run.body["spectrum"] = rows;
  run.body["suites"] = json::array();

  GeneratorTable table = buildTable(cfg);
  runAlgebraSuites(cfg, table, run);
  runStateSuites(cfg, table, run);

  CheckReport radial{"radial equation", {}};
  for (int l = 0; l <= cfg.kMax; ++l) {
    for (int j = 0; l + j <= cfg.kMax; ++j) {
      radial.add("residual l=" + std::to_string(l) + " j=" + std::to_string(j),
                 radialResidual(l, j, cfg.D, cfg.n).isZero());
    }
  }
  run.suite(radial);

  // The bound states carry the symmetric-tensor representation one size up.
  const int M = cfg.D + 1;
  runSymTensorSuites(M, cfg.n, cfg.kMax, pairingFault(cfg), run);
  CheckReport bridge{"degeneracy = harmonic dimension", {}};
  for (int l = 0; l <= cfg.kMax; ++l) {
    bridge.add("level " + std::to_string(l), degeneracy(l, cfg.D, cfg.n) == harmonicDim(M, cfg.n, l));
  }
  run.suite(bridge);
  return run;
}

int emit(const Config& cfg, Run& run, const std::string& command, double seconds) {
  std::string text;
  if (!run.csv.empty()) {
    for (const auto& line : run.csv) text += line + "\n";
    for (const auto& s : run.body["suites"]) {
      for (const auto& f : s["failed"]) std::cerr << "FAIL " << s["name"].get<std::string>() << ": " << f.get<std::string>() << "\n";
    }
  } else {
    std::size_t checks = 0, failures = 0;
    for (const auto& s : run.body["suites"]) {
      checks += s["checks"].get<std::size_t>();
      failures += s["failures"].get<std::size_t>();
    }
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = command;
    for (auto it = run.body.begin(); it != run.body.end(); ++it) doc[it.key()] = it.value();
    doc["summary"] = {{"checks", checks}, {"failures", failures}, {"status", run.failed ? "fail" : "pass"}};
    doc["timing"] = {{"wall_seconds", seconds}};
    text = doc.dump(2) + "\n";
  }
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(cfg.out);
    if (!f) throw UsageError("cannot open output file " + cfg.out);
    f << text;
  }
  return run.failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the Kepler dynamical symmetry on superspace"};
  app.require_subcommand(1);
  Config cfg;
  std::string fault;

  auto addCommon = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "number of odd coordinate pairs")->check(CLI::NonNegativeNumber);
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out, "write the report to PATH");
    sub->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("--inject-fault{generator}", fault,
                  "testing hook: generator (J_-1 + 1), pairing (box*) or rate (ground state)")
        ->check(CLI::IsMember({"generator", "pairing", "rate"}));
  };
  auto addD = [&](CLI::App* sub) {
    sub->add_option("--D", cfg.D, "number of even coordinates");
    sub->add_option("--pairs", cfg.pairs, "commutator pairs")->check(CLI::IsMember({"all", "sample"}));
    sub->add_option("--seed", cfg.seed, "seed for sampled sweeps");
  };
  auto addM = [&](CLI::App* sub) {
    sub->add_option("--M", cfg.M, "even dimension of V");
    sub->add_option("--l", cfg.l, "tensor degree");
  };

  auto* verify = app.add_subcommand("verify", "algebra, K^2, grading and parabolic suites");
  addCommon(verify);
  addD(verify);
  auto* spectrum = app.add_subcommand("spectrum", "energies and degeneracies");
  addCommon(spectrum);
  spectrum->add_option("--D", cfg.D, "number of even coordinates");
  spectrum->add_option("--kmax", cfg.kMax, "highest level");
  spectrum->add_flag("--check-states", cfg.checkStates, "construct and verify the eigenstates");
  auto* harmonic = app.add_subcommand("harmonic", "harmonic decomposition of S(V)_l");
  addCommon(harmonic);
  addM(harmonic);
  auto* branching = app.add_subcommand("branching", "branching rule osp(M|2n) to osp(M-1|2n)");
  addCommon(branching);
  addM(branching);
  auto* report = app.add_subcommand("report", "every suite at the configured sizes");
  addCommon(report);
  addD(report);
  report->add_option("--kmax", cfg.kMax, "highest level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (fault == "generator") cfg.fault = Fault::Generator;
  if (fault == "pairing") cfg.fault = Fault::Pairing;
  if (fault == "rate") cfg.fault = Fault::Rate;

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (cfg.format == "csv" && command != "spectrum") throw UsageError("csv output is only available for spectrum");
    const auto start = std::chrono::steady_clock::now();
    Run run;
    if (command == "verify") run = cmdVerify(cfg);
    else if (command == "spectrum") run = cmdSpectrum(cfg);
    else if (command == "harmonic") run = cmdHarmonic(cfg);
    else if (command == "branching") run = cmdBranching(cfg);
    else run = cmdReport(cfg);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit(cfg, run, command, seconds);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
