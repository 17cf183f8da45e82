// Command-line front end: build qubit operators from an FCIDUMP, produce
// symmetry-adapted variants, compare spectra, and run the verification
// suite. Exit codes: 0 success, 2 usage, 3 parse, 4 contract/capacity,
// 5 verification mismatch.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Eigenvalues>

#include "symq/adapt.hpp"
#include "symq/errors.hpp"
#include "symq/fermion.hpp"
#include "symq/mapping.hpp"
#include "symq/pauli.hpp"
#include "symq/serialize.hpp"
#include "symq/spectra.hpp"

namespace {

using namespace symq;

struct RunConfig {
  std::string fcidump;
  std::string mapping = "jw";
  std::string ordering = "interleaved";
  double threshold = kDefaultThreshold;
  double mu = 16.0;
  std::string symmetry = "number";
  std::optional<double> target;
  std::vector<std::string> methods;
  bool include_vnn = false;
  int dense_limit = kDefaultDenseLimit;
  std::string out;
  std::string format = "table";
};

struct BuiltOperators {
  IntegralSet ints;
  int n_so;
  PauliSum h;
  PauliSum n_op;
  PauliSum s2;
};

SpinOrbitalOrdering ordering_from_string(const std::string& name) {
  if (name == "interleaved") {
    return SpinOrbitalOrdering::interleaved;
  }
  if (name == "blocked") {
    return SpinOrbitalOrdering::blocked;
  }
  throw ContractError("unknown spin-orbital ordering '" + name + "'");
}

BuiltOperators build_operators(const RunConfig& config) {
  IntegralSet ints = load_fcidump_file(config.fcidump);
  const auto ordering = ordering_from_string(config.ordering);
  const MappingKind kind = mapping_from_string(config.mapping);
  const int n_so = 2 * ints.n_orbitals();
  const FermionOperator h_f =
      build_hamiltonian(ints, ordering, config.include_vnn);
  BuiltOperators built{
      std::move(ints), n_so,
      map_operator(h_f, kind, config.threshold),
      map_operator(build_number_operator(n_so), kind, config.threshold),
      map_operator(build_s2_operator(n_so, ordering), kind,
                   config.threshold)};
  return built;
}

Provenance base_provenance(const RunConfig& config) {
  Provenance prov;
  prov.mapping = config.mapping;
  prov.ordering = config.ordering;
  prov.fixture = config.fcidump;
  return prov;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw ContractError("cannot write '" + path + "'");
  }
  out << text;
}

std::filesystem::path out_dir(const RunConfig& config) {
  std::filesystem::path dir = config.out.empty() ? "." : config.out;
  std::filesystem::create_directories(dir);
  return dir;
}

SymmetrySpec make_spec(const RunConfig& config, const BuiltOperators& built) {
  if (config.symmetry == "number") {
    const double target =
        config.target.value_or(double(built.ints.n_electrons));
    return make_number_spec(built.n_op, target);
  }
  if (config.symmetry == "spin") {
    return make_spin_spec(built.s2, config.target.value_or(0.0));
  }
  throw ContractError("unknown symmetry '" + config.symmetry + "'");
}

AdaptedOperator run_method(const std::string& method,
                           const BuiltOperators& built,
                           const SymmetrySpec& spec,
                           const RunConfig& config) {
  switch (adapt_method_from_string(method)) {
    case AdaptMethod::lowdin_php:
      return project_hamiltonian(built.h, spec, ProjectionForm::php,
                                 config.threshold);
    case AdaptMethod::lowdin_hp:
      return project_hamiltonian(built.h, spec, ProjectionForm::hp,
                                 config.threshold);
    case AdaptMethod::shift:
      return shift_operator(built.h, spec, config.mu, config.threshold);
    case AdaptMethod::reflection:
      return reflect_operator(built.h, spec, config.threshold);
    case AdaptMethod::reflection_singlet:
      return reflect_singlet(built.h, built.s2, config.threshold);
    case AdaptMethod::sum_over_states:
      return sum_over_states(built.h, spec, config.threshold,
                             config.dense_limit);
  }
  throw ContractError("unknown adaptation method '" + method + "'");
}

int cmd_build(const RunConfig& config) {
  const BuiltOperators built = build_operators(config);
  const auto dir = out_dir(config);

  const std::pair<const char*, const PauliSum*> outputs[] = {
      {"hamiltonian", &built.h},
      {"number", &built.n_op},
      {"spin_squared", &built.s2}};
  for (const auto& [name, op] : outputs) {
    Provenance prov = base_provenance(config);
    prov.method = name;
    prov.symmetry = "";
    AdaptedOperator wrapped{AdaptMethod::sum_over_states, *op,
                            SymmetryKind::number, 0.0, 0.0,
                            config.threshold};
    std::string text = operator_to_json(wrapped, prov);
    write_file((dir / (std::string(name) + ".json")).string(), text);
  }
  std::printf("fcidump: %s\n", config.fcidump.c_str());
  std::printf("qubits: %d (mapping %s, ordering %s)\n", built.n_so,
              config.mapping.c_str(), config.ordering.c_str());
  std::printf("v_nn: %.6f hartree%s\n", built.ints.v_nn,
              config.include_vnn ? " (included)" : " (excluded)");
  std::printf("threshold: %g\n", config.threshold);
  std::printf("terms: H=%zu N=%zu S2=%zu\n", built.h.term_count(),
              built.n_op.term_count(), built.s2.term_count());
  return 0;
}

int cmd_adapt(const RunConfig& config) {
  const BuiltOperators built = build_operators(config);
  const auto dir = out_dir(config);

  const auto emit = [&](const std::string& method, const SymmetrySpec& spec,
                        const std::string& stem) {
    const AdaptedOperator adapted = run_method(method, built, spec, config);
    Provenance prov = base_provenance(config);
    prov.method = to_string(adapted.method);
    prov.symmetry = to_string(adapted.symmetry);
    prov.target = adapted.target;
    if (adapted.method == AdaptMethod::shift) {
      prov.mu = adapted.mu;
    }
    write_file((dir / (stem + ".json")).string(),
               operator_to_json(adapted, prov));
    return adapted.result.term_count();
  };

  if (!config.methods.empty()) {
    const SymmetrySpec spec = make_spec(config, built);
    for (const auto& method : config.methods) {
      const std::string stem = "adapted_" + config.symmetry + "_" +
                               std::to_string(spec.target).substr(0, 4) +
                               "_" + method;
      const std::size_t count = emit(method, spec, stem);
      std::printf("%-16s %-8s target=%-6g terms=%zu\n", method.c_str(),
                  config.symmetry.c_str(), spec.target, count);
    }
    return 0;
  }

  // Full grid: three electron-number rows and two spin rows against the
  // projected, shifted, and reflected operators.
  const int n0 = built.ints.n_electrons;
  std::printf("%-8s %6s %6s %6s\n", "", "PHP", "shift", "reflect");
  struct Row {
    const char* name;
    SymmetrySpec spec;
    bool singlet_form;
  };
  std::vector<Row> rows;
  rows.push_back({"neutral", make_number_spec(built.n_op, n0), false});
  rows.push_back({"cation", make_number_spec(built.n_op, n0 - 1), false});
  rows.push_back({"anion", make_number_spec(built.n_op, n0 + 1), false});
  rows.push_back({"singlet", make_spin_spec(built.s2, 0.0), true});
  rows.push_back({"triplet", make_spin_spec(built.s2, 1.0), false});
  for (const auto& row : rows) {
    const bool spin = row.spec.kind == SymmetryKind::spin;
    const std::string stem_base =
        std::string("adapted_") + (spin ? "spin_" : "number_") +
        row.name;
    const std::size_t php = emit("php", row.spec, stem_base + "_php");
    const std::size_t l = emit("shift", row.spec, stem_base + "_shift");
    const std::size_t r =
        emit(row.singlet_form ? "reflect-singlet" : "reflect", row.spec,
             stem_base + "_reflect");
    std::printf("%-8s %6zu %6zu %6zu\n", row.name, php, l, r);
  }
  return 0;
}

std::vector<double> sorted_eigenvalues(const PauliSum& op, int dense_limit) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      to_matrix(op, dense_limit), Eigen::EigenvaluesOnly);
  return {solver.eigenvalues().data(),
          solver.eigenvalues().data() + solver.eigenvalues().size()};
}

int cmd_spectra(const RunConfig& config) {
  RunConfig local = config;
  if (local.methods.empty()) {
    local.methods = {"php", "shift", "reflect"};
  }
  const BuiltOperators built = build_operators(local);
  const SymmetrySpec spec = make_spec(local, built);
  const LabeledSpectrum original =
      label_spectrum(built.h, built.n_op, built.s2, local.dense_limit);

  // Reflection moves wrong-symmetry states to -E(2 delta^2 - 1); that only
  // lands above zero when the affected states sit below zero.
  bool positive_nontarget = false;
  for (const auto& level : original.levels) {
    const double value = spec.kind == SymmetryKind::number
                             ? level.n_electrons
                             : level.spin * (level.spin + 1.0);
    if (std::abs(value - spec.target) > 1e-6 && level.energy > 0.0) {
      positive_nontarget = true;
    }
  }

  std::vector<SpectrumColumn> columns;
  for (const auto& method : local.methods) {
    if ((method == "reflect" || method == "reflect-singlet") &&
        positive_nontarget) {
      std::fprintf(stderr,
                   "warning: non-target states with positive energy exist; "
                   "reflection may pull them below zero\n");
    }
    const AdaptedOperator adapted = run_method(method, built, spec, local);
    const std::vector<double> evals =
        sorted_eigenvalues(adapted.result, local.dense_limit);
    const SpectrumMatchReport report = compare_spectra(
        original, evals, spec, adapted.method, adapted.mu);
    columns.push_back(make_column(method, evals, report));
  }

  Provenance prov = base_provenance(local);
  prov.symmetry = to_string(spec.kind);
  prov.target = spec.target;
  prov.mu = local.mu;
  const std::string table = render_spectrum_table(original, columns);
  const std::string json = spectrum_to_json(original, columns, prov);
  if (local.format == "json") {
    std::fputs(json.c_str(), stdout);
  } else {
    std::fputs(table.c_str(), stdout);
  }
  if (!local.out.empty()) {
    write_file(local.out, json);
  }
  return 0;
}

struct CheckReporter {
  int failures = 0;
  void operator()(const std::string& name, bool ok, double value,
                  double bound) {
    std::printf("%-52s %s  (%.3e, bound %.0e)\n", name.c_str(),
                ok ? "PASS" : "FAIL", value, bound);
    if (!ok) {
      ++failures;
    }
  }
};

int cmd_verify(const RunConfig& config) {
  const BuiltOperators built = build_operators(config);
  CheckReporter check;

  const double comm_n = commutator_norm(built.h, built.n_op);
  check("[H, N] residual", comm_n < 1e-10, comm_n, 1e-10);
  const double comm_s = commutator_norm(built.h, built.s2);
  check("[H, S^2] residual", comm_s < 1e-10, comm_s, 1e-10);

  const auto ordering = ordering_from_string(config.ordering);
  const FermionOperator h_f =
      build_hamiltonian(built.ints, ordering, config.include_vnn);
  const IsospectralityReport iso = verify_isospectral(
      h_f,
      {MappingKind::jordan_wigner, MappingKind::parity,
       MappingKind::bravyi_kitaev},
      config.dense_limit);
  check("isospectrality across jw/parity/bk", iso.consistent,
        iso.max_deviation, 1e-8);

  const SymmetrySpec spec = make_spec(config, built);
  const PauliSum projector = lowdin_projector(spec, config.threshold);
  const Eigen::MatrixXcd p = to_matrix(projector, config.dense_limit);
  const double idem = (p * p - p).norm();
  check("lowdin projector idempotency", idem < 1e-8, idem, 1e-8);

  const AdaptedOperator php =
      project_hamiltonian(built.h, spec, ProjectionForm::php,
                          config.threshold);
  const AdaptedOperator sos = sum_over_states(built.h, spec,
                                              config.threshold,
                                              config.dense_limit);
  const double sos_dev =
      (to_matrix(php.result, config.dense_limit) -
       to_matrix(sos.result, config.dense_limit)).cwiseAbs().maxCoeff();
  check("projection equals sum-over-states", sos_dev < 1e-8, sos_dev, 1e-8);

  std::mt19937 rng(20240815);
  std::normal_distribution<double> gauss;
  const AdaptedOperator shifted =
      shift_operator(built.h, spec, config.mu, config.threshold);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXcd amps(Eigen::Index(1) << built.n_so);
    for (Eigen::Index i = 0; i < amps.size(); ++i) {
      amps(i) = complex{gauss(rng), gauss(rng)};
    }
    const StateVector psi = StateVector(built.n_so, amps).normalized();
    const double lhs = expectation(shifted.result, psi).real();
    const double rhs =
        expectation(built.h, psi).real() +
        0.5 * config.mu * variance(spec.op, psi) +
        0.5 * config.mu * std::pow(expectation(spec.op, psi).real() -
                                       spec.target,
                                   2);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  check("penalty expectation identity (200 states)", worst < 1e-10, worst,
        1e-10);

  const LabeledSpectrum original =
      label_spectrum(built.h, built.n_op, built.s2, config.dense_limit);
  for (const char* method : {"php", "shift", "reflect"}) {
    const AdaptedOperator adapted = run_method(method, built, spec, config);
    const std::vector<double> evals =
        sorted_eigenvalues(adapted.result, config.dense_limit);
    try {
      const SpectrumMatchReport report = compare_spectra(
          original, evals, spec, adapted.method, adapted.mu);
      check(std::string("spectrum partition: ") + method,
            report.max_prediction_deviation < 1e-6,
            report.max_prediction_deviation, 1e-6);
    } catch (const MismatchError& e) {
      check(std::string("spectrum partition: ") + method, false, 1.0, 1e-6);
    }
  }

  return check.failures == 0 ? 0 : 5;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symmetry-adapted qubit Hamiltonians from electron "
               "integrals"};
  app.require_subcommand(1);
  app.set_config("--config");

  RunConfig config;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--fcidump", config.fcidump, "FCIDUMP input file")
        ->required();
    cmd->add_option("--mapping", config.mapping,
                    "fermion-to-qubit mapping: jw|parity|bk");
    cmd->add_option("--ordering", config.ordering,
                    "spin-orbital ordering: interleaved|blocked");
    cmd->add_option("--threshold", config.threshold,
                    "coefficient pruning threshold");
    cmd->add_option("--dense-limit", config.dense_limit,
                    "largest qubit count for dense matrices");
    cmd->add_flag("--include-vnn", config.include_vnn,
                  "add nuclear repulsion to the Hamiltonian");
  };

  CLI::App* build = app.add_subcommand(
      "build", "construct qubit H, N, and S^2 operators");
  add_common(build);
  build->add_option("--out", config.out, "output directory");

  CLI::App* adapt = app.add_subcommand(
      "adapt", "produce symmetry-adapted operators");
  add_common(adapt);
  adapt->add_option("--symmetry", config.symmetry, "number|spin");
  adapt->add_option("--target", config.target,
                    "target electron count or total spin S");
  adapt->add_option("--method", config.methods,
                    "php|hp|shift|reflect|reflect-singlet|sos (repeatable; "
                    "omit for the full grid)");
  adapt->add_option("--mu", config.mu, "penalty strength for shift");
  adapt->add_option("--out", config.out, "output directory");

  CLI::App* spectra = app.add_subcommand(
      "spectra", "diagonalize and compare original vs adapted spectra");
  add_common(spectra);
  spectra->add_option("--symmetry", config.symmetry, "number|spin");
  spectra->add_option("--target", config.target,
                      "target electron count or total spin S");
  spectra->add_option("--method", config.methods,
                      "columns to include (default php,shift,reflect)");
  spectra->add_option("--mu", config.mu, "penalty strength for shift");
  spectra->add_option("--out", config.out, "write the JSON report here");
  spectra->add_option("--format", config.format, "stdout format: table|json");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the property checks against a fixture");
  add_common(verify);
  verify->add_option("--symmetry", config.symmetry, "number|spin");
  verify->add_option("--target", config.target,
                     "target electron count or total spin S");
  verify->add_option("--mu", config.mu, "penalty strength for shift");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) {
      return cmd_build(config);
    }
    if (adapt->parsed()) {
      return cmd_adapt(config);
    }
    if (spectra->parsed()) {
      return cmd_spectra(config);
    }
    if (verify->parsed()) {
      return cmd_verify(config);
    }
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const DimensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const ContractError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const CapacityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const LabelingError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const MismatchError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  }
  return 2;
}
