#include "symq/adapt.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "symq/spectra.hpp"

namespace symq {

namespace {

void check_spec(const SymmetrySpec& spec) {
  if (spec.eigenvalues.size() < 2) {
    throw ContractError("symmetry spec needs at least two eigenvalues");
  }
  for (std::size_t i = 0; i + 1 < spec.eigenvalues.size(); ++i) {
    if (!(spec.eigenvalues[i] < spec.eigenvalues[i + 1])) {
      throw ContractError(
          "symmetry spec eigenvalues must be ascending and distinct");
    }
  }
  const bool member =
      std::any_of(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                  [&](double a) { return std::abs(a - spec.target) < 1e-9; });
  if (!member) {
    throw ContractError("target is not an eigenvalue of the symmetry spec");
  }
}

void check_commutes(const PauliSum& h, const PauliSum& a, const char* what) {
  const double residual = commutator_norm(h, a);
  if (residual > kCommutatorTolerance) {
    throw ContractError(std::string(what) +
                        ": operators do not commute, residual norm " +
                        std::to_string(residual));
  }
}

// (A - target)^2, kept at full precision.
PauliSum squared_deviation(const PauliSum& a, double target) {
  PauliSum shifted = a;
  shifted += PauliSum::identity(a.n_qubits(), -target);
  return sum_multiply(shifted, shifted, 0.0);
}

}  // namespace

std::string to_string(SymmetryKind kind) {
  return kind == SymmetryKind::number ? "number" : "spin";
}

SymmetrySpec make_number_spec(PauliSum number_op, double target) {
  const int n_so = number_op.n_qubits();
  std::vector<double> eigenvalues;
  for (int n = 0; n <= n_so; ++n) {
    eigenvalues.push_back(double(n));
  }
  SymmetrySpec spec{std::move(number_op), std::move(eigenvalues), target,
                    SymmetryKind::number};
  check_spec(spec);
  return spec;
}

SymmetrySpec make_spin_spec(PauliSum s2_op, double target_s) {
  const int n_so = s2_op.n_qubits();
  std::vector<double> eigenvalues;
  for (int twice_s = 0; twice_s <= n_so / 2; ++twice_s) {
    const double s = 0.5 * twice_s;
    eigenvalues.push_back(s * (s + 1.0));
  }
  SymmetrySpec spec{std::move(s2_op), std::move(eigenvalues),
                    target_s * (target_s + 1.0), SymmetryKind::spin};
  check_spec(spec);
  return spec;
}

std::string to_string(AdaptMethod method) {
  switch (method) {
    case AdaptMethod::lowdin_php:
      return "php";
    case AdaptMethod::lowdin_hp:
      return "hp";
    case AdaptMethod::shift:
      return "shift";
    case AdaptMethod::reflection:
      return "reflect";
    case AdaptMethod::reflection_singlet:
      return "reflect-singlet";
    case AdaptMethod::sum_over_states:
      return "sos";
  }
  return "?";
}

AdaptMethod adapt_method_from_string(const std::string& name) {
  if (name == "php") return AdaptMethod::lowdin_php;
  if (name == "hp") return AdaptMethod::lowdin_hp;
  if (name == "shift") return AdaptMethod::shift;
  if (name == "reflect") return AdaptMethod::reflection;
  if (name == "reflect-singlet") return AdaptMethod::reflection_singlet;
  if (name == "sos") return AdaptMethod::sum_over_states;
  throw ContractError("unknown adaptation method '" + name + "'");
}

double commutator_norm(const PauliSum& a, const PauliSum& b) {
  PauliSum comm = sum_multiply(a, b, 0.0);
  comm -= sum_multiply(b, a, 0.0);
  return comm.coefficient_norm();
}

PauliSum lowdin_projector(const SymmetrySpec& spec, double threshold) {
  check_spec(spec);
  const int n = spec.op.n_qubits();

  std::vector<double> others;
  for (double a : spec.eigenvalues) {
    if (std::abs(a - spec.target) >= 1e-9) {
      others.push_back(a);
    }
  }
  // Closest factors first keeps the intermediate sums smallest.
  std::stable_sort(others.begin(), others.end(), [&](double x, double y) {
    return std::abs(x - spec.target) < std::abs(y - spec.target);
  });

  PauliSum projector = PauliSum::identity(n);
  for (double a_j : others) {
    PauliSum factor = spec.op;
    factor += PauliSum::identity(n, -a_j);
    factor *= complex{1.0 / (spec.target - a_j), 0.0};
    projector = sum_multiply(projector, factor, threshold);
  }
  return projector;
}

AdaptedOperator project_hamiltonian(const PauliSum& h,
                                    const SymmetrySpec& spec,
                                    ProjectionForm form, double threshold) {
  const PauliSum projector = lowdin_projector(spec, threshold);
  if (form == ProjectionForm::hp) {
    check_commutes(h, spec.op, "project_hamiltonian(HP)");
    return {AdaptMethod::lowdin_hp, sum_multiply(h, projector, threshold),
            spec.kind, spec.target, 0.0, threshold};
  }
  return {AdaptMethod::lowdin_php,
          sum_multiply(sum_multiply(projector, h, threshold), projector,
                       threshold),
          spec.kind, spec.target, 0.0, threshold};
}

AdaptedOperator shift_operator(const PauliSum& h, const SymmetrySpec& spec,
                               double mu, double threshold) {
  check_spec(spec);
  if (!(mu > 0.0)) {
    throw ContractError("shift_operator: penalty mu must be positive");
  }
  PauliSum penalty = squared_deviation(spec.op, spec.target);
  penalty *= complex{0.5 * mu, 0.0};
  PauliSum result = h;
  result += penalty;
  return {AdaptMethod::shift, simplify(result, threshold),
          spec.kind,          spec.target,
          mu,                 threshold};
}

AdaptedOperator reflect_operator(const PauliSum& h, const SymmetrySpec& spec,
                                 double threshold) {
  check_spec(spec);
  check_commutes(h, spec.op, "reflect_operator");
  const PauliSum dev2 = squared_deviation(spec.op, spec.target);
  PauliSum result = h;
  result -= sum_multiply(h, dev2, 0.0);
  result -= sum_multiply(dev2, h, 0.0);
  return {AdaptMethod::reflection, simplify(result, threshold),
          spec.kind,               spec.target,
          0.0,                     threshold};
}

AdaptedOperator reflect_singlet(const PauliSum& h, const PauliSum& s2_op,
                                double threshold) {
  check_commutes(h, s2_op, "reflect_singlet");
  PauliSum result = h;
  result -= sum_multiply(h, s2_op, 0.0);
  result -= sum_multiply(s2_op, h, 0.0);
  return {AdaptMethod::reflection_singlet, simplify(result, threshold),
          SymmetryKind::spin,              0.0,
          0.0,                             threshold};
}

AdaptedOperator sum_over_states(const PauliSum& h, const SymmetrySpec& spec,
                                double threshold, int dense_limit) {
  check_spec(spec);
  const int n = h.n_qubits();
  if (n > dense_limit) {
    throw CapacityError("sum_over_states: " + std::to_string(n) +
                        " qubits exceeds dense limit " +
                        std::to_string(dense_limit));
  }

  EigenSystem sys = diagonalize(h, dense_limit);
  const PauliSum ops[] = {spec.op};
  sys = resolve_degeneracies(std::move(sys), ops);

  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXcd selected = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index k = 0; k < sys.values.size(); ++k) {
    const StateVector psi(n, sys.vectors.col(k));
    const double label = expectation(spec.op, psi).real();
    const bool near_any =
        std::any_of(spec.eigenvalues.begin(), spec.eigenvalues.end(),
                    [&](double a) { return std::abs(label - a) < 1e-6; });
    if (!near_any) {
      throw LabelingError(
          "sum_over_states: eigenvector " + std::to_string(k) +
          " has symmetry expectation " + std::to_string(label) +
          " away from every eigenvalue after degeneracy resolution");
    }
    if (std::abs(label - spec.target) < 1e-6) {
      selected += sys.values(k) * sys.vectors.col(k) *
                  sys.vectors.col(k).adjoint();
    }
  }

  // Decompose over Pauli words: c_W = tr(W^dag M) / 2^n, scanning one
  // diagonal stripe of M per word.
  std::vector<PauliSum::Term> terms;
  for (std::uint64_t x = 0; x < dim; ++x) {
    for (std::uint64_t z = 0; z < dim; ++z) {
      complex trace{0.0, 0.0};
      for (std::uint64_t t = 0; t < dim; ++t) {
        const complex entry = selected(Eigen::Index(t ^ x), Eigen::Index(t));
        trace += (std::popcount(z & (t ^ x)) & 1) ? -entry : entry;
      }
      const PauliWord w{n, x, z};
      complex c = trace / double(dim);
      if (w.y_count() & 1) {
        c = -c;  // undo the dagger sign of the word
      }
      if (std::abs(c) >= threshold) {
        terms.emplace_back(w, c);
      }
    }
  }

  return {AdaptMethod::sum_over_states, PauliSum::from_terms(n, terms),
          spec.kind,                     spec.target,
          0.0,                           threshold};
}

}  // namespace symq
