#include "symq/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "symq/adapt.hpp"

namespace symq {

namespace {

// Contiguous index ranges [begin, end) of nearly equal values.
std::vector<std::pair<Eigen::Index, Eigen::Index>> group_ranges(
    const Eigen::VectorXd& values, double gap) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;
  Eigen::Index begin = 0;
  for (Eigen::Index k = 1; k <= values.size(); ++k) {
    if (k == values.size() || values(k) - values(k - 1) > gap) {
      ranges.emplace_back(begin, k);
      begin = k;
    }
  }
  return ranges;
}

// Diagonalizes op restricted to the given eigenvector columns and rotates
// them in place; returns the restricted eigenvalues.
Eigen::VectorXd rotate_block(Eigen::MatrixXcd& vectors, Eigen::Index begin,
                             Eigen::Index end, const PauliSum& op) {
  const Eigen::Index size = end - begin;
  auto block = vectors.middleCols(begin, size);
  Eigen::MatrixXcd image(vectors.rows(), size);
  const int n = op.n_qubits();
  for (Eigen::Index c = 0; c < size; ++c) {
    image.col(c) = apply(op, StateVector(n, block.col(c))).amplitudes();
  }
  Eigen::MatrixXcd restricted = block.adjoint() * image;
  // Symmetrize away rounding before the dense solve.
  restricted = 0.5 * (restricted + restricted.adjoint().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(restricted);
  block = (block * solver.eigenvectors()).eval();
  return solver.eigenvalues();
}

double solve_spin(double s2_value) {
  return 0.5 * (std::sqrt(std::max(0.0, 1.0 + 4.0 * s2_value)) - 1.0);
}

}  // namespace

EigenSystem diagonalize(const PauliSum& a, int dense_limit) {
  if (!a.is_hermitian()) {
    throw ContractError("diagonalize: operator is not Hermitian");
  }
  const Eigen::MatrixXcd m = to_matrix(a, dense_limit);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ContractError("diagonalize: eigensolver failed to converge");
  }
  EigenSystem sys{solver.eigenvalues(), solver.eigenvectors()};
  const double residual =
      (m * sys.vectors - sys.vectors * sys.values.asDiagonal()).norm();
  if (residual > 1e-9 * std::max(1.0, sys.values.cwiseAbs().maxCoeff())) {
    throw ContractError("diagonalize: reconstruction residual " +
                        std::to_string(residual));
  }
  return sys;
}

EigenSystem resolve_degeneracies(EigenSystem sys,
                                 std::span<const PauliSum> ops, double gap) {
  if (ops.empty()) {
    return sys;
  }
  // Rotate by the first operator inside each degenerate energy group, then
  // recurse on blocks that are still degenerate in that operator's value.
  for (const auto& [begin, end] : group_ranges(sys.values, gap)) {
    if (end - begin < 2) {
      continue;
    }
    const Eigen::VectorXd labels =
        rotate_block(sys.vectors, begin, end, ops[0]);
    for (const auto& [sub_begin, sub_end] : group_ranges(labels, 1e-6)) {
      if (sub_end - sub_begin < 2) {
        continue;
      }
      for (std::size_t next = 1; next < ops.size(); ++next) {
        rotate_block(sys.vectors, begin + sub_begin, begin + sub_end,
                     ops[next]);
      }
    }
  }
  return sys;
}

std::vector<int> LabeledSpectrum::counts_by_n(int n_max) const {
  std::vector<int> counts(n_max + 1, 0);
  for (const auto& level : levels) {
    const int n = int(std::lround(level.n_electrons));
    if (n >= 0 && n <= n_max) {
      ++counts[n];
    }
  }
  return counts;
}

std::vector<int> LabeledSpectrum::counts_by_spin(double s_max) const {
  const int slots = int(std::lround(2.0 * s_max)) + 1;
  std::vector<int> counts(slots, 0);
  for (const auto& level : levels) {
    const int idx = int(std::lround(2.0 * level.spin));
    if (idx >= 0 && idx < slots) {
      ++counts[idx];
    }
  }
  return counts;
}

LabeledSpectrum label_spectrum(const PauliSum& h, const PauliSum& n_op,
                               const PauliSum& s2_op, int dense_limit) {
  for (const auto* pair : {&n_op, &s2_op}) {
    if (commutator_norm(h, *pair) > kCommutatorTolerance) {
      throw ContractError("label_spectrum: symmetry operator does not "
                          "commute with the Hamiltonian");
    }
  }
  if (commutator_norm(n_op, s2_op) > kCommutatorTolerance) {
    throw ContractError("label_spectrum: symmetry operators do not commute");
  }

  EigenSystem sys = diagonalize(h, dense_limit);
  const PauliSum ops[] = {n_op, s2_op};
  sys = resolve_degeneracies(std::move(sys), ops);

  LabeledSpectrum spectrum;
  spectrum.vectors = sys.vectors;
  const auto ranges = group_ranges(sys.values, kDegeneracyGap);
  int group = 0;
  for (const auto& [begin, end] : ranges) {
    for (Eigen::Index k = begin; k < end; ++k) {
      const StateVector psi(h.n_qubits(), sys.vectors.col(k));
      SpectrumLevel level;
      level.energy = sys.values(k);
      level.n_electrons = expectation(n_op, psi).real();
      level.spin = solve_spin(expectation(s2_op, psi).real());
      level.degeneracy_group = group;
      if (std::abs(level.n_electrons - std::lround(level.n_electrons)) >
          1e-6) {
        throw LabelingError("level " + std::to_string(k) +
                            ": <N> = " + std::to_string(level.n_electrons) +
                            " is not near an integer");
      }
      if (std::abs(level.spin - 0.5 * std::lround(2.0 * level.spin)) > 1e-6) {
        throw LabelingError("level " + std::to_string(k) +
                            ": S = " + std::to_string(level.spin) +
                            " is not near a half-integer");
      }
      spectrum.levels.push_back(level);
    }
    ++group;
  }
  return spectrum;
}

double predicted_eigenvalue(double e, double delta, AdaptMethod method,
                            double mu) {
  switch (method) {
    case AdaptMethod::lowdin_php:
    case AdaptMethod::lowdin_hp:
    case AdaptMethod::sum_over_states:
      return delta == 0.0 ? e : 0.0;
    case AdaptMethod::shift:
      return e + 0.5 * mu * delta * delta;
    case AdaptMethod::reflection:
      return e * (1.0 - 2.0 * delta * delta);
    case AdaptMethod::reflection_singlet:
      // delta here is the raw S(S+1) value; the form is linear in S^2.
      return e * (1.0 - 2.0 * delta);
  }
  return 0.0;
}

SpectrumMatchReport compare_spectra(const LabeledSpectrum& original,
                                    std::span<const double> transformed,
                                    const SymmetrySpec& spec,
                                    AdaptMethod method, double mu,
                                    double window) {
  if (original.levels.size() != transformed.size()) {
    throw DimensionError("compare_spectra: spectra have different sizes");
  }
  SpectrumMatchReport report;
  std::vector<bool> taken(transformed.size(), false);

  std::vector<double> predicted;
  predicted.reserve(original.levels.size());
  std::vector<std::string> offenders;

  for (std::size_t k = 0; k < original.levels.size(); ++k) {
    const auto& level = original.levels[k];
    const double raw = spec.kind == SymmetryKind::number
                           ? level.n_electrons
                           : level.spin * (level.spin + 1.0);
    // Snap the near-exact label onto the known eigenvalue list so target
    // membership and deltas are exact.
    double value = spec.eigenvalues.front();
    for (double a : spec.eigenvalues) {
      if (std::abs(a - raw) < std::abs(value - raw)) {
        value = a;
      }
    }
    const double delta = value - spec.target;
    const bool in_target = delta == 0.0;
    predicted.push_back(
        method == AdaptMethod::reflection_singlet
            ? predicted_eigenvalue(level.energy, value, method, mu)
            : predicted_eigenvalue(level.energy, delta, method, mu));

    MatchedLevel row;
    row.original_level = int(k);
    if (in_target) {
      // Nearest untaken transformed level.
      int best = -1;
      double best_dev = window;
      for (std::size_t t = 0; t < transformed.size(); ++t) {
        if (taken[t]) {
          continue;
        }
        const double dev = std::abs(transformed[t] - level.energy);
        if (dev < best_dev) {
          best_dev = dev;
          best = int(t);
        }
      }
      if (best < 0) {
        offenders.push_back("level " + std::to_string(k) + " at " +
                            std::to_string(level.energy));
      } else {
        taken[best] = true;
        row.transformed_level = best;
        row.matched = true;
        row.deviation = best_dev;
        ++report.matched_count;
        report.max_matched_deviation =
            std::max(report.max_matched_deviation, best_dev);
      }
    }
    report.rows.push_back(row);
  }
  report.unmatched_count =
      int(transformed.size()) - report.matched_count;

  if (!offenders.empty()) {
    std::string msg = "compare_spectra: unmatched target-sector levels:";
    for (const auto& o : offenders) {
      msg += " " + o + ";";
    }
    throw MismatchError(msg);
  }

  // Multiset check of the whole transformed spectrum against predictions.
  std::vector<double> sorted_predicted = predicted;
  std::sort(sorted_predicted.begin(), sorted_predicted.end());
  std::vector<double> sorted_transformed(transformed.begin(),
                                         transformed.end());
  std::sort(sorted_transformed.begin(), sorted_transformed.end());
  for (std::size_t k = 0; k < sorted_predicted.size(); ++k) {
    report.max_prediction_deviation =
        std::max(report.max_prediction_deviation,
                 std::abs(sorted_predicted[k] - sorted_transformed[k]));
  }
  return report;
}

SpectrumColumn make_column(const std::string& name,
                           std::span<const double> transformed,
                           const SpectrumMatchReport& report) {
  SpectrumColumn column;
  column.name = name;
  column.values.assign(transformed.begin(), transformed.end());
  column.matched.assign(transformed.size(), 0);
  for (const auto& row : report.rows) {
    if (row.matched && row.transformed_level) {
      column.matched[*row.transformed_level] = 1;
    }
  }
  return column;
}

}  // namespace symq
