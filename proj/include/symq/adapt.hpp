#pragma once

#include <string>
#include <vector>

#include "symq/pauli.hpp"

namespace symq {

// Residual norm below which two operators count as commuting. Measured on
// the coefficient 2-norm of the commutator, i.e. the matrix Frobenius norm
// scaled by 2^(-n/2).
inline constexpr double kCommutatorTolerance = 1e-8;

enum class SymmetryKind { number, spin };

std::string to_string(SymmetryKind kind);

// A symmetry operator together with its complete eigenvalue list and the
// targeted eigenvalue. All other eigenvalues must be known in advance for
// the projector construction.
struct SymmetrySpec {
  PauliSum op;
  std::vector<double> eigenvalues;  // ascending, distinct
  double target = 0.0;
  SymmetryKind kind = SymmetryKind::number;
};

// Electron-number spec: eigenvalues 0..n_so.
SymmetrySpec make_number_spec(PauliSum number_op, double target);

// Total-spin spec: eigenvalues S(S+1) for S = 0, 1/2, ..., n_so/4. The
// target is given as S, not S(S+1).
SymmetrySpec make_spin_spec(PauliSum s2_op, double target_s);

enum class AdaptMethod {
  lowdin_php,
  lowdin_hp,
  shift,
  reflection,
  reflection_singlet,
  sum_over_states,
};

std::string to_string(AdaptMethod method);
AdaptMethod adapt_method_from_string(const std::string& name);

struct AdaptedOperator {
  AdaptMethod method;
  PauliSum result;
  SymmetryKind symmetry = SymmetryKind::number;
  double target = 0.0;   // targeted eigenvalue of the symmetry operator
  double mu = 0.0;       // penalty strength, shift method only
  double threshold = kDefaultThreshold;
};

double commutator_norm(const PauliSum& a, const PauliSum& b);

// Product formula projector onto the target eigenspace: factors
// (A - a_j)/(a_i - a_j) over every other eigenvalue, multiplied in
// ascending |a_j - a_i| order with simplification after each factor.
PauliSum lowdin_projector(const SymmetrySpec& spec,
                          double threshold = kDefaultThreshold);

enum class ProjectionForm { php, hp };

// P H P, or H P when H commutes with the symmetry operator (checked).
AdaptedOperator project_hamiltonian(const PauliSum& h,
                                    const SymmetrySpec& spec,
                                    ProjectionForm form = ProjectionForm::php,
                                    double threshold = kDefaultThreshold);

// H + (mu/2)(A - target)^2: wrong-symmetry states move up by
// (mu/2)(a_k - target)^2.
AdaptedOperator shift_operator(const PauliSum& h, const SymmetrySpec& spec,
                               double mu,
                               double threshold = kDefaultThreshold);

// H - H(A - target)^2 - (A - target)^2 H: wrong-symmetry eigenvalues are
// scaled by 1 - 2(a_k - target)^2.
AdaptedOperator reflect_operator(const PauliSum& h, const SymmetrySpec& spec,
                                 double threshold = kDefaultThreshold);

// The singlet-only linear form H - H S^2 - S^2 H.
AdaptedOperator reflect_singlet(const PauliSum& h, const PauliSum& s2_op,
                                double threshold = kDefaultThreshold);

// Reference construction: diagonalize H, keep target-sector eigenpairs,
// rebuild sum E_k |psi_k><psi_k| and decompose it over Pauli words.
AdaptedOperator sum_over_states(const PauliSum& h, const SymmetrySpec& spec,
                                double threshold = kDefaultThreshold,
                                int dense_limit = kDefaultDenseLimit);

}  // namespace symq
