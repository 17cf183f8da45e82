#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "symq/pauli.hpp"

namespace symq {

// Energy gap below which eigenvalues are treated as one degenerate group.
inline constexpr double kDegeneracyGap = 1e-9;

struct EigenSystem {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // orthonormal columns
};

// Full dense eigendecomposition of a Hermitian sum; the reconstruction
// residual ||AV - V diag|| is checked below 1e-9.
EigenSystem diagonalize(const PauliSum& a, int dense_limit = kDefaultDenseLimit);

// Rotates eigenvectors inside each degenerate energy group so they also
// diagonalize the given commuting operators, applied in order.
EigenSystem resolve_degeneracies(EigenSystem sys,
                                 std::span<const PauliSum> ops,
                                 double gap = kDegeneracyGap);

struct SpectrumLevel {
  double energy = 0.0;
  double n_electrons = 0.0;  // raw <N>, near-integer
  double spin = 0.0;         // S solved from S(S+1) = <S^2>, near half-integer
  int degeneracy_group = 0;
};

struct LabeledSpectrum {
  std::vector<SpectrumLevel> levels;  // ascending energy
  Eigen::MatrixXcd vectors;           // matching eigenvectors

  std::vector<int> counts_by_n(int n_max) const;
  std::vector<int> counts_by_spin(double s_max) const;
};

// Attaches (N, S) labels to each level of H; the three operators must
// pairwise commute. Degenerate groups are split by N first, then S^2.
LabeledSpectrum label_spectrum(const PauliSum& h, const PauliSum& n_op,
                               const PauliSum& s2_op,
                               int dense_limit = kDefaultDenseLimit);

struct SymmetrySpec;  // defined in adapt.hpp
enum class AdaptMethod;

struct MatchedLevel {
  int original_level = 0;
  std::optional<int> transformed_level;
  bool matched = false;
  double deviation = 0.0;
};

struct SpectrumMatchReport {
  std::vector<MatchedLevel> rows;     // one per original level
  int matched_count = 0;
  int unmatched_count = 0;            // transformed levels not taken
  double max_matched_deviation = 0.0;
  // Sorted multiset comparison of the transformed spectrum against the
  // method's closed-form prediction from the labeled original.
  double max_prediction_deviation = 0.0;
};

// Closed-form eigenvalue of an adapted operator on a joint eigenstate with
// energy e whose symmetry value sits delta away from the target.
double predicted_eigenvalue(double e, double delta, AdaptMethod method,
                            double mu);

SpectrumMatchReport compare_spectra(const LabeledSpectrum& original,
                                    std::span<const double> transformed,
                                    const SymmetrySpec& spec,
                                    AdaptMethod method, double mu = 0.0,
                                    double window = 1e-6);

// One rendered column of a spectrum table: the transformed operator's
// sorted eigenvalues with match flags against the original target sector.
struct SpectrumColumn {
  std::string name;
  std::vector<double> values;
  std::vector<char> matched;
};

SpectrumColumn make_column(const std::string& name,
                           std::span<const double> transformed,
                           const SpectrumMatchReport& report);

}  // namespace symq
