#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "symq/errors.hpp"

namespace symq {

using complex = std::complex<double>;

// Coefficients with magnitude below this are dropped by simplify unless a
// caller supplies its own threshold. Serialized outputs record the value
// actually used.
inline constexpr double kDefaultThreshold = 1e-10;

// Largest qubit count for which dense 2^n x 2^n matrices are formed.
inline constexpr int kDefaultDenseLimit = 12;

// A tensor product of single-qubit Pauli factors in the X^a Z^b convention:
// bit i of x_mask / z_mask set iff qubit i carries an X / Z factor, applied
// as X^a on the left of Z^b. Both bits set means Y on that qubit, with the
// compensating phase i carried by the owning sum's coefficient.
struct PauliWord {
  int n_qubits = 0;
  std::uint64_t x_mask = 0;
  std::uint64_t z_mask = 0;

  static PauliWord identity(int n_qubits) { return {n_qubits, 0, 0}; }

  bool is_identity() const { return x_mask == 0 && z_mask == 0; }

  // Number of qubits carrying a Y factor in the X/Y/Z display basis.
  int y_count() const;

  // Canonical ordering used everywhere: lexicographic on (z_mask, x_mask).
  friend bool operator<(const PauliWord& a, const PauliWord& b) {
    return std::pair{a.z_mask, a.x_mask} < std::pair{b.z_mask, b.x_mask};
  }
  friend bool operator==(const PauliWord& a, const PauliWord& b) {
    return a.n_qubits == b.n_qubits && a.x_mask == b.x_mask &&
           a.z_mask == b.z_mask;
  }
};

// Product of two words: a * b = phase * word. In the X^a Z^b convention the
// phase is (-1)^popcount(a.z & b.x) from commuting Z factors past X factors.
std::pair<PauliWord, complex> word_multiply(const PauliWord& a,
                                            const PauliWord& b);

// Finite weighted sum of canonical Pauli words. Terms are kept merged,
// sorted in canonical order, and free of exact-zero coefficients; pruning
// below a threshold happens in simplify and in the arithmetic helpers.
class PauliSum {
 public:
  using Term = std::pair<PauliWord, complex>;

  explicit PauliSum(int n_qubits);

  static PauliSum zero(int n_qubits) { return PauliSum(n_qubits); }
  static PauliSum identity(int n_qubits, complex c = 1.0);
  static PauliSum single(const PauliWord& w, complex c);
  // Accumulates duplicates and sorts; does not prune.
  static PauliSum from_terms(int n_qubits, std::span<const Term> terms);

  int n_qubits() const { return n_qubits_; }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  complex coefficient(const PauliWord& w) const;

  // Real X/Y/Z-basis coefficients on every word, within tol.
  bool is_hermitian(double tol = 1e-10) const;

  // sqrt(sum |c_I|^2); the matrix Frobenius norm is 2^(n/2) times this.
  double coefficient_norm() const;

  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator-=(const PauliSum& other);
  PauliSum& operator*=(complex c);

  friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
  friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
  friend PauliSum operator*(PauliSum a, complex c) { return a *= c; }
  friend PauliSum operator*(complex c, PauliSum a) { return a *= c; }
  friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    return sum_multiply(a, b);
  }

  friend PauliSum sum_multiply(const PauliSum& a, const PauliSum& b,
                               double threshold);
  friend PauliSum sum_multiply(const PauliSum& a, const PauliSum& b);
  friend PauliSum simplify(const PauliSum& a, double threshold);

 private:
  int n_qubits_;
  std::vector<Term> terms_;  // sorted by (z_mask, x_mask), duplicates merged
};

PauliSum sum_multiply(const PauliSum& a, const PauliSum& b, double threshold);
PauliSum sum_multiply(const PauliSum& a, const PauliSum& b);
PauliSum sum_add(const PauliSum& a, const PauliSum& b,
                 double threshold = kDefaultThreshold);
PauliSum sum_scale(const PauliSum& a, complex c,
                   double threshold = kDefaultThreshold);
PauliSum simplify(const PauliSum& a, double threshold = kDefaultThreshold);
PauliSum adjoint(const PauliSum& a);

std::size_t term_count(const PauliSum& a);

// Dense 2^n x 2^n realization; basis-state index bit i is qubit i.
Eigen::MatrixXcd to_matrix(const PauliSum& a,
                           int dense_limit = kDefaultDenseLimit);

// An explicit 2^n-amplitude state; qubit 0 is the least significant bit of
// the basis-state index.
class StateVector {
 public:
  StateVector(int n_qubits, Eigen::VectorXcd amplitudes);

  static StateVector basis_state(int n_qubits, std::uint64_t bits);

  int n_qubits() const { return n_qubits_; }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  double norm() const { return amps_.norm(); }
  StateVector normalized() const;

 private:
  int n_qubits_;
  Eigen::VectorXcd amps_;
};

// A|psi> evaluated word-by-word, never materializing the matrix.
StateVector apply(const PauliSum& a, const StateVector& psi);

// <psi|A|psi>; real up to rounding when A is Hermitian.
complex expectation(const PauliSum& a, const StateVector& psi);

// <psi|A^2|psi> - <psi|A|psi>^2 for Hermitian A.
double variance(const PauliSum& a, const StateVector& psi);

}  // namespace symq
