#include "symq/mapping.hpp"

#include <algorithm>
#include <cstdint>

#include <Eigen/Eigenvalues>

namespace symq {

namespace {

// Qubit sets characterizing one mode of an encoding: flip = qubits toggled
// by changing the mode's occupation, occupation = qubits whose Z product
// reads the occupation out, parity = qubits whose Z product gives the
// parity of all lower modes.
struct ModeSets {
  std::uint64_t flip = 0;
  std::uint64_t occupation = 0;
  std::uint64_t parity = 0;
};

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

// Fenwick-tree prefix query path for modes 0..m-1 (1-based internal index).
std::uint64_t fenwick_query(int m) {
  std::uint64_t mask = 0;
  for (int i = m; i > 0; i -= i & -i) {
    mask |= bit(i - 1);
  }
  return mask;
}

std::uint64_t fenwick_update(int j, int n) {
  std::uint64_t mask = 0;
  for (int i = j + 1; i <= n; i += i & -i) {
    mask |= bit(i - 1);
  }
  return mask;
}

ModeSets mode_sets(int j, int n, MappingKind kind) {
  ModeSets s;
  switch (kind) {
    case MappingKind::jordan_wigner:
      s.flip = bit(j);
      s.occupation = bit(j);
      s.parity = bit(j) - 1;  // all qubits below j
      break;
    case MappingKind::parity:
      // Qubit i stores the parity of modes 0..i.
      for (int i = j; i < n; ++i) {
        s.flip |= bit(i);
      }
      s.occupation = j > 0 ? bit(j) | bit(j - 1) : bit(0);
      s.parity = j > 0 ? bit(j - 1) : 0;
      break;
    case MappingKind::bravyi_kitaev:
      s.flip = fenwick_update(j, n);
      s.occupation = fenwick_query(j + 1) ^ fenwick_query(j);
      s.parity = fenwick_query(j);
      break;
  }
  return s;
}

}  // namespace

std::string to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::jordan_wigner:
      return "jw";
    case MappingKind::parity:
      return "parity";
    case MappingKind::bravyi_kitaev:
      return "bk";
  }
  return "?";
}

MappingKind mapping_from_string(const std::string& name) {
  if (name == "jw" || name == "jordan-wigner" || name == "jordan_wigner") {
    return MappingKind::jordan_wigner;
  }
  if (name == "parity") {
    return MappingKind::parity;
  }
  if (name == "bk" || name == "bravyi-kitaev" || name == "bravyi_kitaev") {
    return MappingKind::bravyi_kitaev;
  }
  throw ContractError("unknown mapping '" + name + "'");
}

PauliSum ladder_image(int mode, bool dagger, int n_modes, MappingKind kind) {
  if (mode < 0 || mode >= n_modes) {
    throw DimensionError("ladder_image: mode out of range");
  }
  const ModeSets s = mode_sets(mode, n_modes, kind);
  // a^dag_j = X(flip) * (I + Z(occupation))/2 * Z(parity): project onto an
  // empty mode, attach the lower-mode parity sign, then toggle.
  const PauliWord plain{n_modes, s.flip, s.parity};
  const PauliWord weighted{n_modes, s.flip, s.occupation ^ s.parity};
  PauliSum::Term terms[] = {{plain, {0.5, 0.0}}, {weighted, {0.5, 0.0}}};
  PauliSum image = PauliSum::from_terms(n_modes, terms);
  return dagger ? image : adjoint(image);
}

PauliSum map_operator(const FermionOperator& op, MappingKind kind,
                      double threshold) {
  const int n = op.n_spin_orbitals();
  PauliSum total(n);
  for (const auto& [term, c] : op.terms()) {
    PauliSum image = PauliSum::identity(n, c);
    for (const LadderOp& lop : term_ladder_ops(term)) {
      image = sum_multiply(image, ladder_image(lop.index, lop.dagger, n, kind),
                           0.0);
    }
    total += image;
  }
  return simplify(total, threshold);
}

IsospectralityReport verify_isospectral(const FermionOperator& op,
                                        const std::vector<MappingKind>& kinds,
                                        int dense_limit, double tolerance) {
  if (op.n_spin_orbitals() > dense_limit) {
    throw CapacityError("verify_isospectral: " +
                        std::to_string(op.n_spin_orbitals()) +
                        " modes exceeds dense limit " +
                        std::to_string(dense_limit));
  }
  IsospectralityReport report;
  report.kinds = kinds;
  std::vector<Eigen::VectorXd> spectra;
  for (MappingKind kind : kinds) {
    const PauliSum image = map_operator(op, kind);
    if (!image.is_hermitian()) {
      throw ContractError("verify_isospectral: image under " +
                          to_string(kind) + " is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        to_matrix(image, dense_limit), Eigen::EigenvaluesOnly);
    spectra.push_back(solver.eigenvalues());
  }
  for (std::size_t i = 0; i + 1 < spectra.size(); ++i) {
    for (std::size_t j = i + 1; j < spectra.size(); ++j) {
      const double dev = (spectra[i] - spectra[j]).cwiseAbs().maxCoeff();
      report.max_deviation = std::max(report.max_deviation, dev);
    }
  }
  report.consistent = report.max_deviation < tolerance;
  return report;
}

}  // namespace symq
