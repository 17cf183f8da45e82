#pragma once

#include <string>
#include <vector>

#include "symq/fermion.hpp"
#include "symq/pauli.hpp"

namespace symq {

enum class MappingKind { jordan_wigner, parity, bravyi_kitaev };

std::string to_string(MappingKind kind);
MappingKind mapping_from_string(const std::string& name);

// Pauli image of a single creation/annihilation operator. The image acts on
// exactly n_modes qubits for every mapping.
PauliSum ladder_image(int mode, bool dagger, int n_modes, MappingKind kind);

// Isospectral fermion-to-qubit transformation applied term by term to the
// canonical form; the result is simplified at the given threshold.
PauliSum map_operator(const FermionOperator& op, MappingKind kind,
                      double threshold = kDefaultThreshold);

struct IsospectralityReport {
  std::vector<MappingKind> kinds;
  double max_deviation = 0.0;
  bool consistent = false;
};

// Diagonalizes the image of op under every requested mapping and compares
// the sorted spectra pairwise.
IsospectralityReport verify_isospectral(const FermionOperator& op,
                                        const std::vector<MappingKind>& kinds,
                                        int dense_limit = kDefaultDenseLimit,
                                        double tolerance = 1e-8);

}  // namespace symq
