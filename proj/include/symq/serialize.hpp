#pragma once

#include <optional>
#include <string>

#include "symq/adapt.hpp"
#include "symq/pauli.hpp"
#include "symq/spectra.hpp"

namespace symq {

// X/Y/Z display form of a word, e.g. "X0 Y3 Z5"; identity is "I".
std::string word_to_display(const PauliWord& w);
PauliWord word_from_display(int n_qubits, const std::string& text);

// Coefficient seen in the X/Y/Z basis, where each Y contributes a factor
// -i relative to the internal X^a Z^b storage.
complex display_coefficient(const PauliWord& w, complex internal);
complex internal_coefficient(const PauliWord& w, complex display);

// Extra context recorded with adapted operators so outputs are
// regenerable from their provenance alone.
struct Provenance {
  std::string method;
  std::string symmetry;
  double target = 0.0;
  std::optional<double> mu;
  std::string mapping;
  std::string ordering;
  std::string fixture;
};

// Canonical JSON rendering: terms in (z_mask, x_mask) order, floats with 17
// significant digits. Byte-identical output for identical operators.
std::string operator_to_json(const PauliSum& sum, double threshold);
std::string operator_to_json(const AdaptedOperator& op,
                             const Provenance& provenance);

// Inverse of operator_to_json; returns the operator and the recorded
// pruning threshold.
std::pair<PauliSum, double> operator_from_json(const std::string& text);

// Aligned text table: level index, (N, S) label, original energy, one
// column per transformed operator with matched entries starred.
std::string render_spectrum_table(const LabeledSpectrum& original,
                                  std::span<const SpectrumColumn> columns);

std::string spectrum_to_json(const LabeledSpectrum& original,
                             std::span<const SpectrumColumn> columns,
                             const Provenance& provenance);

}  // namespace symq
