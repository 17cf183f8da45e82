#include "symq/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace symq {

namespace {

std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

const complex kMinusIPow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
const complex kPlusIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

}  // namespace

std::string word_to_display(const PauliWord& w) {
  if (w.is_identity()) {
    return "I";
  }
  std::string out;
  for (int i = 0; i < w.n_qubits; ++i) {
    const bool x = w.x_mask >> i & 1;
    const bool z = w.z_mask >> i & 1;
    if (!x && !z) {
      continue;
    }
    if (!out.empty()) {
      out += ' ';
    }
    out += x ? (z ? 'Y' : 'X') : 'Z';
    out += std::to_string(i);
  }
  return out;
}

PauliWord word_from_display(int n_qubits, const std::string& text) {
  PauliWord w = PauliWord::identity(n_qubits);
  if (text == "I" || text.empty()) {
    return w;
  }
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    if (token.size() < 2) {
      throw ParseError("bad Pauli factor '" + token + "'");
    }
    const char axis = token[0];
    int qubit = 0;
    try {
      qubit = std::stoi(token.substr(1));
    } catch (const std::exception&) {
      throw ParseError("bad qubit index in '" + token + "'");
    }
    if (qubit < 0 || qubit >= n_qubits) {
      throw ParseError("qubit index out of range in '" + token + "'");
    }
    const std::uint64_t b = std::uint64_t{1} << qubit;
    if ((w.x_mask | w.z_mask) & b) {
      throw ParseError("repeated qubit in word '" + text + "'");
    }
    switch (axis) {
      case 'X':
        w.x_mask |= b;
        break;
      case 'Y':
        w.x_mask |= b;
        w.z_mask |= b;
        break;
      case 'Z':
        w.z_mask |= b;
        break;
      default:
        throw ParseError("bad Pauli axis in '" + token + "'");
    }
  }
  return w;
}

complex display_coefficient(const PauliWord& w, complex internal) {
  return internal * kMinusIPow[w.y_count() & 3];
}

complex internal_coefficient(const PauliWord& w, complex display) {
  return display * kPlusIPow[w.y_count() & 3];
}

std::string operator_to_json(const PauliSum& sum, double threshold) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"n_qubits\": " << sum.n_qubits() << ",\n";
  out << "  \"threshold\": " << format_float(threshold) << ",\n";
  out << "  \"terms\": [";
  bool first = true;
  for (const auto& [w, c] : sum.terms()) {
    const complex d = display_coefficient(w, c);
    out << (first ? "\n" : ",\n");
    first = false;
    out << "    {\"word\": \"" << word_to_display(w) << "\", \"re\": "
        << format_float(d.real()) << ", \"im\": " << format_float(d.imag())
        << "}";
  }
  out << (first ? "]\n" : "\n  ]\n");
  out << "}\n";
  return out.str();
}

std::string operator_to_json(const AdaptedOperator& op,
                             const Provenance& provenance) {
  std::string body = operator_to_json(op.result, op.threshold);
  std::ostringstream extra;
  extra << "  \"provenance\": {\n";
  extra << "    \"method\": \"" << provenance.method << "\",\n";
  extra << "    \"symmetry\": \"" << provenance.symmetry << "\",\n";
  extra << "    \"target\": " << format_float(provenance.target) << ",\n";
  if (provenance.mu) {
    extra << "    \"mu\": " << format_float(*provenance.mu) << ",\n";
  }
  extra << "    \"mapping\": \"" << provenance.mapping << "\",\n";
  extra << "    \"ordering\": \"" << provenance.ordering << "\",\n";
  extra << "    \"fixture\": \"" << provenance.fixture << "\"\n";
  extra << "  },\n";
  // Splice the provenance object right after the opening brace.
  return "{\n" + extra.str() + body.substr(2);
}

std::string render_spectrum_table(const LabeledSpectrum& original,
                                  std::span<const SpectrumColumn> columns) {
  std::ostringstream out;
  char buf[64];
  out << "level  (N, S)  " << std::setw(14) << "H";
  for (const auto& column : columns) {
    out << "  " << std::setw(15) << column.name;
  }
  out << "\n";
  for (std::size_t k = 0; k < original.levels.size(); ++k) {
    const auto& level = original.levels[k];
    std::snprintf(buf, sizeof buf, "%5zu  (%1d, %.1f)  %14.7f", k,
                  int(std::lround(level.n_electrons)),
                  std::abs(level.spin) < 1e-6 ? 0.0 : level.spin,
                  level.energy);
    out << buf;
    for (const auto& column : columns) {
      std::snprintf(buf, sizeof buf, "  %14.7f%c", column.values[k],
                    column.matched[k] ? '*' : ' ');
      out << buf;
    }
    out << "\n";
  }
  return out.str();
}

std::string spectrum_to_json(const LabeledSpectrum& original,
                             std::span<const SpectrumColumn> columns,
                             const Provenance& provenance) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"provenance\": {\n";
  out << "    \"symmetry\": \"" << provenance.symmetry << "\",\n";
  out << "    \"target\": " << format_float(provenance.target) << ",\n";
  if (provenance.mu) {
    out << "    \"mu\": " << format_float(*provenance.mu) << ",\n";
  }
  out << "    \"mapping\": \"" << provenance.mapping << "\",\n";
  out << "    \"ordering\": \"" << provenance.ordering << "\",\n";
  out << "    \"fixture\": \"" << provenance.fixture << "\"\n";
  out << "  },\n";
  out << "  \"columns\": [";
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out << (c ? ", " : "") << "\"" << columns[c].name << "\"";
  }
  out << "],\n";
  out << "  \"levels\": [";
  for (std::size_t k = 0; k < original.levels.size(); ++k) {
    const auto& level = original.levels[k];
    out << (k ? ",\n" : "\n");
    out << "    {\"level\": " << k
        << ", \"n\": " << int(std::lround(level.n_electrons))
        << ", \"s\": " << format_float(level.spin)
        << ", \"energy\": " << format_float(level.energy);
    for (const auto& column : columns) {
      out << ", \"" << column.name
          << "\": " << format_float(column.values[k]) << ", \""
          << column.name << "_matched\": "
          << (column.matched[k] ? "true" : "false");
    }
    out << "}";
  }
  out << "\n  ]\n}\n";
  return out.str();
}

std::pair<PauliSum, double> operator_from_json(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid operator JSON: ") + e.what());
  }
  try {
    const int n = doc.at("n_qubits").get<int>();
    const double threshold = doc.at("threshold").get<double>();
    std::vector<PauliSum::Term> terms;
    for (const auto& item : doc.at("terms")) {
      const PauliWord w =
          word_from_display(n, item.at("word").get<std::string>());
      const complex display{item.at("re").get<double>(),
                            item.at("im").get<double>()};
      terms.emplace_back(w, internal_coefficient(w, display));
    }
    return {PauliSum::from_terms(n, terms), threshold};
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("operator JSON missing field: ") + e.what());
  }
}

}  // namespace symq
