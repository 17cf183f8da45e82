#include "symq/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>

namespace symq {

namespace {

void check_same_width(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": qubit count mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

void check_mask_width(const PauliWord& w) {
  if (w.n_qubits <= 0 || w.n_qubits > 64) {
    throw DimensionError("PauliWord: n_qubits must be in 1..64");
  }
  if (w.n_qubits < 64) {
    const std::uint64_t allowed = (std::uint64_t{1} << w.n_qubits) - 1;
    if ((w.x_mask | w.z_mask) & ~allowed) {
      throw DimensionError("PauliWord: mask exceeds n_qubits bits");
    }
  }
}

struct WordHash {
  std::size_t operator()(const PauliWord& w) const {
    std::uint64_t h = w.x_mask * 0x9e3779b97f4a7c15ULL;
    h ^= w.z_mask + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<std::size_t>(h);
  }
};

using TermMap = std::unordered_map<PauliWord, complex, WordHash>;

std::vector<PauliSum::Term> collect_sorted(int n_qubits, TermMap& map,
                                           double threshold) {
  std::vector<PauliSum::Term> out;
  out.reserve(map.size());
  for (auto& [w, c] : map) {
    if (std::abs(c) >= threshold && c != complex{0.0, 0.0}) {
      PauliWord key = w;
      key.n_qubits = n_qubits;
      out.emplace_back(key, c);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

int PauliWord::y_count() const {
  return std::popcount(x_mask & z_mask);
}

std::pair<PauliWord, complex> word_multiply(const PauliWord& a,
                                            const PauliWord& b) {
  check_same_width(a.n_qubits, b.n_qubits, "word_multiply");
  PauliWord c{a.n_qubits, a.x_mask ^ b.x_mask, a.z_mask ^ b.z_mask};
  const int swaps = std::popcount(a.z_mask & b.x_mask);
  return {c, (swaps & 1) ? complex{-1.0, 0.0} : complex{1.0, 0.0}};
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits <= 0 || n_qubits > 64) {
    throw DimensionError("PauliSum: n_qubits must be in 1..64");
  }
}

PauliSum PauliSum::identity(int n_qubits, complex c) {
  return single(PauliWord::identity(n_qubits), c);
}

PauliSum PauliSum::single(const PauliWord& w, complex c) {
  check_mask_width(w);
  PauliSum s(w.n_qubits);
  if (c != complex{0.0, 0.0}) {
    s.terms_.emplace_back(w, c);
  }
  return s;
}

PauliSum PauliSum::from_terms(int n_qubits, std::span<const Term> terms) {
  PauliSum s(n_qubits);
  TermMap map;
  for (const auto& [w, c] : terms) {
    check_same_width(n_qubits, w.n_qubits, "from_terms");
    check_mask_width(w);
    map[w] += c;
  }
  s.terms_ = collect_sorted(n_qubits, map, 0.0);
  return s;
}

complex PauliSum::coefficient(const PauliWord& w) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), w,
      [](const Term& t, const PauliWord& key) { return t.first < key; });
  if (it != terms_.end() && it->first == w) {
    return it->second;
  }
  return {0.0, 0.0};
}

bool PauliSum::is_hermitian(double tol) const {
  // In the X^a Z^b convention a word with k Y factors picks up (-i)^k on
  // conversion to the X/Y/Z basis; Hermiticity means that product is real.
  static const complex minus_i_pow[4] = {
      {1.0, 0.0}, {0.0, -1.0}, {-1.0, 0.0}, {0.0, 1.0}};
  for (const auto& [w, c] : terms_) {
    const complex display = c * minus_i_pow[w.y_count() & 3];
    if (std::abs(display.imag()) > tol) {
      return false;
    }
  }
  return true;
}

double PauliSum::coefficient_norm() const {
  double s = 0.0;
  for (const auto& [w, c] : terms_) {
    s += std::norm(c);
  }
  return std::sqrt(s);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  check_same_width(n_qubits_, other.n_qubits_, "sum_add");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.cbegin(), b = other.terms_.cbegin();
  while (a != terms_.cend() || b != other.terms_.cend()) {
    if (b == other.terms_.cend() ||
        (a != terms_.cend() && a->first < b->first)) {
      merged.push_back(*a++);
    } else if (a == terms_.cend() || b->first < a->first) {
      merged.push_back(*b++);
    } else {
      complex c = a->second + b->second;
      if (c != complex{0.0, 0.0}) {
        merged.emplace_back(a->first, c);
      }
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
  PauliSum negated = other;
  negated *= complex{-1.0, 0.0};
  return *this += negated;
}

PauliSum& PauliSum::operator*=(complex c) {
  if (c == complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, coeff] : terms_) {
    coeff *= c;
  }
  return *this;
}

PauliSum sum_multiply(const PauliSum& a, const PauliSum& b, double threshold) {
  check_same_width(a.n_qubits(), b.n_qubits(), "sum_multiply");
  TermMap map;
  map.reserve(a.term_count() * 2);
  for (const auto& [wa, ca] : a.terms_) {
    for (const auto& [wb, cb] : b.terms_) {
      PauliWord w{wa.n_qubits, wa.x_mask ^ wb.x_mask, wa.z_mask ^ wb.z_mask};
      const int swaps = std::popcount(wa.z_mask & wb.x_mask);
      const complex c = ca * cb;
      map[w] += (swaps & 1) ? -c : c;
    }
  }
  PauliSum out(a.n_qubits());
  out.terms_ = collect_sorted(a.n_qubits(), map, threshold);
  return out;
}

PauliSum sum_multiply(const PauliSum& a, const PauliSum& b) {
  return sum_multiply(a, b, kDefaultThreshold);
}

PauliSum sum_add(const PauliSum& a, const PauliSum& b, double threshold) {
  PauliSum out = a;
  out += b;
  return simplify(out, threshold);
}

PauliSum sum_scale(const PauliSum& a, complex c, double threshold) {
  PauliSum out = a;
  out *= c;
  return simplify(out, threshold);
}

PauliSum simplify(const PauliSum& a, double threshold) {
  if (threshold < 0.0) {
    throw ContractError("simplify: threshold must be >= 0");
  }
  PauliSum out(a.n_qubits_);
  out.terms_.reserve(a.terms_.size());
  for (const auto& t : a.terms_) {
    if (std::abs(t.second) >= threshold && t.second != complex{0.0, 0.0}) {
      out.terms_.push_back(t);
    }
  }
  return out;
}

PauliSum adjoint(const PauliSum& a) {
  // (X^a Z^b)^dagger = (-1)^popcount(a & b) X^a Z^b.
  std::vector<PauliSum::Term> terms;
  terms.reserve(a.term_count());
  for (const auto& [w, c] : a.terms()) {
    const complex cc = std::conj(c);
    terms.emplace_back(w, (w.y_count() & 1) ? -cc : cc);
  }
  return PauliSum::from_terms(a.n_qubits(), terms);
}

std::size_t term_count(const PauliSum& a) { return a.term_count(); }

Eigen::MatrixXcd to_matrix(const PauliSum& a, int dense_limit) {
  if (a.n_qubits() > dense_limit) {
    throw CapacityError("to_matrix: " + std::to_string(a.n_qubits()) +
                        " qubits exceeds dense limit " +
                        std::to_string(dense_limit));
  }
  const std::uint64_t dim = std::uint64_t{1} << a.n_qubits();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [w, c] : a.terms()) {
    for (std::uint64_t col = 0; col < dim; ++col) {
      const int sign = std::popcount(w.z_mask & col) & 1;
      m(col ^ w.x_mask, col) += sign ? -c : c;
    }
  }
  return m;
}

StateVector::StateVector(int n_qubits, Eigen::VectorXcd amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits <= 0 || n_qubits > 30) {
    throw DimensionError("StateVector: n_qubits out of range");
  }
  if (amps_.size() != Eigen::Index(std::uint64_t{1} << n_qubits)) {
    throw DimensionError("StateVector: amplitude count is not 2^n_qubits");
  }
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t bits) {
  Eigen::VectorXcd v =
      Eigen::VectorXcd::Zero(Eigen::Index(std::uint64_t{1} << n_qubits));
  v(Eigen::Index(bits)) = 1.0;
  return StateVector(n_qubits, std::move(v));
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) {
    throw ContractError("StateVector: cannot normalize the zero vector");
  }
  return StateVector(n_qubits_, amps_ / n);
}

StateVector apply(const PauliSum& a, const StateVector& psi) {
  check_same_width(a.n_qubits(), psi.n_qubits(), "apply");
  const auto& in = psi.amplitudes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(in.size());
  const std::uint64_t dim = std::uint64_t(in.size());
  for (const auto& [w, c] : a.terms()) {
    for (std::uint64_t s = 0; s < dim; ++s) {
      const int sign = std::popcount(w.z_mask & s) & 1;
      out(Eigen::Index(s ^ w.x_mask)) += sign ? -c * in(Eigen::Index(s))
                                              : c * in(Eigen::Index(s));
    }
  }
  return StateVector(psi.n_qubits(), std::move(out));
}

complex expectation(const PauliSum& a, const StateVector& psi) {
  check_same_width(a.n_qubits(), psi.n_qubits(), "expectation");
  const auto& amp = psi.amplitudes();
  const std::uint64_t dim = std::uint64_t(amp.size());
  complex total{0.0, 0.0};
  for (const auto& [w, c] : a.terms()) {
    complex word_value{0.0, 0.0};
    for (std::uint64_t s = 0; s < dim; ++s) {
      const complex v = std::conj(amp(Eigen::Index(s ^ w.x_mask))) *
                        amp(Eigen::Index(s));
      word_value += (std::popcount(w.z_mask & s) & 1) ? -v : v;
    }
    total += c * word_value;
  }
  return total;
}

double variance(const PauliSum& a, const StateVector& psi) {
  if (!a.is_hermitian()) {
    throw ContractError("variance: operator is not Hermitian");
  }
  const StateVector a_psi = apply(a, psi);
  const double second_moment = a_psi.amplitudes().squaredNorm();
  const complex mean = psi.amplitudes().dot(a_psi.amplitudes());
  return second_moment - std::norm(mean);
}

}  // namespace symq
