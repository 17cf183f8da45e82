#include "symq/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>

namespace symq {

namespace {

void check_same_modes(int a, int b, const char* what) {
  if (a != b) {
    throw DimensionError(std::string(what) + ": mode count mismatch (" +
                         std::to_string(a) + " vs " + std::to_string(b) + ")");
  }
}

// Accumulator used while normal-ordering; keyed map keeps results canonical.
using TermMap = std::map<FermionTerm, complex>;

// Rewrites one product of ladder operators into canonical normal order by
// repeatedly swapping adjacent out-of-order pairs; each contraction of
// a_p a^dag_p spawns the shorter delta string.
void normal_order_into(TermMap& out, std::vector<LadderOp> ops, complex c) {
  if (c == complex{0.0, 0.0}) {
    return;
  }
  for (std::size_t i = 0; i + 1 < ops.size(); ++i) {
    const LadderOp& left = ops[i];
    const LadderOp& right = ops[i + 1];
    if (!left.dagger && right.dagger) {
      // a_p a^dag_q = delta_pq - a^dag_q a_p
      if (left.index == right.index) {
        std::vector<LadderOp> contracted;
        contracted.reserve(ops.size() - 2);
        contracted.insert(contracted.end(), ops.begin(), ops.begin() + i);
        contracted.insert(contracted.end(), ops.begin() + i + 2, ops.end());
        normal_order_into(out, std::move(contracted), c);
      }
      std::swap(ops[i], ops[i + 1]);
      normal_order_into(out, std::move(ops), -c);
      return;
    }
    if (left.dagger == right.dagger) {
      if (left.index == right.index) {
        return;  // nilpotency
      }
      if (left.index < right.index) {
        std::swap(ops[i], ops[i + 1]);
        normal_order_into(out, std::move(ops), -c);
        return;
      }
    }
  }
  FermionTerm term;
  for (const LadderOp& op : ops) {
    (op.dagger ? term.cre_mask : term.ann_mask) |= std::uint64_t{1}
                                                   << op.index;
  }
  out[term] += c;
}

std::vector<FermionOperator::Term> collect(TermMap& map) {
  std::vector<FermionOperator::Term> out;
  out.reserve(map.size());
  for (const auto& [t, c] : map) {
    if (c != complex{0.0, 0.0}) {
      out.emplace_back(t, c);
    }
  }
  return out;
}

}  // namespace

std::vector<LadderOp> term_ladder_ops(const FermionTerm& term) {
  std::vector<LadderOp> ops;
  for (int i = 63; i >= 0; --i) {
    if (term.cre_mask >> i & 1) {
      ops.push_back({i, true});
    }
  }
  for (int i = 63; i >= 0; --i) {
    if (term.ann_mask >> i & 1) {
      ops.push_back({i, false});
    }
  }
  return ops;
}

FermionOperator::FermionOperator(int n_spin_orbitals)
    : n_modes_(n_spin_orbitals) {
  if (n_spin_orbitals <= 0 || n_spin_orbitals > 64) {
    throw DimensionError("FermionOperator: mode count must be in 1..64");
  }
}

complex FermionOperator::coefficient(const FermionTerm& t) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), t,
      [](const Term& term, const FermionTerm& key) { return term.first < key; });
  if (it != terms_.end() && it->first == t) {
    return it->second;
  }
  return {0.0, 0.0};
}

void FermionOperator::add_product(std::span<const LadderOp> ops, complex c) {
  for (const LadderOp& op : ops) {
    if (op.index < 0 || op.index >= n_modes_) {
      throw DimensionError("add_product: mode index " +
                           std::to_string(op.index) + " out of range");
    }
  }
  TermMap map;
  normal_order_into(map, std::vector<LadderOp>(ops.begin(), ops.end()), c);
  FermionOperator delta(n_modes_);
  delta.terms_ = collect(map);
  *this += delta;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& other) {
  check_same_modes(n_modes_, other.n_modes_, "fermion add");
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

FermionOperator& FermionOperator::operator-=(const FermionOperator& other) {
  FermionOperator negated = other;
  negated *= complex{-1.0, 0.0};
  return *this += negated;
}

FermionOperator& FermionOperator::operator*=(complex c) {
  if (c == complex{0.0, 0.0}) {
    terms_.clear();
    return *this;
  }
  for (auto& [t, coeff] : terms_) {
    coeff *= c;
  }
  return *this;
}

FermionOperator fermion_multiply(const FermionOperator& a,
                                 const FermionOperator& b) {
  check_same_modes(a.n_spin_orbitals(), b.n_spin_orbitals(),
                   "fermion_multiply");
  TermMap map;
  for (const auto& [ta, ca] : a.terms()) {
    const auto ops_a = term_ladder_ops(ta);
    for (const auto& [tb, cb] : b.terms()) {
      std::vector<LadderOp> ops = ops_a;
      const auto ops_b = term_ladder_ops(tb);
      ops.insert(ops.end(), ops_b.begin(), ops_b.end());
      normal_order_into(map, std::move(ops), ca * cb);
    }
  }
  FermionOperator out(a.n_spin_orbitals());
  out.terms_ = collect(map);
  return out;
}

FermionOperator fermion_adjoint(const FermionOperator& a) {
  TermMap map;
  for (const auto& [t, c] : a.terms()) {
    // Reversing each block of k distinct operators costs (-1)^(k(k-1)/2);
    // the swapped masks are already in canonical order.
    const int k = std::popcount(t.cre_mask);
    const int m = std::popcount(t.ann_mask);
    const int swaps = k * (k - 1) / 2 + m * (m - 1) / 2;
    map[FermionTerm{t.ann_mask, t.cre_mask}] +=
        (swaps & 1) ? -std::conj(c) : std::conj(c);
  }
  FermionOperator out(a.n_spin_orbitals());
  out.terms_ = collect(map);
  return out;
}

int spin_orbital_index(int spatial, bool beta, int n_orbitals,
                       SpinOrbitalOrdering ordering) {
  return ordering == SpinOrbitalOrdering::interleaved
             ? 2 * spatial + (beta ? 1 : 0)
             : spatial + (beta ? n_orbitals : 0);
}

std::string to_string(SpinOrbitalOrdering ordering) {
  return ordering == SpinOrbitalOrdering::interleaved ? "interleaved"
                                                      : "blocked";
}

IntegralSet::IntegralSet(int n_orbitals) : n_(n_orbitals) {
  if (n_orbitals <= 0 || n_orbitals > 32) {
    throw DimensionError("IntegralSet: orbital count must be in 1..32");
  }
  h_.assign(std::size_t(n_) * n_, 0.0);
  g_.assign(std::size_t(n_) * n_ * n_ * n_, 0.0);
}

std::size_t IntegralSet::idx2(int p, int q) const {
  return std::size_t(p) * n_ + q;
}

std::size_t IntegralSet::idx4(int p, int q, int r, int s) const {
  return ((std::size_t(p) * n_ + q) * n_ + r) * n_ + s;
}

void IntegralSet::set_one_body(int p, int q, double value) {
  h_[idx2(p, q)] = value;
  h_[idx2(q, p)] = value;
}

void IntegralSet::set_two_body(int p, int q, int r, int s, double value) {
  g_[idx4(p, q, r, s)] = value;
  g_[idx4(q, p, r, s)] = value;
  g_[idx4(p, q, s, r)] = value;
  g_[idx4(q, p, s, r)] = value;
  g_[idx4(r, s, p, q)] = value;
  g_[idx4(s, r, p, q)] = value;
  g_[idx4(r, s, q, p)] = value;
  g_[idx4(s, r, q, p)] = value;
}

FermionOperator build_hamiltonian(const IntegralSet& ints,
                                  SpinOrbitalOrdering ordering,
                                  bool include_vnn) {
  const int n = ints.n_orbitals();
  FermionOperator op(2 * n);

  const double constant =
      ints.core_energy + (include_vnn ? ints.v_nn : 0.0);
  if (constant != 0.0) {
    op.add_constant(constant);
  }

  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      const double h = ints.one_body(p, q);
      if (h == 0.0) {
        continue;
      }
      for (int beta = 0; beta < 2; ++beta) {
        const int P = spin_orbital_index(p, beta, n, ordering);
        const int Q = spin_orbital_index(q, beta, n, ordering);
        op.add_product({{P, true}, {Q, false}}, h);
      }
    }
  }

  // 1/2 sum <PQ|RS> a+_P a+_Q a_S a_R with <PQ|RS> = (pr|qs) in chemist
  // order; same-spin pairs (P,R) and (Q,S).
  for (int p = 0; p < n; ++p) {
    for (int r = 0; r < n; ++r) {
      for (int q = 0; q < n; ++q) {
        for (int s = 0; s < n; ++s) {
          const double g = ints.two_body(p, r, q, s);
          if (g == 0.0) {
            continue;
          }
          for (int sigma = 0; sigma < 2; ++sigma) {
            for (int tau = 0; tau < 2; ++tau) {
              const int P = spin_orbital_index(p, sigma, n, ordering);
              const int R = spin_orbital_index(r, sigma, n, ordering);
              const int Q = spin_orbital_index(q, tau, n, ordering);
              const int S = spin_orbital_index(s, tau, n, ordering);
              op.add_product(
                  {{P, true}, {Q, true}, {S, false}, {R, false}}, 0.5 * g);
            }
          }
        }
      }
    }
  }
  return op;
}

FermionOperator build_number_operator(int n_so) {
  FermionOperator op(n_so);
  for (int i = 0; i < n_so; ++i) {
    op.add_product({{i, true}, {i, false}}, 1.0);
  }
  return op;
}

FermionOperator build_s2_operator(int n_so, SpinOrbitalOrdering ordering) {
  if (n_so % 2 != 0) {
    throw ContractError("build_s2_operator: odd spin-orbital count");
  }
  const int n = n_so / 2;

  FermionOperator sz(n_so);
  FermionOperator s_plus(n_so);
  for (int p = 0; p < n; ++p) {
    const int pa = spin_orbital_index(p, false, n, ordering);
    const int pb = spin_orbital_index(p, true, n, ordering);
    sz.add_product({{pa, true}, {pa, false}}, 0.5);
    sz.add_product({{pb, true}, {pb, false}}, -0.5);
    s_plus.add_product({{pa, true}, {pb, false}}, 1.0);
  }
  const FermionOperator s_minus = fermion_adjoint(s_plus);

  FermionOperator s2 = fermion_multiply(sz, sz);
  FermionOperator mixed = fermion_multiply(s_plus, s_minus);
  mixed += fermion_multiply(s_minus, s_plus);
  mixed *= complex{0.5, 0.0};
  s2 += mixed;
  return s2;
}

}  // namespace symq
