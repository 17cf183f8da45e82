#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "symq/errors.hpp"

namespace symq {

using complex = std::complex<double>;

// One creation (dagger) or annihilation action on a spin-orbital.
struct LadderOp {
  int index = 0;
  bool dagger = false;
};

// A normal-ordered product: creators with descending indices, then
// annihilators with descending indices. Distinct indices within each block,
// so a bit mask per block identifies the string.
struct FermionTerm {
  std::uint64_t cre_mask = 0;
  std::uint64_t ann_mask = 0;

  bool is_identity() const { return cre_mask == 0 && ann_mask == 0; }

  friend bool operator<(const FermionTerm& a, const FermionTerm& b) {
    return std::pair{a.cre_mask, a.ann_mask} <
           std::pair{b.cre_mask, b.ann_mask};
  }
  friend bool operator==(const FermionTerm&, const FermionTerm&) = default;
};

// Expands a FermionTerm back into an explicit ladder-operator string.
std::vector<LadderOp> term_ladder_ops(const FermionTerm& term);

// Weighted sum of normal-ordered ladder strings. Arbitrary products are
// brought to canonical form on insertion via the fermionic anticommutation
// relation {a_p, a^dag_q} = delta_pq, so equal physical operators always
// compare equal term-by-term.
class FermionOperator {
 public:
  using Term = std::pair<FermionTerm, complex>;

  explicit FermionOperator(int n_spin_orbitals);

  int n_spin_orbitals() const { return n_modes_; }
  std::size_t term_count() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  complex coefficient(const FermionTerm& t) const;

  // Accumulates c times the (not necessarily ordered) product of ops.
  void add_product(std::span<const LadderOp> ops, complex c);
  void add_product(std::initializer_list<LadderOp> ops, complex c) {
    add_product(std::span<const LadderOp>(ops.begin(), ops.size()), c);
  }
  void add_constant(complex c) { add_product(std::span<const LadderOp>{}, c); }

  FermionOperator& operator+=(const FermionOperator& other);
  FermionOperator& operator-=(const FermionOperator& other);
  FermionOperator& operator*=(complex c);

  friend FermionOperator operator+(FermionOperator a,
                                   const FermionOperator& b) {
    return a += b;
  }
  friend FermionOperator operator-(FermionOperator a,
                                   const FermionOperator& b) {
    return a -= b;
  }
  friend FermionOperator operator*(FermionOperator a, complex c) {
    return a *= c;
  }
  friend FermionOperator operator*(complex c, FermionOperator a) {
    return a *= c;
  }

  friend FermionOperator fermion_multiply(const FermionOperator& a,
                                          const FermionOperator& b);
  friend FermionOperator fermion_adjoint(const FermionOperator& a);

 private:
  int n_modes_;
  std::vector<Term> terms_;  // sorted by (cre_mask, ann_mask), merged
};

// Product of two canonical operators, re-normal-ordered.
FermionOperator fermion_multiply(const FermionOperator& a,
                                 const FermionOperator& b);

FermionOperator fermion_adjoint(const FermionOperator& a);

// Spin-orbital numbering for spatial orbital p: interleaved puts alpha at
// 2p and beta at 2p+1; blocked puts the full alpha block first.
enum class SpinOrbitalOrdering { interleaved, blocked };

int spin_orbital_index(int spatial, bool beta, int n_orbitals,
                       SpinOrbitalOrdering ordering);

std::string to_string(SpinOrbitalOrdering ordering);

// One- and two-electron integrals over n_orbitals spatial orbitals, in
// hartree. Two-electron values use chemist index order (pq|rs) with the
// 8-fold permutational symmetry of real orbitals.
class IntegralSet {
 public:
  explicit IntegralSet(int n_orbitals);

  int n_orbitals() const { return n_; }

  double one_body(int p, int q) const { return h_[idx2(p, q)]; }
  double two_body(int p, int q, int r, int s) const {
    return g_[idx4(p, q, r, s)];
  }

  void set_one_body(int p, int q, double value);   // fills h_qp too
  void set_two_body(int p, int q, int r, int s, double value);  // all 8 images

  int n_electrons = 0;
  int ms2 = 0;
  double v_nn = 0.0;         // nuclear-nuclear repulsion energy
  double core_energy = 0.0;  // frozen-core electronic constant, if any
  std::vector<int> orbsym;   // carried as metadata only

 private:
  std::size_t idx2(int p, int q) const;
  std::size_t idx4(int p, int q, int r, int s) const;

  int n_;
  std::vector<double> h_;
  std::vector<double> g_;
};

// Parses a Molpro-convention FCIDUMP: namelist header then "value i j k l"
// lines, chemist notation, 1-based indices. "i j 0 0" is h_ij and the
// all-zero line is the scalar constant. A VNN header entry, when present,
// splits that constant into nuclear repulsion plus frozen-core energy;
// otherwise the constant is taken as v_nn alone.
IntegralSet load_fcidump(const std::string& text);
IntegralSet load_fcidump_file(const std::string& path);

// The electronic Hamiltonian over 2*n_orbitals spin-orbitals. Two-electron
// integrals are converted from chemist to physicist index order internally;
// spin conservation leaves opposite-spin one-body blocks empty. The scalar
// part is core_energy, plus v_nn when include_vnn is set.
FermionOperator build_hamiltonian(const IntegralSet& ints,
                                  SpinOrbitalOrdering ordering,
                                  bool include_vnn = false);

// Total electron number operator over n_so spin-orbitals.
FermionOperator build_number_operator(int n_so);

// Total spin squared, S_z^2 + (S+S- + S-S+)/2, over spatial-orbital
// alpha/beta pairs.
FermionOperator build_s2_operator(int n_so, SpinOrbitalOrdering ordering);

}  // namespace symq
