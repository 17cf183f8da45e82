#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "symq/pauli.hpp"

using namespace symq;
using namespace symq::testing;

namespace {

double matrix_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("word_multiply involution and ZX phase") {
  const PauliWord x0{1, 1, 0};
  const PauliWord z0{1, 0, 1};

  auto [xx, phase_xx] = word_multiply(x0, x0);
  CHECK(xx.is_identity());
  CHECK(phase_xx == complex{1.0, 0.0});

  // Z*X = +XZ-word with phase -1; as matrices that equals i*Y.
  auto [zx, phase_zx] = word_multiply(z0, x0);
  CHECK(zx.x_mask == 1);
  CHECK(zx.z_mask == 1);
  CHECK(phase_zx == complex{-1.0, 0.0});
  const Eigen::MatrixXcd lhs = phase_zx * word_matrix(zx);
  const Eigen::MatrixXcd rhs = complex{0, 1} * pauli_matrix('Y');
  CHECK(matrix_distance(lhs, rhs) < 1e-15);
}

TEST_CASE("word_multiply mismatched widths") {
  CHECK_THROWS_AS(word_multiply(PauliWord{2, 1, 0}, PauliWord{3, 1, 0}),
                  DimensionError);
}

TEST_CASE("word_multiply matches the dense product on 8 qubits") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    const PauliWord a = random_word(8, rng);
    const PauliWord b = random_word(8, rng);
    auto [c, phase] = word_multiply(a, b);
    const Eigen::MatrixXcd expect = word_matrix(a) * word_matrix(b);
    CHECK(matrix_distance(phase * word_matrix(c), expect) < 1e-12);
  }
}

TEST_CASE("Pauli group closure and associativity") {
  // Exhaustive over 2 qubits.
  for (std::uint64_t ax = 0; ax < 4; ++ax) {
    for (std::uint64_t az = 0; az < 4; ++az) {
      for (std::uint64_t bx = 0; bx < 4; ++bx) {
        for (std::uint64_t bz = 0; bz < 4; ++bz) {
          for (std::uint64_t cx = 0; cx < 4; ++cx) {
            for (std::uint64_t cz = 0; cz < 4; ++cz) {
              const PauliWord a{2, ax, az}, b{2, bx, bz}, c{2, cx, cz};
              auto [ab, p_ab] = word_multiply(a, b);
              auto [ab_c, p_abc] = word_multiply(ab, c);
              auto [bc, p_bc] = word_multiply(b, c);
              auto [a_bc, p2] = word_multiply(a, bc);
              REQUIRE(ab_c == a_bc);
              REQUIRE(p_ab * p_abc == p_bc * p2);
            }
          }
        }
      }
    }
  }
  // Random on 8 qubits; phases must stay on the unit circle at {+1, -1}.
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const PauliWord a = random_word(8, rng), b = random_word(8, rng),
                    c = random_word(8, rng);
    auto [ab, p_ab] = word_multiply(a, b);
    auto [abc1, q1] = word_multiply(ab, c);
    auto [bc, p_bc] = word_multiply(b, c);
    auto [abc2, q2] = word_multiply(a, bc);
    CHECK(abc1 == abc2);
    CHECK(p_ab * q1 == p_bc * q2);
    CHECK(std::abs(std::abs(p_ab) - 1.0) < 1e-15);
  }
}

TEST_CASE("sum_multiply identity and projector idempotency") {
  std::mt19937 rng(11);
  const PauliSum b = random_sum(4, 12, rng);
  const PauliSum prod = sum_multiply(PauliSum::identity(4), b);
  CHECK(matrix_distance(to_matrix(prod), to_matrix(b)) < 1e-14);

  // (1/2 (I - Z0))^2 = 1/2 (I - Z0)
  PauliSum proj = PauliSum::identity(1, 0.5);
  proj += PauliSum::single(PauliWord{1, 0, 1}, -0.5);
  const PauliSum squared = sum_multiply(proj, proj);
  CHECK(squared.term_count() == 2);
  CHECK(matrix_distance(to_matrix(squared), to_matrix(proj)) < 1e-15);
}

TEST_CASE("matrix homomorphism on random 6-qubit sums") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const PauliSum a = random_sum(6, 15, rng);
    const PauliSum b = random_sum(6, 15, rng);
    const PauliSum ab = sum_multiply(a, b, 0.0);
    CHECK(matrix_distance(to_matrix(ab), sum_matrix(a) * sum_matrix(b)) <
          1e-10);
  }
}

TEST_CASE("sum_add cancellation and scaling") {
  std::mt19937 rng(17);
  const PauliSum a = random_sum(5, 20, rng);
  CHECK(sum_add(a, sum_scale(a, -1.0)).term_count() == 0);
  CHECK(sum_scale(a, 1.0).terms() == a.terms());

  const PauliSum doubled = sum_add(a, a);
  CHECK(matrix_distance(to_matrix(doubled), 2.0 * sum_matrix(a)) < 1e-12);
}

TEST_CASE("sum_add dimension mismatch") {
  CHECK_THROWS_AS(sum_add(PauliSum::identity(2), PauliSum::identity(3)),
                  DimensionError);
}

TEST_CASE("simplify merges, prunes, and is idempotent") {
  const PauliWord x0{3, 1, 0};
  PauliSum::Term dup[] = {{x0, 1.0}, {x0, 2.0}};
  const PauliSum merged = PauliSum::from_terms(3, dup);
  CHECK(merged.term_count() == 1);
  CHECK(merged.coefficient(x0) == complex{3.0, 0.0});

  const PauliSum tiny = PauliSum::single(x0, 1e-14);
  CHECK(simplify(tiny, 1e-10).term_count() == 0);

  std::mt19937 rng(19);
  for (int trial = 0; trial < 20; ++trial) {
    PauliSum s = random_sum(5, 30, rng);
    const PauliSum once = simplify(s, 1e-3);
    const PauliSum twice = simplify(once, 1e-3);
    CHECK(once.terms() == twice.terms());
  }
}

TEST_CASE("simplify is order-independent") {
  std::mt19937 rng(23);
  std::vector<PauliSum::Term> terms;
  for (int k = 0; k < 40; ++k) {
    terms.emplace_back(random_word(4, rng), complex{1.0 + k, 0.5 * k});
  }
  const PauliSum forward = PauliSum::from_terms(4, terms);
  std::shuffle(terms.begin(), terms.end(), rng);
  const PauliSum shuffled = PauliSum::from_terms(4, terms);
  CHECK(forward.terms() == shuffled.terms());
}

TEST_CASE("to_matrix basics and capacity") {
  CHECK(matrix_distance(to_matrix(PauliSum::identity(2)),
                        Eigen::MatrixXcd::Identity(4, 4)) == 0.0);

  const PauliSum z0 = PauliSum::single(PauliWord{1, 0, 1}, 1.0);
  Eigen::MatrixXcd expected(2, 2);
  expected << 1, 0, 0, -1;
  CHECK(matrix_distance(to_matrix(z0), expected) == 0.0);

  CHECK_THROWS_AS(to_matrix(PauliSum::identity(13)), CapacityError);

  std::mt19937 rng(29);
  const PauliSum h = random_hermitian_sum(5, 25, rng);
  const Eigen::MatrixXcd m = to_matrix(h);
  CHECK(matrix_distance(m, m.adjoint()) < 1e-12);
}

TEST_CASE("expectation word-wise equals the dense quadratic form") {
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const PauliSum a = random_sum(6, 18, rng);
    const StateVector psi = random_state(6, rng);
    const complex direct = expectation(a, psi);
    const complex dense =
        (psi.amplitudes().adjoint() * sum_matrix(a) * psi.amplitudes())(0);
    CHECK(std::abs(direct - dense) < 1e-10);
  }
  const StateVector any = random_state(4, rng);
  CHECK(std::abs(expectation(PauliSum::identity(4), any) - 1.0) < 1e-12);
}

TEST_CASE("variance of eigenstates and two-point superpositions") {
  // A = 1 - Z0/2 - Z1/2 counts set bits on two qubits.
  PauliSum a = PauliSum::identity(2);
  a += PauliSum::single(PauliWord{2, 0, 1}, -0.5);
  a += PauliSum::single(PauliWord{2, 0, 2}, -0.5);

  CHECK(variance(a, StateVector::basis_state(2, 0b00)) < 1e-10);
  CHECK(variance(a, StateVector::basis_state(2, 0b11)) < 1e-10);

  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(4);
  amps(0) = amps(3) = 1.0 / std::sqrt(2.0);
  const StateVector cat(2, amps);
  CHECK(variance(a, cat) == doctest::Approx(1.0).epsilon(1e-10));

  const PauliSum skew = PauliSum::single(PauliWord{2, 1, 1}, 1.0);
  CHECK_THROWS_AS(variance(skew, cat), ContractError);
}

TEST_CASE("variance is non-negative on random states") {
  std::mt19937 rng(37);
  for (int trial = 0; trial < 50; ++trial) {
    const PauliSum a = random_hermitian_sum(5, 12, rng);
    const StateVector psi = random_state(5, rng);
    CHECK(variance(a, psi) >= -1e-12);
  }
}

TEST_CASE("hermiticity is preserved by real combinations") {
  std::mt19937 rng(41);
  const PauliSum a = random_hermitian_sum(4, 10, rng);
  const PauliSum b = random_hermitian_sum(4, 10, rng);
  CHECK(a.is_hermitian());
  CHECK(sum_add(sum_scale(a, 2.5), sum_scale(b, -0.75)).is_hermitian());
  CHECK_FALSE(sum_scale(a, complex{0.0, 1.0}).is_hermitian());
  const PauliSum sym = sum_add(sum_multiply(a, b), sum_multiply(b, a));
  CHECK(sym.is_hermitian());
}

TEST_CASE("adjoint matches the dense conjugate transpose") {
  std::mt19937 rng(43);
  const PauliSum a = random_sum(5, 16, rng);
  CHECK(matrix_distance(sum_matrix(adjoint(a)), sum_matrix(a).adjoint()) <
        1e-12);
}
