#include <doctest.h>

#include <random>

#include <Eigen/Eigenvalues>

#include "oracles.hpp"
#include "symq/adapt.hpp"
#include "symq/mapping.hpp"
#include "symq/spectra.hpp"

using namespace symq;
using namespace symq::testing;

namespace {

struct SmallSystem {
  PauliSum h;
  PauliSum n_op;
  PauliSum s2;
};

// Two spatial orbitals under Jordan-Wigner with random real integrals.
SmallSystem make_system(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> value(-1.0, 1.0);
  IntegralSet ints(2);
  for (int p = 0; p < 2; ++p) {
    for (int q = p; q < 2; ++q) {
      ints.set_one_body(p, q, value(rng));
      for (int r = 0; r < 2; ++r) {
        for (int s = r; s < 2; ++s) {
          ints.set_two_body(p, q, r, s, value(rng));
        }
      }
    }
  }
  const auto ordering = SpinOrbitalOrdering::interleaved;
  return {map_operator(build_hamiltonian(ints, ordering),
                       MappingKind::jordan_wigner),
          map_operator(build_number_operator(4), MappingKind::jordan_wigner),
          map_operator(build_s2_operator(4, ordering),
                       MappingKind::jordan_wigner)};
}

}  // namespace

TEST_CASE("diagonalize a single-qubit Z") {
  const PauliSum z0 = PauliSum::single(PauliWord{1, 0, 1}, 1.0);
  const EigenSystem sys = diagonalize(z0);
  CHECK(sys.values(0) == doctest::Approx(-1.0));
  CHECK(sys.values(1) == doctest::Approx(1.0));
}

TEST_CASE("diagonalize matches the dense oracle on random sums") {
  std::mt19937 rng(401);
  for (int trial = 0; trial < 10; ++trial) {
    const PauliSum a = random_hermitian_sum(5, 14, rng);
    const EigenSystem sys = diagonalize(a);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> oracle(sum_matrix(a));
    CHECK((sys.values - oracle.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);
    const Eigen::MatrixXcd m = sum_matrix(a);
    CHECK((m * sys.vectors - sys.vectors * sys.values.asDiagonal()).norm() <
          1e-9);
  }
}

TEST_CASE("diagonalize rejects bad input") {
  const PauliSum skew = PauliSum::single(PauliWord{2, 1, 1}, 1.0);
  CHECK_THROWS_AS(diagonalize(skew), ContractError);
  CHECK_THROWS_AS(diagonalize(PauliSum::identity(13)), CapacityError);
}

TEST_CASE("labels are near integers and half-integers") {
  const SmallSystem sys = make_system(17);
  const LabeledSpectrum spectrum = label_spectrum(sys.h, sys.n_op, sys.s2);
  REQUIRE(spectrum.levels.size() == 16);

  CHECK(spectrum.counts_by_n(4) == std::vector<int>{1, 4, 6, 4, 1});
  CHECK(spectrum.counts_by_spin(1.0) == std::vector<int>{5, 8, 3});

  double prev = spectrum.levels.front().energy;
  for (const auto& level : spectrum.levels) {
    CHECK(level.energy >= prev - 1e-12);
    prev = level.energy;
    CHECK(std::abs(level.n_electrons - std::lround(level.n_electrons)) <
          1e-6);
    const double two_s = 2.0 * level.spin;
    CHECK(std::abs(two_s - std::lround(two_s)) < 2e-6);
  }
}

TEST_CASE("labeling resolves degenerate groups") {
  // N itself is massively degenerate; labels must still split cleanly by
  // simultaneous diagonalization inside each group.
  const SmallSystem sys = make_system(19);
  const LabeledSpectrum spectrum =
      label_spectrum(sys.n_op, sys.n_op, sys.s2);
  for (const auto& level : spectrum.levels) {
    CHECK(std::abs(level.energy - level.n_electrons) < 1e-9);
  }
  CHECK(spectrum.counts_by_spin(1.0) == std::vector<int>{5, 8, 3});
}

TEST_CASE("labeling rejects non-commuting operators") {
  std::mt19937 rng(421);
  const SmallSystem sys = make_system(23);
  const PauliSum random_h = random_hermitian_sum(4, 12, rng);
  CHECK_THROWS_AS(label_spectrum(random_h, sys.n_op, sys.s2), ContractError);
}

TEST_CASE("compare_spectra against the identity transformation") {
  const SmallSystem sys = make_system(29);
  const LabeledSpectrum spectrum = label_spectrum(sys.h, sys.n_op, sys.s2);
  std::vector<double> same;
  for (const auto& level : spectrum.levels) {
    same.push_back(level.energy);
  }
  const SymmetrySpec spec = make_number_spec(sys.n_op, 2.0);
  // Shift with mu = 0 predicted values equal the originals, so reuse the
  // shift formula with mu -> 0 as an identity check.
  const SpectrumMatchReport report =
      compare_spectra(spectrum, same, spec, AdaptMethod::shift, 0.0);
  CHECK(report.matched_count == 6);
  CHECK(report.max_matched_deviation < 1e-12);
  CHECK(report.max_prediction_deviation < 1e-12);
}

TEST_CASE("compare_spectra verifies each method's closed form") {
  const SmallSystem sys = make_system(31);
  const LabeledSpectrum spectrum = label_spectrum(sys.h, sys.n_op, sys.s2);
  const SymmetrySpec spec = make_number_spec(sys.n_op, 2.0);

  const auto run = [&](const AdaptedOperator& op, AdaptMethod method,
                       double mu) {
    const EigenSystem transformed = diagonalize(op.result);
    std::vector<double> evals(transformed.values.data(),
                              transformed.values.data() +
                                  transformed.values.size());
    return compare_spectra(spectrum, evals, spec, method, mu);
  };

  const auto php = run(project_hamiltonian(sys.h, spec),
                       AdaptMethod::lowdin_php, 0.0);
  CHECK(php.matched_count == 6);
  CHECK(php.max_prediction_deviation < 1e-6);

  const auto shift = run(shift_operator(sys.h, spec, 16.0),
                         AdaptMethod::shift, 16.0);
  CHECK(shift.matched_count == 6);
  CHECK(shift.max_prediction_deviation < 1e-6);

  const auto reflect = run(reflect_operator(sys.h, spec),
                           AdaptMethod::reflection, 0.0);
  CHECK(reflect.matched_count == 6);
  CHECK(reflect.max_prediction_deviation < 1e-6);
}

TEST_CASE("compare_spectra flags missing target levels") {
  const SmallSystem sys = make_system(37);
  const LabeledSpectrum spectrum = label_spectrum(sys.h, sys.n_op, sys.s2);
  const SymmetrySpec spec = make_number_spec(sys.n_op, 2.0);
  const std::vector<double> rubbish(16, 1234.5);
  CHECK_THROWS_AS(compare_spectra(spectrum, rubbish, spec,
                                  AdaptMethod::lowdin_php, 0.0),
                  MismatchError);
}

TEST_CASE("shuffling degenerate eigenvectors does not change labels") {
  const SmallSystem sys = make_system(41);
  EigenSystem raw = diagonalize(sys.n_op);

  // Scramble vectors inside each degenerate group with a fixed rotation.
  std::mt19937 rng(43);
  Eigen::Index start = 0;
  while (start < raw.values.size()) {
    Eigen::Index end = start;
    while (end < raw.values.size() &&
           raw.values(end) - raw.values(start) < 1e-9) {
      ++end;
    }
    const Eigen::Index size = end - start;
    if (size > 1) {
      Eigen::MatrixXcd gauss(size, size);
      std::normal_distribution<double> dist;
      for (Eigen::Index i = 0; i < size; ++i) {
        for (Eigen::Index j = 0; j < size; ++j) {
          gauss(i, j) = complex{dist(rng), dist(rng)};
        }
      }
      const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(gauss);
      raw.vectors.middleCols(start, size) =
          (raw.vectors.middleCols(start, size) *
           Eigen::MatrixXcd(qr.householderQ()))
              .eval();
    }
    start = end;
  }

  const PauliSum ops[] = {sys.n_op, sys.s2};
  const EigenSystem resolved = resolve_degeneracies(std::move(raw), ops);
  std::vector<std::pair<int, int>> labels;
  for (Eigen::Index k = 0; k < resolved.values.size(); ++k) {
    const StateVector psi(4, resolved.vectors.col(k));
    const double n = expectation(sys.n_op, psi).real();
    const double s2 = expectation(sys.s2, psi).real();
    const double s = 0.5 * (std::sqrt(1.0 + 4.0 * s2) - 1.0);
    CHECK(std::abs(n - std::lround(n)) < 1e-8);
    labels.emplace_back(int(std::lround(n)), int(std::lround(2.0 * s)));
  }
  // Same multiset as the direct labeling.
  const LabeledSpectrum direct = label_spectrum(sys.n_op, sys.n_op, sys.s2);
  std::vector<std::pair<int, int>> expected;
  for (const auto& level : direct.levels) {
    expected.emplace_back(int(std::lround(level.n_electrons)),
                          int(std::lround(2.0 * level.spin)));
  }
  std::sort(labels.begin(), labels.end());
  std::sort(expected.begin(), expected.end());
  CHECK(labels == expected);
}
