#include <doctest.h>

#include <string>

#include "symq/fermion.hpp"

using namespace symq;

TEST_CASE("minimal one-orbital file") {
  const std::string text =
      "&FCI NORB=1,NELEC=2,MS2=0,\n"
      " ORBSYM=1,\n"
      " ISYM=1,\n"
      "&END\n"
      " 0.5 1 1 0 0\n"
      " 0.25 1 1 1 1\n";
  const IntegralSet ints = load_fcidump(text);
  CHECK(ints.n_orbitals() == 1);
  CHECK(ints.n_electrons == 2);
  CHECK(ints.ms2 == 0);
  CHECK(ints.orbsym == std::vector<int>{1});
  CHECK(ints.one_body(0, 0) == 0.5);
  CHECK(ints.two_body(0, 0, 0, 0) == 0.25);
  CHECK(ints.v_nn == 0.0);
  CHECK(ints.core_energy == 0.0);
}

TEST_CASE("slash-terminated header, repeats and fortran exponents") {
  const std::string text =
      "&FCI NORB=3, NELEC=2, MS2=0,\n"
      " ORBSYM=3*1, ISYM=1,\n"
      " /\n"
      " 1.5D-1 1 2 0 0\n"
      " -2.0d0 3 3 0 0\n";
  const IntegralSet ints = load_fcidump(text);
  CHECK(ints.orbsym == std::vector<int>{1, 1, 1});
  CHECK(ints.one_body(0, 1) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(ints.one_body(1, 0) == doctest::Approx(0.15).epsilon(1e-15));
  CHECK(ints.one_body(2, 2) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("two-electron entry fills all eight permutations") {
  const std::string text =
      "&FCI NORB=2,NELEC=2,MS2=0,\n"
      "&END\n"
      " 0.625 1 2 1 2\n";
  const IntegralSet ints = load_fcidump(text);
  const int images[8][4] = {{0, 1, 0, 1}, {1, 0, 0, 1}, {0, 1, 1, 0},
                            {1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, 0, 1},
                            {0, 1, 1, 0}, {1, 0, 1, 0}};
  for (const auto& im : images) {
    CHECK(ints.two_body(im[0], im[1], im[2], im[3]) == 0.625);
  }
  CHECK(ints.two_body(0, 0, 0, 0) == 0.0);
}

TEST_CASE("scalar line is the nuclear repulsion by default") {
  const std::string text =
      "&FCI NORB=1,NELEC=1,MS2=1,\n"
      "&END\n"
      " 0.75 0 0 0 0\n"
      " -1.0 1 1 0 0\n";
  const IntegralSet ints = load_fcidump(text);
  CHECK(ints.v_nn == 0.75);
  CHECK(ints.core_energy == 0.0);
  CHECK(ints.ms2 == 1);
}

TEST_CASE("VNN header splits the scalar into repulsion plus core") {
  const std::string text =
      "&FCI NORB=1,NELEC=2,MS2=0,VNN=0.5,\n"
      "&END\n"
      " -7.0 0 0 0 0\n"
      " -1.0 1 1 0 0\n";
  const IntegralSet ints = load_fcidump(text);
  CHECK(ints.v_nn == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(ints.core_energy == doctest::Approx(-7.5).epsilon(1e-15));
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(load_fcidump("no header here\n"), ParseError);
  CHECK_THROWS_AS(load_fcidump("&FCI NELEC=2,\n&END\n"), ParseError);

  const std::string out_of_range =
      "&FCI NORB=2,\n&END\n 0.5 3 1 0 0\n";
  CHECK_THROWS_WITH_AS(load_fcidump(out_of_range),
                       doctest::Contains("line 3"), ParseError);

  const std::string conflict =
      "&FCI NORB=2,\n&END\n 0.5 1 2 0 0\n 0.75 2 1 0 0\n";
  CHECK_THROWS_WITH_AS(load_fcidump(conflict),
                       doctest::Contains("conflicting"), ParseError);

  const std::string near_duplicate =
      "&FCI NORB=2,\n&END\n 0.5 1 2 0 0\n 0.5000000000001 2 1 0 0\n";
  CHECK_NOTHROW(load_fcidump(near_duplicate));

  const std::string malformed =
      "&FCI NORB=2,\n&END\n 0.5 1 2 0\n";
  CHECK_THROWS_AS(load_fcidump(malformed), ParseError);

  const std::string one_zero_index =
      "&FCI NORB=2,\n&END\n 0.5 1 0 0 0\n";
  CHECK_THROWS_AS(load_fcidump(one_zero_index), ParseError);

  CHECK_THROWS_AS(load_fcidump_file("/does/not/exist.fcidump"), ParseError);
}

TEST_CASE("orbsym count must match norb") {
  const std::string text = "&FCI NORB=3, ORBSYM=1,1,\n&END\n";
  CHECK_THROWS_AS(load_fcidump(text), ParseError);
}
