#include <doctest.h>

#include "dopsym/errors.hpp"
#include "dopsym/exact_linalg.hpp"
#include "dopsym/rational.hpp"
#include "support.hpp"

using dopsym::Rat;

TEST_SUITE("rational") {
  TEST_CASE("parse accepts integers and fractions in lowest terms") {
    CHECK(Rat::parse("3/6") == Rat(1, 2));
    CHECK(Rat::parse("-1/2") == Rat(-1, 2));
    CHECK(Rat::parse("+5") == Rat(5));
    CHECK(Rat::parse(" 7 ") == Rat(7));
  }

  TEST_CASE("parse rejects decimals and malformed input") {
    for (const char* bad : {"0.5", "1e3", "", "abc", "1/0", "1/-2", "1//2", "--1", "1/2/3"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(Rat::parse(bad), dopsym::ParseError);
    }
  }

  TEST_CASE("printing") {
    CHECK(Rat(6, -4).str() == "-3/2");
    CHECK(Rat(0, 5).str() == "0");
    CHECK(Rat(8, 4).str() == "2");
  }

  TEST_CASE("combinatorial helpers") {
    CHECK(dopsym::binomial(5, 2) == Rat(10));
    CHECK(dopsym::binomial(3, 5) == Rat(0));
    CHECK(dopsym::falling_factorial(Rat(5), 3) == Rat(60));
    CHECK(dopsym::falling_factorial(Rat(1, 2), 2) == Rat(-1, 4));
    CHECK(dopsym::falling_factorial(Rat(7), 0) == Rat(1));
    CHECK(dopsym::pow(Rat(-2, 3), 3) == Rat(-8, 27));
  }

  TEST_CASE("division by zero is an error") {
    CHECK_THROWS_AS(Rat(1) / Rat(0), dopsym::Error);
  }

  TEST_CASE("field axioms on random rationals") {
    testgen::Rng rng(11);
    for (int trial = 0; trial < 300; ++trial) {
      const Rat a = testgen::rat(rng, 50);
      const Rat b = testgen::rat(rng, 50);
      const Rat c = testgen::nonzero_rat(rng, 50);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK((a / c) * c == a);
      CHECK(a - a == Rat(0));
      CHECK(Rat::parse(a.str()) == a);
    }
  }
}

TEST_SUITE("linalg") {
  using dopsym::RatMatrix;

  RatMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = static_cast<Eigen::Index>(rows.begin()->size());
    RatMatrix m = dopsym::zero_matrix(r, c);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
      Eigen::Index j = 0;
      for (long v : row) m(i, j++) = Rat(v);
      ++i;
    }
    return m;
  }

  TEST_CASE("rank and nullspace") {
    const RatMatrix m = from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    CHECK(dopsym::rank(m) == 2);
    CHECK(dopsym::bareiss_rank(m) == 2);
    const RatMatrix n = dopsym::nullspace(m);
    CHECK(n.cols() == 1);
    CHECK(dopsym::is_zero(dopsym::multiply(m, n)));
  }

  TEST_CASE("solve rejects inconsistent systems") {
    const RatMatrix m = from_rows({{1, 1}, {2, 2}});
    dopsym::RatVector b = dopsym::zero_vector(2);
    b(0) = Rat(1);
    b(1) = Rat(3);
    CHECK_THROWS(dopsym::solve(m, b));
  }

  TEST_CASE("Bareiss rank matches rref rank on random fractional matrices") {
    testgen::Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
      const auto rows = testgen::uniform(rng, 1, 6);
      const auto cols = testgen::uniform(rng, 1, 6);
      RatMatrix m = dopsym::zero_matrix(rows, cols);
      for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
          if (testgen::uniform(rng, 0, 2) != 0) m(i, j) = testgen::rat(rng);
        }
      }
      // a dependent row to keep ranks interesting
      if (rows > 2) m.row(rows - 1) = m.row(0) * Rat(3, 7) - m.row(1);
      const auto r = dopsym::rank(m);
      CHECK(dopsym::bareiss_rank(m) == r);
      CHECK(dopsym::nullspace(m).cols() == cols - r);
    }
  }

  TEST_CASE("sparse echelon coordinates") {
    dopsym::SparseEchelon e;
    const dopsym::SparseVec u{{0, Rat(1)}, {3, Rat(2)}};
    const dopsym::SparseVec v{{1, Rat(1)}, {3, Rat(-1)}};
    CHECK(e.insert(u));
    CHECK(e.insert(v));
    const auto w = dopsym::axpy(dopsym::axpy({}, Rat(2), u), Rat(-5, 3), v);
    CHECK_FALSE(e.insert(w));
    std::vector<Rat> coords;
    REQUIRE(e.coordinates(w, &coords));
    CHECK(coords == std::vector<Rat>{Rat(2), Rat(-5, 3)});
    CHECK_FALSE(e.coordinates({{2, Rat(1)}}, &coords));
    CHECK(e.rank() == 2);
  }
}
