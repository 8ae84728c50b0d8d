#include <catch2/catch_amalgamated.hpp>

#include <stdexcept>

#include "liftcode/gf2e.hpp"

using liftcode::gf2e::Elem;
using liftcode::gf2e::Field;

TEST_CASE("every tabulated modulus is accepted", "[gf2e]") {
  for (int ell = 1; ell <= 16; ++ell) {
    Field F(ell);
    REQUIRE(F.q() == (1u << ell));
    REQUIRE(F.uses_tables() == (ell <= 12));
  }
  REQUIRE_THROWS_AS(Field(0), std::invalid_argument);
  REQUIRE_THROWS_AS(Field(17), std::invalid_argument);
}

TEST_CASE("GF(4) multiplication table", "[gf2e]") {
  Field F(2);
  REQUIRE(F.add(2, 3) == 1);
  REQUIRE(F.mul(2, 3) == 1);
  REQUIRE(F.inv(2) == 3);
  REQUIRE(F.inv(3) == 2);
  REQUIRE(F.pow(2, 2) == 3);
}

TEST_CASE("edge conventions and domain checks", "[gf2e]") {
  Field F(3);
  REQUIRE(F.pow(0, 0) == 1);  // empty product
  REQUIRE(F.pow(0, 5) == 0);
  REQUIRE(F.mul(0, 7) == 0);
  REQUIRE_THROWS_AS(F.inv(0), std::domain_error);
  REQUIRE_THROWS_AS(F.add(8, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(F.mul(1, 9), std::invalid_argument);
}

TEST_CASE("table path equals carry-less reduction path", "[gf2e]") {
  for (int ell : {1, 2, 3, 4, 8}) {
    Field F(ell);
    for (Elem a = 0; a < F.q(); ++a)
      for (Elem b = 0; b < F.q(); ++b)
        REQUIRE(F.mul(a, b) == F.mul_reduce(a, b));
  }
}

TEST_CASE("field axioms, exhaustive at small sizes", "[gf2e]") {
  for (int ell : {1, 2, 3}) {
    Field F(ell);
    const auto q = F.q();
    for (Elem a = 0; a < q; ++a) {
      REQUIRE(F.pow(a, q) == a);
      for (Elem b = 0; b < q; ++b) {
        REQUIRE(F.mul(a, b) == F.mul(b, a));
        for (Elem c = 0; c < q; ++c) {
          REQUIRE(F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c));
          REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
    }
    for (Elem a = 1; a < q; ++a) {
      REQUIRE(F.mul(a, F.inv(a)) == 1);
      REQUIRE(F.div(1, a) == F.inv(a));
    }
  }
}

TEST_CASE("large fields: inverse via exponentiation", "[gf2e]") {
  Field F(16);
  for (Elem a : {1u, 2u, 777u, 54321u, 65535u}) {
    REQUIRE(F.mul(a, F.inv(a)) == 1);
    REQUIRE(F.pow(a, F.q() - 1) == 1);
  }
}

TEST_CASE("all_elements enumerates the field once", "[gf2e]") {
  Field F(4);
  const auto all = F.all_elements();
  REQUIRE(all.size() == 16);
  for (Elem a = 0; a < 16; ++a) REQUIRE(all[a] == a);
}
