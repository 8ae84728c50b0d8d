#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "liftcode/monomials.hpp"

namespace mono = liftcode::monomials;
using mono::ExponentVector;

TEST_CASE("bitwise partial order", "[monomials]") {
  REQUIRE(mono::le2({1, 2}, {1, 3}));
  REQUIRE_FALSE(mono::le2({2, 0}, {1, 3}));
  REQUIRE(mono::le2({0, 0}, {0, 0}));
  REQUIRE_THROWS_AS(mono::le2({1}, {1, 2}), std::invalid_argument);
  REQUIRE(mono::le2_scalar(5, 7));
  REQUIRE_FALSE(mono::le2_scalar(2, 5));
}

TEST_CASE("degree reduction map", "[monomials]") {
  // a < s is fixed; otherwise fold into [s, qs)
  REQUIRE(mono::mod_star(6, 4, 1) == 3);
  REQUIRE(mono::mod_star(8, 4, 2) == 2);
  REQUIRE(mono::mod_star(0, 4, 2) == 0);
  REQUIRE(mono::mod_star(1, 4, 2) == 1);
  REQUIRE(mono::mod_star(3, 4, 2) == 3);
  for (std::uint64_t a = 2; a < 40; ++a)
    REQUIRE(mono::mod_star(a + 6, 4, 2) == mono::mod_star(a, 4, 2));
}

TEST_CASE("achievable degrees of submasks", "[monomials]") {
  REQUIRE(mono::achievable_degrees({3, 0}) ==
          std::vector<std::uint64_t>{0, 1, 2, 3});
  REQUIRE(mono::achievable_degrees({3, 3}) ==
          std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6});
  // gaps appear once bits are sparse: submask degrees of 4 are {0, 4}
  REQUIRE(mono::achievable_degrees({4}) == std::vector<std::uint64_t>{0, 4});
  // exhaustive cross-check against direct submask enumeration
  const ExponentVector d{5, 6};
  std::set<std::uint64_t> direct;
  for (std::uint32_t i0 = 0; i0 <= 5; ++i0)
    for (std::uint32_t i1 = 0; i1 <= 6; ++i1)
      if ((i0 & 5u) == i0 && (i1 & 6u) == i1) direct.insert(i0 + i1);
  const auto dp = mono::achievable_degrees(d);
  REQUIRE(std::set<std::uint64_t>(dp.begin(), dp.end()) == direct);
}

TEST_CASE("single-evaluation badness over F4", "[monomials]") {
  const std::uint32_t q = 4;
  const std::uint64_t thr = 3;  // d = q - r with r = 1
  REQUIRE_FALSE(mono::is_dstar_bad({2, 2}, q, thr).bad);
  const auto c = mono::is_dstar_bad({3, 0}, q, thr);
  REQUIRE(c.bad);
  REQUIRE(c.evidence.has_value());
  REQUIRE(c.evidence->witness == ExponentVector{3, 0});
  REQUIRE(c.evidence->reduced_degree >= thr);
}

TEST_CASE("order-s badness over F4, s = 2", "[monomials]") {
  const std::uint32_t q = 4, s = 2;
  const std::uint64_t thr = 7;  // d = qs - r with r = 1
  const auto c1 = mono::is_ds_star_bad({6, 1}, q, s, thr);
  REQUIRE(c1.bad);
  REQUIRE(c1.evidence->witness == ExponentVector{6, 1});
  REQUIRE(mono::is_ds_star_bad({3, 4}, q, s, thr).bad);
  REQUIRE_FALSE(mono::is_ds_star_bad({2, 6}, q, s, thr).bad);
  // type violation: deg_q exceeds s - 1
  REQUIRE_THROWS_AS(mono::is_ds_star_bad({4, 4}, q, s, thr),
                    std::invalid_argument);
}

TEST_CASE("residue badness agrees with the nine known tuples", "[monomials]") {
  const std::set<ExponentVector> expected{
      {3, 0}, {2, 1}, {3, 1}, {1, 2}, {3, 2},
      {0, 3}, {1, 3}, {2, 3}, {3, 3}};
  std::set<ExponentVector> got;
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b)
      if (mono::is_qr_bad({a, b}, 4, 1).bad) got.insert({a, b});
  REQUIRE(got == expected);
  REQUIRE_FALSE(mono::is_qr_bad({2, 2}, 4, 1).bad);
}

TEST_CASE("residue badness with r = 2 and its witness", "[monomials]") {
  const auto c = mono::is_qr_bad({3, 3}, 4, 2);
  REQUIRE(c.bad);
  REQUIRE(mono::degree(c.evidence->witness) % 4 == 2);  // (q - r) mod q
  REQUIRE(mono::le2(c.evidence->witness, {3, 3}));
}

TEST_CASE("good monomial enumeration", "[monomials]") {
  // univariate: exactly the monomials of degree < d
  const auto uni = mono::enumerate_good(1, 1, 4, 3);
  REQUIRE(uni == std::vector<ExponentVector>{{0}, {1}, {2}});

  const auto basis = mono::enumerate_good(2, 1, 4, 3);
  REQUIRE(basis.size() == 7);
  REQUIRE(std::find(basis.begin(), basis.end(), ExponentVector{2, 2}) !=
          basis.end());

  // threshold at qs disables the bad window entirely
  REQUIRE(mono::enumerate_good(2, 1, 4, 4).size() == 16);
}

TEST_CASE("brute-force bad count", "[monomials]") {
  REQUIRE(mono::count_bad_bruteforce(2, 1, 4, 3) == 9);
  REQUIRE(mono::count_bad_bruteforce(2, 1, 4, 4) == 0);
  // partition: good + bad covers all of Z_q^m
  REQUIRE(mono::enumerate_good(2, 1, 4, 3).size() +
              mono::count_bad_bruteforce(2, 1, 4, 3) ==
          16);
}

TEST_CASE("graded-lex enumeration order is stable", "[monomials]") {
  const auto basis = mono::enumerate_good(2, 1, 4, 4);
  for (std::size_t k = 1; k < basis.size(); ++k)
    REQUIRE(mono::detail::graded_lex_less(basis[k - 1], basis[k]));
}
