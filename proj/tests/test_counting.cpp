#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <stdexcept>

#include "liftcode/counting.hpp"

namespace counting = liftcode::counting;
using counting::BigInt;
using liftcode::monomials::ExponentVector;

TEST_CASE("exact binomial coefficients", "[counting]") {
  REQUIRE(counting::binomial(0, 0) == 1);
  REQUIRE(counting::binomial(5, 2) == 10);
  REQUIRE(counting::binomial(5, 7) == 0);
  REQUIRE(counting::binomial(64, 32) == BigInt("1832624140942590534"));
}

TEST_CASE("transfer matrix entries", "[counting]") {
  const auto A2 = counting::build_transfer_matrix(2);
  REQUIRE(A2.entries[0][0] == 3);
  REQUIRE(A2.entries[0][1] == 1);
  REQUIRE(A2.entries[1][0] == 0);
  REQUIRE(A2.entries[1][1] == 1);

  const auto A3 = counting::build_transfer_matrix(3);
  REQUIRE(A3.entries[0][0] == 7);
  REQUIRE(A3.entries[0][1] == 1);
  REQUIRE(A3.entries[0][2] == 0);
  REQUIRE(A3.entries[1][0] == 1);
  REQUIRE(A3.entries[1][1] == 3);
  REQUIRE(A3.entries[1][2] == 3);
  REQUIRE(A3.entries[2][2] == 1);  // absorbing tail state

  REQUIRE_THROWS_AS(counting::build_transfer_matrix(1), std::invalid_argument);
}

TEST_CASE("base states from direct enumeration", "[counting]") {
  auto expect = [](int m, std::uint32_t r, int ell,
                   const std::vector<long>& counts) {
    const auto st = counting::bruteforce_base_state(m, r, ell);
    REQUIRE(st.counts.size() == static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j)
      REQUIRE(st.counts[static_cast<std::size_t>(j)] ==
              counts[static_cast<std::size_t>(j)]);
  };
  expect(2, 1, 1, {3, 0});
  expect(2, 1, 2, {9, 0});
  expect(2, 2, 1, {4, 1});
  expect(3, 1, 1, {7, 1, 0});
  expect(3, 2, 1, {8, 4, 0});
  expect(3, 3, 2, {56, 31, 1});
  REQUIRE(counting::minimal_base_ell(1) == 1);
  REQUIRE(counting::minimal_base_ell(2) == 1);
  REQUIRE(counting::minimal_base_ell(3) == 2);
  REQUIRE_THROWS_AS(counting::bruteforce_base_state(2, 3, 2),
                    std::invalid_argument);  // r > m
}

TEST_CASE("recurrence agrees with enumeration one level up", "[counting]") {
  for (auto [m, r] :
       std::vector<std::pair<int, std::uint32_t>>{{2, 1}, {2, 2}, {3, 2}}) {
    auto st = counting::bruteforce_base_state(m, r,
                                              counting::minimal_base_ell(r));
    const auto next = counting::iterate_recurrence(st, st.ell + 1);
    const auto direct = counting::bruteforce_base_state(m, r, st.ell + 1);
    REQUIRE(next.counts == direct.counts);
  }
}

TEST_CASE("membership sets are the recurrence's ground truth", "[counting]") {
  const auto sets = counting::bruteforce_state_sets(2, 2, 2);
  // (3,3) appears in both S_0 and S_1 at q = 4, r = 2
  const ExponentVector d{3, 3};
  for (int j : {0, 1}) {
    const auto& sj = sets[static_cast<std::size_t>(j)];
    REQUIRE(std::find(sj.begin(), sj.end(), d) != sj.end());
  }
}

TEST_CASE("witness degree reduction between states", "[counting]") {
  REQUIRE(counting::weight_reduction({3, 3}, 1, 0, 2) ==
          ExponentVector{1, 1});
  const auto a = counting::weight_reduction({3, 2}, 1, 0, 2);
  REQUIRE(liftcode::monomials::degree(a) == 1);
  REQUIRE(liftcode::monomials::le2(a, {3, 2}));
  REQUIRE(counting::drop_and_lead({3, 3}, 2) ==
          std::make_pair(ExponentVector{1, 1}, ExponentVector{1, 1}));
}

TEST_CASE("dominant eigenvalues and the sandwich bounds", "[counting]") {
  const auto r2 =
      counting::top_eigenvalue(counting::build_transfer_matrix(2), 1e-13);
  REQUIRE(r2.lambda == Catch::Approx(3.0).epsilon(1e-9));
  REQUIRE(r2.gap == Catch::Approx(2.0 - std::log2(3.0)).epsilon(1e-9));
  const auto r3 =
      counting::top_eigenvalue(counting::build_transfer_matrix(3), 1e-13);
  REQUIRE(r3.lambda == Catch::Approx(5.0 + std::sqrt(5.0)).epsilon(1e-9));
  for (int m = 2; m <= 12; ++m) {
    const auto rep =
        counting::top_eigenvalue(counting::build_transfer_matrix(m), 1e-13);
    REQUIRE(rep.bounds_ok);
    REQUIRE(rep.lambda >= std::exp2(m - 1));
    REQUIRE(rep.lambda <= std::exp2(m));
  }
  REQUIRE_THROWS_AS(
      counting::top_eigenvalue(counting::build_transfer_matrix(2), 0.0),
      std::invalid_argument);
}

TEST_CASE("exact rate fractions", "[counting]") {
  const auto uni = counting::exact_rate(1, 1, 4, 3);
  REQUIRE(uni.num == 3);
  REQUIRE(uni.den == 4);
  const auto r = counting::exact_rate(2, 1, 4, 3);
  REQUIRE(r.good == 7);
  REQUIRE(r.total == 16);
  REQUIRE(counting::exact_rate(2, 1, 4, 4).value == 1.0);
}

TEST_CASE("distance bounds", "[counting]") {
  const auto b1 = counting::distance_lower_bound(2, 1, 4, 1);
  REQUIRE(b1.absolute == 4);  // 1 + r(q-1) at s = 1, m = 2
  const auto b2 = counting::distance_lower_bound(2, 2, 8, 4);
  REQUIRE(b2.absolute == 13);
  const auto b3 = counting::distance_lower_bound(2, 2, 8, 2);  // r = s
  REQUIRE(b3.rel_num == 6);                                    // (q-s)
  REQUIRE(b3.rel_den == 64);
  REQUIRE(counting::line_distance_full(1, 2) == 3);
  REQUIRE(counting::correction_radius(1, 4) == 1);
  REQUIRE(counting::correction_radius(2, 4) == 0);
  REQUIRE(counting::correction_radius(2, 2) == 0);
  REQUIRE(counting::correction_radius(1, 1) == 0);
}

TEST_CASE("redundancy exponent ranges and minimization", "[counting]") {
  using counting::RedundancyFamily;
  REQUIRE_THROWS_AS(
      counting::redundancy_exponent(RedundancyFamily::pir_lifted_mult, 0.9, 3),
      std::invalid_argument);  // above (m-1)/m
  REQUIRE_THROWS_AS(
      counting::redundancy_exponent(RedundancyFamily::batch_lifted_rs, 0.2, 3),
      std::invalid_argument);  // below (m-2)/m
  const auto rep =
      counting::redundancy_calculators(RedundancyFamily::batch_pir, 0.5);
  REQUIRE(rep.m >= 4);  // batch families need m >= 2/(1-eps)
  REQUIRE(rep.exponent > 0.0);
  REQUIRE(rep.exponent < 1.0);
  // unlifted multiplicity exponent is a strict upper envelope
  for (int m = 2; m <= 8; ++m) {
    const double eps = (m - 1.0) / m;
    REQUIRE(counting::redundancy_exponent(RedundancyFamily::pir_lifted_mult,
                                          eps, m) <
            counting::redundancy_exponent(RedundancyFamily::pir_mult, eps, m));
  }
}
