#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>

#include "liftcode/codes.hpp"
#include "liftcode/rng.hpp"

namespace codes = liftcode::codes;
namespace poly = liftcode::poly;
using codes::CodeSpec;
using liftcode::gf2e::Elem;
using liftcode::gf2e::Field;
using liftcode::monomials::ExponentVector;

TEST_CASE("spec validation", "[codes]") {
  const auto spec = CodeSpec::make(2, 2, 4, 1);
  REQUIRE(spec.ell == 2);
  REQUIRE(spec.qs() == 8);
  REQUIRE(spec.d() == 7);
  REQUIRE(spec.num_points() == 16);
  REQUIRE(spec.symbol_width() == 3);
  REQUIRE_THROWS_AS(CodeSpec::make(2, 1, 3, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(CodeSpec::make(2, 8, 4, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(CodeSpec::make(2, 1, 4, 4), std::invalid_argument);
  REQUIRE_THROWS_AS(CodeSpec::make(2, 1, 4, 0), std::invalid_argument);
}

TEST_CASE("good basis for the bivariate lifted RS code over F4", "[codes]") {
  const auto basis = codes::build_code(CodeSpec::make(2, 1, 4, 1));
  REQUIRE(basis.monomials.size() == 7);
  auto has = [&](const ExponentVector& d) {
    return std::find(basis.monomials.begin(), basis.monomials.end(), d) !=
           basis.monomials.end();
  };
  REQUIRE(has({2, 2}));
  REQUIRE_FALSE(has({3, 3}));
}

TEST_CASE("good basis for the lifted multiplicity code over F4", "[codes]") {
  const auto basis = codes::build_code(CodeSpec::make(2, 2, 4, 1));
  REQUIRE(basis.monomials.size() == 30);
  auto has = [&](const ExponentVector& d) {
    return std::find(basis.monomials.begin(), basis.monomials.end(), d) !=
           basis.monomials.end();
  };
  REQUIRE(has({2, 6}));
  REQUIRE_FALSE(has({6, 1}));
  REQUIRE_FALSE(has({3, 4}));
}

TEST_CASE("point indexing is a bijection", "[codes]") {
  const auto spec = CodeSpec::make(3, 1, 4, 1);
  for (std::uint64_t idx = 0; idx < spec.num_points(); ++idx)
    REQUIRE(codes::point_index(codes::index_point(idx, spec), spec) == idx);
}

TEST_CASE("line family sizes", "[codes]") {
  Field F2(1), F4(2);
  REQUIRE(codes::all_lines(1, 4, F4).size() == 1);
  REQUIRE(codes::all_lines(2, 2, F2).size() == 6);
  REQUIRE(codes::all_lines(2, 4, F4).size() == 20);
  // q^{m-1} (q^m - 1)/(q - 1) distinct lines, each hit once
  std::set<std::vector<Elem>> seen;
  for (const auto& L : codes::all_lines(2, 4, F4)) {
    std::vector<Elem> key = L.base;
    key.insert(key.end(), L.dir.begin(), L.dir.end());
    REQUIRE(seen.insert(key).second);
  }
  const auto through = codes::lines_through({1, 2}, 2, 4, F4);
  REQUIRE(through.size() == 5);  // (q^m - 1)/(q - 1)
  for (const auto& L : through) {
    bool hit = false;
    for (Elem t = 0; t < 4; ++t)
      if (poly::line_point(L, t, F4) == std::vector<Elem>{1, 2}) hit = true;
    REQUIRE(hit);
  }
}

TEST_CASE("encoding and membership of a lifted-only monomial", "[codes]") {
  const auto spec = CodeSpec::make(2, 1, 4, 1);
  Field F(spec.ell);
  const auto basis = codes::build_code(spec);
  // X1^2 X2^2 has degree 4 >= d yet every line restriction reduces below 3
  std::vector<Elem> msg(basis.monomials.size(), 0);
  const auto it = std::find(basis.monomials.begin(), basis.monomials.end(),
                            ExponentVector{2, 2});
  REQUIRE(it != basis.monomials.end());
  msg[static_cast<std::size_t>(it - basis.monomials.begin())] = 1;
  const auto word = codes::encode(basis, msg, F);
  REQUIRE(codes::membership_test(word, spec, F).member);

  const auto back = codes::message_for(basis, word, F);
  REQUIRE(back.has_value());
  REQUIRE(*back == msg);

  auto corrupted = word;
  corrupted.symbols[5][0] ^= 1;
  const auto res = codes::membership_test(corrupted, spec, F);
  REQUIRE_FALSE(res.member);
  REQUIRE(res.failing_line.has_value());
}

TEST_CASE("non-codeword detection with derivative slots", "[codes]") {
  const auto spec = CodeSpec::make(2, 2, 4, 1);
  Field F(spec.ell);
  // X1^6 X2 is bad: its evaluation violates some line's degree bound
  auto f = poly::MultiPoly::monomial({6, 1}, 1);
  codes::Codeword w;
  w.symbols.resize(spec.num_points());
  for (std::uint64_t idx = 0; idx < spec.num_points(); ++idx)
    w.symbols[idx] = poly::eval_with_derivatives(
        f, codes::index_point(idx, spec), spec.s, F);
  REQUIRE_FALSE(codes::membership_test(w, spec, F).member);
}

TEST_CASE("binary image round-trip", "[codes]") {
  const auto spec = CodeSpec::make(2, 2, 4, 1);
  Field F(spec.ell);
  const auto basis = codes::build_code(spec);
  liftcode::rng::Sampler smp(0xb1b);
  std::vector<Elem> msg(basis.monomials.size());
  for (auto& c : msg) c = smp.element(F);
  const auto word = codes::encode(basis, msg, F);
  const auto bits = codes::binary_image(word, spec);
  REQUIRE(bits.size() == 16 * 3 * 2);  // points x slots x ell
  for (auto b : bits) REQUIRE((b == 0 || b == 1));
  REQUIRE(codes::from_binary_image(bits, spec).symbols == word.symbols);
  auto short_bits = bits;
  short_bits.pop_back();
  REQUIRE_THROWS_AS(codes::from_binary_image(short_bits, spec),
                    std::invalid_argument);
}

TEST_CASE("exhaustive minimum distance at tiny parameters", "[codes]") {
  const auto spec = CodeSpec::make(2, 1, 2, 1);
  Field F(spec.ell);
  const auto rep = codes::min_distance_oracle(spec, F);
  REQUIRE(rep.exact);
  REQUIRE(rep.min_weight == 4);
  // 1 + ceil((r+1)/s - 1) (q-s) q^{m-2}
  REQUIRE(rep.theorem_bound == 2);
  REQUIRE(rep.min_weight >= rep.theorem_bound);
}

TEST_CASE("univariate construction is MDS", "[codes]") {
  const auto spec = CodeSpec::make(1, 1, 8, 5);  // degree < 3
  Field F(spec.ell);
  const auto rep = codes::min_distance_oracle(spec, F);
  REQUIRE(rep.exact);
  REQUIRE(rep.min_weight == 6);  // q - d + 1
}
