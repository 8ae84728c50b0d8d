#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <stdexcept>
#include <vector>

#include "liftcode/recovery.hpp"

namespace codes = liftcode::codes;
namespace recovery = liftcode::recovery;
using codes::CodeSpec;
using liftcode::gf2e::Elem;
using liftcode::gf2e::Field;

namespace {

codes::Codeword random_codeword(const codes::GoodBasis& basis, const Field& F,
                                std::uint64_t seed) {
  liftcode::rng::Sampler smp(seed);
  std::vector<Elem> msg(basis.monomials.size());
  for (auto& c : msg) c = smp.element(F);
  return codes::encode(basis, msg, F);
}

}  // namespace

TEST_CASE("canonical interval family partitions the field", "[recovery]") {
  const auto fam = recovery::canonical_qfamily(8, 2);
  REQUIRE(fam.blocks.size() == 4);
  std::set<Elem> seen;
  for (const auto& blk : fam.blocks) {
    REQUIRE(blk.size() == 2);
    seen.insert(blk.begin(), blk.end());
  }
  REQUIRE(seen.size() == 8);
  REQUIRE_THROWS_AS(recovery::canonical_qfamily(4, 8), std::invalid_argument);
}

TEST_CASE("private-read sets are disjoint and reconstruct the target",
          "[recovery]") {
  const auto spec = CodeSpec::make(2, 2, 8, 2);
  Field F(spec.ell);
  const auto basis = codes::build_code(spec);
  const auto word = random_codeword(basis, F, 0x51);

  const std::vector<Elem> target = {2, 3};
  const auto target_idx = codes::point_index(target, spec);
  const auto sets = recovery::pir_recovery_sets(spec, target, F);
  REQUIRE(sets.size() == 4);  // (q/s)^{m-1}
  std::set<std::uint64_t> seen;
  for (const auto& set : sets) {
    REQUIRE(set.points.size() == 14);  // s^{m-1} (q-1)
    for (const auto& pt : set.points) {
      const auto idx = codes::point_index(pt, spec);
      REQUIRE(idx != target_idx);
      REQUIRE(seen.insert(idx).second);  // pairwise disjoint
    }
    REQUIRE(recovery::reconstruct_from_set(word, set, spec, F) ==
            word.symbols[target_idx]);
  }
}

TEST_CASE("private-read preconditions", "[recovery]") {
  Field F4(2);
  // s >= 2 requires m <= s for the layer recombination to be solvable
  REQUIRE_THROWS_AS(
      recovery::pir_recovery_sets(CodeSpec::make(3, 2, 4, 2), {0, 0, 0}, F4),
      std::invalid_argument);
  // reconstruction needs r >= s so line degrees drop below qs - s
  const auto spec = CodeSpec::make(2, 2, 4, 1);
  const auto sets = recovery::pir_recovery_sets(spec, {0, 0}, F4);
  const auto word = random_codeword(codes::build_code(spec), F4, 0x52);
  REQUIRE_THROWS_AS(recovery::reconstruct_from_set(word, sets[0], spec, F4),
                    std::invalid_argument);
}

TEST_CASE("batch recovery answers repeated requests from disjoint reads",
          "[recovery]") {
  const auto spec = CodeSpec::make(2, 1, 8, 2);
  Field F(spec.ell);
  const auto basis = codes::build_code(spec);
  const auto word = random_codeword(basis, F, 0x53);

  const std::vector<Elem> req = {1, 3};
  const auto req_idx = codes::point_index(req, spec);
  const auto result = recovery::batch_recover(word, spec, {req, req}, F);
  REQUIRE(result.size() == 2);
  std::set<std::uint64_t> reads;
  for (const auto& asg : result) {
    REQUIRE(asg.value == word.symbols[req_idx][0]);
    REQUIRE(asg.set.points.size() == spec.q - spec.r);
    for (const auto& pt : asg.set.points)
      REQUIRE(reads.insert(codes::point_index(pt, spec)).second);
  }
  // the two reads use different lines even though the request repeats
  REQUIRE(result[0].set.directions != result[1].set.directions);
}

TEST_CASE("batch recovery rejects unsupported shapes", "[recovery]") {
  Field F8(3);
  const auto mult = CodeSpec::make(2, 2, 8, 2);
  const auto word = random_codeword(codes::build_code(mult), F8, 0x54);
  REQUIRE_THROWS_AS(recovery::batch_recover(word, mult, {{0, 0}}, F8),
                    std::invalid_argument);

  const auto spec = CodeSpec::make(2, 1, 8, 2);
  const auto w = random_codeword(codes::build_code(spec), F8, 0x55);
  std::vector<std::vector<Elem>> too_many(spec.r * spec.q + 1,
                                          std::vector<Elem>{0, 0});
  REQUIRE_THROWS_AS(recovery::batch_recover(w, spec, too_many, F8),
                    std::invalid_argument);
}

TEST_CASE("self-correction survives on-path corruption", "[recovery]") {
  const auto spec = CodeSpec::make(2, 1, 8, 4);
  Field F(spec.ell);
  const auto basis = codes::build_code(spec);
  const auto word = random_codeword(basis, F, 0x56);
  const std::vector<Elem> target = {5, 2};
  const auto target_idx = codes::point_index(target, spec);

  // Corrupt every point with first coordinate 4.  Each candidate line
  // (1, v) through the target passes through exactly one of them (t = 1),
  // within the per-line radius (r - s)/(2s) = 1.
  auto corrupted = word;
  for (Elem y = 0; y < 8; ++y)
    corrupted.symbols[codes::point_index({4, y}, spec)][0] ^= 5;

  const auto out =
      recovery::local_self_correct(corrupted, target, spec, F, /*seed=*/7);
  REQUIRE(out.succeeded);
  REQUIRE(out.failed_lines == 0);
  REQUIRE(out.recovered == word.symbols[target_idx]);
  REQUIRE(out.queries_used <= recovery::lcc_query_budget(spec));

  // determinism: same seed, same trace
  const auto again =
      recovery::local_self_correct(corrupted, target, spec, F, 7);
  REQUIRE(again.recovered == out.recovered);
  REQUIRE(again.queries_used == out.queries_used);
}

TEST_CASE("self-correction reports undecodable lines", "[recovery]") {
  const auto spec = CodeSpec::make(2, 1, 8, 2);  // radius 0: no slack
  Field F(spec.ell);
  const auto basis = codes::build_code(spec);
  const auto word = random_codeword(basis, F, 0x57);

  // every candidate line through (0,0) passes through some (1, y)
  auto corrupted = word;
  for (Elem y = 0; y < 8; ++y)
    corrupted.symbols[codes::point_index({1, y}, spec)][0] ^= 3;
  const auto out = recovery::local_self_correct(corrupted, {0, 0}, spec, F, 11);
  REQUIRE_FALSE(out.succeeded);
  REQUIRE(out.failed_lines > 0);
}

TEST_CASE("simulation reports are deterministic in the seed", "[recovery]") {
  const auto spec = CodeSpec::make(2, 2, 8, 2);
  Field F(spec.ell);
  const auto a = recovery::pir_simulation(spec, /*trials=*/20, /*seed=*/99, F);
  const auto b = recovery::pir_simulation(spec, 20, 99, F);
  REQUIRE(a.success_rate == 1.0);
  REQUIRE(a.mean_queries == b.mean_queries);

  const auto batch_spec = CodeSpec::make(2, 1, 8, 2);
  const auto c = recovery::batch_simulation(batch_spec, 20, 99, F);
  const auto d = recovery::batch_simulation(batch_spec, 20, 99, F);
  REQUIRE(c.success_rate == 1.0);
  REQUIRE(c.mean_queries == d.mean_queries);
}

TEST_CASE("self-correction simulation tolerates the promised error rate",
          "[recovery]") {
  const auto spec = CodeSpec::make(2, 1, 16, 4);
  Field F(spec.ell);
  const auto rep =
      recovery::lcc_simulation(spec, /*trials=*/200, /*alpha=*/0.1, /*seed=*/5, F);
  REQUIRE(rep.alpha == 0.1);
  REQUIRE(rep.success_rate >= 0.75);  // 1 - 2 alpha - 0.05
  const auto rep2 = recovery::lcc_simulation(spec, 200, 0.1, 5, F);
  REQUIRE(rep.success_rate == rep2.success_rate);
  REQUIRE(rep.mean_queries == rep2.mean_queries);
}
