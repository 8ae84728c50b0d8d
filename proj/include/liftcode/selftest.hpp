#pragma once

// Cross-validation suite: every module is checked against an independent
// formulation (exhaustive enumeration, brute-force oracles, algebraic
// identities).  Shared by the CLI `verify` subcommand and the test binary.

#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "codes.hpp"
#include "counting.hpp"
#include "gf2e.hpp"
#include "monomials.hpp"
#include "polynomial.hpp"
#include "recovery.hpp"
#include "rng.hpp"

namespace liftcode::selftest {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

using CheckList = std::vector<CheckResult>;

namespace detail {

using gf2e::Elem;
using gf2e::Field;

template <typename Fn>
void run_check(CheckList& out, const std::string& name, Fn&& body) {
  CheckResult res;
  res.name = name;
  try {
    std::string detail;
    res.pass = body(detail);
    res.detail = detail;
  } catch (const std::exception& e) {
    res.pass = false;
    res.detail = std::string("exception: ") + e.what();
  }
  out.push_back(std::move(res));
}

inline bool field_axioms(std::string& detail) {
  for (int ell : {1, 2, 3, 4}) {
    Field F(ell);
    const auto q = F.q();
    for (Elem a = 0; a < q; ++a)
      for (Elem b = 0; b < q; ++b) {
        if (F.add(a, b) != F.add(b, a) || F.mul(a, b) != F.mul(b, a)) {
          detail = "commutativity failed at ell=" + std::to_string(ell);
          return false;
        }
        for (Elem c = 0; c < q; ++c) {
          if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c))) {
            detail = "distributivity failed at ell=" + std::to_string(ell);
            return false;
          }
          if (F.mul(a, F.mul(b, c)) != F.mul(F.mul(a, b), c)) {
            detail = "associativity failed at ell=" + std::to_string(ell);
            return false;
          }
        }
      }
    for (Elem a = 1; a < q; ++a)
      if (F.mul(a, F.inv(a)) != 1) {
        detail = "inverse failed at ell=" + std::to_string(ell);
        return false;
      }
    for (Elem a = 0; a < q; ++a)
      if (F.pow(a, q) != a) {
        detail = "Frobenius fixed-point failed at ell=" + std::to_string(ell);
        return false;
      }
  }
  rng::Sampler smp(0xf1e1d);
  for (int ell : {8, 12, 13, 16}) {
    Field F(ell);
    for (int t = 0; t < 2000; ++t) {
      Elem a = smp.element(F), b = smp.element(F), c = smp.element(F);
      if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)) ||
          F.mul(a, F.mul(b, c)) != F.mul(F.mul(a, b), c)) {
        detail = "random axiom failed at ell=" + std::to_string(ell);
        return false;
      }
      if (a != 0 && F.mul(a, F.inv(a)) != 1) {
        detail = "random inverse failed at ell=" + std::to_string(ell);
        return false;
      }
      if (F.pow(a, F.q()) != a) {
        detail = "random Frobenius failed at ell=" + std::to_string(ell);
        return false;
      }
    }
  }
  return true;
}

// Log-table products must agree with carryless multiply + reduction.
inline bool field_tables_match(std::string& detail) {
  for (int ell : {2, 4, 8}) {
    Field F(ell);
    for (Elem a = 0; a < F.q(); ++a)
      for (Elem b = 0; b < F.q(); ++b)
        if (F.mul(a, b) != F.mul_reduce(a, b)) {
          detail = "mismatch at ell=" + std::to_string(ell);
          return false;
        }
  }
  rng::Sampler smp(0x7ab1e);
  Field F12(12);
  for (int t = 0; t < 5000; ++t) {
    Elem a = smp.element(F12), b = smp.element(F12);
    if (F12.mul(a, b) != F12.mul_reduce(a, b)) {
      detail = "mismatch at ell=12";
      return false;
    }
  }
  return true;
}

// reduce_equiv must preserve every order-s evaluation and land below qs.
inline bool equivalence_reduction(std::string& detail) {
  rng::Sampler smp(0xe901);
  for (auto [ell, s] : std::vector<std::pair<int, std::uint32_t>>{
           {1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 4}}) {
    Field F(ell);
    const std::uint32_t q = F.q();
    const std::uint64_t qs = std::uint64_t{q} * s;
    for (int t = 0; t < 60; ++t) {
      std::vector<Elem> coeffs(3 * qs);
      for (auto& c : coeffs) c = smp.element(F);
      poly::UniPoly g(coeffs);
      const auto h = poly::reduce_equiv(g, q, s);
      if (h.degree() >= static_cast<std::int64_t>(qs)) {
        detail = "reduced degree too large";
        return false;
      }
      if (!(poly::reduce_equiv(h, q, s) == h)) {
        detail = "reduction not idempotent";
        return false;
      }
      for (Elem x = 0; x < q; ++x)
        for (std::uint32_t j = 0; j < s; ++j)
          if (poly::hasse_eval(g, j, x, F) != poly::hasse_eval(h, j, x, F)) {
            detail = "order-" + std::to_string(s) + " evaluation changed";
            return false;
          }
    }
  }
  return true;
}

// A good monomial's restriction to every line must reduce below d = qs - r.
inline bool line_restriction_degree(std::string& detail) {
  for (auto [m, s, ell, r] :
       std::vector<std::tuple<int, std::uint32_t, int, std::uint32_t>>{
           {2, 1, 2, 1}, {2, 2, 2, 1}, {3, 1, 1, 1}, {2, 2, 2, 3}}) {
    Field F(ell);
    const std::uint32_t q = F.q();
    const std::uint64_t thr = std::uint64_t{q} * s - r;
    const auto good = monomials::enumerate_good(m, s, q, thr);
    const auto lines = codes::all_lines(m, q, F);
    std::size_t step = good.size() > 24 ? good.size() / 24 : 1;
    for (std::size_t k = 0; k < good.size(); k += step) {
      auto f = poly::MultiPoly::monomial(good[k], 1);
      for (const auto& L : lines) {
        const auto g =
            poly::reduce_equiv(poly::restrict_to_line(f, L, F), q, s);
        if (g.degree() >= static_cast<std::int64_t>(thr)) {
          detail = "good monomial restricted above threshold";
          return false;
        }
      }
    }
  }
  return true;
}

// A nonzero univariate polynomial has at most deg/s roots of multiplicity s.
inline bool zero_multiplicity_bound(std::string& detail) {
  rng::Sampler smp(0x2e705);
  for (auto [ell, s] : std::vector<std::pair<int, std::uint32_t>>{
           {2, 1}, {3, 2}, {4, 2}}) {
    Field F(ell);
    const std::uint32_t q = F.q();
    const std::uint64_t qs = std::uint64_t{q} * s;
    for (int t = 0; t < 200; ++t) {
      std::vector<Elem> coeffs(qs - 1);
      for (auto& c : coeffs) c = smp.element(F);
      poly::UniPoly g(coeffs);
      if (g.degree() < 0) continue;
      std::uint64_t zeros = 0;
      for (Elem x = 0; x < q; ++x) {
        bool all = true;
        for (std::uint32_t j = 0; j < s; ++j)
          if (poly::hasse_eval(g, j, x, F) != 0) all = false;
        if (all) ++zeros;
      }
      if (zeros * s > static_cast<std::uint64_t>(g.degree())) {
        detail = "zero count exceeds degree/s";
        return false;
      }
    }
  }
  return true;
}

inline bool decoder_roundtrip(std::string& detail) {
  rng::Sampler smp(0xdec0de);
  struct Cfg {
    int ell;
    std::uint32_t s;
    std::uint64_t D;
    std::uint64_t e;
  };
  for (const Cfg cfg : {Cfg{3, 1, 3, 2}, Cfg{3, 2, 10, 1}, Cfg{4, 2, 24, 2}}) {
    Field F(cfg.ell);
    const std::uint32_t q = F.q();
    for (int trial = 0; trial < 400; ++trial) {
      std::vector<Elem> coeffs(cfg.D);
      for (auto& c : coeffs) c = smp.element(F);
      poly::UniPoly g(coeffs);
      std::vector<poly::HermiteSample> samples;
      for (Elem t = 0; t < q; ++t) {
        std::vector<Elem> vals(cfg.s);
        for (std::uint32_t j = 0; j < cfg.s; ++j)
          vals[j] = poly::hasse_eval(g, j, t, F);
        samples.push_back({t, vals});
      }
      const auto nerr = smp.below(cfg.e + 1);
      for (auto pos : smp.subset(q, static_cast<std::uint32_t>(nerr))) {
        auto& vals = samples[pos].values;
        vals[smp.below(cfg.s)] ^= smp.nonzero_element(F);
      }
      const auto dec =
          poly::decode_univariate_multiplicity(samples, cfg.D, cfg.s, cfg.e, F);
      if (!dec || !(*dec == g)) {
        detail = "decode failed at ell=" + std::to_string(cfg.ell) +
                 " s=" + std::to_string(cfg.s);
        return false;
      }
    }
  }
  return true;
}

// enumerate_good and count_bad_bruteforce must partition the monomial space.
inline bool good_bad_partition(std::string& detail) {
  for (int m : {1, 2, 3})
    for (int ell : {1, 2})
      for (std::uint32_t s : {1u, 2u}) {
        Field F(ell);
        const std::uint32_t q = F.q();
        for (std::uint32_t r = 1; r <= 2 && r < std::uint64_t{q} * s; ++r) {
          const std::uint64_t thr = std::uint64_t{q} * s - r;
          const auto good = monomials::enumerate_good(m, s, q, thr);
          const auto bad = monomials::count_bad_bruteforce(m, s, q, thr);
          const auto rate = counting::exact_rate(m, s, q, thr);
          if (counting::BigInt(good.size()) + bad != rate.total) {
            detail = "good + bad != total at m=" + std::to_string(m);
            return false;
          }
          if (rate.good != counting::BigInt(good.size())) {
            detail = "rate numerator mismatch";
            return false;
          }
        }
      }
  return true;
}

// The degree-target sets are nested: S_{j+1} is contained in S_j.
inline bool state_sets_nested(std::string& detail) {
  for (auto [m, r, ell] : std::vector<std::tuple<int, std::uint32_t, int>>{
           {2, 1, 1}, {2, 1, 2}, {2, 2, 1}, {2, 2, 2}, {3, 1, 1},
           {3, 2, 1}, {3, 3, 2}}) {
    const auto sets = counting::bruteforce_state_sets(m, r, ell);
    for (std::size_t j = 0; j + 1 < sets.size(); ++j) {
      std::set<monomials::ExponentVector> upper(sets[j].begin(),
                                                sets[j].end());
      for (const auto& d : sets[j + 1])
        if (!upper.count(d)) {
          detail = "S_{j+1} not inside S_j at m=" + std::to_string(m) +
                   " r=" + std::to_string(r);
          return false;
        }
    }
    const auto base = counting::bruteforce_base_state(m, r, ell);
    for (std::size_t j = 0; j < sets.size(); ++j)
      if (base.counts[j] != counting::BigInt(sets[j].size())) {
        detail = "base state counts disagree with set sizes";
        return false;
      }
  }
  return true;
}

inline bool recurrence_matches_bruteforce(std::string& detail) {
  for (auto [m, r, upto] : std::vector<std::tuple<int, std::uint32_t, int>>{
           {2, 1, 3}, {2, 2, 3}, {3, 1, 2}, {3, 2, 2}, {3, 3, 3}}) {
    auto state = counting::bruteforce_base_state(
        m, r, counting::minimal_base_ell(r));
    for (int ell = state.ell + 1; ell <= upto; ++ell) {
      state = counting::iterate_recurrence(state, ell);
      const auto direct = counting::bruteforce_base_state(m, r, ell);
      if (state.counts != direct.counts) {
        detail = "recurrence diverges at m=" + std::to_string(m) +
                 " r=" + std::to_string(r) + " ell=" + std::to_string(ell);
        return false;
      }
    }
  }
  return true;
}

// Digit concatenation d = d' * q'' + d'' maps S_j x S_{r-1} into S_j of the
// product field: shifting a degree-(q'-r+jq') witness by ell'' bits and
// adding a degree-(q''-r+(r-1)q'') witness lands exactly on q'q''-r+jq'q''.
inline bool digit_concat_badness(std::string& detail) {
  const int m = 2;
  for (std::uint32_t r : {1u, 2u}) {
    const auto lo = counting::bruteforce_state_sets(m, r, 1);
    const auto hi = counting::bruteforce_state_sets(m, r, 2);
    const auto prod = counting::bruteforce_state_sets(m, r, 3);
    std::vector<std::set<monomials::ExponentVector>> prod_sets;
    for (const auto& s : prod) prod_sets.emplace_back(s.begin(), s.end());
    const auto& donors = lo[r - 1];
    for (std::size_t j = 0; j < hi.size(); ++j)
      for (const auto& dhi : hi[j])
        for (const auto& dlo : donors) {
          monomials::ExponentVector cat(dhi.size());
          for (std::size_t k = 0; k < cat.size(); ++k)
            cat[k] = (dhi[k] << 1) | dlo[k];
          if (!prod_sets[j].count(cat)) {
            detail = "concatenated tuple escaped S_j at r=" +
                     std::to_string(r);
            return false;
          }
        }
  }
  return true;
}

inline bool spectral_bounds(std::string& detail) {
  for (int m = 2; m <= 10; ++m) {
    const auto rep =
        counting::top_eigenvalue(counting::build_transfer_matrix(m), 1e-13);
    if (!rep.bounds_ok) {
      detail = "bounds violated at m=" + std::to_string(m);
      return false;
    }
  }
  const auto r2 =
      counting::top_eigenvalue(counting::build_transfer_matrix(2), 1e-13);
  const auto r3 =
      counting::top_eigenvalue(counting::build_transfer_matrix(3), 1e-13);
  if (std::abs(r2.lambda - 3.0) > 1e-9 ||
      std::abs(r3.lambda - (5.0 + std::sqrt(5.0))) > 1e-6) {
    detail = "eigenvalue anchors missed";
    return false;
  }
  return true;
}

inline bool encode_membership(std::string& detail) {
  rng::Sampler smp(0xc0de);
  for (auto spec : {codes::CodeSpec::make(2, 1, 4, 2),
                    codes::CodeSpec::make(2, 2, 4, 3)}) {
    Field F(spec.ell);
    const auto basis = codes::build_code(spec);
    const auto bound = codes::distance_bound_for(spec);
    for (int trial = 0; trial < 8; ++trial) {
      std::vector<Elem> m1(basis.monomials.size()), m2(m1.size());
      for (auto& c : m1) c = smp.element(F);
      for (auto& c : m2) c = smp.element(F);
      const auto w1 = codes::encode(basis, m1, F);
      const auto w2 = codes::encode(basis, m2, F);
      std::vector<Elem> msum(m1.size());
      for (std::size_t k = 0; k < m1.size(); ++k) msum[k] = m1[k] ^ m2[k];
      auto wsum = codes::encode(basis, msum, F);
      for (std::size_t p = 0; p < wsum.symbols.size(); ++p)
        for (std::size_t sl = 0; sl < wsum.symbols[p].size(); ++sl)
          if (wsum.symbols[p][sl] != (w1.symbols[p][sl] ^ w2.symbols[p][sl])) {
            detail = "encoding is not linear";
            return false;
          }
      if (!codes::membership_test(w1, spec, F).member) {
        detail = "codeword rejected by membership test";
        return false;
      }
      const auto back = codes::message_for(basis, w1, F);
      if (!back || *back != m1) {
        detail = "message round-trip failed";
        return false;
      }
      if (codes::symbol_weight(w1) != 0 &&
          counting::BigInt(codes::symbol_weight(w1)) < bound) {
        detail = "codeword weight below the distance bound";
        return false;
      }
      auto corrupted = w1;
      corrupted.symbols[smp.below(corrupted.symbols.size())]
          [smp.below(spec.symbol_width())] ^= smp.nonzero_element(F);
      if (codes::membership_test(corrupted, spec, F).member) {
        detail = "single-symbol corruption passed membership";
        return false;
      }
      const auto bits = codes::binary_image(w1, spec);
      const auto restored = codes::from_binary_image(bits, spec);
      if (restored.symbols != w1.symbols) {
        detail = "binary image round-trip failed";
        return false;
      }
    }
  }
  return true;
}

inline bool pir_disjoint_reconstruct(std::string& detail) {
  rng::Sampler smp(0x9123);
  for (auto spec : {codes::CodeSpec::make(2, 1, 4, 1),
                    codes::CodeSpec::make(2, 2, 4, 2)}) {
    Field F(spec.ell);
    const auto basis = codes::build_code(spec);
    std::vector<Elem> msg(basis.monomials.size());
    for (auto& c : msg) c = smp.element(F);
    const auto word = codes::encode(basis, msg, F);
    for (std::uint64_t idx = 0; idx < spec.num_points(); ++idx) {
      const auto target = codes::index_point(idx, spec);
      const auto sets = recovery::pir_recovery_sets(spec, target, F);
      std::set<std::uint64_t> seen;
      for (const auto& rs : sets) {
        for (const auto& pt : rs.points) {
          const auto p = codes::point_index(pt, spec);
          if (p == idx || !seen.insert(p).second) {
            detail = "recovery sets overlap or touch the target";
            return false;
          }
        }
        if (recovery::reconstruct_from_set(word, rs, spec, F) !=
            word.symbols[idx]) {
          detail = "reconstruction disagrees with the codeword";
          return false;
        }
      }
    }
  }
  return true;
}

inline bool batch_all_pairs(std::string& detail) {
  const auto spec = codes::CodeSpec::make(2, 1, 4, 2);
  Field F(spec.ell);
  const auto basis = codes::build_code(spec);
  rng::Sampler smp(0xba7c);
  std::vector<Elem> msg(basis.monomials.size());
  for (auto& c : msg) c = smp.element(F);
  const auto word = codes::encode(basis, msg, F);
  const auto n = spec.num_points();
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = a; b < n; ++b) {
      const std::vector<std::vector<Elem>> reqs{
          codes::index_point(a, spec), codes::index_point(b, spec)};
      const auto res = recovery::batch_recover(word, spec, reqs, F);
      std::set<std::uint64_t> reads;
      for (std::size_t k = 0; k < res.size(); ++k) {
        if (res[k].value != word.symbols[codes::point_index(reqs[k], spec)][0]) {
          detail = "batch value wrong for pair (" + std::to_string(a) + "," +
                   std::to_string(b) + ")";
          return false;
        }
        for (const auto& pt : res[k].set.points)
          if (!reads.insert(codes::point_index(pt, spec)).second) {
            detail = "batch read sets overlap";
            return false;
          }
      }
    }
  return true;
}

inline bool lcc_error_free(std::string& detail) {
  const auto spec = codes::CodeSpec::make(2, 1, 8, 4);
  Field F(spec.ell);
  const auto basis = codes::build_code(spec);
  rng::Sampler smp(0x1cc);
  std::vector<Elem> msg(basis.monomials.size());
  for (auto& c : msg) c = smp.element(F);
  const auto word = codes::encode(basis, msg, F);
  for (std::uint64_t idx = 0; idx < spec.num_points(); ++idx) {
    const auto target = codes::index_point(idx, spec);
    const auto out = recovery::local_self_correct(word, target, spec, F,
                                                  0xabcdef01u + idx);
    if (!out.succeeded || out.recovered != word.symbols[idx]) {
      detail = "error-free correction failed";
      return false;
    }
    if (out.queries_used > recovery::lcc_query_budget(spec)) {
      detail = "query budget exceeded";
      return false;
    }
    const auto again = recovery::local_self_correct(word, target, spec, F,
                                                    0xabcdef01u + idx);
    if (again.recovered != out.recovered ||
        again.queries_used != out.queries_used) {
      detail = "correction is not deterministic for a fixed seed";
      return false;
    }
  }
  return true;
}

// Within a family the lifted exponent must not exceed the unlifted one.
inline bool redundancy_ordering(std::string& detail) {
  for (int m = 2; m <= 6; ++m) {
    const double eps = (m - 1.0) / m;  // right edge of both PIR ranges
    const double lifted = counting::redundancy_exponent(
        counting::RedundancyFamily::pir_lifted_mult, eps, m);
    const double plain = counting::redundancy_exponent(
        counting::RedundancyFamily::pir_mult, eps, m);
    if (lifted > plain + 1e-12) {
      detail = "lifting did not help at m=" + std::to_string(m);
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline CheckList run_all() {
  CheckList out;
  detail::run_check(out, "field-axioms", detail::field_axioms);
  detail::run_check(out, "field-tables-match", detail::field_tables_match);
  detail::run_check(out, "equivalence-reduction",
                    detail::equivalence_reduction);
  detail::run_check(out, "line-restriction-degree",
                    detail::line_restriction_degree);
  detail::run_check(out, "zero-multiplicity-bound",
                    detail::zero_multiplicity_bound);
  detail::run_check(out, "decoder-roundtrip", detail::decoder_roundtrip);
  detail::run_check(out, "good-bad-partition", detail::good_bad_partition);
  detail::run_check(out, "state-sets-nested", detail::state_sets_nested);
  detail::run_check(out, "recurrence-matches-bruteforce",
                    detail::recurrence_matches_bruteforce);
  detail::run_check(out, "digit-concat-badness",
                    detail::digit_concat_badness);
  detail::run_check(out, "spectral-bounds", detail::spectral_bounds);
  detail::run_check(out, "encode-membership", detail::encode_membership);
  detail::run_check(out, "pir-disjoint-reconstruct",
                    detail::pir_disjoint_reconstruct);
  detail::run_check(out, "batch-all-pairs", detail::batch_all_pairs);
  detail::run_check(out, "lcc-error-free", detail::lcc_error_free);
  detail::run_check(out, "redundancy-ordering", detail::redundancy_ordering);
  return out;
}

}  // namespace liftcode::selftest
