#pragma once

// Recovery machinery on top of lifted codes:
//  - PIR: (q/s)^{m-1} pairwise-disjoint recovery sets per target, each the
//    s^{m-1} punctured lines through it with direction coordinates drawn
//    from one block of a fixed partition of F_q into q/s blocks of size s;
//  - batch: greedy line allocation for up to r q^{m-2} requests (s = 1);
//  - local self-correction: decode the s^{m-1} sampled punctured lines with
//    the multiplicity decoder and recombine the layer systems.
//
// Reconstruction identity used throughout: for g_v(T) = f(w0 + vT),
// g_v^{(j)}(0) = sum_{deg(i)=j} f^{(i)}(w0) v^i, so layer j involves only
// the order-j unknowns and the per-layer coefficient matrices (products of
// distinct block values) are invertible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "codes.hpp"
#include "counting.hpp"
#include "gf2e.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "rng.hpp"

namespace liftcode::recovery {

using codes::CodeSpec;
using codes::Codeword;
using codes::WordFn;
using gf2e::Elem;
using gf2e::Field;
using poly::DerivativeVector;

// Shared partition of F_q into q/s consecutive blocks of size s.
struct QFamily {
  std::uint32_t q = 0;
  std::uint32_t s = 0;
  std::vector<std::vector<Elem>> blocks;
};

inline QFamily canonical_qfamily(std::uint32_t q, std::uint32_t s) {
  monomials::detail::require_pow2(q, "q");
  monomials::detail::require_pow2(s, "s");
  if (s > q) throw std::invalid_argument("canonical_qfamily: s <= q");
  QFamily fam{q, s, {}};
  for (std::uint32_t b = 0; b < q / s; ++b) {
    std::vector<Elem> block(s);
    for (std::uint32_t k = 0; k < s; ++k) block[k] = b * s + k;
    fam.blocks.push_back(std::move(block));
  }
  return fam;
}

struct RecoverySet {
  std::vector<std::vector<Elem>> points;     // queried points (target excluded)
  std::vector<Elem> target;
  std::vector<std::vector<Elem>> directions; // the recipe's direction family
};

// The (q/s)^{m-1} disjoint PIR recovery sets for `target`.  Each set reads
// the q-1 punctured points of the s^{m-1} lines with directions
// (1, v_2, ..., v_m), v_j ranging over one block per coordinate.
inline std::vector<RecoverySet> pir_recovery_sets(const CodeSpec& spec,
                                                  const std::vector<Elem>& target,
                                                  const Field& F) {
  if (static_cast<int>(target.size()) != spec.m)
    throw std::invalid_argument("pir_recovery_sets: target arity mismatch");
  if (spec.s >= 2 && (static_cast<std::uint32_t>(spec.m) > spec.s))
    throw std::invalid_argument(
        "pir_recovery_sets: requires m <= s (for s >= 2)");
  const auto fam = canonical_qfamily(spec.q, spec.s);
  const std::uint32_t nblocks = spec.q / spec.s;
  const int free = spec.m - 1;
  std::uint64_t nsets = 1;
  for (int k = 0; k < free; ++k) nsets *= nblocks;

  std::vector<RecoverySet> sets;
  sets.reserve(nsets);
  for (std::uint64_t code = 0; code < nsets; ++code) {
    // block choice per free coordinate
    std::vector<std::uint32_t> bidx(static_cast<std::size_t>(free));
    std::uint64_t c = code;
    for (int k = free; k-- > 0;) {
      bidx[static_cast<std::size_t>(k)] = static_cast<std::uint32_t>(c % nblocks);
      c /= nblocks;
    }
    RecoverySet rs;
    rs.target = target;
    // directions: odometer over the chosen blocks
    std::vector<std::uint32_t> pos(static_cast<std::size_t>(free), 0);
    while (true) {
      std::vector<Elem> dir(static_cast<std::size_t>(spec.m));
      dir[0] = 1;
      for (int k = 0; k < free; ++k)
        dir[static_cast<std::size_t>(k + 1)] =
            fam.blocks[bidx[static_cast<std::size_t>(k)]]
                      [pos[static_cast<std::size_t>(k)]];
      rs.directions.push_back(dir);
      for (std::uint32_t t = 1; t < spec.q; ++t) {
        std::vector<Elem> pt(static_cast<std::size_t>(spec.m));
        for (int k = 0; k < spec.m; ++k)
          pt[static_cast<std::size_t>(k)] =
              F.add(target[static_cast<std::size_t>(k)],
                    F.mul(static_cast<Elem>(t), dir[static_cast<std::size_t>(k)]));
        rs.points.push_back(std::move(pt));
      }
      int k = free;
      bool advanced = false;
      while (k-- > 0) {
        if (++pos[static_cast<std::size_t>(k)] < spec.s) {
          advanced = true;
          break;
        }
        pos[static_cast<std::size_t>(k)] = 0;
      }
      if (!advanced) break;
    }
    sets.push_back(std::move(rs));
  }
  return sets;
}

namespace detail {

// Solves the layer systems g_v^{(j)}(0) = sum_{deg(i)=j} f^{(i)}(w0) v^i
// given each direction's derivative values at t=0; returns the full
// order-<s derivative vector at w0 in graded-lex index order.
inline DerivativeVector recombine_layers(
    const std::vector<std::vector<Elem>>& directions,
    const std::vector<std::vector<Elem>>& derivs_at_zero, const CodeSpec& spec,
    const Field& F) {
  const auto idxs = poly::multi_indices_below(spec.m, spec.s);
  DerivativeVector out(idxs.size(), 0);
  for (std::uint32_t layer = 0; layer < spec.s; ++layer) {
    std::vector<std::size_t> cols;
    for (std::size_t p = 0; p < idxs.size(); ++p)
      if (monomials::degree(idxs[p]) == layer) cols.push_back(p);
    liftcode::detail::Matrix A;
    std::vector<Elem> b;
    for (std::size_t vrow = 0; vrow < directions.size(); ++vrow) {
      std::vector<Elem> row(cols.size());
      for (std::size_t cc = 0; cc < cols.size(); ++cc) {
        const auto& i = idxs[cols[cc]];
        Elem vi = 1;
        for (std::size_t k = 0; k < i.size(); ++k)
          vi = F.mul(vi, F.pow(directions[vrow][k], i[k]));
        row[cc] = vi;
      }
      A.push_back(std::move(row));
      b.push_back(derivs_at_zero[vrow][layer]);
    }
    auto res = liftcode::detail::solve_linear(A, b, F);
    if (res.status != liftcode::detail::SolveStatus::unique)
      throw std::runtime_error(
          "recovery: layer system not uniquely solvable (layer " +
          std::to_string(layer) + ")");
    for (std::size_t cc = 0; cc < cols.size(); ++cc) out[cols[cc]] = res.x[cc];
  }
  return out;
}

}  // namespace detail

// Reconstructs the target's full derivative vector from one recovery set of
// a valid codeword.  Requires r >= s: the set reads only the q-1 punctured
// parameters per line, and the degree-<(qs-s) Hermite target is guaranteed
// to match the code's line restrictions exactly when d = qs - r <= qs - s.
inline DerivativeVector reconstruct_from_set(const WordFn& word,
                                             const RecoverySet& set,
                                             const CodeSpec& spec,
                                             const Field& F) {
  if (spec.r < spec.s)
    throw std::invalid_argument("reconstruct_from_set: requires r >= s");
  const auto idxs = poly::multi_indices_below(spec.m, spec.s);
  std::vector<std::vector<Elem>> derivs_at_zero;
  derivs_at_zero.reserve(set.directions.size());
  for (const auto& dir : set.directions) {
    std::vector<poly::HermiteSample> samples;
    samples.reserve(spec.q - 1);
    for (std::uint32_t t = 1; t < spec.q; ++t) {
      std::vector<Elem> pt(static_cast<std::size_t>(spec.m));
      for (int k = 0; k < spec.m; ++k)
        pt[static_cast<std::size_t>(k)] =
            F.add(set.target[static_cast<std::size_t>(k)],
                  F.mul(static_cast<Elem>(t), dir[static_cast<std::size_t>(k)]));
      const auto sym = word(codes::point_index(pt, spec));
      samples.push_back(
          {static_cast<Elem>(t),
           codes::line_derivative_values(sym, dir, idxs, spec.s, F)});
    }
    const auto h = poly::hermite_interpolate(samples, spec.qs() - spec.s, F);
    std::vector<Elem> at_zero(spec.s);
    for (std::uint32_t j = 0; j < spec.s; ++j)
      at_zero[j] = h.coeff(j);  // g^{(j)}(0) = [T^j] g
    derivs_at_zero.push_back(std::move(at_zero));
  }
  return detail::recombine_layers(set.directions, derivs_at_zero, spec, F);
}

inline DerivativeVector reconstruct_from_set(const Codeword& word,
                                             const RecoverySet& set,
                                             const CodeSpec& spec,
                                             const Field& F) {
  return reconstruct_from_set(codes::word_accessor(word), set, spec, F);
}

struct BatchAssignment {
  Elem value = 0;
  RecoverySet set;
};

// Greedy batch recovery for s = 1: each request gets a line through it whose
// intersection with previously read points is < r; q - r fresh points on it
// determine the degree-<(q-r) restriction, evaluated at the request.
inline std::vector<BatchAssignment> batch_recover(
    const Codeword& word, const CodeSpec& spec,
    const std::vector<std::vector<Elem>>& requests, const Field& F) {
  if (spec.s != 1)
    throw std::invalid_argument("batch_recover: defined for s = 1");
  if (spec.m < 2) throw std::invalid_argument("batch_recover: m >= 2");
  std::uint64_t cap = spec.r;
  for (int k = 0; k < spec.m - 2; ++k) cap *= spec.q;
  if (requests.size() > cap)
    throw std::invalid_argument("batch_recover: more than r q^{m-2} requests");
  if (word.symbols.size() != spec.num_points())
    throw std::invalid_argument("batch_recover: word length mismatch");

  std::set<std::uint64_t> used;
  std::vector<BatchAssignment> out;
  out.reserve(requests.size());
  for (const auto& req : requests) {
    if (static_cast<int>(req.size()) != spec.m)
      throw std::invalid_argument("batch_recover: request arity mismatch");
    const std::uint64_t req_idx = codes::point_index(req, spec);
    bool assigned = false;
    for (const auto& line : codes::lines_through(req, spec.m, spec.q, F)) {
      // count already-consumed points on this line
      std::uint32_t hits = 0;
      std::vector<std::uint64_t> idx_of_t(spec.q);
      for (std::uint32_t t = 0; t < spec.q; ++t) {
        idx_of_t[t] = codes::point_index(poly::line_point(line, t, F), spec);
        if (used.count(idx_of_t[t])) ++hits;
      }
      if (hits >= spec.r) continue;
      // take the first q-r fresh non-target parameters
      std::vector<poly::HermiteSample> samples;
      std::vector<std::vector<Elem>> pts;
      for (std::uint32_t t = 0; t < spec.q && samples.size() < spec.q - spec.r;
           ++t) {
        if (idx_of_t[t] == req_idx || used.count(idx_of_t[t])) continue;
        samples.push_back(
            {static_cast<Elem>(t), {word.symbols[idx_of_t[t]][0]}});
        pts.push_back(poly::line_point(line, t, F));
      }
      const auto g =
          poly::hermite_interpolate(samples, spec.q - spec.r, F);
      const Elem t_req = req[line.pivot];  // base has pivot coordinate 0
      BatchAssignment asg;
      asg.value = poly::eval(g, t_req, F);
      asg.set.points = std::move(pts);
      asg.set.target = req;
      asg.set.directions = {line.dir};
      for (const auto& smp : asg.set.points)
        used.insert(codes::point_index(smp, spec));
      out.push_back(std::move(asg));
      assigned = true;
      break;
    }
    if (!assigned)
      throw std::runtime_error(
          "batch_recover: no admissible line for a request (internal bound "
          "violated)");
  }
  return out;
}

struct CorrectionOutcome {
  DerivativeVector recovered;
  std::uint64_t queries_used = 0;
  bool succeeded = false;
  std::uint32_t failed_lines = 0;
};

// Unique-decoding radius per punctured line; see counting::correction_radius.
inline std::uint64_t lcc_query_budget(const CodeSpec& spec) {
  std::uint64_t b = spec.q - 1;
  for (int k = 0; k < spec.m - 1; ++k) b *= spec.s;
  return b;
}

// Local self-correction: samples one size-s block per free coordinate
// (seeded), reads the s^{m-1} punctured lines through the target, decodes
// each with the multiplicity decoder, recombines the layers.
inline CorrectionOutcome local_self_correct(const WordFn& noisy,
                                            const std::vector<Elem>& target,
                                            const CodeSpec& spec,
                                            const Field& F,
                                            std::uint64_t seed) {
  if (static_cast<int>(target.size()) != spec.m)
    throw std::invalid_argument("local_self_correct: target arity mismatch");
  rng::Sampler sampler(seed);
  // Step 1: one uniform size-s subset of F_q per free coordinate
  std::vector<std::vector<Elem>> Q(static_cast<std::size_t>(spec.m - 1));
  for (auto& block : Q) {
    auto sub = sampler.subset(spec.q, spec.s);
    block.assign(sub.begin(), sub.end());
  }
  // direction family: (1, v_2, ..., v_m), v_j in Q_j
  std::vector<std::vector<Elem>> directions;
  std::vector<std::uint32_t> pos(static_cast<std::size_t>(spec.m - 1), 0);
  while (true) {
    std::vector<Elem> dir(static_cast<std::size_t>(spec.m));
    dir[0] = 1;
    for (int k = 0; k + 1 < spec.m; ++k)
      dir[static_cast<std::size_t>(k + 1)] =
          Q[static_cast<std::size_t>(k)][pos[static_cast<std::size_t>(k)]];
    directions.push_back(std::move(dir));
    int k = spec.m - 1;
    bool advanced = false;
    while (k-- > 0) {
      if (++pos[static_cast<std::size_t>(k)] < spec.s) {
        advanced = true;
        break;
      }
      pos[static_cast<std::size_t>(k)] = 0;
    }
    if (!advanced) break;
  }

  CorrectionOutcome outcome;
  const auto idxs = poly::multi_indices_below(spec.m, spec.s);
  const std::uint64_t radius = counting::correction_radius(spec.s, spec.r);
  std::set<std::uint64_t> read;
  std::vector<std::vector<Elem>> derivs_at_zero;
  bool all_decoded = true;
  for (const auto& dir : directions) {
    // Step 2: read the punctured line and decode at the unique radius
    std::vector<poly::HermiteSample> samples;
    for (std::uint32_t t = 1; t < spec.q; ++t) {
      std::vector<Elem> pt(static_cast<std::size_t>(spec.m));
      for (int k = 0; k < spec.m; ++k)
        pt[static_cast<std::size_t>(k)] =
            F.add(target[static_cast<std::size_t>(k)],
                  F.mul(static_cast<Elem>(t), dir[static_cast<std::size_t>(k)]));
      const auto idx = codes::point_index(pt, spec);
      read.insert(idx);
      samples.push_back({static_cast<Elem>(t),
                         codes::line_derivative_values(noisy(idx), dir, idxs,
                                                       spec.s, F)});
    }
    auto g = poly::decode_univariate_multiplicity(samples, spec.d(), spec.s,
                                                  radius, F);
    if (!g) {
      ++outcome.failed_lines;
      all_decoded = false;
      derivs_at_zero.emplace_back(spec.s, 0);
      continue;
    }
    std::vector<Elem> at_zero(spec.s);
    for (std::uint32_t j = 0; j < spec.s; ++j) at_zero[j] = g->coeff(j);
    derivs_at_zero.push_back(std::move(at_zero));
  }
  outcome.queries_used = read.size();
  if (outcome.queries_used > lcc_query_budget(spec))
    throw std::logic_error("local_self_correct: query budget exceeded");
  if (!all_decoded) {
    outcome.succeeded = false;
    outcome.recovered.assign(idxs.size(), 0);
    return outcome;
  }
  // Step 3: layered recombination
  try {
    outcome.recovered =
        detail::recombine_layers(directions, derivs_at_zero, spec, F);
    outcome.succeeded = true;
  } catch (const std::runtime_error&) {
    outcome.recovered.assign(idxs.size(), 0);
    outcome.succeeded = false;
  }
  return outcome;
}

inline CorrectionOutcome local_self_correct(const Codeword& noisy,
                                            const std::vector<Elem>& target,
                                            const CodeSpec& spec,
                                            const Field& F,
                                            std::uint64_t seed) {
  return local_self_correct(codes::word_accessor(noisy), target, spec, F, seed);
}

// ------------------------------------------------------------- simulations

struct SimReport {
  CodeSpec spec;
  std::uint64_t trials = 0;
  double alpha = 0;          // lcc only; 0 otherwise
  double success_rate = 0;
  double mean_queries = 0;   // symbol reads per trial
  std::uint64_t seed = 0;
};

namespace detail {

// Lazy codeword: evaluates the message polynomial per point on demand and
// overlays injected corruptions.
struct LazyWord {
  const codes::GoodBasis& basis;
  const Field& F;
  poly::MultiPoly f;
  std::map<std::uint64_t, DerivativeVector> overlay;

  DerivativeVector operator()(std::uint64_t idx) const {
    auto it = overlay.find(idx);
    if (it != overlay.end()) return it->second;
    return poly::eval_with_derivatives(
        f, codes::index_point(idx, basis.spec), basis.spec.s, F);
  }
};

inline std::vector<Elem> random_message(rng::Sampler& smp, std::size_t k,
                                        const Field& F) {
  std::vector<Elem> msg(k);
  for (auto& c : msg) c = smp.element(F);
  return msg;
}

}  // namespace detail

inline SimReport pir_simulation(const CodeSpec& spec, std::uint64_t trials,
                                std::uint64_t seed, const Field& F) {
  const auto basis = codes::build_code(spec);
  std::uint64_t ok = 0;
  double queries = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    rng::Sampler smp(rng::trial_seed(seed, trial));
    const auto msg = detail::random_message(smp, basis.monomials.size(), F);
    const auto word = codes::encode(basis, msg, F);
    const auto target = smp.point(spec.m, F);
    const auto truth = word.symbols[codes::point_index(target, spec)];
    bool all = true;
    std::set<std::uint64_t> read;
    for (const auto& rs : pir_recovery_sets(spec, target, F)) {
      if (reconstruct_from_set(word, rs, spec, F) != truth) all = false;
      for (const auto& pt : rs.points)
        read.insert(codes::point_index(pt, spec));
    }
    queries += static_cast<double>(read.size());
    if (all) ++ok;
  }
  return SimReport{spec, trials, 0.0,
                   trials ? static_cast<double>(ok) / trials : 0.0,
                   trials ? queries / trials : 0.0, seed};
}

inline SimReport batch_simulation(const CodeSpec& spec, std::uint64_t trials,
                                  std::uint64_t seed, const Field& F) {
  const auto basis = codes::build_code(spec);
  std::uint64_t cap = spec.r;
  for (int k = 0; k < spec.m - 2; ++k) cap *= spec.q;
  std::uint64_t ok = 0;
  double queries = 0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    rng::Sampler smp(rng::trial_seed(seed, trial));
    const auto msg = detail::random_message(smp, basis.monomials.size(), F);
    const auto word = codes::encode(basis, msg, F);
    std::vector<std::vector<Elem>> requests;
    for (std::uint64_t k = 0; k < cap; ++k)
      requests.push_back(smp.point(spec.m, F));
    const auto result = batch_recover(word, spec, requests, F);
    bool all = result.size() == requests.size();
    std::set<std::uint64_t> seen;
    std::uint64_t reads = 0;
    for (std::size_t k = 0; k < result.size(); ++k) {
      const auto truth =
          word.symbols[codes::point_index(requests[k], spec)][0];
      if (result[k].value != truth) all = false;
      for (const auto& pt : result[k].set.points) {
        const auto idx = codes::point_index(pt, spec);
        if (!seen.insert(idx).second) all = false;  // disjointness violated
        ++reads;
      }
    }
    queries += static_cast<double>(reads);
    if (all) ++ok;
  }
  return SimReport{spec, trials, 0.0,
                   trials ? static_cast<double>(ok) / trials : 0.0,
                   trials ? queries / trials : 0.0, seed};
}

// Corrupts strictly fewer than alpha * Delta_min * q^m symbols at random
// positions and attempts correction at a random target.
inline SimReport lcc_simulation(const CodeSpec& spec, std::uint64_t trials,
                                double alpha, std::uint64_t seed,
                                const Field& F) {
  const auto basis = codes::build_code(spec);
  const auto bound = counting::distance_lower_bound(spec.m, spec.s, spec.q,
                                                    spec.r);
  // Delta_min * q^m is the exact integer rel_num * q^{m-2}; the 1e-9 guard
  // keeps ceil() at the exact value when alpha * N lands on an integer.
  auto scaled = static_cast<std::uint64_t>(bound.rel_num);
  for (int k = 0; k < spec.m - 2; ++k) scaled *= spec.q;
  std::uint64_t nerr = static_cast<std::uint64_t>(
      std::ceil(alpha * static_cast<double>(scaled) - 1e-9));
  if (nerr > 0) --nerr;
  std::uint64_t ok = 0;
  double queries = 0;
  const auto width = spec.symbol_width();
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    rng::Sampler smp(rng::trial_seed(seed, trial));
    detail::LazyWord word{basis, F,
                          codes::message_polynomial(
                              basis, detail::random_message(
                                         smp, basis.monomials.size(), F)),
                          {}};
    // corrupt nerr distinct positions with a guaranteed-changed symbol
    for (auto posidx : smp.subset(
             static_cast<std::uint32_t>(spec.num_points()),
             static_cast<std::uint32_t>(nerr))) {
      auto sym = word(posidx);
      std::size_t slot = static_cast<std::size_t>(smp.below(width));
      sym[slot] ^= static_cast<Elem>(smp.nonzero_element(F));
      word.overlay[posidx] = std::move(sym);
    }
    const auto target = smp.point(spec.m, F);
    const auto truth = poly::eval_with_derivatives(word.f, target, spec.s, F);
    const auto outcome = local_self_correct(
        WordFn([&word](std::uint64_t idx) { return word(idx); }), target, spec,
        F, rng::splitmix64(rng::trial_seed(seed, trial)));
    queries += static_cast<double>(outcome.queries_used);
    if (outcome.succeeded && outcome.recovered == truth) ++ok;
  }
  return SimReport{spec, trials, alpha,
                   trials ? static_cast<double>(ok) / trials : 0.0,
                   trials ? queries / trials : 0.0, seed};
}

}  // namespace liftcode::recovery
