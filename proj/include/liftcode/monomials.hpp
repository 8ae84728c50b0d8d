#pragma once

// Monomial classification for lifted Reed-Solomon and lifted multiplicity
// codes: the binary domination order, the mod*_{q,s} degree reduction, the
// achievable-degree set {deg(i) : i <=_2 d}, and the three badness tests
// built on them.  A monomial X^d is "bad" when some dominated sub-monomial
// reduces into the forbidden degree window [d_threshold, qs); good monomials
// index the code's message coordinates.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace liftcode::monomials {

using ExponentVector = std::vector<std::uint32_t>;

inline std::uint64_t degree(const ExponentVector& d) {
  std::uint64_t s = 0;
  for (auto x : d) s += x;
  return s;
}

// deg_q(d) = sum of floor(d_i / q); type-s vectors have deg_q <= s-1.
inline std::uint64_t degree_q(const ExponentVector& d, std::uint32_t q) {
  std::uint64_t s = 0;
  for (auto x : d) s += x / q;
  return s;
}

// a <=_2 b: every binary digit of a is dominated by the digit of b.
inline bool le2(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("le2: dimension mismatch");
  for (std::size_t k = 0; k < a.size(); ++k)
    if ((a[k] & b[k]) != a[k]) return false;
  return true;
}

inline bool le2_scalar(std::uint32_t a, std::uint32_t b) {
  return (a & b) == a;
}

// mod*_{q,s}(a): a itself below s, otherwise the unique b in [s, qs)
// congruent to a modulo qs - s.
inline std::uint64_t mod_star(std::uint64_t a, std::uint32_t q,
                              std::uint32_t s) {
  if (a < s) return a;
  return s + (a - s) % (std::uint64_t{q} * s - s);
}

namespace detail {

inline bool is_pow2(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline void require_pow2(std::uint64_t x, const char* what) {
  if (!is_pow2(x))
    throw std::invalid_argument(std::string(what) + " must be a power of two");
}

// Reachability table over {deg(i) : i <=_2 d}: index v is true iff some
// dominated i has degree v.  Bounded-multiplicity subset-sum DP on the
// bit-column weights w_t = #{components with bit t set}.
inline std::vector<bool> achievable_table(const ExponentVector& d,
                                          int bit_width) {
  std::uint32_t maxent = 0;
  for (auto x : d) maxent = std::max(maxent, x);
  int width = 0;
  while ((std::uint64_t{1} << width) <= maxent) ++width;
  if (bit_width > 0) width = bit_width;
  std::vector<bool> reach(degree(d) + 1, false);
  reach[0] = true;
  for (int t = 0; t < width; ++t) {
    std::uint32_t w = 0;
    for (auto x : d) w += (x >> t) & 1;
    if (w == 0) continue;
    const std::uint64_t step = std::uint64_t{1} << t;
    // descending scan so each of the w copies of 2^t is used at most once
    std::vector<bool> next = reach;
    for (std::uint64_t v = 0; v < reach.size(); ++v) {
      if (!reach[v]) continue;
      std::uint64_t acc = v;
      for (std::uint32_t c = 1; c <= w; ++c) {
        acc += step;
        if (acc >= next.size()) break;
        next[acc] = true;
      }
    }
    reach = std::move(next);
  }
  return reach;
}

// Ascending enumeration of submasks of `mask` (0 first, mask last).
template <typename Fn>
inline void for_each_submask_ascending(std::uint32_t mask, Fn&& fn) {
  std::uint32_t sub = 0;
  while (true) {
    fn(sub);
    if (sub == mask) break;
    sub = (sub - mask) & mask;
  }
}

}  // namespace detail

// Sorted list of achievable degrees {deg(i) : i <=_2 d}.  bit_width > 0
// restricts the DP to bit columns below bit_width (callers pass ell + log s);
// bit_width = 0 covers every bit present in d.
inline std::vector<std::uint64_t> achievable_degrees(const ExponentVector& d,
                                                     int bit_width = 0) {
  auto reach = detail::achievable_table(d, bit_width);
  std::vector<std::uint64_t> out;
  for (std::uint64_t v = 0; v < reach.size(); ++v)
    if (reach[v]) out.push_back(v);
  return out;
}

struct BadnessWitness {
  ExponentVector witness;       // i <=_2 d realizing a bad degree
  std::uint64_t reduced_degree; // mod*(deg(i)) resp. deg(i) mod q, in the window
};

struct Classification {
  bool bad = false;
  std::optional<BadnessWitness> evidence;  // engaged iff bad
  explicit operator bool() const { return bad; }
};

namespace detail {

// Lexicographically smallest i <=_2 d whose degree lies in `targets`
// (targets must be a subset of the achievable degrees; non-empty).
inline ExponentVector smallest_witness(
    const ExponentVector& d, const std::vector<std::uint64_t>& targets) {
  const std::size_t m = d.size();
  // suffix_reach[k] = achievable degrees of components k..m-1
  std::vector<std::vector<bool>> suffix_reach(m + 1);
  suffix_reach[m] = {true};
  for (std::size_t k = m; k-- > 0;) {
    ExponentVector tail(d.begin() + static_cast<std::ptrdiff_t>(k), d.end());
    suffix_reach[k] = achievable_table(tail, 0);
  }
  ExponentVector out(m, 0);
  std::uint64_t partial = 0;
  for (std::size_t k = 0; k < m; ++k) {
    bool chosen = false;
    std::uint32_t pick = 0;
    for_each_submask_ascending(d[k], [&](std::uint32_t sub) {
      if (chosen) return;
      const std::uint64_t deg_sub = sub;
      const auto& rest = suffix_reach[k + 1];
      for (auto t : targets) {
        if (t < partial + deg_sub) continue;
        const std::uint64_t need = t - partial - deg_sub;
        if (need < rest.size() && rest[need]) {
          chosen = true;
          pick = sub;
          return;
        }
      }
    });
    if (!chosen)
      throw std::logic_error("smallest_witness: no completion (bad targets)");
    out[k] = pick;
    partial += pick;
  }
  return out;
}

}  // namespace detail

// d*-bad over F_q: some achievable degree v has mod*_{q,1}(v) in
// [d_threshold, q).  Witness (when bad) is the lex-smallest dominated i.
inline Classification is_dstar_bad(const ExponentVector& d, std::uint32_t q,
                                   std::uint64_t d_threshold) {
  detail::require_pow2(q, "q");
  for (auto x : d)
    if (x >= q)
      throw std::invalid_argument("is_dstar_bad: exponent entries must be < q");
  auto reach = detail::achievable_table(d, 0);
  std::vector<std::uint64_t> targets;
  for (std::uint64_t v = 0; v < reach.size(); ++v)
    if (reach[v] && mod_star(v, q, 1) >= d_threshold && mod_star(v, q, 1) < q)
      targets.push_back(v);
  if (targets.empty()) return {};
  auto w = detail::smallest_witness(d, targets);
  return {true, BadnessWitness{w, mod_star(degree(w), q, 1)}};
}

// (d,s)*-bad over F_q: type-s vector with some achievable degree reducing
// into [d_threshold, qs) under mod*_{q,s}.
inline Classification is_ds_star_bad(const ExponentVector& d, std::uint32_t q,
                                     std::uint32_t s,
                                     std::uint64_t d_threshold) {
  detail::require_pow2(q, "q");
  detail::require_pow2(s, "s");
  const std::uint64_t qs = std::uint64_t{q} * s;
  for (auto x : d)
    if (x >= qs)
      throw std::invalid_argument(
          "is_ds_star_bad: exponent entries must be < q*s");
  if (degree_q(d, q) > s - 1)
    throw std::invalid_argument(
        "is_ds_star_bad: input violates the type-s condition deg_q(d) <= s-1");
  auto reach = detail::achievable_table(d, 0);
  std::vector<std::uint64_t> targets;
  for (std::uint64_t v = 0; v < reach.size(); ++v)
    if (reach[v] && mod_star(v, q, s) >= d_threshold && mod_star(v, q, s) < qs)
      targets.push_back(v);
  if (targets.empty()) return {};
  auto w = detail::smallest_witness(d, targets);
  return {true, BadnessWitness{w, mod_star(degree(w), q, s)}};
}

// (q-r)-bad over F_q: some achievable degree v with v mod q = q - r.
inline Classification is_qr_bad(const ExponentVector& d, std::uint32_t q,
                                std::uint32_t r) {
  detail::require_pow2(q, "q");
  if (r > d.size() || r > q)
    throw std::invalid_argument("is_qr_bad: requires r <= min(m, q)");
  for (auto x : d)
    if (x >= q)
      throw std::invalid_argument("is_qr_bad: exponent entries must be < q");
  const std::uint64_t residue = (q - r) % q;
  auto reach = detail::achievable_table(d, 0);
  std::vector<std::uint64_t> targets;
  for (std::uint64_t v = 0; v < reach.size(); ++v)
    if (reach[v] && v % q == residue) targets.push_back(v);
  if (targets.empty()) return {};
  auto w = detail::smallest_witness(d, targets);
  return {true, BadnessWitness{w, degree(w) % q}};
}

namespace detail {

// Odometer over all type-s vectors in Z_{qs}^m (graded-lex emitted later).
template <typename Fn>
inline void for_each_type_s(int m, std::uint32_t s, std::uint32_t q, Fn&& fn) {
  const std::uint64_t qs = std::uint64_t{q} * s;
  ExponentVector d(static_cast<std::size_t>(m), 0);
  while (true) {
    if (degree_q(d, q) <= s - 1) fn(d);
    int k = m - 1;
    while (k >= 0) {
      if (++d[static_cast<std::size_t>(k)] < qs) break;
      d[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
}

inline bool graded_lex_less(const ExponentVector& a, const ExponentVector& b) {
  const auto da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

// All (d_threshold, s)*-good type-s exponent vectors, graded-lex ordered
// (total degree ascending, lexicographic within a degree).  For s=1 this is
// the d*-good set of the lifted RS code.
inline std::vector<ExponentVector> enumerate_good(int m, std::uint32_t s,
                                                  std::uint32_t q,
                                                  std::uint64_t d_threshold) {
  if (m < 1) throw std::invalid_argument("enumerate_good: m must be >= 1");
  detail::require_pow2(q, "q");
  detail::require_pow2(s, "s");
  if (s > q) throw std::invalid_argument("enumerate_good: requires s <= q");
  if (d_threshold > std::uint64_t{q} * s)
    throw std::invalid_argument("enumerate_good: d_threshold must be <= q*s");
  std::vector<ExponentVector> out;
  detail::for_each_type_s(m, s, q, [&](const ExponentVector& d) {
    if (!is_ds_star_bad(d, q, s, d_threshold).bad) out.push_back(d);
  });
  std::sort(out.begin(), out.end(), detail::graded_lex_less);
  return out;
}

// Independent oracle: counts (d_threshold, s)*-bad type-s vectors by walking
// every dominated sub-monomial directly (no subset-sum DP).  Refuses inputs
// whose submask walk exceeds the documented work limit.
inline std::uint64_t count_bad_bruteforce(int m, std::uint32_t s,
                                          std::uint32_t q,
                                          std::uint64_t d_threshold) {
  if (m < 1) throw std::invalid_argument("count_bad_bruteforce: m >= 1");
  detail::require_pow2(q, "q");
  detail::require_pow2(s, "s");
  constexpr double kWorkLimit = 5e8;  // submask visits across all vectors
  const std::uint64_t qs = std::uint64_t{q} * s;
  // Sum over d of prod(popcount(d_i)+1) = (sum over one slot)^m = ((3^log2(qs)+...)).
  double per_slot = 0;
  for (std::uint64_t x = 0; x < qs; ++x)
    per_slot += static_cast<double>(std::uint64_t{1} << __builtin_popcountll(x));
  double work = 1;
  for (int k = 0; k < m; ++k) work *= per_slot;
  if (work > kWorkLimit)
    throw std::length_error(
        "count_bad_bruteforce: parameter space exceeds the desk-scale budget");

  const std::uint64_t lo = d_threshold;
  std::uint64_t bad = 0;
  detail::for_each_type_s(m, s, q, [&](const ExponentVector& d) {
    // direct walk over i <=_2 d, odometer over per-component submasks
    ExponentVector i(d.size(), 0);
    while (true) {
      const std::uint64_t v = mod_star(degree(i), q, s);
      if (v >= lo && v < qs) {
        ++bad;
        return;
      }
      std::size_t k = d.size();
      bool advanced = false;
      while (k-- > 0) {
        if (i[k] == d[k]) {
          i[k] = 0;
          continue;
        }
        i[k] = (i[k] - d[k]) & d[k];
        advanced = true;
        break;
      }
      if (!advanced) break;
    }
  });
  return bad;
}

}  // namespace liftcode::monomials
