#pragma once

// Lifted code construction and membership.  A codeword stores, for every
// point of F_q^m, the C(s+m-1,m) Hasse-derivative values of order < s
// (graded-lex index order).  Membership is per-line: the order-s data read
// along any affine line must be explained by a polynomial of degree < d
// after reduction modulo T^{qs} + T^s.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "counting.hpp"
#include "gf2e.hpp"
#include "linalg.hpp"
#include "monomials.hpp"
#include "polynomial.hpp"
#include "rng.hpp"

namespace liftcode::codes {

using gf2e::Elem;
using gf2e::Field;
using monomials::ExponentVector;
using poly::DerivativeVector;
using poly::Line;

struct CodeSpec {
  int m = 0;
  std::uint32_t s = 1;
  std::uint32_t q = 2;
  std::uint32_t r = 1;
  int ell = 1;

  std::uint64_t qs() const { return std::uint64_t{q} * s; }
  std::uint64_t d() const { return qs() - r; }  // degree threshold

  std::uint64_t num_points() const {
    std::uint64_t n = 1;
    for (int k = 0; k < m; ++k) n *= q;
    return n;
  }

  // derivative slots per symbol: C(s+m-1, m)
  std::uint32_t symbol_width() const {
    return counting::binomial(std::uint64_t{s} + static_cast<std::uint64_t>(m) - 1,
                              m)
        .convert_to<std::uint32_t>();
  }

  static CodeSpec make(int m, std::uint32_t s, std::uint32_t q,
                       std::uint32_t r) {
    if (m < 1) throw std::invalid_argument("CodeSpec: m >= 1");
    monomials::detail::require_pow2(q, "q");
    monomials::detail::require_pow2(s, "s");
    if (s > q) throw std::invalid_argument("CodeSpec: s <= q required");
    int ell = 0;
    while ((std::uint32_t{1} << ell) < q) ++ell;
    if (ell < gf2e::kMinEll || ell > gf2e::kMaxEll)
      throw std::invalid_argument("CodeSpec: q out of supported field range");
    if (r < 1 || std::uint64_t{r} >= std::uint64_t{q} * s)
      throw std::invalid_argument("CodeSpec: 1 <= r < q*s required");
    return CodeSpec{m, s, q, r, ell};
  }
};

struct GoodBasis {
  CodeSpec spec;
  std::vector<ExponentVector> monomials;  // graded-lex
};

inline GoodBasis build_code(const CodeSpec& spec) {
  return GoodBasis{spec,
                   monomials::enumerate_good(spec.m, spec.s, spec.q, spec.d())};
}

struct Codeword {
  std::vector<DerivativeVector> symbols;  // one per point index
};

// Row-major point index: first coordinate most significant.
inline std::uint64_t point_index(const std::vector<Elem>& pt,
                                 const CodeSpec& spec) {
  std::uint64_t idx = 0;
  for (auto x : pt) idx = idx * spec.q + x;
  return idx;
}

inline std::vector<Elem> index_point(std::uint64_t idx, const CodeSpec& spec) {
  std::vector<Elem> pt(static_cast<std::size_t>(spec.m));
  for (int k = spec.m; k-- > 0;) {
    pt[static_cast<std::size_t>(k)] = static_cast<Elem>(idx % spec.q);
    idx /= spec.q;
  }
  return pt;
}

// Read access to a (possibly lazily evaluated) word.
using WordFn = std::function<DerivativeVector(std::uint64_t)>;

inline WordFn word_accessor(const Codeword& w) {
  return [&w](std::uint64_t idx) { return w.symbols.at(idx); };
}

inline poly::MultiPoly message_polynomial(const GoodBasis& basis,
                                          const std::vector<Elem>& message) {
  if (message.size() != basis.monomials.size())
    throw std::invalid_argument("encode: message length != basis size");
  poly::MultiPoly f = poly::MultiPoly::zero(basis.spec.m);
  for (std::size_t k = 0; k < message.size(); ++k)
    f.add_term(basis.monomials[k], message[k]);
  return f;
}

inline Codeword encode(const GoodBasis& basis, const std::vector<Elem>& message,
                       const Field& F) {
  const auto& spec = basis.spec;
  const auto f = message_polynomial(basis, message);
  Codeword w;
  w.symbols.resize(spec.num_points());
  for (std::uint64_t idx = 0; idx < w.symbols.size(); ++idx)
    w.symbols[idx] =
        poly::eval_with_derivatives(f, index_point(idx, spec), spec.s, F);
  return w;
}

// Canonical direction enumeration: pivot ascending, then the free
// coordinates in odometer (lex) order; every projective direction once.
inline std::vector<std::vector<Elem>> canonical_directions(int m,
                                                           std::uint32_t q) {
  std::vector<std::vector<Elem>> dirs;
  for (int p = 0; p < m; ++p) {
    std::vector<Elem> dir(static_cast<std::size_t>(m), 0);
    dir[static_cast<std::size_t>(p)] = 1;
    const int free = m - p - 1;
    std::uint64_t total = 1;
    for (int k = 0; k < free; ++k) total *= q;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t c = code;
      for (int k = m - 1; k > p; --k) {
        dir[static_cast<std::size_t>(k)] = static_cast<Elem>(c % q);
        c /= q;
      }
      dirs.push_back(dir);
    }
  }
  return dirs;
}

// Every affine line exactly once: q^{m-1} (q^m - 1)/(q - 1) canonical
// representatives, ordered by (pivot, direction, base).
inline std::vector<Line> all_lines(int m, std::uint32_t q, const Field& F) {
  std::vector<Line> lines;
  for (const auto& dir : canonical_directions(m, q)) {
    std::size_t pivot = 0;
    while (dir[pivot] == 0) ++pivot;
    // bases with pivot coordinate zero, odometer over the rest
    std::vector<Elem> base(static_cast<std::size_t>(m), 0);
    while (true) {
      lines.push_back(poly::make_line(base, dir, F));
      std::size_t k = base.size();
      bool advanced = false;
      while (k-- > 0) {
        if (k == pivot) continue;
        if (++base[k] < q) {
          advanced = true;
          break;
        }
        base[k] = 0;
      }
      if (!advanced) break;
    }
  }
  return lines;
}

inline std::vector<Line> lines_through(const std::vector<Elem>& pt, int m,
                                       std::uint32_t q, const Field& F) {
  std::vector<Line> lines;
  for (const auto& dir : canonical_directions(m, q))
    lines.push_back(poly::make_line(pt, dir, F));
  return lines;
}

// Order-s line data at parameter t: values[j] = sum_{deg(i)=j} sym[i] v^i,
// the j-th Hasse derivative of the word's restriction to the line.
inline std::vector<Elem> line_derivative_values(
    const DerivativeVector& symbol, const std::vector<Elem>& dir,
    const std::vector<ExponentVector>& idxs, std::uint32_t s, const Field& F) {
  std::vector<Elem> values(s, 0);
  for (std::size_t pos = 0; pos < idxs.size(); ++pos) {
    const auto& i = idxs[pos];
    const auto j = monomials::degree(i);
    Elem vi = symbol[pos];
    for (std::size_t k = 0; k < dir.size() && vi != 0; ++k)
      vi = F.mul(vi, F.pow(dir[k], i[k]));
    values[j] ^= vi;
  }
  return values;
}

struct MembershipResult {
  bool member = false;
  std::optional<Line> failing_line;  // engaged iff !member
  explicit operator bool() const { return member; }
};

inline MembershipResult membership_test(const Codeword& word,
                                        const CodeSpec& spec, const Field& F) {
  if (word.symbols.size() != spec.num_points())
    throw std::invalid_argument("membership_test: word length mismatch");
  const auto width = spec.symbol_width();
  for (const auto& sym : word.symbols)
    if (sym.size() != width)
      throw std::invalid_argument("membership_test: symbol width mismatch");
  const auto idxs = poly::multi_indices_below(spec.m, spec.s);
  for (const auto& line : all_lines(spec.m, spec.q, F)) {
    std::vector<poly::HermiteSample> samples;
    samples.reserve(spec.q);
    for (std::uint32_t t = 0; t < spec.q; ++t) {
      const auto pt = poly::line_point(line, t, F);
      const auto& sym = word.symbols[point_index(pt, spec)];
      samples.push_back(
          {static_cast<Elem>(t),
           line_derivative_values(sym, line.dir, idxs, spec.s, F)});
    }
    // the q*s constraints pin the unique degree-<qs representative
    const auto h = poly::hermite_interpolate(samples, spec.qs(), F);
    if (h.degree() >= static_cast<std::int64_t>(spec.d()))
      return {false, line};
  }
  return {true, std::nullopt};
}

// Solves encode(msg) = word; nullopt when the word is outside the span of
// the good-monomial basis.
inline std::optional<std::vector<Elem>> message_for(const GoodBasis& basis,
                                                    const Codeword& word,
                                                    const Field& F) {
  const auto& spec = basis.spec;
  const auto idxs = poly::multi_indices_below(spec.m, spec.s);
  detail::Matrix A;
  std::vector<Elem> b;
  for (std::uint64_t idx = 0; idx < spec.num_points(); ++idx) {
    const auto pt = index_point(idx, spec);
    for (std::size_t pos = 0; pos < idxs.size(); ++pos) {
      std::vector<Elem> row(basis.monomials.size(), 0);
      for (std::size_t k = 0; k < basis.monomials.size(); ++k)
        row[k] = poly::eval_term_derivative(basis.monomials[k], idxs[pos], 1,
                                            pt, F);
      A.push_back(std::move(row));
      b.push_back(word.symbols[idx][pos]);
    }
  }
  auto res = detail::solve_linear(A, b, F);
  if (res.status != detail::SolveStatus::unique) return std::nullopt;
  return res.x;
}

struct DistanceReport {
  std::uint64_t min_weight = 0;  // symbol-level Hamming weight
  bool exact = false;
  std::uint64_t words_checked = 0;
  counting::BigInt theorem_bound;  // distance lower bound from the spec family
};

inline counting::BigInt distance_bound_for(const CodeSpec& spec) {
  if (spec.m >= 2)
    return counting::distance_lower_bound(spec.m, spec.s, spec.q, spec.r)
        .absolute;
  // univariate: the per-line multiplicity code distance
  return counting::line_distance_full(spec.s, spec.r);
}

inline std::uint64_t symbol_weight(const Codeword& w) {
  std::uint64_t wt = 0;
  for (const auto& sym : w.symbols) {
    for (auto v : sym) {
      if (v != 0) {
        ++wt;
        break;
      }
    }
  }
  return wt;
}

// Exact minimum distance when q^k <= budget, else the minimum weight over
// sample_trials random nonzero codewords (an upper bound on the distance).
inline DistanceReport min_distance_oracle(const CodeSpec& spec, const Field& F,
                                          std::uint64_t budget = (1ull << 24),
                                          std::uint64_t sample_trials = 10000,
                                          std::uint64_t seed = 0x5eed) {
  const auto basis = build_code(spec);
  const std::size_t k = basis.monomials.size();
  DistanceReport rep;
  rep.theorem_bound = distance_bound_for(spec);
  // q^k <= budget, computed without overflow
  bool exact = true;
  {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
      if (total > budget / spec.q) {
        exact = false;
        break;
      }
      total *= spec.q;
    }
  }
  rep.exact = exact && k > 0;
  rep.min_weight = UINT64_MAX;
  if (k == 0) {
    rep.exact = true;
    rep.min_weight = 0;
    return rep;
  }
  if (rep.exact) {
    std::vector<Elem> msg(k, 0);
    while (true) {
      std::size_t j = k;
      bool advanced = false;
      while (j-- > 0) {
        if (++msg[j] < spec.q) {
          advanced = true;
          break;
        }
        msg[j] = 0;
      }
      if (!advanced) break;
      rep.min_weight =
          std::min(rep.min_weight, symbol_weight(encode(basis, msg, F)));
      ++rep.words_checked;
    }
  } else {
    rng::Sampler rs(seed);
    for (std::uint64_t trial = 0; trial < sample_trials; ++trial) {
      std::vector<Elem> msg(k, 0);
      bool nonzero = false;
      while (!nonzero) {
        for (auto& c : msg) {
          c = rs.element(F);
          nonzero = nonzero || c != 0;
        }
      }
      rep.min_weight =
          std::min(rep.min_weight, symbol_weight(encode(basis, msg, F)));
      ++rep.words_checked;
    }
  }
  return rep;
}

// Binary expansion: per point (ascending index), per derivative slot
// (graded-lex), ell bits LSB-first.
inline std::vector<std::uint8_t> binary_image(const Codeword& word,
                                              const CodeSpec& spec) {
  std::vector<std::uint8_t> bits;
  bits.reserve(word.symbols.size() * spec.symbol_width() *
               static_cast<std::size_t>(spec.ell));
  for (const auto& sym : word.symbols)
    for (auto v : sym)
      for (int b = 0; b < spec.ell; ++b)
        bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
  return bits;
}

inline Codeword from_binary_image(const std::vector<std::uint8_t>& bits,
                                  const CodeSpec& spec) {
  const auto width = spec.symbol_width();
  const auto expect = spec.num_points() * width *
                      static_cast<std::uint64_t>(spec.ell);
  if (bits.size() != expect)
    throw std::invalid_argument("from_binary_image: bit length mismatch");
  Codeword w;
  w.symbols.assign(spec.num_points(), DerivativeVector(width, 0));
  std::size_t pos = 0;
  for (auto& sym : w.symbols)
    for (auto& v : sym)
      for (int b = 0; b < spec.ell; ++b)
        v |= static_cast<Elem>(bits[pos++] & 1) << b;
  return w;
}

}  // namespace liftcode::codes
