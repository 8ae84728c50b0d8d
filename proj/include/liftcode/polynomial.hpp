#pragma once

// Uni- and multivariate polynomials over GF(2^ell), Hasse derivatives,
// line restrictions, the T^{qs}+T^s equivalence reduction, Hermite
// interpolation from order-s derivative data, and a univariate multiplicity
// decoder (generalized Berlekamp-Welch; classical BW at s=1).
//
// Characteristic-2 facts used throughout: binomial C(n,k) is odd iff
// k <=_2 n (Lucas), so the Hasse derivative of X^d by X^i is X^{d-i}
// exactly when i <=_2 d; and (T^q + T)^s = T^{qs} + T^s for s a power of
// two, which makes "equivalent up to order s" the same as congruence
// modulo T^{qs} + T^s.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gf2e.hpp"
#include "linalg.hpp"
#include "monomials.hpp"

namespace liftcode::poly {

using gf2e::Elem;
using gf2e::Field;
using monomials::ExponentVector;

inline bool odd_binom(std::uint64_t n, std::uint64_t k) {
  return (n & k) == k;
}

// ---------------------------------------------------------------- UniPoly

// Dense univariate polynomial; trailing zero coefficients are trimmed, the
// zero polynomial has an empty coefficient vector and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Elem> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly monomial(std::uint64_t deg, Elem coeff) {
    if (coeff == 0) return UniPoly{};
    std::vector<Elem> c(deg + 1, 0);
    c[deg] = coeff;
    return UniPoly(std::move(c));
  }

  std::int64_t degree() const {
    return static_cast<std::int64_t>(c_.size()) - 1;
  }
  bool is_zero() const { return c_.empty(); }
  Elem coeff(std::uint64_t k) const { return k < c_.size() ? c_[k] : 0; }
  const std::vector<Elem>& coeffs() const { return c_; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.c_ == b.c_;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Elem> c_;
};

inline UniPoly add(const UniPoly& a, const UniPoly& b) {
  std::vector<Elem> c(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = a.coeff(k) ^ b.coeff(k);
  return UniPoly(std::move(c));
}

inline UniPoly scale(const UniPoly& a, Elem s, const Field& F) {
  std::vector<Elem> c(a.coeffs().size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = F.mul(s, a.coeff(k));
  return UniPoly(std::move(c));
}

inline UniPoly mul(const UniPoly& a, const UniPoly& b, const Field& F) {
  if (a.is_zero() || b.is_zero()) return UniPoly{};
  std::vector<Elem> c(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeff(i) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      c[i + j] ^= F.mul(a.coeff(i), b.coeff(j));
  }
  return UniPoly(std::move(c));
}

// Quotient and remainder of a by b (b != 0).
inline std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b,
                                          const Field& F) {
  if (b.is_zero()) throw std::domain_error("divmod: division by zero poly");
  std::vector<Elem> rem(a.coeffs());
  const auto db = static_cast<std::size_t>(b.degree());
  const Elem lead_inv = F.inv(b.coeff(db));
  if (rem.size() <= db) return {UniPoly{}, UniPoly(std::move(rem))};
  std::vector<Elem> quot(rem.size() - db, 0);
  for (std::size_t k = rem.size() - 1;; --k) {
    if (rem[k] != 0) {
      const Elem f = F.mul(rem[k], lead_inv);
      quot[k - db] = f;
      for (std::size_t j = 0; j <= db; ++j)
        rem[k - db + j] ^= F.mul(f, b.coeff(j));
    }
    if (k == db) break;
  }
  return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
}

inline Elem eval(const UniPoly& g, Elem t, const Field& F) {
  Elem acc = 0;
  for (std::size_t k = g.coeffs().size(); k-- > 0;)
    acc = F.add(F.mul(acc, t), g.coeff(k));
  return acc;
}

// j-th Hasse derivative of a univariate polynomial: coefficient k of g
// contributes to k-j iff C(k,j) is odd.
inline UniPoly hasse_derivative(const UniPoly& g, std::uint64_t j) {
  if (g.coeffs().size() <= j) return UniPoly{};
  std::vector<Elem> c(g.coeffs().size() - j, 0);
  for (std::uint64_t k = j; k < g.coeffs().size(); ++k)
    if (odd_binom(k, j)) c[k - j] = g.coeff(k);
  return UniPoly(std::move(c));
}

inline Elem hasse_eval(const UniPoly& g, std::uint64_t j, Elem t,
                       const Field& F) {
  return eval(hasse_derivative(g, j), t, F);
}

// -------------------------------------------------------------- MultiPoly

// Sparse multivariate polynomial: exponent vector -> nonzero coefficient.
struct MultiPoly {
  int m = 0;
  std::map<ExponentVector, Elem> terms;

  static MultiPoly zero(int m) { return MultiPoly{m, {}}; }

  static MultiPoly monomial(ExponentVector d, Elem coeff) {
    MultiPoly f{static_cast<int>(d.size()), {}};
    f.add_term(std::move(d), coeff);
    return f;
  }

  void add_term(ExponentVector d, Elem coeff) {
    if (static_cast<int>(d.size()) != m)
      throw std::invalid_argument("MultiPoly: arity mismatch");
    if (coeff == 0) return;
    auto it = terms.find(d);
    if (it == terms.end()) {
      terms.emplace(std::move(d), coeff);
    } else {
      it->second ^= coeff;
      if (it->second == 0) terms.erase(it);
    }
  }
};

// Hasse derivative by the multi-index i: X^d maps to X^{d-i} iff i <=_2 d.
inline MultiPoly hasse_derivative(const MultiPoly& f, const ExponentVector& i) {
  MultiPoly out = MultiPoly::zero(f.m);
  for (const auto& [d, c] : f.terms) {
    if (!monomials::le2(i, d)) continue;
    ExponentVector e(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) e[k] = d[k] - i[k];
    out.add_term(std::move(e), c);
  }
  return out;
}

// Fixed graded-lex order on derivative multi-indices with deg(i) < s;
// C(s+m-1, m) entries, e.g. m=2, s=2: (0,0), (0,1), (1,0).
inline std::vector<ExponentVector> multi_indices_below(int m, std::uint32_t s) {
  std::vector<ExponentVector> out;
  ExponentVector cur(static_cast<std::size_t>(m), 0);
  auto rec = [&](auto&& self, int pos, std::uint32_t left) -> void {
    if (pos == m) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
  };
  rec(rec, 0, s - 1);
  std::sort(out.begin(), out.end(), monomials::detail::graded_lex_less);
  return out;
}

// Order-s evaluation vector of f at x, in multi_indices_below(m, s) order.
using DerivativeVector = std::vector<Elem>;

inline Elem eval_term_derivative(const ExponentVector& d,
                                 const ExponentVector& i, Elem coeff,
                                 const std::vector<Elem>& x, const Field& F) {
  if (!monomials::le2(i, d)) return 0;
  Elem acc = coeff;
  for (std::size_t k = 0; k < d.size(); ++k)
    acc = F.mul(acc, F.pow(x[k], d[k] - i[k]));
  return acc;
}

inline DerivativeVector eval_with_derivatives(const MultiPoly& f,
                                              const std::vector<Elem>& x,
                                              std::uint32_t s, const Field& F) {
  if (static_cast<int>(x.size()) != f.m)
    throw std::invalid_argument("eval_with_derivatives: point arity mismatch");
  const auto idxs = multi_indices_below(f.m, s);
  DerivativeVector out(idxs.size(), 0);
  for (std::size_t pos = 0; pos < idxs.size(); ++pos) {
    Elem acc = 0;
    for (const auto& [d, c] : f.terms)
      acc ^= eval_term_derivative(d, idxs[pos], c, x, F);
    out[pos] = acc;
  }
  return out;
}

// ------------------------------------------------------------------ Lines

// Canonical affine line: direction's first nonzero coordinate is 1 and the
// base point's coordinate at that pivot is 0, so each point set has exactly
// one representative.
struct Line {
  std::vector<Elem> base;
  std::vector<Elem> dir;
  std::size_t pivot = 0;
};

inline Line make_line(std::vector<Elem> base, std::vector<Elem> dir,
                      const Field& F) {
  if (base.size() != dir.size() || base.empty())
    throw std::invalid_argument("make_line: base/direction arity mismatch");
  std::size_t p = 0;
  while (p < dir.size() && dir[p] == 0) ++p;
  if (p == dir.size())
    throw std::invalid_argument("make_line: zero direction");
  const Elem s = F.inv(dir[p]);
  for (auto& v : dir) v = F.mul(s, v);
  // shift the parameter so the base sits at pivot coordinate 0
  const Elem t0 = base[p];
  for (std::size_t k = 0; k < base.size(); ++k)
    base[k] = F.add(base[k], F.mul(t0, dir[k]));
  return Line{std::move(base), std::move(dir), p};
}

inline std::vector<Elem> line_point(const Line& L, Elem t, const Field& F) {
  std::vector<Elem> p(L.base.size());
  for (std::size_t k = 0; k < p.size(); ++k)
    p[k] = F.add(L.base[k], F.mul(t, L.dir[k]));
  return p;
}

// Symbolic restriction f(base + dir*T); no degree reduction is applied, so
// the result can have degree up to deg(f).
inline UniPoly restrict_to_line(const MultiPoly& f, const Line& L,
                                const Field& F) {
  std::uint64_t maxdeg = 0;
  for (const auto& [d, c] : f.terms)
    maxdeg = std::max(maxdeg, monomials::degree(d));
  std::vector<Elem> out(maxdeg + 1, 0);
  for (const auto& [d, c] : f.terms) {
    // expand prod_k (w_k + v_k T)^{d_k} via i <=_2 d (binomial parity)
    ExponentVector i(d.size(), 0);
    while (true) {
      Elem term = c;
      std::uint64_t tdeg = 0;
      for (std::size_t k = 0; k < d.size() && term != 0; ++k) {
        term = F.mul(term, F.pow(L.dir[k], i[k]));
        term = F.mul(term, F.pow(L.base[k], d[k] - i[k]));
        tdeg += i[k];
      }
      if (term != 0) out[tdeg] ^= term;
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
  }
  return UniPoly(std::move(out));
}

// Remainder modulo T^{qs} + T^s: folds T^a onto T^{a-(qs-s)} until a < qs.
// The result is the unique degree-<qs representative equivalent to g up to
// order s.
inline UniPoly reduce_equiv(const UniPoly& g, std::uint32_t q,
                            std::uint32_t s) {
  monomials::detail::require_pow2(q, "q");
  monomials::detail::require_pow2(s, "s");
  const std::uint64_t qs = std::uint64_t{q} * s;
  std::vector<Elem> c(g.coeffs());
  for (std::size_t a = c.size(); a-- > 0;) {
    if (a < qs || c[a] == 0) continue;
    c[a - (qs - s)] ^= c[a];
    c[a] = 0;
  }
  return UniPoly(std::move(c));
}

// --------------------------------------------- Hermite interpolation/decoding

struct HermiteSample {
  Elem t;
  std::vector<Elem> values;  // values[j] = g^{(j)}(t) for j < s
};

struct InterpolationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace hermite_detail {

// Row of the linear system for constraint "j-th derivative at t", over
// unknowns c_0..c_{D-1}: entry k is [C(k,j) odd] * t^{k-j}.
inline std::vector<Elem> constraint_row(Elem t, std::uint64_t j,
                                        std::uint64_t D, const Field& F) {
  std::vector<Elem> row(D, 0);
  for (std::uint64_t k = j; k < D; ++k)
    if (odd_binom(k, j)) row[k] = F.pow(t, k - j);
  return row;
}

}  // namespace hermite_detail

// Unique degree-<D polynomial matching all supplied order-s derivative
// constraints.  Throws std::invalid_argument when the constraints cannot
// determine D coefficients and InterpolationError when they are mutually
// inconsistent.
inline UniPoly hermite_interpolate(const std::vector<HermiteSample>& samples,
                                   std::uint64_t D, const Field& F) {
  if (D == 0) return UniPoly{};
  std::size_t constraints = 0;
  for (const auto& smp : samples) constraints += smp.values.size();
  if (constraints < D)
    throw std::invalid_argument("hermite_interpolate: underdetermined system");
  detail::Matrix A;
  std::vector<Elem> b;
  A.reserve(constraints);
  b.reserve(constraints);
  for (const auto& smp : samples) {
    for (std::size_t j = 0; j < smp.values.size(); ++j) {
      A.push_back(hermite_detail::constraint_row(smp.t, j, D, F));
      b.push_back(smp.values[j]);
    }
  }
  auto res = detail::solve_linear(A, b, F);
  if (res.status == detail::SolveStatus::inconsistent)
    throw InterpolationError("hermite_interpolate: inconsistent constraints");
  if (res.status == detail::SolveStatus::underdetermined)
    throw std::invalid_argument("hermite_interpolate: underdetermined system");
  return UniPoly(std::move(res.x));
}

// Generalized Berlekamp-Welch decoder for univariate multiplicity codes:
// given order-s data at distinct points with at most `max_errors` corrupted
// positions (a position is an error if any of its s values is wrong),
// recovers the unique degree-<D polynomial, or returns nullopt.  The error
// locator E carries each error with multiplicity s; at s=1 this is the
// classical Berlekamp-Welch algorithm.
inline std::optional<UniPoly> decode_univariate_multiplicity(
    const std::vector<HermiteSample>& noisy, std::uint64_t D, std::uint32_t s,
    std::uint64_t max_errors, const Field& F) {
  for (const auto& smp : noisy)
    if (smp.values.size() != s)
      throw std::invalid_argument("decode: sample arity != s");

  auto try_errors = [&](std::uint64_t e) -> std::optional<UniPoly> {
    const std::uint64_t ne = s * e + 1;   // unknowns in E (deg <= s*e)
    const std::uint64_t nn = D + s * e;   // unknowns in N (deg < D + s*e)
    detail::Matrix A;
    for (const auto& smp : noisy) {
      for (std::uint64_t j = 0; j < s; ++j) {
        std::vector<Elem> row(ne + nn, 0);
        // sum_{u+w'=j} y_u(t) * E^{(w')}(t) contributes, per unknown E_w:
        // sum_{w'<=min(j,w)} [C(w,w') odd] y_{j-w'} t^{w-w'}
        for (std::uint64_t w = 0; w < ne; ++w) {
          Elem acc = 0;
          for (std::uint64_t wp = 0; wp <= j && wp <= w; ++wp)
            if (odd_binom(w, wp))
              acc ^= F.mul(smp.values[j - wp], F.pow(smp.t, w - wp));
          row[w] = acc;
        }
        // N^{(j)}(t) moved across: per unknown N_k, [C(k,j) odd] t^{k-j}
        for (std::uint64_t k = j; k < nn; ++k)
          if (odd_binom(k, j)) row[ne + k] = F.pow(smp.t, k - j);
        A.push_back(std::move(row));
      }
    }
    auto kernel = detail::kernel_basis(A, F);
    for (const auto& vec : kernel) {
      UniPoly E(std::vector<Elem>(vec.begin(),
                                  vec.begin() + static_cast<std::ptrdiff_t>(ne)));
      if (E.is_zero()) continue;
      UniPoly N(std::vector<Elem>(vec.begin() + static_cast<std::ptrdiff_t>(ne),
                                  vec.end()));
      auto [g, rem] = divmod(N, E, F);
      if (!rem.is_zero()) continue;
      if (g.degree() >= static_cast<std::int64_t>(D)) continue;
      std::uint64_t mismatches = 0;
      for (const auto& smp : noisy) {
        for (std::uint64_t j = 0; j < s; ++j) {
          if (hasse_eval(g, j, smp.t, F) != smp.values[j]) {
            ++mismatches;
            break;
          }
        }
      }
      if (mismatches <= e) return g;
    }
    return std::nullopt;
  };

  for (std::uint64_t e = 0; e <= max_errors; ++e)
    if (auto g = try_errors(e)) return g;
  return std::nullopt;
}

}  // namespace liftcode::poly
