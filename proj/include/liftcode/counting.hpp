#pragma once

// Exact bad-monomial counting.  s_j(ell) counts exponent vectors d in
// Z_q^m (q = 2^ell) admitting a dominated i <=_2 d with
// deg(i) = (q-r) + j*q; the vector s(ell) = (s_0, ..., s_{m-1}) obeys the
// exact linear recurrence s(ell+1) = A_m s(ell) whose transfer matrix A_m
// depends only on m.  The dominant eigenvalue lambda_m governs the bad
// fraction Theta((q/r)^{log lambda_m - m}) and every asymptotic redundancy
// exponent evaluated here.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "monomials.hpp"

namespace liftcode::counting {

using BigInt = boost::multiprecision::cpp_int;
using monomials::ExponentVector;

inline BigInt binomial(std::uint64_t n, std::int64_t k) {
  if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
  BigInt r = 1;
  for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(k); ++i) {
    r *= static_cast<std::uint64_t>(n - i);
    r /= static_cast<std::uint64_t>(i + 1);
  }
  return r;
}

struct TransferMatrix {
  int m = 0;
  std::vector<std::vector<BigInt>> entries;  // m x m, non-negative
};

// Row j (0-based): column 0 holds sum_{t >= 2j+1} C(m,t); column c >= 1
// holds C(m, 2j - c + 1).  For m=2 this is [[3,1],[0,1]].
inline TransferMatrix build_transfer_matrix(int m) {
  if (m < 2) throw std::invalid_argument("build_transfer_matrix: m >= 2");
  TransferMatrix A{m, std::vector<std::vector<BigInt>>(
                          static_cast<std::size_t>(m),
                          std::vector<BigInt>(static_cast<std::size_t>(m)))};
  for (int j = 0; j < m; ++j) {
    BigInt tail = 0;
    for (int t = 2 * j + 1; t <= m; ++t)
      tail += binomial(static_cast<std::uint64_t>(m), t);
    A.entries[static_cast<std::size_t>(j)][0] = tail;
    for (int c = 1; c < m; ++c)
      A.entries[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)] =
          binomial(static_cast<std::uint64_t>(m), 2 * j - c + 1);
  }
  return A;
}

struct RecurrenceState {
  int m = 0;
  std::uint32_t r = 0;
  int ell = 0;
  std::vector<BigInt> counts;  // s_0(ell) .. s_{m-1}(ell)
};

// Smallest base level: 2^{ell0} >= max(r, 2).
inline int minimal_base_ell(std::uint32_t r) {
  int ell0 = 1;
  while ((std::uint32_t{1} << ell0) < r) ++ell0;
  return ell0;
}

namespace detail {

inline void check_base_params(int m, std::uint32_t r, int ell0) {
  if (m < 1) throw std::invalid_argument("base state: m >= 1 required");
  if (ell0 < 1 || ell0 > 20)
    throw std::invalid_argument("base state: ell out of range");
  const std::uint64_t q = std::uint64_t{1} << ell0;
  if (r == 0 || r > static_cast<std::uint32_t>(m) || r > q)
    throw std::invalid_argument(
        "base state: requires 1 <= r <= min(m, 2^ell) (r=" +
        std::to_string(r) + ")");
  // documented desk-scale budget on the 2^{m*ell} enumeration
  if (m * ell0 > 24)
    throw std::length_error("base state: 2^{m*ell} exceeds the work budget");
}

}  // namespace detail

// Exact S_j membership sets at level ell by direct enumeration; the heavy
// sibling of bruteforce_base_state, used as the recurrence's test oracle.
inline std::vector<std::vector<ExponentVector>> bruteforce_state_sets(
    int m, std::uint32_t r, int ell) {
  detail::check_base_params(m, r, ell);
  const std::uint32_t q = std::uint32_t{1} << ell;
  std::vector<std::vector<ExponentVector>> sets(static_cast<std::size_t>(m));
  ExponentVector d(static_cast<std::size_t>(m), 0);
  while (true) {
    const auto reach = monomials::detail::achievable_table(d, 0);
    for (int j = 0; j < m; ++j) {
      const std::uint64_t target = (q - r) + static_cast<std::uint64_t>(j) * q;
      if (target < reach.size() && reach[target])
        sets[static_cast<std::size_t>(j)].push_back(d);
    }
    int k = m - 1;
    while (k >= 0) {
      if (++d[static_cast<std::size_t>(k)] < q) break;
      d[static_cast<std::size_t>(k)] = 0;
      --k;
    }
    if (k < 0) break;
  }
  return sets;
}

// Exact counts s_j(ell0) by direct enumeration over Z_q^m.
inline RecurrenceState bruteforce_base_state(int m, std::uint32_t r, int ell0) {
  auto sets = bruteforce_state_sets(m, r, ell0);
  RecurrenceState st{m, r, ell0, std::vector<BigInt>(sets.size())};
  for (std::size_t j = 0; j < sets.size(); ++j) st.counts[j] = sets[j].size();
  return st;
}

// Applies A_m exactly (target_ell - state.ell) times.
inline RecurrenceState iterate_recurrence(const RecurrenceState& state,
                                          int target_ell) {
  if (target_ell < state.ell)
    throw std::invalid_argument("iterate_recurrence: target below state.ell");
  const auto A = build_transfer_matrix(state.m);
  RecurrenceState out = state;
  for (int step = state.ell; step < target_ell; ++step) {
    std::vector<BigInt> next(out.counts.size());
    for (std::size_t j = 0; j < next.size(); ++j) {
      BigInt acc = 0;
      for (std::size_t c = 0; c < next.size(); ++c)
        acc += A.entries[j][c] * out.counts[c];
      next[j] = acc;
    }
    out.counts = std::move(next);
    ++out.ell;
  }
  return out;
}

// Witness-degree reduction (most-significant-bit-first clearing): from
// i <=_2 d with deg(i) >= j*2^ell, produces a <=_2 i with
// deg(a) = deg(i) - (j-l)*2^ell.
inline ExponentVector weight_reduction(const ExponentVector& i, std::uint64_t j,
                                       std::uint64_t l, int ell) {
  if (l >= j) throw std::invalid_argument("weight_reduction: requires l < j");
  if (monomials::degree(i) < (j << ell))
    throw std::invalid_argument("weight_reduction: requires deg(i) >= j*2^ell");
  ExponentVector a = i;
  std::uint64_t delta = j - l;  // deficit in units of 2^h
  for (int h = ell; h-- > 0;) {
    delta *= 2;
    std::uint64_t bits = 0;
    for (auto x : a) bits += (x >> h) & 1;
    if (delta > bits) {
      for (auto& x : a) x &= ~(std::uint32_t{1} << h);
      delta -= bits;  // remaining deficit continues to lower levels
    } else {
      std::uint64_t cleared = 0;
      for (auto& x : a) {
        if (cleared == delta) break;
        if ((x >> h) & 1) {
          x &= ~(std::uint32_t{1} << h);
          ++cleared;
        }
      }
      delta = 0;
      break;
    }
  }
  if (monomials::degree(a) != monomials::degree(i) - ((j - l) << ell))
    throw std::logic_error("weight_reduction: degree contract violated");
  return a;
}

// Componentwise split d = lead * 2^{ell-1} + dropped.
inline std::pair<ExponentVector, ExponentVector> drop_and_lead(
    const ExponentVector& d, int ell) {
  if (ell < 1) throw std::invalid_argument("drop_and_lead: ell >= 1");
  const std::uint32_t half = std::uint32_t{1} << (ell - 1);
  ExponentVector lead(d.size()), dropped(d.size());
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] >= 2 * half)
      throw std::invalid_argument("drop_and_lead: entry out of Z_{2^ell}");
    lead[k] = d[k] >> (ell - 1);
    dropped[k] = d[k] & (half - 1);
  }
  return {std::move(lead), std::move(dropped)};
}

struct SpectralReport {
  int m = 0;
  double lambda = 0;   // dominant eigenvalue of A_m
  double gap = 0;      // m - log2(lambda)
  double p_m = 0;      // -log2(1 - 2^{-m ceil(log2 m)}) / ceil(log2 m)
  bool bounds_ok = false;
  int iterations = 0;
};

// Dominant eigenvalue by power iteration (all-ones start, max-norm).
// Stops only when the estimate AND the normalized iterate are stable for two
// consecutive steps: with the all-ones start the estimate alone sits exactly
// at 2^m for the first ~m/2 iterations (the leading rows all have full row
// sum 2^m, and the tail deficit needs that long to reach component 1), so an
// estimate-only test would return 2^m for m >= 8.
inline SpectralReport top_eigenvalue(const TransferMatrix& A,
                                     double tol = 1e-9) {
  if (tol <= 0) throw std::invalid_argument("top_eigenvalue: tol > 0");
  const int m = A.m;
  std::vector<std::vector<double>> Ad(static_cast<std::size_t>(m),
                                      std::vector<double>(static_cast<std::size_t>(m)));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      Ad[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          A.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
              .convert_to<double>();
  std::vector<double> x(static_cast<std::size_t>(m), 1.0);
  double lambda = 0;
  int stable = 0;
  int iters = 0;
  constexpr int kMaxIters = 1000000;
  while (iters < kMaxIters) {
    ++iters;
    std::vector<double> y(static_cast<std::size_t>(m), 0.0);
    double norm = 0;
    for (int i = 0; i < m; ++i) {
      double acc = 0;
      for (int j = 0; j < m; ++j)
        acc += Ad[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
               x[static_cast<std::size_t>(j)];
      y[static_cast<std::size_t>(i)] = acc;
      norm = std::max(norm, acc);
    }
    double drift = 0;
    for (int i = 0; i < m; ++i) {
      y[static_cast<std::size_t>(i)] /= norm;
      drift = std::max(drift, std::abs(y[static_cast<std::size_t>(i)] -
                                       x[static_cast<std::size_t>(i)]));
    }
    const double prev = lambda;
    lambda = norm;
    x = std::move(y);
    if (prev > 0 && std::abs(lambda - prev) <= tol * lambda && drift <= tol) {
      if (++stable >= 2) break;
    } else {
      stable = 0;
    }
  }
  if (iters >= kMaxIters)
    throw std::runtime_error("top_eigenvalue: power iteration did not converge");

  // characteristic-polynomial cross-check at small m: one Newton step on
  // chi must not move the eigenvalue by more than a whisker
  if (m <= 4) {
    std::vector<double> c(static_cast<std::size_t>(m) + 1, 0.0);
    c[0] = 1.0;  // chi(x) = x^m + c_1 x^{m-1} + ... + c_m  (Faddeev-LeVerrier)
    std::vector<std::vector<double>> M(static_cast<std::size_t>(m),
                                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
    for (int k = 1; k <= m; ++k) {
      // M <- A (M + c_{k-1} I)
      auto prevM = M;
      for (int i = 0; i < m; ++i)
        prevM[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] +=
            c[static_cast<std::size_t>(k - 1)];
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          double acc = 0;
          for (int t = 0; t < m; ++t)
            acc += Ad[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] *
                   prevM[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
          M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = acc;
        }
      double tr = 0;
      for (int i = 0; i < m; ++i)
        tr += M[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
      c[static_cast<std::size_t>(k)] = -tr / k;
    }
    double chi = 0, dchi = 0;
    for (int k = 0; k <= m; ++k) {
      chi = chi * lambda + c[static_cast<std::size_t>(k)];
      if (k < m) dchi = dchi * lambda + (m - k) * c[static_cast<std::size_t>(k)];
    }
    if (dchi == 0 || std::abs(chi / dchi) > 1e-6 * lambda)
      throw std::runtime_error(
          "top_eigenvalue: characteristic-polynomial cross-check failed");
  }

  SpectralReport rep;
  rep.m = m;
  rep.lambda = lambda;
  rep.gap = m - std::log2(lambda);
  const int k = static_cast<int>(std::ceil(std::log2(static_cast<double>(m))));
  const int kk = std::max(k, 1);
  // -log2(1 - 2^{-m*kk}) / kk via log1p to survive tiny 2^{-m*kk}
  const double tiny = std::exp2(-static_cast<double>(m) * kk);
  rep.p_m = -std::log1p(-tiny) / (std::log(2.0) * kk);
  const double upper = -std::log1p(-std::exp2(-static_cast<double>(m))) /
                       std::log(2.0);
  constexpr double kSlack = 1e-9;  // floating-point slack on the sandwich
  rep.bounds_ok = lambda >= std::exp2(m - 1) * (1 - kSlack) &&
                  lambda <= std::exp2(m) * (1 + kSlack) &&
                  rep.p_m <= rep.gap + kSlack && rep.gap <= upper + kSlack;
  rep.iterations = iters;
  return rep;
}

struct RateReport {
  BigInt good;    // number of good monomials (message symbols)
  BigInt total;   // C(s+m-1, m) * q^m (code symbols x derivative slots)
  BigInt num, den;  // reduced fraction good/total
  double value = 0;
};

// Exact rate |good| / (C(s+m-1,m) q^m) of the lifted code with threshold
// d_threshold (= qs - r).
inline RateReport exact_rate(int m, std::uint32_t s, std::uint32_t q,
                             std::uint64_t d_threshold) {
  const auto good = monomials::enumerate_good(m, s, q, d_threshold);
  RateReport rep;
  rep.good = good.size();
  BigInt qm = 1;
  for (int k = 0; k < m; ++k) qm *= q;
  rep.total = binomial(std::uint64_t{s} + static_cast<std::uint64_t>(m) - 1,
                       static_cast<std::int64_t>(m)) *
              qm;
  BigInt g = boost::multiprecision::gcd(rep.good, rep.total);
  if (g == 0) g = 1;
  rep.num = rep.good / g;
  rep.den = rep.total / g;
  rep.value = rep.num.convert_to<double>() / rep.den.convert_to<double>();
  return rep;
}

struct DistanceBound {
  BigInt absolute;          // 1 + ceil((r+1)/s - 1) (q-s) q^{m-2}
  BigInt rel_num;           // ceil((r-s+1)/s) (q-s)
  BigInt rel_den;           // q^2
  double relative = 0;
};

inline DistanceBound distance_lower_bound(int m, std::uint32_t s,
                                          std::uint32_t q, std::uint32_t r) {
  if (m < 2) throw std::invalid_argument("distance_lower_bound: m >= 2");
  if (r >= q || s >= q)
    throw std::invalid_argument("distance_lower_bound: requires r, s < q");
  auto ceil_div_nonneg = [](std::int64_t a, std::int64_t b) -> std::int64_t {
    if (a <= 0) return 0;
    return (a + b - 1) / b;
  };
  const std::int64_t steps =
      ceil_div_nonneg(static_cast<std::int64_t>(r) + 1 - s, s);
  BigInt qm2 = 1;
  for (int k = 0; k < m - 2; ++k) qm2 *= q;
  DistanceBound out;
  out.absolute = 1 + BigInt(steps) * (q - s) * qm2;
  out.rel_num =
      BigInt(ceil_div_nonneg(static_cast<std::int64_t>(r) - s + 1, s)) *
      (q - s);
  out.rel_den = BigInt(q) * q;
  out.relative = out.rel_num.convert_to<double>() /
                 out.rel_den.convert_to<double>();
  return out;
}

// Minimum distance of the univariate (per-line) code: degree-<(qs-r)
// multiplicity code over all q points.
inline std::uint32_t line_distance_full(std::uint32_t s, std::uint32_t r) {
  return static_cast<std::uint32_t>((r + s) / s);  // ceil((r+1)/s) for s | r+s
}

// Unique-decoding radius when only the q-1 punctured points (t != 0) are
// read: the Berlekamp-Welch count argument gives 2*s*e <= r - s.
inline std::uint32_t correction_radius(std::uint32_t s, std::uint32_t r) {
  if (r < s) return 0;
  return (r - s) / (2 * s);
}

// ------------------------------------------------- redundancy calculators

enum class RedundancyFamily {
  pir_lifted_mult,          // delta_LM
  pir_lifted_mult_binary,   // delta'_LM
  pir_mult,                 // delta_M
  pir_mult_binary,          // delta'_M
  pir_lifted_rs,            // delta_LRS  (delta_LM at eps = (m-1)/m)
  pir_lifted_rs_binary,     // delta'_LRS
  batch_lifted_rs,          // (m - log l) eps + (m-1) log l / m - m + 2
  batch_lifted_rs_binary,   // same exponent, binary image
  batch_pir,                // (m-1)/m + (1 + log l - m)(1+eps)/(2m-2)
  batch_pir_binary,         // (2m-1)/(2m) + (1 + 2 log l - 2m)(1+eps)/(4m-4)
};

struct RedundancyReport {
  RedundancyFamily family;
  double epsilon = 0;
  int m = 0;
  double exponent = 0;
};

inline constexpr int kRedundancyMaxM = 16;

namespace detail {

inline double log_lambda(int m) {
  return std::log2(top_eigenvalue(build_transfer_matrix(m), 1e-13).lambda);
}

inline bool is_batch(RedundancyFamily f) {
  return f == RedundancyFamily::batch_lifted_rs ||
         f == RedundancyFamily::batch_lifted_rs_binary ||
         f == RedundancyFamily::batch_pir ||
         f == RedundancyFamily::batch_pir_binary;
}

}  // namespace detail

// Exponent of one family at fixed m; throws when eps is outside the
// theorem's range for that family.
inline double redundancy_exponent(RedundancyFamily family, double eps, int m) {
  if (m < 2 || m > kRedundancyMaxM)
    throw std::invalid_argument("redundancy_exponent: m out of [2, 16]");
  const double md = m;
  auto require = [&](bool ok, const char* range) {
    if (!ok)
      throw std::invalid_argument(std::string("redundancy_exponent: eps "
                                              "outside theorem range ") +
                                  range);
  };
  switch (family) {
    case RedundancyFamily::pir_lifted_mult: {
      require(eps > 0 && eps <= (md - 1) / md, "(0, (m-1)/m]");
      const double lg = detail::log_lambda(m);
      return (md - 1) / md + (1 + lg - md) / (md - 1) * eps;
    }
    case RedundancyFamily::pir_lifted_mult_binary: {
      require(eps > 0 && eps <= (md - 1) / md, "(0, (m-1)/m]");
      const double lg = detail::log_lambda(m);
      return (2 * md - 1) / (2 * md) + (1 + 2 * lg - 2 * md) / (2 * md - 2) * eps;
    }
    case RedundancyFamily::pir_mult:
      require(eps > 0 && eps <= (md - 1) / md, "(0, (m-1)/m]");
      return (md - 1) / md + eps / (md - 1);
    case RedundancyFamily::pir_mult_binary:
      require(eps > 0 && eps <= (md - 1) / md, "(0, (m-1)/m]");
      return (2 * md - 1) / (2 * md) + eps / (2 * md - 2);
    case RedundancyFamily::pir_lifted_rs:
      require(eps > 0 && eps <= (md - 1) / md, "(0, (m-1)/m]");
      return redundancy_exponent(RedundancyFamily::pir_lifted_mult,
                                 (md - 1) / md, m);
    case RedundancyFamily::pir_lifted_rs_binary:
      require(eps > 0 && eps <= (md - 1) / md, "(0, (m-1)/m]");
      return redundancy_exponent(RedundancyFamily::pir_lifted_mult_binary,
                                 (md - 1) / md, m);
    case RedundancyFamily::batch_lifted_rs:
    case RedundancyFamily::batch_lifted_rs_binary: {
      require(eps > (md - 2) / md && eps < (md - 1) / md,
              "((m-2)/m, (m-1)/m)");
      const double lg = detail::log_lambda(m);
      return (md - lg) * eps + (md - 1) * lg / md - md + 2;
    }
    case RedundancyFamily::batch_pir: {
      require(eps > 0 && eps <= (md - 2) / md, "(0, (m-2)/m]");
      const double lg = detail::log_lambda(m);
      return (md - 1) / md + (1 + lg - md) * (1 + eps) / (2 * md - 2);
    }
    case RedundancyFamily::batch_pir_binary: {
      require(eps > 0 && eps <= (md - 2) / md, "(0, (m-2)/m]");
      const double lg = detail::log_lambda(m);
      return (2 * md - 1) / (2 * md) +
             (1 + 2 * lg - 2 * md) * (1 + eps) / (4 * md - 4);
    }
  }
  throw std::logic_error("redundancy_exponent: unknown family");
}

// Minimizes the family's exponent over admissible m (m >= ceil(1/(1-eps)),
// or ceil(2/(1-eps)) for batch families), searching up to m = 16.
inline RedundancyReport redundancy_calculators(RedundancyFamily family,
                                               double eps) {
  if (!(eps > 0 && eps < 1))
    throw std::invalid_argument("redundancy_calculators: eps in (0,1)");
  const double need = detail::is_batch(family) ? 2.0 / (1 - eps)
                                               : 1.0 / (1 - eps);
  const int m_lo = std::max(2, static_cast<int>(std::ceil(need - 1e-12)));
  if (m_lo > kRedundancyMaxM)
    throw std::invalid_argument(
        "redundancy_calculators: eps requires m beyond the supported range");
  RedundancyReport best{family, eps, 0, 0};
  for (int m = m_lo; m <= kRedundancyMaxM; ++m) {
    double expo;
    try {
      expo = redundancy_exponent(family, eps, m);
    } catch (const std::invalid_argument&) {
      continue;  // eps outside this m's window (batch_lifted_rs is two-sided)
    }
    if (best.m == 0 || expo < best.exponent) {
      best.m = m;
      best.exponent = expo;
    }
  }
  if (best.m == 0)
    throw std::invalid_argument(
        "redundancy_calculators: no admissible m for this eps");
  return best;
}

}  // namespace liftcode::counting
