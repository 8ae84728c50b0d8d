#pragma once

// Arithmetic in GF(2^ell) for ell = 1..16.
//
// Elements are plain integers in [0, 2^ell) interpreted as GF(2)[X]
// coefficient masks; all operations go through a Field context that
// carries the modulus.  For ell <= kTableEll the Field precomputes
// log/antilog tables over a primitive element; the carry-less
// multiply-and-reduce path is always available and both paths agree.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace liftcode::gf2e {

using Elem = std::uint32_t;

inline constexpr int kMinEll = 1;
inline constexpr int kMaxEll = 16;

// Irreducible modulus for each ell; bit k set means X^k present.
inline constexpr std::uint32_t kIrreducible[kMaxEll + 1] = {
    0,        // unused
    0x3,      // X + 1
    0x7,      // X^2 + X + 1
    0xB,      // X^3 + X + 1
    0x13,     // X^4 + X + 1
    0x25,     // X^5 + X^2 + 1
    0x43,     // X^6 + X + 1
    0x89,     // X^7 + X^3 + 1
    0x11D,    // X^8 + X^4 + X^3 + X^2 + 1
    0x211,    // X^9 + X^4 + 1
    0x409,    // X^10 + X^3 + 1
    0x805,    // X^11 + X^2 + 1
    0x1053,   // X^12 + X^6 + X^4 + X + 1
    0x201B,   // X^13 + X^4 + X^3 + X + 1
    0x4443,   // X^14 + X^10 + X^6 + X + 1
    0x8003,   // X^15 + X + 1
    0x1100B,  // X^16 + X^12 + X^3 + X + 1
};

namespace detail {

inline int poly_degree(std::uint64_t x) {
  if (x == 0) return -1;
  int d = 0;
  while (x >> 1) { x >>= 1; ++d; }
  return d;
}

// Carry-less product of two GF(2)[X] polynomials.
inline std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t p = 0;
  while (b) {
    if (b & 1) p ^= a;
    a <<= 1;
    b >>= 1;
  }
  return p;
}

// Remainder of x modulo g in GF(2)[X].
inline std::uint64_t poly_rem(std::uint64_t x, std::uint64_t g) {
  const int dg = poly_degree(g);
  for (int dx = poly_degree(x); dx >= dg; dx = poly_degree(x))
    x ^= g << (dx - dg);
  return x;
}

// Trial division over all factors of degree <= ell/2.
inline bool is_irreducible(std::uint32_t poly, int ell) {
  if (poly_degree(poly) != ell) return false;
  for (std::uint64_t g = 2; poly_degree(g) <= ell / 2; ++g)
    if (poly_rem(poly, g) == 0) return false;
  return true;
}

}  // namespace detail

class Field {
 public:
  // Largest ell for which log/antilog tables are built.
  static constexpr int kTableEll = 12;

  explicit Field(int ell) : ell_(ell) {
    if (ell < kMinEll || ell > kMaxEll)
      throw std::invalid_argument("Field: ell must be in [1, 16], got " +
                                  std::to_string(ell));
    q_ = std::uint32_t{1} << ell;
    mod_ = kIrreducible[ell];
    if (!detail::is_irreducible(mod_, ell_))
      throw std::logic_error("Field: modulus table entry is reducible");
    if (ell_ <= kTableEll) build_tables();
  }

  int ell() const { return ell_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t modulus() const { return mod_; }
  bool uses_tables() const { return !log_.empty(); }
  bool contains(Elem a) const { return a < q_; }

  Elem add(Elem a, Elem b) const {
    check(a);
    check(b);
    return a ^ b;
  }

  Elem sub(Elem a, Elem b) const { return add(a, b); }

  Elem mul(Elem a, Elem b) const {
    check(a);
    check(b);
    if (!log_.empty()) {
      if (a == 0 || b == 0) return 0;
      return exp_[log_[a] + log_[b]];
    }
    return mul_reduce(a, b);
  }

  // Table-free multiply; exposed so tests can pin table/reduce agreement.
  Elem mul_reduce(Elem a, Elem b) const {
    check(a);
    check(b);
    return static_cast<Elem>(detail::poly_rem(detail::clmul(a, b), mod_));
  }

  Elem pow(Elem a, std::uint64_t e) const {
    check(a);
    Elem r = 1;  // 0^0 = 1 by convention
    Elem base = a;
    while (e) {
      if (e & 1) r = mul(r, base);
      base = mul(base, base);
      e >>= 1;
    }
    return r;
  }

  Elem inv(Elem a) const {
    check(a);
    if (a == 0) throw std::domain_error("Field::inv: division by zero");
    if (!log_.empty()) return exp_[(q_ - 1) - log_[a]];
    return pow(a, q_ - 2);
  }

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  // All q elements: 0 first, then 1, 2, ... in mask order.
  std::vector<Elem> all_elements() const {
    std::vector<Elem> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = i;
    return out;
  }

 private:
  void check(Elem a) const {
    if (a >= q_)
      throw std::invalid_argument("Field: element " + std::to_string(a) +
                                  " out of range for q=" + std::to_string(q_));
  }

  // Find a primitive element and fill exp/log; exp_ is doubled so
  // mul can skip the mod (q-1) on the exponent sum.
  void build_tables() {
    const std::uint32_t n = q_ - 1;
    log_.assign(q_, 0);
    exp_.assign(2 * n, 0);
    if (q_ == 2) {  // trivial multiplicative group: 1 generates it
      exp_[0] = exp_[1] = 1;
      return;
    }
    for (Elem g = 2; g < q_; ++g) {
      Elem x = 1;
      std::uint32_t k = 0;
      bool primitive = true;
      do {
        exp_[k] = x;
        x = mul_reduce(x, g);
        ++k;
        if (x == 1 && k < n) { primitive = false; break; }
      } while (k < n);
      if (primitive && x == 1) {
        for (std::uint32_t i = 0; i < n; ++i) {
          exp_[n + i] = exp_[i];
          log_[exp_[i]] = i;
        }
        return;
      }
    }
    throw std::logic_error("Field: no primitive element found");
  }

  int ell_;
  std::uint32_t q_ = 0;
  std::uint32_t mod_ = 0;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
};

}  // namespace liftcode::gf2e
