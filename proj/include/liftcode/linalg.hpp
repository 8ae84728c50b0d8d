#pragma once

// Dense linear algebra over GF(2^ell): reduced row echelon form, linear
// solves with explicit status, and kernel bases.  Matrices are row-major
// vectors of rows; sizes here are desk-scale (at most a few hundred), so
// plain Gaussian elimination is the right tool.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gf2e.hpp"

namespace liftcode::detail {

using gf2e::Elem;
using gf2e::Field;
using Matrix = std::vector<std::vector<Elem>>;

// In-place RREF; returns the pivot column of each pivot row.
inline std::vector<std::size_t> rref(Matrix& A, const Field& F) {
  std::vector<std::size_t> pivots;
  if (A.empty()) return pivots;
  const std::size_t rows = A.size(), cols = A[0].size();
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols && pr < rows; ++c) {
    std::size_t sel = pr;
    while (sel < rows && A[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(A[pr], A[sel]);
    const Elem s = F.inv(A[pr][c]);
    for (std::size_t j = c; j < cols; ++j) A[pr][j] = F.mul(s, A[pr][j]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == pr || A[i][c] == 0) continue;
      const Elem f = A[i][c];
      for (std::size_t j = c; j < cols; ++j)
        A[i][j] = F.add(A[i][j], F.mul(f, A[pr][j]));
    }
    pivots.push_back(c);
    ++pr;
  }
  return pivots;
}

enum class SolveStatus { unique, inconsistent, underdetermined };

struct SolveResult {
  SolveStatus status;
  std::vector<Elem> x;  // filled only when status == unique
};

// Solves A x = b (A may be overdetermined).
inline SolveResult solve_linear(const Matrix& A, const std::vector<Elem>& b,
                                const Field& F) {
  if (A.size() != b.size())
    throw std::invalid_argument("solve_linear: row/rhs size mismatch");
  if (A.empty()) return {SolveStatus::unique, {}};
  const std::size_t cols = A[0].size();
  Matrix aug(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) {
    aug[i] = A[i];
    aug[i].push_back(b[i]);
  }
  auto pivots = rref(aug, F);
  // a pivot in the rhs column means inconsistency
  if (!pivots.empty() && pivots.back() == cols)
    return {SolveStatus::inconsistent, {}};
  if (pivots.size() < cols) return {SolveStatus::underdetermined, {}};
  std::vector<Elem> x(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) x[pivots[i] /* == i */] = aug[i][cols];
  return {SolveStatus::unique, x};
}

// Basis of the right kernel {x : A x = 0}.
inline Matrix kernel_basis(Matrix A, const Field& F) {
  if (A.empty()) return {};
  const std::size_t cols = A[0].size();
  auto pivots = rref(A, F);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[pivots[i]] = A[i][free];  // -A = A in characteristic 2
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace liftcode::detail
