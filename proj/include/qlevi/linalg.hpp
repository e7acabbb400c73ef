#pragma once

// Small dense exact linear algebra over the rationals.

#include "qlevi/rational.hpp"

#include <cstddef>
#include <optional>
#include <utility>

namespace qlevi::linalg {

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto v : m[i]) out[i].push_back(make_rational(v));
  return out;
}

inline RatMatrix identity(std::size_t n) {
  RatMatrix id(n, RatVec(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

inline RatVec multiply(const RatMatrix& m, const RatVec& v) {
  RatVec out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Rational inv = 1 / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(RatMatrix m) { return row_reduce(m).size(); }

/// Inverse of a square matrix, or nullopt when singular.
inline std::optional<RatMatrix> inverse(const RatMatrix& m) {
  const std::size_t n = m.size();
  RatMatrix aug(n, RatVec(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = 1;
  }
  auto piv = row_reduce(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMatrix inv(n, RatVec(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
  return inv;
}

/// Basis of {x : m x = 0}; `cols` gives the ambient dimension when m is empty.
inline RatMatrix nullspace(RatMatrix m, std::size_t cols) {
  RatMatrix basis;
  std::vector<std::size_t> piv = m.empty() ? std::vector<std::size_t>{} : row_reduce(m);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : piv) is_pivot[p] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RatVec v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Solves x^T m = target^T for x (a left combination of the rows of m).
/// Returns nullopt when target is not in the row space.
inline std::optional<RatVec> solve_left(const RatMatrix& m, const RatVec& target) {
  const std::size_t rows = m.size(), cols = target.size();
  // Transpose system: m^T x = target.
  RatMatrix aug(cols, RatVec(rows + 1, Rational(0)));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t r = 0; r < rows; ++r) aug[c][r] = m[r][c];
    aug[c][rows] = target[c];
  }
  auto piv = row_reduce(aug);
  if (!piv.empty() && piv.back() == rows) return std::nullopt;
  RatVec x(rows, Rational(0));
  for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = aug[i][rows];
  return x;
}

}  // namespace qlevi::linalg
