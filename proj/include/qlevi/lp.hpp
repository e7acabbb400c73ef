#pragma once

// Exact rational simplex: maximize c.x subject to A x <= b, x >= 0.
// Full tableau, two phases, Bland's rule for entering and leaving variables.

#include "qlevi/linalg.hpp"

namespace qlevi::lp {

struct LinearProgram {
  RatMatrix a;  // m rows, n columns
  RatVec b;
  RatVec c;

  std::size_t variables() const { return c.size(); }
};

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Rational value;
  RatVec x;
  std::size_t pivots = 0;
};

class CyclingGuardError : public Error {
public:
  using Error::Error;
};

namespace detail {

class Tableau {
public:
  // Columns: n structural, m slack, 1 artificial; last column is the rhs.
  Tableau(const LinearProgram& lp, std::size_t max_pivots)
      : n_(lp.variables()), m_(lp.a.size()), cols_(n_ + m_ + 1), max_pivots_(max_pivots) {
    rows_.assign(m_ + 1, RatVec(cols_ + 1, Rational(0)));
    basis_.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (lp.a[i].size() != n_) throw InputError("constraint row has the wrong width");
      for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = lp.a[i][j];
      rows_[i][n_ + i] = 1;
      rows_[i][cols_ - 1] = -1;  // artificial
      rows_[i][cols_] = lp.b[i];
      basis_[i] = n_ + i;
    }
  }

  Result solve(const RatVec& c) {
    const std::size_t art = cols_ - 1;
    std::size_t worst = m_;
    for (std::size_t i = 0; i < m_; ++i)
      if (rows_[i][cols_] < 0 && (worst == m_ || rows_[i][cols_] < rows_[worst][cols_])) worst = i;

    if (worst != m_) {
      // Phase 1: maximize -artificial.
      objective().assign(cols_ + 1, Rational(0));
      objective()[art] = 1;
      pivot(worst, art);
      if (!run(/*allow_artificial=*/true)) throw InternalConsistencyError("phase one of the simplex cannot be unbounded");
      if (objective()[cols_] != 0) return Result{Status::infeasible, 0, {}, pivots_};
      for (std::size_t i = 0; i < m_; ++i) {
        if (basis_[i] != art) continue;
        for (std::size_t j = 0; j < art; ++j)
          if (rows_[i][j] != 0) {
            pivot(i, j);
            break;
          }
      }
    }
    // Phase 2; the artificial column is frozen at zero.
    for (std::size_t i = 0; i < m_; ++i) rows_[i][art] = 0;
    objective().assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < n_; ++j) objective()[j] = -c[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational f = objective()[basis_[i]];
      if (f == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) objective()[j] -= f * rows_[i][j];
    }
    if (!run(false)) return Result{Status::unbounded, 0, {}, pivots_};

    Result r;
    r.status = Status::optimal;
    r.value = objective()[cols_];
    r.x.assign(n_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (basis_[i] < n_) r.x[basis_[i]] = rows_[i][cols_];
    r.pivots = pivots_;
    return r;
  }

private:
  RatVec& objective() { return rows_[m_]; }

  /// Returns false when the objective is unbounded.
  bool run(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? cols_ : cols_ - 1;
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j)
        if (objective()[j] < 0) {
          enter = j;
          break;
        }
      if (enter == limit) return true;
      std::size_t leave = m_;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (rows_[i][enter] <= 0) continue;
        Rational ratio = rows_[i][cols_] / rows_[i][enter];
        if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    if (++pivots_ > max_pivots_) throw CyclingGuardError("simplex pivot limit exceeded");
    Rational inv = 1 / rows_[r][c];
    for (auto& x : rows_[r]) x *= inv;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || rows_[i][c] == 0) continue;
      Rational f = rows_[i][c];
      for (std::size_t j = 0; j <= cols_; ++j)
        if (rows_[r][j] != 0) rows_[i][j] -= f * rows_[r][j];
    }
    basis_[r] = c;
  }

  std::size_t n_, m_, cols_, max_pivots_;
  std::size_t pivots_ = 0;
  RatMatrix rows_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline Result solve(const LinearProgram& lp, std::size_t max_pivots = 1'000'000) {
  if (lp.a.size() != lp.b.size()) throw InputError("constraint matrix and right-hand side differ in length");
  detail::Tableau t(lp, max_pivots);
  return t.solve(lp.c);
}

struct FaceDimension {
  int dimension = -1;  // -1 for an empty face
  std::vector<RatVec> points;
};

/// Affine dimension of {x >= 0 : A x <= b, row `face` tight}, with a set of
/// dimension+1 affinely independent witness points.
inline FaceDimension face_dimension(const LinearProgram& base, std::size_t face) {
  const std::size_t n = base.variables();
  LinearProgram lp = base;
  RatVec neg = base.a[face];
  for (auto& v : neg) v = -v;
  lp.a.push_back(neg);
  lp.b.push_back(-base.b[face]);

  FaceDimension out;
  lp.c.assign(n, Rational(0));
  Result start = solve(lp);
  if (start.status != Status::optimal) return out;
  out.points.push_back(start.x);

  // Directions orthogonal to the known affine hull and to known equalities.
  RatMatrix span{base.a[face]};
  for (;;) {
    RatMatrix directions = linalg::nullspace(span, n);
    if (directions.empty()) break;
    const RatVec& c = directions.front();
    const Rational here = linalg::dot(c, out.points[0]);
    bool grown = false;
    for (int sign : {1, -1}) {
      lp.c = c;
      if (sign < 0)
        for (auto& v : lp.c) v = -v;
      Result r = solve(lp);
      if (r.status == Status::optimal && linalg::dot(c, r.x) != here) {
        RatVec diff(n);
        for (std::size_t j = 0; j < n; ++j) diff[j] = r.x[j] - out.points[0][j];
        span.push_back(diff);
        out.points.push_back(r.x);
        grown = true;
        break;
      }
    }
    // c is constant on the face: an implicit equality.
    if (!grown) span.push_back(c);
  }
  out.dimension = static_cast<int>(out.points.size()) - 1;
  return out;
}

}  // namespace qlevi::lp
