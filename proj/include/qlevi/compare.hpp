#pragma once

// Margin-separated random points and exact-vs-numeric verdict comparison.

#include "qlevi/eigencone.hpp"
#include "qlevi/unitary_oracle.hpp"

#include <random>

namespace qlevi {

/// Smallest |lhs - rhs| over the inequalities, and the smallest alcove slack.
inline Rational point_margin(const RootSystem& rs, const std::vector<CartanPoint>& point, const std::vector<Inequality>& inequalities) {
  Alcove alcove(rs);
  Rational best = alcove.margin(point[0]);
  for (const auto& mu : point) best = std::min(best, alcove.margin(mu));
  for (const auto& q : inequalities) {
    Rational gap = q.evaluate(rs, point) - q.rhs();
    best = std::min(best, Rational(abs(gap)));
  }
  return best;
}

/// Seeded rational points with coordinates in (1/denominator)Z, rejected until
/// the margin is at least `margin`.
inline std::vector<std::vector<CartanPoint>> sample_points(const RootSystem& rs, int n, const std::vector<Inequality>& inequalities,
                                                           std::size_t count, const Rational& margin, std::uint64_t seed,
                                                           int denominator = 120, std::size_t max_attempts = 10'000'000) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> coord(0, denominator);
  std::vector<std::vector<CartanPoint>> out;
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt == max_attempts) throw InputError("could not sample enough points at the requested margin");
    std::vector<CartanPoint> point;
    for (int k = 0; k < n; ++k) {
      RatVec m;
      for (int j = 0; j < rs.rank(); ++j) m.push_back(make_rational(coord(rng), denominator));
      point.emplace_back(std::move(m));
    }
    if (point_margin(rs, point, inequalities) >= margin) out.push_back(std::move(point));
  }
  return out;
}

/// As sample_points, but with count / 2 exactly-outside points and the rest
/// inside, so both directions of a comparison are exercised.
inline std::vector<std::vector<CartanPoint>> sample_balanced_points(const RootSystem& rs, int n, const std::vector<Inequality>& inequalities,
                                                                    std::size_t count, const Rational& margin, std::uint64_t seed,
                                                                    int denominator = 120, std::size_t max_attempts = 10'000'000) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0xba1u};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> coord(0, denominator);
  const std::size_t want_outside = count / 2, want_inside = count - want_outside;
  std::size_t inside = 0, outside = 0;
  std::vector<std::vector<CartanPoint>> out;
  for (std::size_t attempt = 0; out.size() < count; ++attempt) {
    if (attempt == max_attempts) throw InputError("could not sample enough inside and outside points at the requested margin");
    std::vector<CartanPoint> point;
    for (int k = 0; k < n; ++k) {
      RatVec m;
      for (int j = 0; j < rs.rank(); ++j) m.push_back(make_rational(coord(rng), denominator));
      point.emplace_back(std::move(m));
    }
    if (point_margin(rs, point, inequalities) < margin) continue;
    const bool in = membership(rs, n, point, inequalities).placement == Placement::inside;
    if (in ? inside == want_inside : outside == want_outside) continue;
    ++(in ? inside : outside);
    out.push_back(std::move(point));
  }
  return out;
}

struct ComparisonRow {
  std::vector<CartanPoint> point;
  bool exact_inside = false;
  OracleVerdict numeric;
  std::optional<bool> reference;  // SU(2) closed form
};

struct ComparisonSummary {
  std::size_t inside = 0, outside = 0;
  std::size_t inside_certified = 0;   // exact inside, numeric feasible
  std::size_t outside_certified = 0;  // exact outside, numeric feasible (must stay 0)
  std::size_t outside_no_witness = 0;
  std::size_t reference_disagreements = 0;

  double inside_rate() const { return inside == 0 ? 1.0 : static_cast<double>(inside_certified) / static_cast<double>(inside); }
};

inline ComparisonSummary summarize(const std::vector<ComparisonRow>& rows) {
  ComparisonSummary s;
  for (const auto& r : rows) {
    if (r.exact_inside) {
      ++s.inside;
      if (r.numeric.feasible) ++s.inside_certified;
    } else {
      ++s.outside;
      if (r.numeric.feasible) ++s.outside_certified;
      else ++s.outside_no_witness;
    }
    if (r.reference && *r.reference != r.exact_inside) ++s.reference_disagreements;
  }
  return s;
}

/// Exact membership (boundary counts as inside), numeric oracle and, for SU(2),
/// the closed form in t = m / 2.
inline std::vector<ComparisonRow> oracle_compare(const GroupRep& rep, int n, const std::vector<Inequality>& inequalities,
                                                 const std::vector<std::vector<CartanPoint>>& points, const OracleOptions& options) {
  std::vector<ComparisonRow> rows;
  const RootSystem& rs = rep.root_system();
  for (std::size_t i = 0; i < points.size(); ++i) {
    ComparisonRow row;
    row.point = points[i];
    row.exact_inside = membership(rs, n, row.point, inequalities).placement != Placement::outside;
    OracleOptions opt = options;
    opt.seed = options.seed + i;
    row.numeric = numeric_membership(rep, row.point, opt);
    if (rep.label() == GroupLabel::SU2) {
      std::vector<Rational> t;
      for (const auto& mu : row.point) t.push_back(mu[0] / 2);
      row.reference = su2_reference_membership(t);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qlevi
