#pragma once

// Inequalities of the multiplicative eigenvalue polytope, membership, and
// exact-LP verification of irredundancy and distinctness.

#include "qlevi/deformed_ring.hpp"
#include "qlevi/lp.hpp"

#include <atomic>
#include <functional>
#include <thread>

namespace qlevi {

/// sum_k omega_P(u_k^{-1} mu_k) <= d for a maximal parabolic P = P_{parabolic}.
struct Inequality {
  int parabolic = 0;  // 0-based index i_P
  std::vector<std::size_t> tuple;  // W^P positions
  std::vector<std::vector<int>> words;
  int d = 0;
  std::vector<Weight> lhs_weights;  // u_k omega_P

  int rhs() const { return d; }

  Rational evaluate(const RootSystem& rs, const std::vector<CartanPoint>& point) const {
    Rational s = 0;
    for (std::size_t k = 0; k < lhs_weights.size(); ++k) s += rs.evaluate(lhs_weights[k], point[k]);
    return s;
  }

  /// Linear form in the flattened coordinates m_{k,j} = alpha_j(mu_k).
  RatVec coefficients(const RootSystem& rs) const {
    RatVec out;
    for (const auto& w : lhs_weights) {
      RatVec c = rs.root_coords(w);
      out.insert(out.end(), c.begin(), c.end());
    }
    return out;
  }
};

/// The fundamental alcove: alpha_i(mu) >= 0 and theta(mu) <= 1.
struct Alcove {
  struct Constraint {
    RatVec coeffs;  // coeffs . m <= bound
    Rational bound;
  };
  std::vector<Constraint> constraints;

  explicit Alcove(const RootSystem& rs) {
    const int l = rs.rank();
    for (int i = 0; i < l; ++i) {
      RatVec c(l, Rational(0));
      c[i] = -1;
      constraints.push_back({c, 0});
    }
    RatVec theta(l);
    for (int j = 0; j < l; ++j) theta[j] = make_rational(rs.highest_root()[j]);
    constraints.push_back({theta, 1});
  }

  bool contains(const CartanPoint& mu) const {
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const Constraint& c) { return linalg::dot(c.coeffs, mu.coords) <= c.bound; });
  }
  bool interior(const CartanPoint& mu) const {
    return std::all_of(constraints.begin(), constraints.end(),
                       [&](const Constraint& c) { return linalg::dot(c.coeffs, mu.coords) < c.bound; });
  }
  /// Smallest slack bound - coeffs . m over the walls.
  Rational margin(const CartanPoint& mu) const {
    Rational best = constraints[0].bound - linalg::dot(constraints[0].coeffs, mu.coords);
    for (const auto& c : constraints) best = std::min(best, Rational(c.bound - linalg::dot(c.coeffs, mu.coords)));
    return best;
  }
  /// All m_j equal with theta(mu) = 1/2.
  static CartanPoint barycenter(const RootSystem& rs) {
    Rational t = Rational(1) / (2 * RootSystem::height(rs.highest_root()));
    return CartanPoint(RatVec(rs.rank(), t));
  }
};

/// Weyl group, maximal parabolics and their deformed rings for one root system.
class MaximalParabolics {
public:
  using TableSource = std::function<StructureTable(std::shared_ptr<const ParabolicContext>)>;

  explicit MaximalParabolics(const RootSystem& rs, const TableSource& source = {}) {
    weyl_ = std::make_shared<const WeylGroup>(enumerate_weyl(rs));
    for (int i = 0; i < rs.rank(); ++i) {
      auto ctx = std::make_shared<const ParabolicContext>(minimal_reps(weyl_, {i}));
      StructureTable table;
      try {
        table = source ? source(ctx) : build_structure_table(ctx);
      } catch (const UnsupportedSpaceError& e) {
        throw UnsupportedSpaceError(std::string(e.what()) + " (while building " + ctx->label() + ")");
      }
      rings_.push_back(std::make_shared<const DeformedRing>(std::make_shared<const StructureTable>(std::move(table))));
    }
  }

  const RootSystem& root_system() const { return weyl_->root_system(); }
  const WeylGroup& weyl() const { return *weyl_; }
  std::size_t count() const { return rings_.size(); }
  const DeformedRing& ring(std::size_t i) const { return *rings_[i]; }
  const ParabolicContext& context(std::size_t i) const { return rings_[i]->context(); }

private:
  std::shared_ptr<const WeylGroup> weyl_;
  std::vector<std::shared_ptr<const DeformedRing>> rings_;
};

enum class Criterion {
  deformed,    // <...>_d^{(.)_0} = 1
  undeformed,  // <...>_d = 1
};

inline Inequality make_inequality(const ParabolicContext& ctx, std::vector<std::size_t> tuple, int d) {
  Inequality q;
  q.parabolic = ctx.s_p()[0];
  q.d = d;
  const auto& weyl = ctx.weyl();
  const Weight omega = ctx.root_system().fundamental_weight(q.parabolic);
  for (auto u : tuple) {
    q.words.push_back(ctx.element(u).word);
    q.lhs_weights.push_back(weyl.act(ctx.group_index(u), omega));
  }
  q.tuple = std::move(tuple);
  return q;
}

/// Every (P, u_1..u_n, d) whose coefficient under `criterion` is exactly 1,
/// sorted by (parabolic, d, tuple).
inline std::vector<Inequality> generate_inequalities(const MaximalParabolics& family, int n, Criterion criterion = Criterion::deformed) {
  if (n < 2) throw InputError("need n >= 2 conjugacy classes");
  std::vector<Inequality> out;
  for (std::size_t p = 0; p < family.count(); ++p) {
    const DeformedRing& ring = family.ring(p);
    const ParabolicContext& ctx = ring.context();
    const int cap = (n - 1) * ctx.dimension() / ctx.q_degree(0);
    auto multiply = [&](const QRingElement& x, std::size_t u) {
      return criterion == Criterion::deformed ? ring.multiply_at_zero(x, ring.table().basis(u))
                                              : ring.table().multiply(x, ring.table().basis(u));
    };
    std::vector<std::size_t> prefix;
    std::function<void(const QRingElement&)> extend = [&](const QRingElement& acc) {
      if (static_cast<int>(prefix.size()) == n - 1) {
        for (const auto& [k, c] : acc.terms) {
          if (c != 1) continue;
          if (k.d[0] > cap) throw InternalConsistencyError("degree above the dimension cap in " + ctx.label());
          auto tuple = prefix;
          tuple.push_back(ctx.dual(k.cls));
          out.push_back(make_inequality(ctx, std::move(tuple), k.d[0]));
        }
        return;
      }
      for (std::size_t u = 0; u < ctx.size(); ++u) {
        prefix.push_back(u);
        extend(prefix.size() == 1 ? ring.table().basis(u) : multiply(acc, u));
        prefix.pop_back();
      }
    };
    extend(QRingElement{});
  }
  std::stable_sort(out.begin(), out.end(), [](const Inequality& a, const Inequality& b) {
    return std::tie(a.parabolic, a.d, a.tuple) < std::tie(b.parabolic, b.d, b.tuple);
  });
  return out;
}

inline std::vector<Inequality> generate_inequalities(const RootSystem& rs, int n) {
  return generate_inequalities(MaximalParabolics(rs), n, Criterion::deformed);
}

/// The same enumeration with the undeformed Gromov-Witten criterion.
inline std::vector<Inequality> baseline_inequalities(const MaximalParabolics& family, int n) {
  return generate_inequalities(family, n, Criterion::undeformed);
}

enum class Placement { inside, boundary, outside };

inline const char* to_string(Placement p) {
  switch (p) {
    case Placement::inside: return "inside";
    case Placement::boundary: return "boundary";
    default: return "outside";
  }
}

struct MembershipVerdict {
  Placement placement = Placement::inside;
  std::vector<std::size_t> violated;
  std::vector<std::size_t> tight;
};

/// Exact membership of (mu_1, ..., mu_n) in the polytope cut out by `inequalities`.
inline MembershipVerdict membership(const RootSystem& rs, int n, const std::vector<CartanPoint>& point,
                                    const std::vector<Inequality>& inequalities) {
  if (static_cast<int>(point.size()) != n) throw InputError("expected " + std::to_string(n) + " points, got " + std::to_string(point.size()));
  Alcove alcove(rs);
  for (std::size_t k = 0; k < point.size(); ++k) {
    if (static_cast<int>(point[k].size()) != rs.rank())
      throw InputError("point " + std::to_string(k + 1) + " has " + std::to_string(point[k].size()) + " coordinates, expected " +
                       std::to_string(rs.rank()));
    if (!alcove.contains(point[k])) throw InputError("point " + std::to_string(k + 1) + " is not in the fundamental alcove (not in A^n)");
  }
  MembershipVerdict v;
  for (std::size_t i = 0; i < inequalities.size(); ++i) {
    Rational lhs = inequalities[i].evaluate(rs, point);
    if (lhs > inequalities[i].rhs()) v.violated.push_back(i);
    else if (lhs == inequalities[i].rhs()) v.tight.push_back(i);
  }
  v.placement = !v.violated.empty() ? Placement::outside : !v.tight.empty() ? Placement::boundary : Placement::inside;
  return v;
}

enum class Certificate { violating_point, facet_points, none };

inline const char* to_string(Certificate c) {
  switch (c) {
    case Certificate::violating_point: return "violating-point";
    case Certificate::facet_points: return "facet-points";
    default: return "none";
  }
}

struct IrredundancyEntry {
  std::size_t index = 0;
  Certificate certificate = Certificate::none;
  Rational excess;     // max of lhs - rhs over the other constraints
  RatVec witness;      // flattened m_{k,j} of the violating point, when found
  int face_dimension = -1;
};

struct IrredundancyReport {
  std::vector<IrredundancyEntry> entries;
  std::vector<std::string> warnings;

  std::size_t certified() const {
    return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.certificate != Certificate::none; }));
  }
  bool all_certified() const { return certified() == entries.size(); }
};

namespace detail {

/// Alcove walls theta(mu_k) <= 1 plus the given inequalities, over n * rank
/// nonnegative variables.
inline lp::LinearProgram cone_program(const RootSystem& rs, int n, const std::vector<Inequality>& inequalities, std::size_t skip) {
  const int l = rs.rank();
  lp::LinearProgram prog;
  for (int k = 0; k < n; ++k) {
    RatVec row(n * l, Rational(0));
    for (int j = 0; j < l; ++j) row[k * l + j] = make_rational(rs.highest_root()[j]);
    prog.a.push_back(std::move(row));
    prog.b.push_back(1);
  }
  for (std::size_t i = 0; i < inequalities.size(); ++i) {
    if (i == skip) continue;
    prog.a.push_back(inequalities[i].coefficients(rs));
    prog.b.push_back(inequalities[i].rhs());
  }
  prog.c.assign(n * l, Rational(0));
  return prog;
}

}  // namespace detail

/// For each inequality j, maximize its left side minus its bound subject to all
/// other inequalities and the alcove. A positive optimum certifies j; a zero
/// optimum falls back to the facet test (n * rank affinely independent tight points).
inline IrredundancyReport irredundancy_check(const RootSystem& rs, int n, const std::vector<Inequality>& inequalities, unsigned workers = 1) {
  IrredundancyReport report;
  if (n < 3) report.warnings.push_back("n = 2: the polytope may be lower-dimensional; irredundancy is only asserted for n >= 3");
  report.entries.resize(inequalities.size());
  const int full = n * rs.rank();

  auto check = [&](std::size_t j) {
    IrredundancyEntry e;
    e.index = j;
    lp::LinearProgram prog = detail::cone_program(rs, n, inequalities, j);
    prog.c = inequalities[j].coefficients(rs);
    lp::Result r = lp::solve(prog);
    if (r.status != lp::Status::optimal) throw InternalConsistencyError("irredundancy LP is not bounded and feasible");
    e.excess = r.value - inequalities[j].rhs();
    if (e.excess > 0) {
      e.certificate = Certificate::violating_point;
      e.witness = r.x;
    } else {
      lp::LinearProgram with = detail::cone_program(rs, n, inequalities, inequalities.size());
      auto face = lp::face_dimension(with, n + j);
      e.face_dimension = face.dimension;
      if (face.dimension == full - 1) e.certificate = Certificate::facet_points;
    }
    report.entries[j] = std::move(e);
  };

  if (workers <= 1 || inequalities.size() < 2) {
    for (std::size_t j = 0; j < inequalities.size(); ++j) check(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t j; (j = next++) < inequalities.size();) check(j);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  return report;
}

struct DistinctnessReport {
  std::vector<std::pair<std::size_t, std::size_t>> proportional_pairs;
  bool passed() const { return proportional_pairs.empty(); }
};

/// Pairs of inequalities whose (lhs, rhs) vectors are proportional over Q.
inline DistinctnessReport distinctness_check(const std::vector<Inequality>& inequalities) {
  std::map<RatVec, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < inequalities.size(); ++i) {
    RatVec v;
    for (const auto& w : inequalities[i].lhs_weights) v.insert(v.end(), w.coords.begin(), w.coords.end());
    v.push_back(inequalities[i].rhs());
    auto lead = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (lead != v.end()) {
      Rational s = *lead;
      for (auto& x : v) x /= s;
    }
    classes[v].push_back(i);
  }
  DistinctnessReport r;
  for (const auto& [key, members] : classes)
    for (std::size_t a = 0; a < members.size(); ++a)
      for (std::size_t b = a + 1; b < members.size(); ++b) r.proportional_pairs.push_back({members[a], members[b]});
  std::sort(r.proportional_pairs.begin(), r.proportional_pairs.end());
  return r;
}

}  // namespace qlevi
