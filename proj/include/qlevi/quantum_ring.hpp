#pragma once

// Small quantum cohomology of G/P: quantum Chevalley operators, the full
// table of 3-point structure constants, and n-point invariants.
//
// Basis convention: sigma_u for u in W^P (position in ParabolicContext) has
// codimension dim X^P - l(u); the identity is sigma_{longest rep} and the
// point class is sigma_e. A product is written
//   sigma_u * sigma_v = sum N(u,v,w,d) q^d sigma_{w_o w w_o^P}.

#include "qlevi/linalg.hpp"
#include "qlevi/weyl.hpp"

#include <functional>
#include <numeric>

namespace qlevi {

class UnsupportedSpaceError : public Error {
public:
  using Error::Error;
};

/// Multidegree (a_i) indexed like S_P.
using Degree = std::vector<int>;

struct QKey {
  std::size_t cls = 0;
  Degree d;
  friend auto operator<=>(const QKey&, const QKey&) = default;
};

inline Degree add_degrees(const Degree& a, const Degree& b) {
  Degree c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

/// Finite Z-combination (or Q-combination while solving) of q^d sigma_u.
template <class Coeff>
struct QElement {
  std::map<QKey, Coeff> terms;

  static QElement basis(std::size_t cls, std::size_t ndeg) {
    QElement e;
    e.terms.emplace(QKey{cls, Degree(ndeg, 0)}, Coeff(1));
    return e;
  }
  void add(const QKey& k, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  void add_scaled(const QElement& o, const Coeff& scale, const Degree& shift) {
    for (const auto& [k, c] : o.terms) add(QKey{k.cls, add_degrees(k.d, shift)}, c * scale);
  }
  Coeff coefficient(const QKey& k) const {
    auto it = terms.find(k);
    return it == terms.end() ? Coeff(0) : it->second;
  }
  bool empty() const { return terms.empty(); }
  friend bool operator==(const QElement&, const QElement&) = default;
};

using QRingElement = QElement<Integer>;

/// Linear operator on the Schubert basis: column u is the image of sigma_u.
using QOperator = std::vector<QRingElement>;

namespace detail {

/// Group index of the reflection s_alpha for a positive root.
inline std::size_t reflection(const WeylGroup& weyl, const IntVec& root) {
  const RootSystem& rs = weyl.root_system();
  const int n = rs.rank();
  Weight a = rs.root_weight(root);
  RatVec c = rs.coroot_coords(root);
  IntMatrix m(n, IntVec(n, 0));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) m[k][l] = (k == l ? 1 : 0) - to_int64(a[k] * c[l]);
  return weyl.index_of(m);
}

}  // namespace detail

/// Multiplication by the codimension-one class attached to alpha_i (i in S_P,
/// 0-based simple-root index), from the quantum Chevalley formula of
/// Fulton-Woodward applied in the length-indexed dual basis.
inline QOperator chevalley_operator(const ParabolicContext& ctx, int i) {
  const auto& sp = ctx.s_p();
  auto pos = std::find(sp.begin(), sp.end(), i);
  if (pos == sp.end()) throw InputError("alpha_" + std::to_string(i + 1) + " is not in S_P for " + ctx.label());
  const RootSystem& rs = ctx.root_system();
  const WeylGroup& weyl = ctx.weyl();
  const std::size_t nd = sp.size();

  std::vector<std::size_t> refl;
  for (const auto& alpha : ctx.outer_roots()) refl.push_back(detail::reflection(weyl, alpha));

  QOperator op(ctx.size());
  for (std::size_t u = 0; u < ctx.size(); ++u) {
    // sigma_u is the length-indexed class of w = dual(u).
    const std::size_t w = ctx.dual(u);
    const int lw = ctx.length(w);
    QRingElement out;
    for (std::size_t r = 0; r < ctx.outer_roots().size(); ++r) {
      const IntVec& alpha = ctx.outer_roots()[r];
      RatVec cor = rs.coroot_coords(alpha);
      Integer coeff(static_cast<long>(to_int64(cor[i])));
      if (coeff == 0) continue;
      std::size_t v = weyl.multiply(ctx.group_index(w), refl[r]);
      if (weyl[v].length() == lw + 1) {
        auto p = ctx.position(v);
        if (!p) throw InternalConsistencyError("Chevalley term left W^P in " + ctx.label());
        out.add(QKey{ctx.dual(*p), Degree(nd, 0)}, coeff);
      }
      Degree d(nd);
      int shift = 0;
      for (std::size_t j = 0; j < nd; ++j) {
        d[j] = static_cast<int>(to_int64(cor[sp[j]]));
        shift += d[j] * ctx.q_degree(j);
      }
      std::size_t rep = ctx.min_rep(v);
      if (ctx.length(rep) == lw + 1 - shift) out.add(QKey{ctx.dual(rep), d}, coeff);
    }
    op[u] = std::move(out);
  }
  return op;
}

class StructureTable {
public:
  const ParabolicContext& context() const { return *ctx_; }
  std::shared_ptr<const ParabolicContext> context_ptr() const { return ctx_; }
  std::size_t size() const { return ctx_->size(); }
  std::size_t degree_count() const { return ctx_->s_p().size(); }

  /// sigma_u * sigma_v.
  const QRingElement& product(std::size_t u, std::size_t v) const { return products_[u * size() + v]; }

  /// N(u,v,w,d): coefficient of q^d sigma_{w_o w w_o^P} in sigma_u * sigma_v.
  Integer constant(std::size_t u, std::size_t v, std::size_t w, const Degree& d) const {
    return product(u, v).coefficient(QKey{ctx_->dual(w), d});
  }

  QRingElement basis(std::size_t u) const { return QRingElement::basis(u, degree_count()); }
  QRingElement one() const { return basis(ctx_->longest_rep()); }

  QRingElement multiply(const QRingElement& x, const QRingElement& y) const {
    QRingElement out;
    for (const auto& [kx, cx] : x.terms)
      for (const auto& [ky, cy] : y.terms) out.add_scaled(product(kx.cls, ky.cls), cx * cy, add_degrees(kx.d, ky.d));
    return out;
  }

  /// Total degree: codim + sum_j a_j deg q_j.
  int grade(const QKey& k) const {
    int g = ctx_->codim(k.cls);
    for (std::size_t j = 0; j < k.d.size(); ++j) g += k.d[j] * ctx_->q_degree(j);
    return g;
  }

  friend StructureTable table_from_constants(std::shared_ptr<const ParabolicContext> ctx, std::vector<QRingElement> products);

private:
  std::shared_ptr<const ParabolicContext> ctx_;
  std::vector<QRingElement> products_;
};

/// Rebuilds a table from previously computed products (row-major u, v).
inline StructureTable table_from_constants(std::shared_ptr<const ParabolicContext> ctx, std::vector<QRingElement> products) {
  if (products.size() != ctx->size() * ctx->size()) throw InputError("structure table has the wrong size for " + ctx->label());
  StructureTable t;
  t.ctx_ = std::move(ctx);
  t.products_ = std::move(products);
  return t;
}

/// Closes the Chevalley operators under associativity, codimension by
/// codimension. Throws UnsupportedSpaceError when some codimension is not
/// spanned by products of divisors with lower classes.
inline StructureTable build_structure_table_direct(std::shared_ptr<const ParabolicContext> ctx_ptr) {
  const ParabolicContext& ctx = *ctx_ptr;
  const std::size_t size = ctx.size();
  const std::size_t nd = ctx.s_p().size();
  using RElement = QElement<Rational>;
  using ROperator = std::vector<RElement>;

  auto to_rational = [](const QRingElement& e) {
    RElement r;
    for (const auto& [k, c] : e.terms) r.terms.emplace(k, Rational(c));
    return r;
  };
  auto apply = [](const ROperator& op, const RElement& x) {
    RElement out;
    for (const auto& [k, c] : x.terms) out.add_scaled(op[k.cls], c, k.d);
    return out;
  };
  auto compose = [&](const ROperator& outer, const ROperator& inner) {
    ROperator out(size);
    for (std::size_t u = 0; u < size; ++u) out[u] = apply(outer, inner[u]);
    return out;
  };

  std::vector<ROperator> divisor;
  for (int i : ctx.s_p()) {
    QOperator h = chevalley_operator(ctx, i);
    ROperator r(size);
    for (std::size_t u = 0; u < size; ++u) r[u] = to_rational(h[u]);
    divisor.push_back(std::move(r));
  }

  std::vector<std::optional<ROperator>> ops(size);
  {
    ROperator id(size);
    for (std::size_t u = 0; u < size; ++u) id[u] = RElement::basis(u, nd);
    ops[ctx.longest_rep()] = std::move(id);
  }
  for (std::size_t j = 0; j < nd; ++j) {
    std::size_t s = ctx.weyl().generator(ctx.s_p()[j]);
    ops[ctx.dual(*ctx.position(s))] = divisor[j];
  }

  std::vector<std::vector<std::size_t>> levels(ctx.dimension() + 1);
  for (std::size_t u = 0; u < size; ++u) levels[ctx.codim(u)].push_back(u);

  for (int k = 2; k <= ctx.dimension(); ++k) {
    const auto& target = levels[k];
    if (target.empty()) continue;
    std::map<std::size_t, std::size_t> column;
    for (std::size_t c = 0; c < target.size(); ++c) column[target[c]] = c;

    RatMatrix rows;
    std::vector<RElement> quantum_parts;
    std::vector<ROperator> row_ops;
    for (std::size_t b : levels[k - 1]) {
      for (std::size_t j = 0; j < nd; ++j) {
        RElement e = apply(divisor[j], RElement::basis(b, nd));
        RatVec row(target.size(), Rational(0));
        RElement rest;
        for (const auto& [key, c] : e.terms) {
          bool classical = std::all_of(key.d.begin(), key.d.end(), [](int a) { return a == 0; });
          if (classical) {
            if (!column.count(key.cls)) throw InternalConsistencyError("Chevalley product broke the grading in " + ctx.label());
            row[column[key.cls]] = c;
          } else {
            rest.add(key, c);
          }
        }
        rows.push_back(std::move(row));
        quantum_parts.push_back(std::move(rest));
        row_ops.push_back(compose(divisor[j], *ops[b]));
      }
    }

    for (std::size_t c = 0; c < target.size(); ++c) {
      RatVec unit(target.size(), Rational(0));
      unit[c] = 1;
      auto lambda = linalg::solve_left(rows, unit);
      if (!lambda)
        throw UnsupportedSpaceError("unsupported space " + ctx.label() + ": codimension " + std::to_string(k) +
                                    " is not generated by divisor products");
      ROperator m(size);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const Rational& l = (*lambda)[r];
        if (l == 0) continue;
        for (std::size_t u = 0; u < size; ++u) m[u].add_scaled(row_ops[r][u], l, Degree(nd, 0));
        for (const auto& [key, coeff] : quantum_parts[r].terms) {
          const auto& lower = ops[key.cls];
          if (!lower) throw InternalConsistencyError("quantum correction refers to an unbuilt class in " + ctx.label());
          for (std::size_t u = 0; u < size; ++u) m[u].add_scaled((*lower)[u], -l * coeff, key.d);
        }
      }
      ops[target[c]] = std::move(m);
    }
  }

  std::vector<QRingElement> products(size * size);
  for (std::size_t v = 0; v < size; ++v) {
    if (!ops[v]) throw UnsupportedSpaceError("unsupported space " + ctx.label() + ": class " + format_word(ctx.element(v).word) + " unreachable");
    for (std::size_t u = 0; u < size; ++u) {
      QRingElement e;
      for (const auto& [key, c] : (*ops[v])[u].terms) {
        if (!is_integral(c))
          throw InternalConsistencyError("non-integral structure constant " + to_string(c) + " in " + ctx.label());
        e.add(key, c.get_num());
      }
      products[u * size + v] = std::move(e);
    }
  }
  return table_from_constants(std::move(ctx_ptr), std::move(products));
}

namespace detail {

/// Longest element of the subgroup generated by the given simple reflections.
inline std::size_t longest_in(const WeylGroup& weyl, const std::vector<int>& gens) {
  std::size_t best = weyl.identity();
  for (std::size_t g = 0; g < weyl.size(); ++g) {
    const auto& w = weyl[g].word;
    if (std::all_of(w.begin(), w.end(), [&](int s) { return std::find(gens.begin(), gens.end(), s) != gens.end(); }) &&
        weyl[g].length() > weyl[best].length())
      best = g;
  }
  return best;
}

/// All degree vectors d >= 0 with sum_j d_j deg q_j = total.
inline void degrees_with_total(const ParabolicContext& ctx, int total, Degree& cur, std::size_t j, std::vector<Degree>& out) {
  if (j == cur.size()) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (int a = 0; a * ctx.q_degree(j) <= total; ++a) {
    cur[j] = a;
    degrees_with_total(ctx, total - a * ctx.q_degree(j), cur, j + 1, out);
  }
  cur[j] = 0;
}

}  // namespace detail

/// Structure constants of QH*(G/P) read off QH*(G/B) through Peterson's
/// comparison formula (as proved by Woodward): in length-indexed classes,
/// <t_u, t_v, t_w>_d = <t_u, t_v, t_{w w_P'}>_{d_B}, where d_B lifts d with
/// alpha(d_B) in {0, -1} for every positive Levi root and P' is spanned by the
/// Levi simple roots with alpha(d_B) = 0.
inline StructureTable structure_table_via_borel(std::shared_ptr<const ParabolicContext> ctx_ptr) {
  const ParabolicContext& ctx = *ctx_ptr;
  const RootSystem& rs = ctx.root_system();
  const WeylGroup& weyl = ctx.weyl();
  const int rank = rs.rank();
  std::vector<int> all(rank);
  std::iota(all.begin(), all.end(), 0);
  auto borel_ctx = std::make_shared<const ParabolicContext>(minimal_reps(ctx.weyl_ptr(), all));
  const StructureTable borel = build_structure_table_direct(borel_ctx);
  const ParabolicContext& bctx = *borel_ctx;

  const auto& sp = ctx.s_p();
  const auto& dp = ctx.delta_p();
  const std::size_t nd = sp.size();

  // Lift d to d_B in coroot coordinates; nullopt when no lift is effective.
  auto lift = [&](const Degree& d) -> std::optional<std::pair<IntVec, std::vector<int>>> {
    const std::size_t m = dp.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      // sum_k b_k <alpha_j, alpha_k^vee> = eps_j - <alpha_j, d>
      RatMatrix sys(m, RatVec(m + 1, Rational(0)));
      for (std::size_t j = 0; j < m; ++j) {
        std::int64_t pair_d = 0;
        for (std::size_t t = 0; t < nd; ++t) pair_d += d[t] * rs.cartan()[sp[t]][dp[j]];
        for (std::size_t k = 0; k < m; ++k) sys[j][k] = make_rational(rs.cartan()[dp[k]][dp[j]]);
        sys[j][m] = make_rational(((mask >> j) & 1 ? -1 : 0) - pair_d);
      }
      auto pivots = linalg::row_reduce(sys);
      if (pivots.size() != m || (!pivots.empty() && pivots.back() == m)) continue;
      IntVec coords(rank, 0);
      bool ok = true;
      for (std::size_t t = 0; t < nd; ++t) coords[sp[t]] = d[t];
      for (std::size_t j = 0; j < m && ok; ++j) {
        if (!is_integral(sys[j][m])) ok = false;
        else coords[dp[pivots[j]]] = to_int64(sys[j][m]);
      }
      if (!ok) continue;
      std::vector<int> zero;
      for (const auto& alpha : ctx.levi_roots()) {
        // <alpha, d_B> = sum_k c_k <alpha, alpha_k^vee>
        std::int64_t pairing = 0;
        for (int k = 0; k < rank; ++k) pairing += coords[k] * rs.pair_with_coroot(alpha, k);
        if (pairing != 0 && pairing != -1) ok = false;
      }
      if (!ok) continue;
      for (std::size_t j = 0; j < m; ++j) {
        std::int64_t pairing = 0;
        for (int k = 0; k < rank; ++k) pairing += coords[k] * rs.cartan()[k][dp[j]];
        if (pairing == 0) zero.push_back(dp[j]);
      }
      if (std::any_of(coords.begin(), coords.end(), [](std::int64_t c) { return c < 0; })) return std::nullopt;
      return std::make_pair(coords, zero);
    }
    throw InternalConsistencyError("no degree lift to G/B for " + ctx.label());
  };

  const std::size_t size = ctx.size();
  std::map<Degree, std::optional<std::pair<IntVec, std::vector<int>>>> lifts;
  std::map<std::vector<int>, std::size_t> longest;
  std::vector<QRingElement> products(size * size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) {
      // sigma_a = t_{dual(a)}; in G/B, t_y = sigma^B_{dual_B(y)}.
      const std::size_t ba = bctx.dual(*bctx.position(ctx.group_index(ctx.dual(a))));
      const std::size_t bb = bctx.dual(*bctx.position(ctx.group_index(ctx.dual(b))));
      const QRingElement& prod = borel.product(ba, bb);
      QRingElement out;
      for (std::size_t c = 0; c < size; ++c) {
        const int total = ctx.codim(a) + ctx.codim(b) + ctx.length(c) - ctx.dimension();
        if (total < 0) continue;
        std::vector<Degree> degrees;
        Degree cur(nd, 0);
        detail::degrees_with_total(ctx, total, cur, 0, degrees);
        for (const auto& d : degrees) {
          auto it = lifts.find(d);
          if (it == lifts.end()) it = lifts.emplace(d, lift(d)).first;
          if (!it->second) continue;
          const auto& [coords, zero] = *it->second;
          auto lit = longest.find(zero);
          if (lit == longest.end()) lit = longest.emplace(zero, detail::longest_in(weyl, zero)).first;
          const std::size_t x = weyl.multiply(ctx.group_index(c), lit->second);
          Degree db(coords.begin(), coords.end());
          // <t_a', t_b', t_x>_{d_B}: coefficient of q^{d_B} sigma^B_{dual_B(dual_B(x))}.
          Integer n = prod.coefficient(QKey{*bctx.position(x), db});
          if (n != 0) out.add(QKey{c, d}, n);
        }
      }
      products[a * size + b] = std::move(out);
    }
  return table_from_constants(std::move(ctx_ptr), std::move(products));
}

/// Direct construction when the space is generated by divisors; otherwise the
/// comparison with G/B, for groups of order at most `borel_bound`.
inline StructureTable build_structure_table(std::shared_ptr<const ParabolicContext> ctx, std::size_t borel_bound = 400) {
  try {
    return build_structure_table_direct(ctx);
  } catch (const UnsupportedSpaceError& e) {
    if (ctx->weyl().size() > borel_bound || ctx->delta_p().empty()) throw;
    return structure_table_via_borel(std::move(ctx));
  }
}

inline StructureTable build_structure_table(const ParabolicContext& ctx) {
  return build_structure_table(std::make_shared<const ParabolicContext>(ctx));
}

/// True when sum_k codim(u_k) = dim X^P + sum_j a_j deg q_j.
inline bool dimension_condition(const ParabolicContext& ctx, const std::vector<std::size_t>& tuple, const Degree& d) {
  int lhs = 0;
  for (auto u : tuple) lhs += ctx.codim(u);
  int rhs = ctx.dimension();
  for (std::size_t j = 0; j < d.size(); ++j) rhs += d[j] * ctx.q_degree(j);
  return lhs == rhs;
}

namespace detail {

inline void check_tuple(const ParabolicContext& ctx, const std::vector<std::size_t>& tuple, const Degree& d) {
  if (tuple.size() < 3) throw InputError("invariants need at least three insertions");
  for (auto u : tuple)
    if (u >= ctx.size()) throw InputError("tuple entry outside W^P for " + ctx.label());
  if (d.size() != ctx.s_p().size()) throw InputError("degree has the wrong number of components");
  for (int a : d)
    if (a < 0) throw InputError("degree must be nonnegative");
}

}  // namespace detail

/// <sigma_{u_1}, ..., sigma_{u_n}>_d as the coefficient of q^d sigma_{w_o u_n w_o^P}
/// in sigma_{u_1} * ... * sigma_{u_{n-1}}. Tuple entries are W^P positions.
inline Integer gw_invariant(const StructureTable& table, const std::vector<std::size_t>& tuple, const Degree& d) {
  const auto& ctx = table.context();
  detail::check_tuple(ctx, tuple, d);
  if (!dimension_condition(ctx, tuple, d)) return Integer(0);
  QRingElement acc = table.basis(tuple[0]);
  for (std::size_t k = 1; k + 1 < tuple.size(); ++k) acc = table.multiply(acc, table.basis(tuple[k]));
  return acc.coefficient(QKey{ctx.dual(tuple.back()), d});
}

}  // namespace qlevi
