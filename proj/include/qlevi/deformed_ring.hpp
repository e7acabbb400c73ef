#pragma once

// The tau-deformed quantum product and its tau = 0 specialization.

#include "qlevi/quantum_ring.hpp"

#include "json.hpp"

#include <fmt/format.h>

#include <numeric>
#include <tuple>

namespace qlevi {

/// Exponent vector (A_i) indexed like S_P.
using Exponent = std::vector<int>;

struct DKey {
  std::size_t cls = 0;
  Degree d;
  Exponent e;
  friend auto operator<=>(const DKey&, const DKey&) = default;
};

struct DeformedElement {
  std::map<DKey, Integer> terms;

  void add(const DKey& k, const Integer& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }
  /// All tau_i = 1.
  QRingElement at_tau_one() const {
    QRingElement out;
    for (const auto& [k, c] : terms) out.add(QKey{k.cls, k.d}, c);
    return out;
  }
  /// All tau_i = 0.
  QRingElement at_tau_zero() const {
    QRingElement out;
    for (const auto& [k, c] : terms)
      if (std::all_of(k.e.begin(), k.e.end(), [](int x) { return x == 0; })) out.add(QKey{k.cls, k.d}, c);
    return out;
  }
  friend bool operator==(const DeformedElement&, const DeformedElement&) = default;
};

/// A_i(u,v,w,d) for every alpha_i in S_P. Both closed forms are evaluated,
/// (chi_e - chi_u - chi_v - chi_w)(x_i) + 2 a_i g* / <alpha_i,alpha_i>  and
/// (chi_e - chi_u - chi_v - chi_w)(x_i) + sum_{alpha in R+ \ R_l+} alpha(x_i) alpha(d~),
/// and must agree.
inline Exponent a_exponent(const ParabolicContext& ctx, std::size_t u, std::size_t v, std::size_t w, const Degree& d) {
  const RootSystem& rs = ctx.root_system();
  const auto& sp = ctx.s_p();
  if (u >= ctx.size() || v >= ctx.size() || w >= ctx.size()) throw InputError("index outside W^P for " + ctx.label());
  if (d.size() != sp.size()) throw InputError("degree has the wrong number of components");
  Weight base = ctx.chi(0) - ctx.chi(u) - ctx.chi(v) - ctx.chi(w);
  RatVec base_x = rs.root_coords(base);
  Exponent out;
  for (std::size_t j = 0; j < sp.size(); ++j) {
    const int i = sp[j];
    Rational by_killing = base_x[i] + Rational(2 * d[j] * rs.dual_coxeter()) / rs.simple_norm(i);
    Rational by_roots = base_x[i];
    for (const auto& alpha : ctx.outer_roots()) {
      std::int64_t on_d = 0;
      for (std::size_t k = 0; k < sp.size(); ++k) on_d += d[k] * rs.pair_with_coroot(alpha, sp[k]);
      by_roots += make_rational(alpha[i] * on_d);
    }
    if (by_killing != by_roots)
      throw InternalConsistencyError("A-exponent formulas disagree (" + to_string(by_killing) + " vs " + to_string(by_roots) +
                                     ") in " + ctx.label());
    if (!is_integral(by_killing)) throw InternalConsistencyError("non-integral A-exponent " + to_string(by_killing));
    out.push_back(static_cast<int>(to_int64(by_killing)));
  }
  return out;
}

/// Structure table decorated with tau exponents. Immutable after construction.
class DeformedRing {
public:
  explicit DeformedRing(std::shared_ptr<const StructureTable> table) : table_(std::move(table)) {
    const auto& ctx = context();
    const std::size_t n = ctx.size();
    products_.resize(n * n);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        for (const auto& [k, c] : table_->product(u, v).terms) {
          Exponent e = a_exponent(ctx, u, v, ctx.dual(k.cls), k.d);
          for (int x : e)
            if (x < 0) throw InternalConsistencyError("negative A-exponent in " + ctx.label());
          products_[u * n + v].add(DKey{k.cls, k.d, std::move(e)}, c);
        }
  }
  explicit DeformedRing(StructureTable table) : DeformedRing(std::make_shared<const StructureTable>(std::move(table))) {}

  const StructureTable& table() const { return *table_; }
  const ParabolicContext& context() const { return table_->context(); }

  const DeformedElement& product(std::size_t u, std::size_t v) const { return products_[u * context().size() + v]; }

  DeformedElement basis(std::size_t u) const {
    DeformedElement e;
    const std::size_t nd = context().s_p().size();
    e.add(DKey{u, Degree(nd, 0), Exponent(nd, 0)}, Integer(1));
    return e;
  }

  /// Full tau-deformed product of two elements.
  DeformedElement multiply(const DeformedElement& x, const DeformedElement& y) const {
    DeformedElement out;
    for (const auto& [kx, cx] : x.terms)
      for (const auto& [ky, cy] : y.terms)
        for (const auto& [kz, cz] : product(kx.cls, ky.cls).terms)
          out.add(DKey{kz.cls, add_degrees(add_degrees(kx.d, ky.d), kz.d), add_degrees(add_degrees(kx.e, ky.e), kz.e)},
                  cx * cy * cz);
    return out;
  }

  /// The tau = 0 product on Z[q]-combinations.
  QRingElement multiply_at_zero(const QRingElement& x, const QRingElement& y) const {
    QRingElement out;
    for (const auto& [kx, cx] : x.terms)
      for (const auto& [ky, cy] : y.terms)
        for (const auto& [kz, cz] : product(kx.cls, ky.cls).terms)
          if (std::all_of(kz.e.begin(), kz.e.end(), [](int a) { return a == 0; }))
            out.add(QKey{kz.cls, add_degrees(add_degrees(kx.d, ky.d), kz.d)}, cx * cy * cz);
    return out;
  }

  /// gamma_i(q^d sigma_w) = chi_w(x_i) + 2 a_i g* / <alpha_i, alpha_i>.
  std::vector<Rational> multigrade(const QKey& k) const {
    const auto& ctx = context();
    const RootSystem& rs = ctx.root_system();
    RatVec chi_x = rs.root_coords(ctx.chi(k.cls));
    std::vector<Rational> g;
    for (std::size_t j = 0; j < ctx.s_p().size(); ++j) {
      const int i = ctx.s_p()[j];
      g.push_back(chi_x[i] + Rational(2 * k.d[j] * rs.dual_coxeter()) / rs.simple_norm(i));
    }
    return g;
  }

private:
  std::shared_ptr<const StructureTable> table_;
  std::vector<DeformedElement> products_;
};

/// sigma_u (.) sigma_v with tau exponents.
inline const DeformedElement& deformed_product(const DeformedRing& ring, std::size_t u, std::size_t v) {
  if (u >= ring.context().size() || v >= ring.context().size()) throw InputError("index outside W^P");
  return ring.product(u, v);
}

/// Coefficient of q^d sigma_{w_o u_n w_o^P} in sigma_{u_1} (.)_0 ... (.)_0 sigma_{u_{n-1}}.
inline Integer deformed_coeff_tuple(const DeformedRing& ring, const std::vector<std::size_t>& tuple, const Degree& d) {
  const auto& ctx = ring.context();
  detail::check_tuple(ctx, tuple, d);
  if (!dimension_condition(ctx, tuple, d)) return Integer(0);
  QRingElement acc = ring.table().basis(tuple[0]);
  for (std::size_t k = 1; k + 1 < tuple.size(); ++k) acc = ring.multiply_at_zero(acc, ring.table().basis(tuple[k]));
  return acc.coefficient(QKey{ctx.dual(tuple.back()), d});
}

namespace detail {

/// Depth-first search for a chain of nonzero tau-free products ending at q^d sigma_{dual(u_n)}.
inline bool levi_witness(const DeformedRing& ring, const std::vector<std::size_t>& tuple, const Degree& d, std::size_t step,
                         const QKey& current) {
  const auto& ctx = ring.context();
  if (step + 1 == tuple.size()) return current == QKey{ctx.dual(tuple.back()), d};
  for (const auto& [k, c] : ring.product(current.cls, tuple[step]).terms) {
    if (c == 0 || std::any_of(k.e.begin(), k.e.end(), [](int a) { return a != 0; })) continue;
    QKey next{k.cls, add_degrees(current.d, k.d)};
    bool within = true;
    for (std::size_t j = 0; j < d.size(); ++j) within = within && next.d[j] <= d[j];
    if (within && levi_witness(ring, tuple, d, step + 1, next)) return true;
  }
  return false;
}

}  // namespace detail

/// Quantum Levi-movability: the (.)_0 coefficient is nonzero. Cross-checked
/// against the nonvanishing GW invariant with vanishing exponents for triples,
/// and against an explicit witness chain for longer tuples.
inline bool is_levi_movable(const DeformedRing& ring, const std::vector<std::size_t>& tuple, const Degree& d) {
  const auto& ctx = ring.context();
  bool movable = deformed_coeff_tuple(ring, tuple, d) != 0;
  bool cross = false;
  if (!dimension_condition(ctx, tuple, d)) {
    cross = false;
  } else if (tuple.size() == 3) {
    Exponent e = a_exponent(ctx, tuple[0], tuple[1], tuple[2], d);
    cross = gw_invariant(ring.table(), tuple, d) != 0 && std::all_of(e.begin(), e.end(), [](int a) { return a == 0; });
  } else {
    cross = detail::levi_witness(ring, tuple, d, 1, QKey{tuple[0], Degree(d.size(), 0)});
  }
  if (cross != movable) throw InternalConsistencyError("Levi-movability criteria disagree in " + ctx.label());
  return movable;
}

enum class TableFormat { text, json };

namespace detail {

/// Class labels: "c<codim>", with a suffix when a codimension has several classes.
inline std::vector<std::string> class_labels(const ParabolicContext& ctx, char letter) {
  std::vector<std::vector<std::size_t>> by_codim(ctx.dimension() + 1);
  for (std::size_t u = 0; u < ctx.size(); ++u) by_codim[ctx.codim(u)].push_back(u);
  std::vector<std::string> labels(ctx.size());
  for (int c = 0; c <= ctx.dimension(); ++c) {
    const auto& cls = by_codim[c];
    for (std::size_t k = 0; k < cls.size(); ++k)
      labels[cls[k]] = fmt::format("{}{}", letter, c) + (cls.size() > 1 ? fmt::format("_{}", k + 1) : "");
  }
  return labels;
}

/// Basis ordered by codimension, ties broken by W^P position.
inline std::vector<std::size_t> codim_order(const ParabolicContext& ctx) {
  std::vector<std::size_t> order(ctx.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return ctx.codim(a) < ctx.codim(b); });
  return order;
}

inline std::string power(const char* var, int e) {
  if (e == 0) return "";
  if (e == 1) return var;
  return fmt::format("{}^{}", var, e);
}

/// "2τc3 + τqc0" with terms sorted by (q-degree, tau-exponent, codim).
inline std::string format_entry(const DeformedRing& ring, const DeformedElement& x, const std::vector<std::string>& labels) {
  const auto& ctx = ring.context();
  std::vector<std::pair<std::tuple<int, int, int, std::size_t>, std::string>> parts;
  for (const auto& [k, c] : x.terms) {
    std::string s = c == 1 ? "" : c.get_str();
    s += power("τ", k.e[0]) + power("q", k.d[0]) + labels[k.cls];
    parts.push_back({{k.d[0], k.e[0], ctx.codim(k.cls), k.cls}, s});
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i].second;
  return out;
}

}  // namespace detail

struct RenderOptions {
  TableFormat format = TableFormat::text;
  char letter = 'c';
};

/// Upper-triangular deformed multiplication table for a maximal parabolic.
/// Text rows are "| row | entry | ... |" with single spaces and no trailing blanks.
inline std::string render_table(const DeformedRing& ring, const RenderOptions& options = {}) {
  const auto& ctx = ring.context();
  if (!ctx.is_maximal()) throw InputError("table rendering needs a maximal parabolic, got " + ctx.label());
  const auto labels = detail::class_labels(ctx, options.letter);
  const auto order = detail::codim_order(ctx);
  const RootSystem& rs = ctx.root_system();

  if (options.format == TableFormat::json) {
    nlohmann::ordered_json j;
    j["type"] = std::string(1, rs.type());
    j["rank"] = rs.rank();
    j["parabolic"] = ctx.s_p()[0] + 1;
    j["classes"] = nlohmann::ordered_json::array();
    for (auto u : order)
      j["classes"].push_back({{"label", labels[u]}, {"word", format_word(ctx.element(u).word)}, {"codim", ctx.codim(u)}});
    j["entries"] = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < order.size(); ++r)
      for (std::size_t c = r; c < order.size(); ++c) {
        nlohmann::ordered_json terms = nlohmann::ordered_json::array();
        std::vector<std::pair<std::tuple<int, int, int, std::size_t>, nlohmann::ordered_json>> sorted;
        for (const auto& [k, coeff] : ring.product(order[r], order[c]).terms)
          sorted.push_back({{k.d[0], k.e[0], ctx.codim(k.cls), k.cls},
                            {{"coeff", to_int64(coeff)}, {"tau", k.e[0]}, {"q", k.d[0]}, {"class", labels[k.cls]}}});
        std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (auto& s : sorted) terms.push_back(std::move(s.second));
        j["entries"].push_back({{"row", labels[order[r]]}, {"col", labels[order[c]]}, {"terms", std::move(terms)}});
      }
    return j.dump(2) + "\n";
  }

  std::string out = fmt::format("# {} deformed quantum product\n", ctx.label());
  out += "| " + ctx.label() + " |";
  for (auto u : order) out += " " + labels[u] + " |";
  out += "\n";
  for (std::size_t r = 0; r < order.size(); ++r) {
    out += "| " + labels[order[r]] + " |";
    for (std::size_t c = 0; c < order.size(); ++c) {
      if (c < r) {
        out += " |";
        continue;
      }
      out += " " + detail::format_entry(ring, ring.product(order[r], order[c]), labels) + " |";
    }
    out += "\n";
  }
  return out;
}

}  // namespace qlevi
