#pragma once

// Weyl groups, parabolic quotients W^P and the characters chi_w.

#include "qlevi/root_system.hpp"

#include <deque>
#include <memory>
#include <sstream>

namespace qlevi {

/// A Weyl group element: its integer action on fundamental-weight coordinates
/// together with the lexicographically minimal reduced word (0-based letters).
struct WeylElement {
  IntMatrix action;
  std::vector<int> word;

  int length() const { return static_cast<int>(word.size()); }
  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.action == b.action; }
};

/// "s1 s2 s1"; the identity renders as "e".
inline std::string format_word(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) os << (i ? " " : "") << 's' << word[i] + 1;
  return os.str();
}

/// Inverse of format_word; accepts "e", "" or "s1 s2 ...".
inline std::vector<int> parse_word(const std::string& text, int rank) {
  std::vector<int> word;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "e") continue;
    if (tok.size() < 2 || tok[0] != 's') throw InputError("malformed reduced word '" + text + "'");
    int i = 0;
    try {
      i = std::stoi(tok.substr(1));
    } catch (const std::logic_error&) {
      throw InputError("malformed reduced word '" + text + "'");
    }
    if (i < 1 || i > rank) throw InputError("generator out of range in '" + text + "'");
    word.push_back(i - 1);
  }
  return word;
}

class WeylGroup {
public:
  static constexpr std::size_t default_bound = 1'000'000;

  const RootSystem& root_system() const { return *rs_; }
  std::shared_ptr<const RootSystem> root_system_ptr() const { return rs_; }

  std::size_t size() const { return elements_.size(); }
  const WeylElement& operator[](std::size_t idx) const { return elements_[idx]; }
  const std::vector<WeylElement>& elements() const { return elements_; }

  std::size_t identity() const { return 0; }
  std::size_t generator(int i) const { return generators_[i]; }
  std::size_t longest() const { return longest_; }
  std::size_t inverse(std::size_t idx) const { return inverse_[idx]; }

  std::size_t index_of(const IntMatrix& action) const {
    auto it = index_.find(action);
    if (it == index_.end()) throw InternalConsistencyError("matrix is not an element of W(" + rs_->label() + ")");
    return it->second;
  }
  std::size_t index_of_word(const std::vector<int>& word) const {
    IntMatrix m = identity_matrix();
    for (int i : word) m = compose(m, elements_[generators_[i]].action);
    return index_of(m);
  }

  std::size_t multiply(std::size_t a, std::size_t b) const {
    return index_of(compose(elements_[a].action, elements_[b].action));
  }

  Weight act(std::size_t idx, const Weight& w) const {
    const auto& m = elements_[idx].action;
    Weight out = Weight::zero(w.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m[i][j] != 0) out[i] += make_rational(m[i][j]) * w[j];
    return out;
  }

  /// Image of a root (simple-root coordinates) under w.
  IntVec act_on_root(std::size_t idx, const IntVec& root) const {
    RatVec c = rs_->root_coords(act(idx, rs_->root_weight(root)));
    IntVec out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) out[i] = to_int64(c[i]);
    return out;
  }

  /// Contragredient action on h: alpha_j(w mu) = (w^{-1} alpha_j)(mu).
  CartanPoint act_on_cartan(std::size_t idx, const CartanPoint& mu) const {
    const std::size_t inv = inverse_[idx];
    RatVec m(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) {
      IntVec e(mu.size(), 0);
      e[j] = 1;
      m[j] = RootSystem::evaluate_root(act_on_root(inv, e), mu.coords);
    }
    return CartanPoint(std::move(m));
  }

  static bool is_positive_root(const IntVec& root) {
    bool nonzero = false;
    for (auto c : root) {
      if (c < 0) return false;
      nonzero = nonzero || c != 0;
    }
    return nonzero;
  }

  friend WeylGroup enumerate_weyl(const RootSystem& rs, std::size_t bound);

private:
  WeylGroup() = default;

  IntMatrix identity_matrix() const {
    IntMatrix m(rs_->rank(), IntVec(rs_->rank(), 0));
    for (int i = 0; i < rs_->rank(); ++i) m[i][i] = 1;
    return m;
  }
  static IntMatrix compose(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size();
    IntMatrix c(n, IntVec(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (a[i][k] != 0)
          for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
  }

  std::shared_ptr<const RootSystem> rs_;
  std::vector<WeylElement> elements_;  // breadth-first order, so sorted by length
  std::map<IntMatrix, std::size_t> index_;
  std::vector<std::size_t> generators_;
  std::vector<std::size_t> inverse_;
  std::size_t longest_ = 0;
};

/// Enumerates W by breadth-first closure under right multiplication by the
/// simple reflections. Throws InputError once more than `bound` elements appear.
inline WeylGroup enumerate_weyl(const RootSystem& rs, std::size_t bound = WeylGroup::default_bound) {
  WeylGroup g;
  g.rs_ = std::make_shared<const RootSystem>(rs);
  const int n = rs.rank();
  std::vector<IntMatrix> reflections;
  for (int i = 0; i < n; ++i) {
    IntMatrix m = g.identity_matrix();
    for (int k = 0; k < n; ++k) m[k][i] -= rs.cartan()[k][i];
    reflections.push_back(std::move(m));
  }

  std::vector<int> lengths;
  g.elements_.push_back({g.identity_matrix(), {}});
  lengths.push_back(0);
  g.index_.emplace(g.elements_[0].action, 0);
  for (std::size_t head = 0; head < g.elements_.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      IntMatrix next = WeylGroup::compose(g.elements_[head].action, reflections[i]);
      if (g.index_.count(next)) continue;
      if (g.elements_.size() >= bound)
        throw InputError("Weyl group of " + rs.label() + " exceeds the size bound " + std::to_string(bound));
      g.index_.emplace(next, g.elements_.size());
      g.elements_.push_back({std::move(next), {}});
      lengths.push_back(lengths[head] + 1);
    }
  }
  for (int i = 0; i < n; ++i) g.generators_.push_back(g.index_.at(reflections[i]));

  // Lexicographically minimal reduced words by greedy left descent.
  for (std::size_t idx = 1; idx < g.elements_.size(); ++idx) {
    for (int i = 0; i < n; ++i) {
      std::size_t lower = g.index_.at(WeylGroup::compose(reflections[i], g.elements_[idx].action));
      if (lengths[lower] == lengths[idx] - 1) {
        std::vector<int> word{i};
        const auto& rest = g.elements_[lower].word;
        word.insert(word.end(), rest.begin(), rest.end());
        g.elements_[idx].word = std::move(word);
        break;
      }
    }
    if (g.elements_[idx].length() != lengths[idx])
      throw InternalConsistencyError("reduced word construction failed in W(" + rs.label() + ")");
  }

  g.inverse_.resize(g.elements_.size());
  for (std::size_t idx = 0; idx < g.elements_.size(); ++idx) {
    auto w = g.elements_[idx].word;
    std::reverse(w.begin(), w.end());
    g.inverse_[idx] = g.index_of_word(w);
  }
  g.longest_ = g.elements_.size() - 1;
  return g;
}

/// A standard parabolic P given by S_P, with W^P and all cached per-class data.
class ParabolicContext {
public:
  const WeylGroup& weyl() const { return *weyl_; }
  std::shared_ptr<const WeylGroup> weyl_ptr() const { return weyl_; }
  const RootSystem& root_system() const { return weyl_->root_system(); }

  const std::vector<int>& s_p() const { return s_p_; }
  const std::vector<int>& delta_p() const { return delta_p_; }
  bool is_maximal() const { return s_p_.size() == 1; }

  std::size_t size() const { return reps_.size(); }
  /// Group index of the k-th element of W^P (sorted by length, then reduced word).
  std::size_t group_index(std::size_t k) const { return reps_[k]; }
  const WeylElement& element(std::size_t k) const { return (*weyl_)[reps_[k]]; }
  int length(std::size_t k) const { return element(k).length(); }
  int dimension() const { return dimension_; }
  int codim(std::size_t k) const { return dimension_ - length(k); }

  /// W^P position of a group element, if it is a minimal representative.
  std::optional<std::size_t> position(std::size_t group_idx) const {
    auto p = position_[group_idx];
    if (p < 0) return std::nullopt;
    return static_cast<std::size_t>(p);
  }
  std::size_t position_of_word(const std::vector<int>& word) const {
    auto p = position(weyl_->index_of_word(word));
    if (!p) throw InputError("'" + format_word(word) + "' is not a minimal coset representative");
    return *p;
  }
  /// Minimal representative of the coset w W_P.
  std::size_t min_rep(std::size_t group_idx) const { return static_cast<std::size_t>(coset_rep_[group_idx]); }

  /// Position of w_o w w_o^P.
  std::size_t dual(std::size_t k) const { return dual_[k]; }
  std::size_t longest_rep() const { return reps_.size() - 1; }

  std::size_t w_o() const { return weyl_->longest(); }
  std::size_t w_o_levi() const { return w_o_levi_; }

  const std::vector<IntVec>& levi_roots() const { return levi_roots_; }
  const std::vector<IntVec>& outer_roots() const { return outer_roots_; }
  const Weight& rho_levi() const { return rho_levi_; }

  const Weight& chi(std::size_t k) const { return chi_[k]; }
  /// Degree of q_i for the j-th entry of S_P.
  int q_degree(std::size_t j) const { return q_degrees_[j]; }
  const std::vector<int>& q_degrees() const { return q_degrees_; }

  std::string label() const {
    std::string s = root_system().label() + "/P";
    for (std::size_t j = 0; j < s_p_.size(); ++j) s += (j ? "," : "") + std::to_string(s_p_[j] + 1);
    return s;
  }

  friend ParabolicContext minimal_reps(std::shared_ptr<const WeylGroup> weyl, std::vector<int> s_p);

private:
  ParabolicContext() = default;

  std::shared_ptr<const WeylGroup> weyl_;
  std::vector<int> s_p_, delta_p_;
  std::vector<std::size_t> reps_;
  std::vector<long> position_;
  std::vector<long> coset_rep_;
  std::vector<std::size_t> dual_;
  int dimension_ = 0;
  std::size_t w_o_levi_ = 0;
  std::vector<IntVec> levi_roots_, outer_roots_;
  Weight rho_levi_;
  std::vector<Weight> chi_;
  std::vector<int> q_degrees_;
};

/// chi_w as the sum of the roots in (R+ \ R_l+) cap w^{-1} R+.
inline Weight chi_by_root_sum(const WeylGroup& weyl, const std::vector<IntVec>& outer_roots, std::size_t w) {
  const RootSystem& rs = weyl.root_system();
  Weight sum = Weight::zero(rs.rank());
  for (const auto& beta : outer_roots)
    if (WeylGroup::is_positive_root(weyl.act_on_root(w, beta))) sum += rs.root_weight(beta);
  return sum;
}

/// chi_w as rho - 2 rho^L + w^{-1} rho.
inline Weight chi_by_rho(const WeylGroup& weyl, const Weight& rho_levi, std::size_t w) {
  const RootSystem& rs = weyl.root_system();
  return rs.rho() - Rational(2) * rho_levi + weyl.act(weyl.inverse(w), rs.rho());
}

/// Builds the parabolic context for S_P (0-based simple-root indices).
inline ParabolicContext minimal_reps(std::shared_ptr<const WeylGroup> weyl, std::vector<int> s_p) {
  const RootSystem& rs = weyl->root_system();
  const int n = rs.rank();
  std::sort(s_p.begin(), s_p.end());
  s_p.erase(std::unique(s_p.begin(), s_p.end()), s_p.end());
  if (s_p.empty()) throw InputError("S_P must be nonempty (P = G has a trivial flag variety)");
  for (int i : s_p)
    if (i < 0 || i >= n) throw InputError("no such node " + std::to_string(i + 1) + " in " + rs.label());

  ParabolicContext ctx;
  ctx.weyl_ = weyl;
  ctx.s_p_ = s_p;
  for (int i = 0; i < n; ++i)
    if (!std::binary_search(s_p.begin(), s_p.end(), i)) ctx.delta_p_.push_back(i);

  for (const auto& r : rs.positive_roots()) {
    bool levi = std::all_of(s_p.begin(), s_p.end(), [&](int i) { return r[i] == 0; });
    (levi ? ctx.levi_roots_ : ctx.outer_roots_).push_back(r);
  }
  ctx.dimension_ = static_cast<int>(ctx.outer_roots_.size());
  ctx.rho_levi_ = Weight::zero(n);
  for (const auto& r : ctx.levi_roots_) ctx.rho_levi_ += rs.root_weight(r);
  ctx.rho_levi_ *= Rational(1, 2);

  // Minimal coset representatives: w(alpha_j) > 0 for every alpha_j in Delta_P.
  const std::size_t size = weyl->size();
  ctx.position_.assign(size, -1);
  std::vector<std::size_t> reps;
  for (std::size_t w = 0; w < size; ++w) {
    bool minimal = true;
    for (int j : ctx.delta_p_) {
      IntVec e(n, 0);
      e[j] = 1;
      if (!WeylGroup::is_positive_root(weyl->act_on_root(w, e))) {
        minimal = false;
        break;
      }
    }
    if (minimal) reps.push_back(w);
  }
  std::stable_sort(reps.begin(), reps.end(), [&](std::size_t a, std::size_t b) {
    const auto& wa = (*weyl)[a];
    const auto& wb = (*weyl)[b];
    if (wa.length() != wb.length()) return wa.length() < wb.length();
    return wa.word < wb.word;
  });
  ctx.reps_ = reps;
  for (std::size_t k = 0; k < reps.size(); ++k) ctx.position_[reps[k]] = static_cast<long>(k);

  // Descend each element to its coset's minimal representative.
  ctx.coset_rep_.assign(size, -1);
  for (std::size_t w = 0; w < size; ++w) {
    std::size_t cur = w;
    for (bool moved = true; moved;) {
      moved = false;
      for (int j : ctx.delta_p_) {
        IntVec e(n, 0);
        e[j] = 1;
        if (!WeylGroup::is_positive_root(weyl->act_on_root(cur, e))) {
          cur = weyl->multiply(cur, weyl->generator(j));
          moved = true;
        }
      }
    }
    ctx.coset_rep_[w] = ctx.position_[cur];
  }

  std::size_t levi_longest = 0;
  for (std::size_t w = 0; w < size; ++w) {
    const auto& word = (*weyl)[w].word;
    bool in_levi = std::all_of(word.begin(), word.end(), [&](int i) { return !std::binary_search(s_p.begin(), s_p.end(), i); });
    if (in_levi && (*weyl)[w].length() >= (*weyl)[levi_longest].length()) levi_longest = w;
  }
  ctx.w_o_levi_ = levi_longest;

  if (size % reps.size() != 0 || ctx.length(reps.size() - 1) != ctx.dimension_)
    throw InternalConsistencyError("inconsistent parabolic quotient for " + ctx.label());

  for (std::size_t k = 0; k < reps.size(); ++k) {
    std::size_t d = weyl->multiply(weyl->multiply(weyl->longest(), reps[k]), levi_longest);
    auto p = ctx.position(d);
    if (!p) throw InternalConsistencyError("w_o w w_o^P left W^P in " + ctx.label());
    ctx.dual_.push_back(*p);
  }

  for (std::size_t k = 0; k < reps.size(); ++k) {
    Weight a = chi_by_root_sum(*weyl, ctx.outer_roots_, reps[k]);
    Weight b = chi_by_rho(*weyl, ctx.rho_levi_, reps[k]);
    if (!(a == b)) throw InternalConsistencyError("chi formulas disagree for " + format_word(ctx.element(k).word) + " in " + ctx.label());
    ctx.chi_.push_back(std::move(a));
  }

  for (int i : s_p) {
    Rational via_rho = 2 - 2 * ctx.rho_levi_[i];
    const Rational& via_chi = ctx.chi_[0][i];
    if (via_rho != via_chi) throw InternalConsistencyError("q-degree formulas disagree in " + ctx.label());
    ctx.q_degrees_.push_back(static_cast<int>(to_int64(via_rho)));
  }
  return ctx;
}

inline ParabolicContext minimal_reps(const RootSystem& rs, std::vector<int> s_p) {
  return minimal_reps(std::make_shared<const WeylGroup>(enumerate_weyl(rs)), std::move(s_p));
}

/// chi_w for a group element; throws if w is not in W^P.
inline const Weight& chi(const ParabolicContext& ctx, std::size_t group_idx) {
  auto p = ctx.position(group_idx);
  if (!p) throw InputError("'" + format_word(ctx.weyl()[group_idx].word) + "' is not in W^P for " + ctx.label());
  return ctx.chi(*p);
}

/// s_{i,j} = sum over R+ \ R_l+ of alpha(x_i) alpha(alpha_j^vee), indexed by S_P.
inline IntMatrix s_matrix(const ParabolicContext& ctx) {
  const RootSystem& rs = ctx.root_system();
  const auto& sp = ctx.s_p();
  IntMatrix s(sp.size(), IntVec(sp.size(), 0));
  for (std::size_t a = 0; a < sp.size(); ++a)
    for (std::size_t b = 0; b < sp.size(); ++b)
      for (const auto& alpha : ctx.outer_roots()) s[a][b] += alpha[sp[a]] * rs.pair_with_coroot(alpha, sp[b]);
  return s;
}

}  // namespace qlevi
