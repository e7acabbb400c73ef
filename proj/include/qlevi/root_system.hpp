#pragma once

// Exact root-system data for the simple types A-G in Bourbaki numbering.
//
// Conventions used throughout the library:
//   cartan[i][j] = <alpha_j, alpha_i^vee>
//   Weight       = coordinates in the fundamental-weight basis
//   CartanPoint  = coordinates m_j = alpha_j(mu), i.e. mu = sum_j m_j x_j
//   roots        = integer coordinates in the simple-root basis
// The invariant bilinear form is normalized so that <theta, theta> = 2.

#include "qlevi/linalg.hpp"
#include "qlevi/rational.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>

namespace qlevi {

struct Weight {
  RatVec coords;

  Weight() = default;
  explicit Weight(RatVec c) : coords(std::move(c)) {}
  static Weight zero(std::size_t rank) { return Weight(RatVec(rank, Rational(0))); }

  std::size_t size() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }
  Rational& operator[](std::size_t i) { return coords[i]; }

  Weight& operator+=(const Weight& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    for (std::size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  Weight& operator*=(const Rational& s) {
    for (auto& c : coords) c *= s;
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(const Rational& s, Weight a) { return a *= s; }
  friend bool operator==(const Weight&, const Weight&) = default;
};

struct CartanPoint {
  RatVec coords;

  CartanPoint() = default;
  explicit CartanPoint(RatVec c) : coords(std::move(c)) {}

  std::size_t size() const { return coords.size(); }
  const Rational& operator[](std::size_t i) const { return coords[i]; }
  friend bool operator==(const CartanPoint&, const CartanPoint&) = default;
};

class RootSystem {
public:
  char type() const { return type_; }
  int rank() const { return rank_; }
  std::string label() const { return std::string(1, type_) + std::to_string(rank_); }

  const IntMatrix& cartan() const { return cartan_; }
  const RatMatrix& inverse_cartan() const { return inverse_cartan_; }
  const std::vector<IntVec>& positive_roots() const { return positive_roots_; }
  const IntVec& highest_root() const { return positive_roots_.back(); }
  int dual_coxeter() const { return dual_coxeter_; }
  /// Smallest positive N_j with N_j x_j in the coroot lattice.
  const std::vector<std::int64_t>& coroot_lattice_index() const { return lattice_index_; }

  /// <alpha_i, alpha_i> under the normalized form.
  const Rational& simple_norm(std::size_t i) const { return simple_norms_[i]; }

  static int height(const IntVec& root) { return static_cast<int>(std::accumulate(root.begin(), root.end(), std::int64_t{0})); }

  Weight rho() const { return Weight(RatVec(rank_, Rational(1))); }
  Weight fundamental_weight(std::size_t i) const {
    Weight w = Weight::zero(rank_);
    w[i] = 1;
    return w;
  }

  /// A root (simple-root coordinates) as a weight.
  Weight root_weight(const IntVec& root) const {
    Weight w = Weight::zero(rank_);
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) w[i] += make_rational(cartan_[i][j] * root[j]);
    return w;
  }
  Weight simple_root_weight(std::size_t j) const {
    IntVec e(rank_, 0);
    e[j] = 1;
    return root_weight(e);
  }

  /// Simple-root coordinates of a weight; component j equals lambda(x_j).
  RatVec root_coords(const Weight& w) const { return linalg::multiply(inverse_cartan_, w.coords); }

  /// lambda(mu) = sum_j m_j lambda(x_j).
  Rational evaluate(const Weight& lambda, const CartanPoint& mu) const {
    return linalg::dot(root_coords(lambda), mu.coords);
  }

  /// alpha(h) for a root alpha and h given by its CartanPoint coordinates.
  static Rational evaluate_root(const IntVec& root, const RatVec& h) {
    Rational s = 0;
    for (std::size_t j = 0; j < root.size(); ++j) s += make_rational(root[j]) * h[j];
    return s;
  }

  /// <alpha, alpha_i^vee> for a root in simple-root coordinates.
  std::int64_t pair_with_coroot(const IntVec& root, std::size_t i) const {
    std::int64_t s = 0;
    for (int j = 0; j < rank_; ++j) s += cartan_[i][j] * root[j];
    return s;
  }

  /// CartanPoint coordinates of the simple coroot alpha_i^vee.
  RatVec simple_coroot_point(std::size_t i) const {
    RatVec h(rank_);
    for (int j = 0; j < rank_; ++j) h[j] = make_rational(cartan_[i][j]);
    return h;
  }

  /// Coefficients of beta^vee in the basis of simple coroots.
  RatVec coroot_coords(const IntVec& root) const {
    Rational n = root_norm(root);
    RatVec c(rank_);
    for (int i = 0; i < rank_; ++i) c[i] = make_rational(root[i]) * simple_norms_[i] / n;
    return c;
  }

  Rational root_norm(const IntVec& root) const {
    Rational s = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) s += make_rational(root[i] * root[j] * cartan_[i][j]) * simple_norms_[i] / 2;
    return s;
  }

  /// Normalized invariant form on weights.
  Rational form(const Weight& lambda, const Weight& mu) const {
    RatVec c = root_coords(mu);
    Rational s = 0;
    for (int j = 0; j < rank_; ++j) s += c[j] * lambda[j] * simple_norms_[j] / 2;
    return s;
  }

  /// The identification h* -> h induced by the form.
  CartanPoint kappa(const Weight& lambda) const {
    RatVec m(rank_);
    for (int j = 0; j < rank_; ++j) m[j] = lambda[j] * simple_norms_[j] / 2;
    return CartanPoint(std::move(m));
  }
  Weight kappa_inv(const CartanPoint& mu) const {
    RatVec f(rank_);
    for (int j = 0; j < rank_; ++j) f[j] = 2 * mu[j] / simple_norms_[j];
    return Weight(std::move(f));
  }

  /// Induced form on h.
  Rational form(const CartanPoint& h1, const CartanPoint& h2) const { return form(kappa_inv(h1), kappa_inv(h2)); }

  /// Converts a root from simple-root coordinates given as rationals; nullopt if not a root.
  std::optional<std::size_t> find_positive_root(const IntVec& root) const {
    auto it = root_index_.find(root);
    if (it == root_index_.end()) return std::nullopt;
    return it->second;
  }

  friend RootSystem build_root_system(char type, int rank);

private:
  RootSystem() = default;

  char type_ = 'A';
  int rank_ = 0;
  IntMatrix cartan_;
  RatMatrix inverse_cartan_;
  std::vector<IntVec> positive_roots_;  // sorted by height, then lexicographically
  std::map<IntVec, std::size_t> root_index_;
  std::vector<Rational> simple_norms_;
  int dual_coxeter_ = 0;
  std::vector<std::int64_t> lattice_index_;
};

namespace detail {

inline bool valid_type(char type, int rank) {
  switch (type) {
    case 'A': return rank >= 1;
    case 'B': return rank >= 2;
    case 'C': return rank >= 2;
    case 'D': return rank >= 4;
    case 'E': return rank >= 6 && rank <= 8;
    case 'F': return rank == 4;
    case 'G': return rank == 2;
    default: return false;
  }
}

inline IntMatrix bourbaki_cartan(char type, int n) {
  IntMatrix a(n, IntVec(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;  // alpha_n short
      break;
    case 'C':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;  // alpha_n long
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':
      link(0, 1);
      link(1, 2);
      link(2, 3);
      a[2][1] = -2;  // alpha_2 long, alpha_3 short
      break;
    case 'G':
      a[0][1] = -3;  // alpha_1 short
      a[1][0] = -1;
      break;
  }
  return a;
}

/// Height of the highest root, h - 1 with h the Coxeter number.
inline int highest_root_height(char type, int n) {
  switch (type) {
    case 'A': return n;
    case 'B':
    case 'C': return 2 * n - 1;
    case 'D': return 2 * n - 3;
    case 'E': return n == 6 ? 11 : n == 7 ? 17 : 29;
    case 'F': return 11;
    default: return 5;
  }
}

}  // namespace detail

/// Builds the root system of the given simple type; throws InputError for
/// invalid (type, rank) pairs.
inline RootSystem build_root_system(char type, int rank) {
  if (!detail::valid_type(type, rank))
    throw InputError("no simple root system of type (" + std::string(1, type) + ", " + std::to_string(rank) + ")");
  RootSystem rs;
  rs.type_ = type;
  rs.rank_ = rank;
  rs.cartan_ = detail::bourbaki_cartan(type, rank);
  auto inv = linalg::inverse(linalg::to_rational(rs.cartan_));
  if (!inv) throw InternalConsistencyError("singular Cartan matrix for " + rs.label());
  rs.inverse_cartan_ = *inv;

  // Root strings, level by level in height.
  const int cap = detail::highest_root_height(type, rank);
  std::map<IntVec, std::size_t> known;
  std::vector<IntVec> level;
  for (int i = 0; i < rank; ++i) {
    IntVec e(rank, 0);
    e[i] = 1;
    level.push_back(e);
  }
  std::vector<IntVec> roots;
  for (int h = 1; !level.empty(); ++h) {
    if (h > cap) throw InternalConsistencyError("root string exceeded height of theta for " + rs.label());
    std::sort(level.begin(), level.end());
    for (auto& r : level) {
      known.emplace(r, roots.size());
      roots.push_back(r);
    }
    std::vector<IntVec> next;
    for (const auto& beta : level) {
      for (int i = 0; i < rank; ++i) {
        if (h == 1 && beta[i] == 1) continue;  // 2 alpha_i is not a root
        int p = 0;
        for (IntVec down = beta;;) {
          down[i] -= 1;
          if (down[i] < 0 || !known.count(down)) break;
          ++p;
        }
        std::int64_t pairing = 0;
        for (int j = 0; j < rank; ++j) pairing += rs.cartan_[i][j] * beta[j];
        if (p - pairing > 0) {
          IntVec up = beta;
          up[i] += 1;
          if (std::find(next.begin(), next.end(), up) == next.end()) next.push_back(up);
        }
      }
    }
    level = std::move(next);
  }
  rs.positive_roots_ = std::move(roots);
  rs.root_index_ = std::move(known);

  const IntVec& theta = rs.positive_roots_.back();
  for (const auto& r : rs.positive_roots_)
    for (int i = 0; i < rank; ++i)
      if (r[i] > theta[i]) throw InternalConsistencyError("highest root is not dominance-maximal in " + rs.label());

  // Relative squared lengths via <alpha_i,alpha_j> = cartan[i][j] |alpha_i|^2 / 2,
  // propagated along the Dynkin diagram, then scaled to <theta,theta> = 2.
  std::vector<Rational> norms(rank, Rational(0));
  norms[0] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < rank; ++i) {
      if (norms[i] == 0) continue;
      for (int j = 0; j < rank; ++j) {
        if (norms[j] != 0 || rs.cartan_[i][j] == 0) continue;
        norms[j] = make_rational(rs.cartan_[i][j]) * norms[i] / make_rational(rs.cartan_[j][i]);
        changed = true;
      }
    }
  }
  rs.simple_norms_ = norms;
  Rational theta_norm = rs.root_norm(theta);
  for (auto& n : rs.simple_norms_) n = n * 2 / theta_norm;

  // g* = 1 + rho(theta^vee); rho(alpha_i^vee) = 1.
  RatVec theta_coroot = rs.coroot_coords(theta);
  Rational rho_theta = std::accumulate(theta_coroot.begin(), theta_coroot.end(), Rational(0));
  rs.dual_coxeter_ = static_cast<int>(to_int64(rho_theta + 1));

  // x_j = sum_i (C^{-1})_{ji} alpha_i^vee.
  for (int j = 0; j < rank; ++j) {
    Integer l = 1;
    for (int i = 0; i < rank; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rs.inverse_cartan_[j][i].get_den_mpz_t());
    rs.lattice_index_.push_back(to_int64(l));
  }
  return rs;
}

/// Parses labels such as "G2" or "A 3"; rank may also be supplied separately.
inline RootSystem build_root_system(const std::string& label) {
  if (label.size() < 2) throw InputError("bad type label '" + label + "'");
  char t = label[0];
  int r = 0;
  try {
    std::size_t used = 0;
    r = std::stoi(label.substr(1), &used);
    if (used != label.size() - 1) throw InputError("bad type label '" + label + "'");
  } catch (const std::logic_error&) {
    throw InputError("bad type label '" + label + "'");
  }
  return build_root_system(t, r);
}

}  // namespace qlevi
