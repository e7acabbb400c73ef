#pragma once

// Numerical membership oracle: look for unitaries U_k with
// prod_k U_k Exp(2 pi i mu_k) U_k^{-1} = I by Levenberg-Marquardt over random restarts.

#include "qlevi/root_system.hpp"

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <functional>
#include <limits>
#include <random>

namespace qlevi {

using CMatrix = Eigen::MatrixXcd;

enum class GroupLabel { SU2, SU3, SU4, Sp4 };

inline GroupLabel parse_group(const std::string& text) {
  if (text == "SU2") return GroupLabel::SU2;
  if (text == "SU3") return GroupLabel::SU3;
  if (text == "SU4") return GroupLabel::SU4;
  if (text == "Sp4") return GroupLabel::Sp4;
  throw InputError("unknown group '" + text + "' (expected SU2, SU3, SU4 or Sp4)");
}

inline std::string to_string(GroupLabel g) {
  switch (g) {
    case GroupLabel::SU2: return "SU2";
    case GroupLabel::SU3: return "SU3";
    case GroupLabel::SU4: return "SU4";
    default: return "Sp4";
  }
}

/// Group for a root system label, when a defining representation is available.
inline GroupLabel group_for(const RootSystem& rs) {
  if (rs.type() == 'A' && rs.rank() <= 3) return static_cast<GroupLabel>(rs.rank() - 1);
  if ((rs.type() == 'C' || rs.type() == 'B') && rs.rank() == 2) return GroupLabel::Sp4;
  throw InputError("no unitary representation available for " + rs.label());
}

/// Defining representation: weights of the standard module and an orthonormal
/// basis of the compact Lie algebra inside u(N).
class GroupRep {
public:
  explicit GroupRep(GroupLabel label)
      : label_(label),
        rs_(label == GroupLabel::Sp4 ? build_root_system('C', 2) : build_root_system('A', static_cast<int>(label) + 1)) {
    auto omega = [&](int i) { return rs_.fundamental_weight(i); };
    switch (label) {
      case GroupLabel::SU2:
      case GroupLabel::SU3:
      case GroupLabel::SU4: {
        const int l = static_cast<int>(label) + 1;
        // e_1 = omega_1, e_k = omega_k - omega_{k-1}, e_{l+1} = -omega_l
        weights_.push_back(omega(0));
        for (int k = 1; k < l; ++k) weights_.push_back(omega(k) - omega(k - 1));
        weights_.push_back(Rational(-1) * omega(l - 1));
        break;
      }
      case GroupLabel::Sp4:
        // basis (e1, e2, f1, f2): weights e1, e2, -e1, -e2 with e1 = omega_1, e2 = omega_2 - omega_1
        weights_ = {omega(0), omega(1) - omega(0), Rational(-1) * omega(0), omega(0) - omega(1)};
        break;
    }
    dim_ = static_cast<int>(weights_.size());
    build_algebra();
  }

  GroupLabel label() const { return label_; }
  const RootSystem& root_system() const { return rs_; }
  int dimension() const { return dim_; }
  const std::vector<Weight>& weights() const { return weights_; }
  const std::vector<CMatrix>& algebra() const { return algebra_; }

  /// Symplectic form on (e1, e2, f1, f2).
  static CMatrix symplectic_form() {
    CMatrix j = CMatrix::Zero(4, 4);
    j.block(0, 2, 2, 2) = CMatrix::Identity(2, 2);
    j.block(2, 0, 2, 2) = -CMatrix::Identity(2, 2);
    return j;
  }

  /// Exp(2 pi i mu) in the weight basis.
  CMatrix exp_diagonal(const CartanPoint& mu) const {
    if (static_cast<int>(mu.size()) != rs_.rank()) throw InputError("point has the wrong number of coordinates for " + to_string(label_));
    CMatrix d = CMatrix::Zero(dim_, dim_);
    for (int k = 0; k < dim_; ++k) d(k, k) = std::polar(1.0, 2 * M_PI * to_double(rs_.evaluate(weights_[k], mu)));
    return d;
  }

private:
  void build_algebra() {
    const int n = dim_;
    // Orthonormal basis of u(n) in the Frobenius inner product.
    std::vector<CMatrix> un;
    const std::complex<double> i(0, 1);
    for (int a = 0; a < n; ++a) {
      CMatrix x = CMatrix::Zero(n, n);
      x(a, a) = i;
      un.push_back(x);
    }
    const double s = 1 / std::sqrt(2.0);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        CMatrix x = CMatrix::Zero(n, n);
        x(a, b) = s;
        x(b, a) = -s;
        un.push_back(x);
        CMatrix y = CMatrix::Zero(n, n);
        y(a, b) = i * s;
        y(b, a) = i * s;
        un.push_back(y);
      }
    // Real linear constraints cutting out the compact algebra.
    std::vector<std::function<CMatrix(const CMatrix&)>> maps;
    if (label_ == GroupLabel::Sp4) {
      const CMatrix j = symplectic_form();
      maps.push_back([j](const CMatrix& x) { return CMatrix(x.transpose() * j + j * x); });
    } else {
      maps.push_back([](const CMatrix& x) { return CMatrix(CMatrix::Constant(1, 1, x.trace())); });
    }
    std::vector<Eigen::VectorXd> columns;
    for (const auto& x : un) {
      std::vector<double> col;
      for (const auto& f : maps) {
        CMatrix y = f(x);
        for (Eigen::Index k = 0; k < y.size(); ++k) {
          col.push_back(y.data()[k].real());
          col.push_back(y.data()[k].imag());
        }
      }
      columns.push_back(Eigen::Map<Eigen::VectorXd>(col.data(), static_cast<Eigen::Index>(col.size())));
    }
    Eigen::MatrixXd c(columns[0].size(), static_cast<Eigen::Index>(un.size()));
    for (std::size_t k = 0; k < un.size(); ++k) c.col(static_cast<Eigen::Index>(k)) = columns[k];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    for (Eigen::Index k = 0; k < c.cols(); ++k) {
      if (k < sv.size() && sv(k) > 1e-9) continue;
      CMatrix x = CMatrix::Zero(n, n);
      for (std::size_t b = 0; b < un.size(); ++b) x += svd.matrixV()(static_cast<Eigen::Index>(b), k) * un[b];
      algebra_.push_back(x);
    }
  }

  GroupLabel label_;
  RootSystem rs_;
  std::vector<Weight> weights_;
  int dim_ = 0;
  std::vector<CMatrix> algebra_;
};

/// exp of an anti-Hermitian matrix.
inline CMatrix exp_skew(const CMatrix& x) {
  const std::complex<double> i(0, 1);
  CMatrix h = -i * x;
  h = (h + h.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  Eigen::VectorXcd phases = (i * es.eigenvalues().cast<std::complex<double>>()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct OracleOptions {
  double tol = 1e-8;
  int restarts = 200;
  std::uint64_t seed = 0;
  int max_iterations = 300;
};

struct OracleVerdict {
  bool feasible = false;
  double residual = 0;  // best residual over the restarts
  int restarts_used = 0;
};

namespace detail {

class ProductResidual {
public:
  ProductResidual(const GroupRep& rep, const std::vector<CartanPoint>& point) : rep_(rep) {
    for (const auto& mu : point) diag_.push_back(rep.exp_diagonal(mu));
  }

  std::size_t factors() const { return diag_.size(); }

  std::vector<CMatrix> conjugates(const std::vector<CMatrix>& u) const {
    std::vector<CMatrix> a;
    for (std::size_t k = 0; k < diag_.size(); ++k) a.push_back(u[k] * diag_[k] * u[k].adjoint());
    return a;
  }

  static CMatrix product(const std::vector<CMatrix>& a) {
    CMatrix m = a[0];
    for (std::size_t k = 1; k < a.size(); ++k) m = m * a[k];
    return m;
  }

  static Eigen::VectorXd flatten(const CMatrix& m) {
    Eigen::VectorXd r(2 * m.size());
    for (Eigen::Index k = 0; k < m.size(); ++k) {
      r(2 * k) = m.data()[k].real();
      r(2 * k + 1) = m.data()[k].imag();
    }
    return r;
  }

  double residual(const std::vector<CMatrix>& u) const {
    const int n = rep_.dimension();
    return (product(conjugates(u)) - CMatrix::Identity(n, n)).norm();
  }

  /// Levenberg-Marquardt from the given start; the first factor is held fixed.
  double descend(std::vector<CMatrix>& u, const OracleOptions& opt) const {
    const int n = rep_.dimension();
    const auto& basis = rep_.algebra();
    const std::size_t nb = basis.size();
    const std::size_t free = diag_.size() - 1;
    const Eigen::Index params = static_cast<Eigen::Index>(free * nb);
    double lambda = 1e-3;
    double cost = residual(u);
    for (int it = 0; it < opt.max_iterations && cost >= opt.tol; ++it) {
      auto a = conjugates(u);
      const CMatrix m = product(a);
      Eigen::VectorXd r = flatten(m - CMatrix::Identity(n, n));
      Eigen::MatrixXd jac(r.size(), params);
      CMatrix left = a[0];
      for (std::size_t k = 1; k < diag_.size(); ++k) {
        CMatrix right = CMatrix::Identity(n, n);
        for (std::size_t l = k + 1; l < diag_.size(); ++l) right = right * a[l];
        for (std::size_t b = 0; b < nb; ++b) {
          CMatrix dm = left * (basis[b] * a[k] - a[k] * basis[b]) * right;
          jac.col(static_cast<Eigen::Index>((k - 1) * nb + b)) = flatten(dm);
        }
        left = left * a[k];
      }
      const Eigen::MatrixXd jtj = jac.transpose() * jac;
      const Eigen::VectorXd g = jac.transpose() * r;
      bool improved = false, stalled = false;
      for (int tries = 0; tries < 30 && !improved; ++tries) {
        Eigen::MatrixXd sys = jtj;
        sys.diagonal().array() += lambda;
        Eigen::VectorXd step = sys.ldlt().solve(-g);
        std::vector<CMatrix> trial = u;
        for (std::size_t k = 1; k < diag_.size(); ++k) {
          CMatrix x = CMatrix::Zero(n, n);
          for (std::size_t b = 0; b < nb; ++b) x += step((k - 1) * nb + b) * basis[b];
          trial[k] = exp_skew(x) * u[k];
        }
        double c = residual(trial);
        if (c < cost) {
          if (cost - c < 1e-10 * cost) stalled = true;
          u = std::move(trial);
          cost = c;
          lambda = std::max(lambda / 3, 1e-12);
          improved = true;
        } else {
          lambda *= 4;
        }
      }
      if (!improved || stalled) break;
    }
    return cost;
  }

  std::vector<CMatrix> random_start(std::mt19937_64& rng) const {
    const int n = rep_.dimension();
    std::normal_distribution<double> normal(0.0, 2.0);
    std::vector<CMatrix> u{CMatrix::Identity(n, n)};
    for (std::size_t k = 1; k < diag_.size(); ++k) {
      CMatrix x = CMatrix::Zero(n, n);
      for (const auto& b : rep_.algebra()) x += normal(rng) * b;
      u.push_back(exp_skew(x));
    }
    return u;
  }

private:
  const GroupRep& rep_;
  std::vector<CMatrix> diag_;
};

}  // namespace detail

/// Searches for a witness of 1 in C(mu_1)...C(mu_n). One-sided: no-witness is
/// not a proof of infeasibility.
inline OracleVerdict numeric_membership(const GroupRep& rep, const std::vector<CartanPoint>& point, const OracleOptions& opt = {}) {
  if (point.empty()) throw InputError("empty point tuple");
  for (const auto& mu : point) {
    if (static_cast<int>(mu.size()) != rep.root_system().rank()) throw InputError("point has the wrong number of coordinates");
    Rational theta = 0;
    for (int j = 0; j < rep.root_system().rank(); ++j) {
      if (mu[j] < 0) throw InputError("point is not in the fundamental alcove");
      theta += mu[j] * make_rational(rep.root_system().highest_root()[j]);
    }
    if (theta > 1) throw InputError("point is not in the fundamental alcove");
  }
  detail::ProductResidual problem(rep, point);
  OracleVerdict v;
  v.residual = std::numeric_limits<double>::infinity();
  const int runs = point.size() == 1 ? 1 : std::max(opt.restarts, 1);
  for (int r = 0; r < runs; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32), static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    auto u = problem.random_start(rng);
    double c = problem.descend(u, opt);
    v.residual = std::min(v.residual, c);
    v.restarts_used = r + 1;
    if (c < opt.tol) {
      v.feasible = true;
      break;
    }
  }
  return v;
}

/// Closed form for SU(2) with t_k = omega(mu_k) in [0, 1/2]: for every odd
/// subset S, sum_S t - sum_{S^c} t <= (|S| - 1) / 2.
inline bool su2_reference_membership(const std::vector<Rational>& t) {
  for (const auto& x : t)
    if (x < 0 || x > make_rational(1, 2)) throw InputError("t = " + to_string(x) + " is outside [0, 1/2]");
  if (t.size() > 30) throw InputError("too many points for subset enumeration");
  const std::size_t n = t.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const int size = std::popcount(mask);
    if (size % 2 == 0) continue;
    Rational s = 0;
    for (std::size_t k = 0; k < n; ++k) s += (mask >> k & 1) ? t[k] : Rational(-t[k]);
    if (s > make_rational(size - 1, 2)) return false;
  }
  return true;
}

}  // namespace qlevi
