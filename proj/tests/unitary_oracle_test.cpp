#include "support.hpp"

#include "qlevi/compare.hpp"

namespace qlevi::test {
namespace {

std::vector<CartanPoint> a1_point(std::initializer_list<Rational> m) {
  std::vector<CartanPoint> out;
  for (const auto& x : m) out.push_back(point({x}));
  return out;
}

TEST(GroupRep, Labels) {
  for (auto g : {GroupLabel::SU2, GroupLabel::SU3, GroupLabel::SU4, GroupLabel::Sp4}) EXPECT_EQ(parse_group(to_string(g)), g);
  EXPECT_THROW(parse_group("SO3"), InputError);
  EXPECT_EQ(group_for(build_root_system("A2")), GroupLabel::SU3);
  EXPECT_EQ(group_for(build_root_system("B2")), GroupLabel::Sp4);
  EXPECT_EQ(group_for(build_root_system("C2")), GroupLabel::Sp4);
  EXPECT_THROW(group_for(build_root_system("G2")), InputError);
}

TEST(GroupRep, AlgebraIsAnOrthonormalBasisOfTheCompactForm) {
  const std::pair<GroupLabel, std::size_t> dims[] = {{GroupLabel::SU2, 3}, {GroupLabel::SU3, 8}, {GroupLabel::SU4, 15}, {GroupLabel::Sp4, 10}};
  for (auto [label, dim] : dims) {
    GroupRep rep(label);
    const auto& alg = rep.algebra();
    ASSERT_EQ(alg.size(), dim) << to_string(label);
    for (std::size_t a = 0; a < alg.size(); ++a) {
      EXPECT_LT((alg[a] + alg[a].adjoint()).norm(), 1e-12);
      if (label == GroupLabel::Sp4) {
        const CMatrix j = GroupRep::symplectic_form();
        EXPECT_LT((alg[a].transpose() * j + j * alg[a]).norm(), 1e-12);
      } else {
        EXPECT_LT(std::abs(alg[a].trace()), 1e-12);
      }
      for (std::size_t b = 0; b < alg.size(); ++b)
        EXPECT_NEAR((alg[a].adjoint() * alg[b]).trace().real(), a == b ? 1.0 : 0.0, 1e-12);
    }
  }
}

TEST(GroupRep, ExponentialHasTheWeightEigenvalues) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> num(0, 12);
  for (auto label : {GroupLabel::SU2, GroupLabel::SU3, GroupLabel::SU4, GroupLabel::Sp4}) {
    GroupRep rep(label);
    const RootSystem& rs = rep.root_system();
    for (int t = 0; t < 10; ++t) {
      RatVec m;
      for (int j = 0; j < rs.rank(); ++j) m.push_back(R(num(rng), 12 * rs.rank()));
      CartanPoint mu(m);
      CMatrix d = rep.exp_diagonal(mu);
      EXPECT_LT((d * d.adjoint() - CMatrix::Identity(rep.dimension(), rep.dimension())).norm(), 1e-12);
      for (int k = 0; k < rep.dimension(); ++k) {
        const double angle = 2 * M_PI * to_double(rs.evaluate(rep.weights()[k], mu));
        EXPECT_LT(std::abs(d(k, k) - std::polar(1.0, angle)), 1e-12);
      }
      if (label == GroupLabel::Sp4) {
        const CMatrix j = GroupRep::symplectic_form();
        EXPECT_LT((d.transpose() * j * d - j).norm(), 1e-12);
      } else {
        EXPECT_LT(std::abs(d.determinant() - 1.0), 1e-12);
      }
    }
  }
}

TEST(GroupRep, SymplecticGroupIsPreservedByTheExponential) {
  GroupRep rep(GroupLabel::Sp4);
  std::mt19937 rng(4);
  std::normal_distribution<double> g;
  const CMatrix j = GroupRep::symplectic_form();
  for (int t = 0; t < 20; ++t) {
    CMatrix x = CMatrix::Zero(4, 4);
    for (const auto& b : rep.algebra()) x += g(rng) * b;
    CMatrix u = exp_skew(x);
    EXPECT_LT((u.adjoint() * u - CMatrix::Identity(4, 4)).norm(), 1e-12);
    EXPECT_LT((u.transpose() * j * u - j).norm(), 1e-12);
  }
}

TEST(NumericMembership, Su2Examples) {
  GroupRep su2(GroupLabel::SU2);
  auto inside = numeric_membership(su2, a1_point({R(1, 2), R(1, 2), R(1, 2)}));
  EXPECT_TRUE(inside.feasible);
  EXPECT_LT(inside.residual, 1e-8);

  auto central = numeric_membership(su2, a1_point({1, 1, 1}), {1e-8, 5, 0, 300});
  EXPECT_FALSE(central.feasible);
  EXPECT_NEAR(central.residual, 2 * std::sqrt(2.0), 1e-12);

  EXPECT_TRUE(numeric_membership(su2, a1_point({1, 1, 0})).feasible);
}

TEST(NumericMembership, DeterministicGivenSeed) {
  GroupRep su3(GroupLabel::SU3);
  std::vector<CartanPoint> pt{point({R(1, 5), R(1, 7)}), point({R(1, 3), R(1, 9)}), point({R(1, 4), R(1, 4)})};
  OracleOptions opt;
  opt.seed = 99;
  auto a = numeric_membership(su3, pt, opt), b = numeric_membership(su3, pt, opt);
  EXPECT_EQ(a.feasible, b.feasible);
  EXPECT_EQ(a.residual, b.residual);
  EXPECT_EQ(a.restarts_used, b.restarts_used);
}

TEST(NumericMembership, RejectsPointsOutsideTheAlcove) {
  GroupRep sp4(GroupLabel::Sp4);
  EXPECT_THROW(numeric_membership(sp4, {point({1, 1}), point({0, 0}), point({0, 0})}), InputError);
  EXPECT_THROW(numeric_membership(sp4, {point({R(-1, 4), 0}), point({0, 0}), point({0, 0})}), InputError);
  EXPECT_THROW(numeric_membership(sp4, {point({0}), point({0, 0}), point({0, 0})}), InputError);
}

TEST(NumericMembership, InsidePointsOfRankTwoGroupsAreCertified) {
  for (auto label : {GroupLabel::SU3, GroupLabel::Sp4}) {
    GroupRep rep(label);
    const RootSystem& rs = rep.root_system();
    CartanPoint b = Alcove::barycenter(rs);
    auto list = generate_inequalities(rs, 3);
    ASSERT_EQ(membership(rs, 3, {b, b, b}, list).placement, Placement::inside);
    auto v = numeric_membership(rep, {b, b, b});
    EXPECT_TRUE(v.feasible) << to_string(label);
  }
}

// Soundness: points rejected with margin never get a witness.
TEST(NumericMembership, NoWitnessForRejectedPoints) {
  for (auto label : {GroupLabel::SU2, GroupLabel::SU3, GroupLabel::Sp4}) {
    GroupRep rep(label);
    const RootSystem& rs = rep.root_system();
    auto list = generate_inequalities(rs, 3);
    auto points = sample_balanced_points(rs, 3, list, 6, R(1, 20), 7);
    OracleOptions opt;
    opt.restarts = 20;
    for (const auto& r : oracle_compare(rep, 3, list, points, opt)) {
      if (!r.exact_inside) {
        EXPECT_FALSE(r.numeric.feasible) << to_string(label);
      }
    }
  }
}

TEST(Su2Reference, Examples) {
  EXPECT_TRUE(su2_reference_membership({R(1, 4), R(1, 4), R(1, 4)}));
  EXPECT_FALSE(su2_reference_membership({R(1, 2), R(1, 2), R(1, 2)}));
  EXPECT_TRUE(su2_reference_membership({R(1, 2), R(1, 2), R(1, 2), R(1, 2)}));
  EXPECT_THROW(su2_reference_membership({R(3, 4), 0, 0}), InputError);
  EXPECT_THROW(su2_reference_membership({R(-1, 4), 0, 0}), InputError);
}

// About 10^4 grid points per n.
TEST(Su2Reference, AgreesWithExactMembershipOnGrids) {
  RootSystem rs = build_root_system("A1");
  const std::pair<int, int> grids[] = {{3, 21}, {4, 9}, {5, 6}};
  for (auto [n, steps] : grids) {
    auto list = generate_inequalities(rs, n);
    std::vector<int> idx(n, 0);
    std::size_t count = 0;
    for (;;) {
      std::vector<CartanPoint> pt;
      std::vector<Rational> t;
      for (int k : idx) {
        pt.push_back(point({R(k, steps)}));
        t.push_back(R(k, 2 * steps));
      }
      EXPECT_EQ(membership(rs, n, pt, list).placement != Placement::outside, su2_reference_membership(t));
      ++count;
      int k = 0;
      while (k < n && idx[k] == steps) idx[k++] = 0;
      if (k == n) break;
      ++idx[k];
    }
    EXPECT_GE(count, 7000u);
  }
}

}  // namespace
}  // namespace qlevi::test
