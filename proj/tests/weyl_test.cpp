#include "support.hpp"

#include <random>

namespace qlevi::test {
namespace {

TEST(Weyl, GroupOrders) {
  const std::pair<const char*, std::size_t> orders[] = {{"A1", 2},  {"A2", 6},  {"A3", 24},  {"B2", 8},   {"B3", 48},
                                                        {"C3", 48}, {"G2", 12}, {"D4", 192}, {"F4", 1152}};
  for (auto [label, order] : orders) EXPECT_EQ(enumerate_weyl(build_root_system(label)).size(), order) << label;
}

TEST(Weyl, SizeBoundIsEnforced) {
  EXPECT_THROW(enumerate_weyl(build_root_system("B2"), 5), InputError);
  EXPECT_NO_THROW(enumerate_weyl(build_root_system("B2"), 8));
}

TEST(Weyl, LengthCountsInvertedRoots) {
  for (const char* label : {"G2", "B3", "A3"}) {
    RootSystem rs = build_root_system(label);
    WeylGroup w = enumerate_weyl(rs);
    for (std::size_t g = 0; g < w.size(); ++g) {
      int inverted = 0;
      for (const auto& a : rs.positive_roots()) inverted += WeylGroup::is_positive_root(w.act_on_root(g, a)) ? 0 : 1;
      EXPECT_EQ(w[g].length(), inverted) << label;
    }
    EXPECT_EQ(w[w.longest()].length(), static_cast<int>(rs.positive_roots().size()));
  }
}

// Brute force: the first word of the right length in lexicographic order that
// multiplies out to the element.
TEST(Weyl, WordsAreLexMinimalReduced) {
  for (const char* label : {"B2", "G2", "A3"}) {
    RootSystem rs = build_root_system(label);
    WeylGroup w = enumerate_weyl(rs);
    for (std::size_t g = 0; g < w.size(); ++g) {
      const int len = w[g].length();
      std::vector<int> word(len, 0);
      std::optional<std::vector<int>> first;
      for (;;) {
        std::size_t acc = w.identity();
        for (int s : word) acc = w.multiply(acc, w.generator(s));
        if (acc == g) {
          first = word;
          break;
        }
        int k = len - 1;
        while (k >= 0 && word[k] == rs.rank() - 1) word[k--] = 0;
        if (k < 0) break;
        ++word[k];
      }
      ASSERT_TRUE(first.has_value());
      EXPECT_EQ(w[g].word, *first) << label;
    }
  }
}

TEST(Weyl, ActionPermutesRootsAndPreservesForm) {
  RootSystem rs = build_root_system("G2");
  WeylGroup w = enumerate_weyl(rs);
  for (std::size_t g = 0; g < w.size(); ++g)
    for (const auto& a : rs.positive_roots()) {
      IntVec image = w.act_on_root(g, a);
      IntVec abs_image = image;
      if (!WeylGroup::is_positive_root(image))
        for (auto& c : abs_image) c = -c;
      EXPECT_TRUE(rs.find_positive_root(abs_image).has_value());
      EXPECT_EQ(rs.root_norm(image), rs.root_norm(a));
    }
}

TEST(Weyl, WordFormatting) {
  EXPECT_EQ(format_word({}), "e");
  EXPECT_EQ(format_word({0, 1, 0}), "s1 s2 s1");
  EXPECT_EQ(parse_word("s1 s2 s1", 2), (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(parse_word("e", 2), (std::vector<int>{}));
  EXPECT_THROW(parse_word("s3", 2), InputError);
}

TEST(Parabolic, SpecExamples) {
  auto a1 = minimal_reps(build_root_system("A1"), {0});
  EXPECT_EQ(a1.size(), 2u);
  EXPECT_EQ(a1.dimension(), 1);

  auto b2 = minimal_reps(build_root_system("B2"), {1});
  EXPECT_EQ(b2.size(), 4u);
  EXPECT_EQ(b2.dimension(), 3);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(b2.length(k), static_cast<int>(k));

  auto g2 = minimal_reps(build_root_system("G2"), {0});
  EXPECT_EQ(g2.size(), 6u);
  EXPECT_EQ(g2.dimension(), 5);
  EXPECT_EQ(g2.label(), "G2/P1");
}

TEST(Parabolic, InvalidSubsets) {
  EXPECT_THROW(minimal_reps(build_root_system("B2"), {}), InputError);
  EXPECT_THROW(minimal_reps(build_root_system("B2"), {2}), InputError);
}

TEST(Parabolic, CosetStructure) {
  const std::pair<const char*, std::vector<int>> cases[] = {{"A3", {1}}, {"A3", {0, 2}}, {"B3", {0}}, {"C3", {2}}, {"G2", {1}}, {"B2", {0, 1}}};
  for (const auto& [label, sp] : cases) {
    SCOPED_TRACE(label);
    auto ctx = parabolic(label, sp);
    const auto& w = ctx->weyl();
    const RootSystem& rs = ctx->root_system();
    EXPECT_EQ(ctx->size() * (w.size() / ctx->size()), w.size());
    EXPECT_EQ(ctx->dimension(), static_cast<int>(ctx->outer_roots().size()));
    // |W_P| from the Levi roots: count of group elements generated by Delta_P.
    std::size_t levi_order = 0;
    for (std::size_t g = 0; g < w.size(); ++g) {
      bool in_levi = std::all_of(w[g].word.begin(), w[g].word.end(), [&](int s) { return std::find(sp.begin(), sp.end(), s) == sp.end(); });
      levi_order += in_levi ? 1 : 0;
    }
    EXPECT_EQ(ctx->size() * levi_order, w.size());
    for (std::size_t k = 0; k < ctx->size(); ++k) {
      for (int i : ctx->delta_p()) {
        IntVec e(rs.rank(), 0);
        e[i] = 1;
        EXPECT_TRUE(WeylGroup::is_positive_root(w.act_on_root(ctx->group_index(k), e)));
      }
      if (k > 0) {
        auto key = [&](std::size_t x) { return std::make_pair(ctx->length(x), ctx->element(x).word); };
        EXPECT_LT(key(k - 1), key(k));
      }
      const std::size_t d = ctx->dual(k);
      EXPECT_EQ(ctx->dual(d), k);
      EXPECT_EQ(ctx->codim(d), ctx->length(k));
    }
  }
}

TEST(Parabolic, ChiFormulasAndExamples) {
  for (const auto& [label, sp] : std::vector<std::pair<const char*, std::vector<int>>>{{"A1", {0}}, {"A2", {0}}, {"A3", {1}}, {"B2", {0}}, {"B2", {1}}, {"B3", {2}}, {"C3", {0}}, {"G2", {0}}, {"G2", {1}}}) {
    auto ctx = parabolic(label, sp);
    for (std::size_t k = 0; k < ctx->size(); ++k) {
      EXPECT_EQ(chi_by_root_sum(ctx->weyl(), ctx->outer_roots(), ctx->group_index(k)), chi_by_rho(ctx->weyl(), ctx->rho_levi(), ctx->group_index(k)));
      EXPECT_EQ(chi(*ctx, ctx->group_index(k)), ctx->chi(k));
    }
    EXPECT_EQ(ctx->chi(0), Rational(2) * ctx->root_system().rho() - Rational(2) * ctx->rho_levi());
  }
  auto b2 = parabolic("B2", {1});
  EXPECT_EQ(b2->root_system().root_coords(b2->chi(0))[1], 4);
  auto g2 = parabolic("G2", {0});
  EXPECT_EQ(g2->root_system().evaluate(g2->chi(0), CartanPoint(g2->root_system().simple_coroot_point(0))), 5);
}

TEST(Parabolic, ChiRejectsNonMinimal) {
  auto ctx = parabolic("B2", {1});
  const auto& w = ctx->weyl();
  std::size_t s1 = w.generator(0);  // s1 is in W_P, not in W^P
  EXPECT_THROW(chi(*ctx, s1), InputError);
}

TEST(Parabolic, QDegrees) {
  auto expect = [](const char* label, int node, int degree) {
    auto ctx = parabolic(label, {node});
    const RootSystem& rs = ctx->root_system();
    // 2 - 2 rho^L(alpha_i^vee), with rho^L from the Levi roots directly.
    Rational rho_l = 0;
    for (const auto& a : ctx->levi_roots()) rho_l += make_rational(rs.pair_with_coroot(a, node), 2);
    EXPECT_EQ(2 - 2 * rho_l, degree) << label;
    EXPECT_EQ(ctx->q_degree(0), degree) << label;
  };
  expect("G2", 0, 5);
  expect("G2", 1, 3);
  expect("A1", 0, 2);
  expect("B2", 1, 4);
  expect("A3", 1, 4);
}

TEST(Parabolic, SMatrix) {
  EXPECT_EQ(s_matrix(*parabolic("A1", {0})), (IntMatrix{{2}}));
  // The root sum equals 2 g* / <alpha_1, alpha_1> = 12 for G2/P1.
  EXPECT_EQ(s_matrix(*parabolic("G2", {0})), (IntMatrix{{12}}));
  for (const auto& [label, sp] : std::vector<std::pair<const char*, std::vector<int>>>{{"B2", {0, 1}}, {"G2", {0, 1}}, {"A3", {0, 1, 2}}, {"A3", {1}}}) {
    auto ctx = parabolic(label, sp);
    auto s = s_matrix(*ctx);
    for (auto& row : s)
      for (auto x : row) EXPECT_GE(x, 0) << label;
  }
}

TEST(Parabolic, WeightActionMatchesContragredient) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> num(0, 12), den(1, 12);
  for (const auto& [label, node] : std::vector<std::pair<const char*, int>>{{"G2", 0}, {"B2", 1}, {"A3", 1}}) {
    auto ctx = parabolic(label, {node});
    const RootSystem& rs = ctx->root_system();
    const Weight omega = rs.fundamental_weight(node);
    for (int t = 0; t < 50; ++t) {
      RatVec m;
      for (int j = 0; j < rs.rank(); ++j) m.push_back(R(num(rng), den(rng)));
      CartanPoint mu(m);
      for (std::size_t k = 0; k < ctx->size(); ++k) {
        const std::size_t u = ctx->group_index(k);
        EXPECT_EQ(rs.evaluate(omega, ctx->weyl().act_on_cartan(ctx->weyl().inverse(u), mu)), rs.evaluate(ctx->weyl().act(u, omega), mu));
      }
    }
  }
}

}  // namespace
}  // namespace qlevi::test
