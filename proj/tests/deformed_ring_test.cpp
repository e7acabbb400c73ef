#include "support.hpp"

#include <fstream>
#include <regex>
#include <sstream>

namespace qlevi::test {
namespace {

std::shared_ptr<const DeformedRing> ring_for(const std::string& label, std::vector<int> s_p) {
  return std::make_shared<const DeformedRing>(table_for(label, std::move(s_p)));
}

DeformedElement delem(const ParabolicContext& ctx, std::initializer_list<std::tuple<int, int, int, int>> terms) {
  DeformedElement e;
  for (auto [c, tau, q, codim] : terms) e.add(DKey{class_of_codim(ctx, codim), Degree{q}, Exponent{tau}}, Integer(c));
  return e;
}

const std::vector<std::pair<const char*, std::vector<int>>> spaces = {
    {"A1", {0}}, {"A2", {0}}, {"A3", {1}}, {"B2", {0}}, {"B2", {1}}, {"G2", {0}}, {"G2", {1}}, {"B2", {0, 1}}, {"G2", {0, 1}}};

TEST(AExponent, KnownExamples) {
  auto b2 = parabolic("B2", {1});
  const std::size_t a1 = class_of_codim(*b2, 1), a2 = class_of_codim(*b2, 2);
  EXPECT_EQ(a_exponent(*b2, a1, a1, b2->dual(a2), {0}), (Exponent{1}));

  auto g2 = parabolic("G2", {0});
  const std::size_t b5 = class_of_codim(*g2, 5), b0 = class_of_codim(*g2, 0);
  EXPECT_EQ(a_exponent(*g2, b5, b5, g2->dual(b0), {2}), (Exponent{4}));
}

TEST(AExponent, RejectsBadArguments) {
  auto b2 = parabolic("B2", {1});
  EXPECT_THROW(a_exponent(*b2, 7, 0, 0, {0}), InputError);
  EXPECT_THROW(a_exponent(*b2, 0, 0, 0, {0, 1}), InputError);
}

TEST(DeformedRing, ExponentsAreNonnegative) {
  for (const auto& [label, sp] : spaces) {
    auto ring = ring_for(label, sp);
    const std::size_t n = ring->context().size();
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v)
        for (const auto& [k, c] : ring->product(u, v).terms) {
          EXPECT_GT(c, 0);
          for (int e : k.e) EXPECT_GE(e, 0) << ring->context().label();
        }
  }
}

TEST(DeformedRing, CominusculeCollapse) {
  for (const auto& [label, sp] : std::vector<std::pair<const char*, std::vector<int>>>{{"A1", {0}}, {"A2", {0}}, {"A2", {1}}, {"A3", {1}}, {"B2", {0}}}) {
    auto ring = ring_for(label, sp);
    const std::size_t n = ring->context().size();
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        for (const auto& [k, c] : ring->product(u, v).terms)
          for (int e : k.e) EXPECT_EQ(e, 0) << label;
        EXPECT_EQ(ring->product(u, v).at_tau_zero(), ring->table().product(u, v));
      }
  }
}

TEST(DeformedRing, ProductExamples) {
  auto c = ring_for("G2", {1});
  const auto& cc = c->context();
  EXPECT_EQ(deformed_product(*c, class_of_codim(cc, 1), class_of_codim(cc, 2)), delem(cc, {{2, 1, 0, 3}, {1, 1, 1, 0}}));

  auto b = ring_for("G2", {0});
  const auto& bc = b->context();
  EXPECT_EQ(deformed_product(*b, class_of_codim(bc, 2), class_of_codim(bc, 4)), delem(bc, {{2, 0, 1, 1}}));
  for (std::size_t u = 0; u < bc.size(); ++u) EXPECT_EQ(b->product(bc.longest_rep(), u), b->basis(u));
  EXPECT_THROW(deformed_product(*b, 6, 0), InputError);
}

TEST(DeformedRing, SpecializationCoherence) {
  for (const auto& [label, sp] : spaces) {
    auto ring = ring_for(label, sp);
    const std::size_t n = ring->context().size();
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        const auto& x = ring->product(u, v);
        EXPECT_EQ(x.at_tau_one(), ring->table().product(u, v));
        QRingElement zero;
        for (const auto& [k, c] : x.terms)
          if (std::all_of(k.e.begin(), k.e.end(), [](int e) { return e == 0; })) zero.add(QKey{k.cls, k.d}, c);
        EXPECT_EQ(x.at_tau_zero(), zero);
      }
  }
}

TEST(DeformedRing, CommutativeAndAssociative) {
  for (const auto& [label, sp] : std::vector<std::pair<const char*, std::vector<int>>>{{"B2", {1}}, {"G2", {0}}, {"G2", {1}}, {"A2", {0}}, {"A3", {1}}, {"G2", {0, 1}}}) {
    auto ring = ring_for(label, sp);
    const std::size_t n = ring->context().size();
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        EXPECT_EQ(ring->product(u, v), ring->product(v, u));
        for (std::size_t w = 0; w < n; ++w) {
          EXPECT_EQ(ring->multiply(ring->product(u, v), ring->basis(w)), ring->multiply(ring->basis(u), ring->product(v, w))) << label;
          QRingElement su = ring->table().basis(u), sv = ring->table().basis(v), sw = ring->table().basis(w);
          EXPECT_EQ(ring->multiply_at_zero(ring->multiply_at_zero(su, sv), sw), ring->multiply_at_zero(su, ring->multiply_at_zero(sv, sw)));
        }
      }
  }
}

// A_i measures the failure of the multigrading, so tau-free terms are exactly the graded ones.
TEST(DeformedRing, MultigradeDefect) {
  for (const auto& [label, sp] : spaces) {
    auto ring = ring_for(label, sp);
    const auto& ctx = ring->context();
    const Degree zero(sp.size(), 0);
    for (std::size_t u = 0; u < ctx.size(); ++u)
      for (std::size_t v = 0; v < ctx.size(); ++v) {
        auto gu = ring->multigrade(QKey{u, zero}), gv = ring->multigrade(QKey{v, zero});
        for (const auto& [k, c] : ring->product(u, v).terms) {
          auto gk = ring->multigrade(QKey{k.cls, k.d});
          for (std::size_t j = 0; j < sp.size(); ++j) EXPECT_EQ(gk[j] - gu[j] - gv[j], k.e[j]) << ctx.label();
        }
      }
  }
}

TEST(DeformedCoeff, Examples) {
  auto b2 = ring_for("B2", {1});
  const auto& bc = b2->context();
  const std::size_t a1 = class_of_codim(bc, 1), a2 = class_of_codim(bc, 2);
  EXPECT_EQ(deformed_coeff_tuple(*b2, {a1, a1, bc.dual(a2)}, {0}), 0);
  EXPECT_FALSE(is_levi_movable(*b2, {a1, a1, bc.dual(a2)}, {0}));

  auto g2 = ring_for("G2", {1});
  const auto& gc = g2->context();
  const std::size_t c1 = class_of_codim(gc, 1), c2 = class_of_codim(gc, 2);
  EXPECT_EQ(deformed_coeff_tuple(*g2, {c1, c1, gc.dual(c2)}, {0}), 3);
  EXPECT_TRUE(is_levi_movable(*g2, {c1, c1, gc.dual(c2)}, {0}));

  auto a1r = ring_for("A1", {0});
  const std::size_t pt = class_of_codim(a1r->context(), 1);
  EXPECT_EQ(deformed_coeff_tuple(*a1r, {pt, pt, pt}, {1}), 1);
}

template <class F>
void for_each_graded_tuple(const ParabolicContext& ctx, int arity, F f) {
  std::vector<std::size_t> tuple(arity, 0);
  for (;;) {
    int total = 0;
    for (auto u : tuple) total += ctx.codim(u);
    const int excess = total - ctx.dimension();
    if (excess >= 0 && excess % ctx.q_degree(0) == 0) f(tuple, Degree{excess / ctx.q_degree(0)});
    int k = 0;
    while (k < arity && tuple[k] == ctx.size() - 1) tuple[k++] = 0;
    if (k == arity) break;
    ++tuple[k];
  }
}

TEST(DeformedCoeff, PermutationInvariantAndBelowGw) {
  for (const auto& [label, sp] : std::vector<std::pair<const char*, std::vector<int>>>{{"B2", {1}}, {"G2", {0}}, {"G2", {1}}}) {
    auto ring = ring_for(label, sp);
    const auto& ctx = ring->context();
    for (int arity : {3, 4})
      for_each_graded_tuple(ctx, arity, [&](const std::vector<std::size_t>& tuple, const Degree& d) {
        const Integer base = deformed_coeff_tuple(*ring, tuple, d);
        EXPECT_GE(base, 0);
        EXPECT_LE(base, gw_invariant(ring->table(), tuple, d));
        auto perm = tuple;
        std::sort(perm.begin(), perm.end());
        do {
          EXPECT_EQ(deformed_coeff_tuple(*ring, perm, d), base) << label;
        } while (std::next_permutation(perm.begin(), perm.end()));
      });
  }
}

TEST(LeviMovable, CrossChecksAndCominusculeTuples) {
  for (const auto& [label, sp] : std::vector<std::pair<const char*, std::vector<int>>>{{"B2", {0}}, {"B2", {1}}, {"G2", {0}}, {"G2", {1}}, {"A3", {1}}}) {
    auto ring = ring_for(label, sp);
    const auto& ctx = ring->context();
    const bool cominuscule = std::string(label) == "A3" || (std::string(label) == "B2" && sp[0] == 0);
    for (int arity : {3, 4, 5})
      for_each_graded_tuple(ctx, arity, [&](const std::vector<std::size_t>& tuple, const Degree& d) {
        const bool movable = is_levi_movable(*ring, tuple, d);
        if (!cominuscule) return;
        EXPECT_EQ(movable, gw_invariant(ring->table(), tuple, d) != 0) << label;
        EXPECT_EQ(deformed_coeff_tuple(*ring, tuple, d), gw_invariant(ring->table(), tuple, d));
      });
  }
}

std::string normalize(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  const std::regex spaces("[ \t]+");
  while (std::getline(in, line)) {
    line = std::regex_replace(line, spaces, " ");
    while (!line.empty() && line.back() == ' ') line.pop_back();
    if (!line.empty()) out += line + "\n";
  }
  return out;
}

std::string fixture(const std::string& name) {
  std::ifstream in(std::string(QLEVI_FIXTURE_DIR) + "/" + name);
  EXPECT_TRUE(in.good()) << name;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(RenderTable, GoldenFiles) {
  EXPECT_EQ(normalize(render_table(*ring_for("B2", {1}), {TableFormat::text, 'a'})), normalize(fixture("B2_P2.txt")));
  EXPECT_EQ(normalize(render_table(*ring_for("G2", {0}), {TableFormat::text, 'b'})), normalize(fixture("G2_P1.txt")));
  EXPECT_EQ(normalize(render_table(*ring_for("G2", {1}), {TableFormat::text, 'c'})), normalize(fixture("G2_P2.txt")));
}

TEST(RenderTable, Json) {
  auto j = nlohmann::json::parse(render_table(*ring_for("G2", {1}), {TableFormat::json, 'c'}));
  EXPECT_EQ(j["type"], "G");
  EXPECT_EQ(j["parabolic"], 2);
  EXPECT_EQ(j["classes"].size(), 6u);
  EXPECT_EQ(j["entries"].size(), 21u);
  const auto& last = j["entries"].back();
  EXPECT_EQ(last["row"], "c5");
  EXPECT_EQ(last["terms"][0], (nlohmann::json{{"coeff", 2}, {"tau", 1}, {"q", 2}, {"class", "c4"}}));
}

TEST(RenderTable, RejectsNonMaximal) {
  EXPECT_THROW(render_table(*ring_for("B2", {0, 1})), InputError);
}

TEST(RenderTable, RepeatedCodimensionsGetSuffixes) {
  std::string text = render_table(*ring_for("A3", {1}));
  EXPECT_NE(text.find("c2_1"), std::string::npos);
  EXPECT_NE(text.find("c2_2"), std::string::npos);
}

}  // namespace
}  // namespace qlevi::test
