#include <gtest/gtest.h>

#include <random>

#include "hermiwitt/endo.hpp"
#include "hermiwitt/errors.hpp"

using namespace hermiwitt;

namespace {

EndoClassToken simple(const std::string& id, int degree, std::vector<std::string> odd = {"g1"}) {
  EndoClassToken t;
  t.id = id;
  t.kind = TokenKind::simple_nonnull;
  t.degree = degree;
  t.min_tr = "m0";
  t.odd_trace = std::move(odd);
  return t;
}

EndoClassToken null_token(const std::string& id = "z") {
  EndoClassToken t;
  t.id = id;
  t.kind = TokenKind::simple_null;
  return t;
}

EndoClassToken pair_token(const std::string& id, int degree) {
  EndoClassToken t;
  t.id = id;
  t.kind = TokenKind::nonsimple_pair;
  t.degree = degree;
  return t;
}

WittClassD C(std::vector<std::string> names, int eps = 1) { return WittClassD::from_names(eps, names); }


}  // namespace

TEST(Endo, NormContainment) {
  EXPECT_TRUE(norm_containment(0, 0));
  EXPECT_FALSE(norm_containment(0, 1));
  EXPECT_FALSE(norm_containment(1, 0));
  EXPECT_FALSE(norm_containment(1, 1));
}

TEST(Endo, WittTypeEquivExamples) {
  EndoClassToken a = simple("a", 2, {"g1"}), b = simple("b", 2, {"galpha"});
  EXPECT_TRUE(witt_type_equiv({a, Tower::hyp()}, {b, Tower::hyp()}, 1));
  Tower t = Tower::null(C({"g1", "gpi"}));
  EXPECT_TRUE(witt_type_equiv({std::nullopt, t}, {std::nullopt, t}, 1));
  EXPECT_FALSE(witt_type_equiv({std::nullopt, t}, {std::nullopt, Tower::null(C({"gpi"}))}, 1));
  // unequal trace classes
  EXPECT_FALSE(witt_type_equiv({a, Tower::simple(1, 0)}, {b, Tower::simple(1, 0)}, 1));
  EXPECT_TRUE(witt_type_equiv({a, Tower::simple(1, 0)}, {simple("a2", 4, {"g1"}), Tower::simple(1, 0)}, 1));
  EXPECT_FALSE(witt_type_equiv({a, Tower::simple(1, 0)}, {a, Tower::simple(1, 1)}, 1));
  // conditions (A) and (B)
  EndoClassToken other = simple("c", 2);
  other.min_tr = "m1";
  EXPECT_THROW(witt_type_equiv({a, Tower::simple(1, 0)}, {other, Tower::simple(1, 0)}, 1), IncomparableTokens);
  EndoClassToken odd = simple("d", 2);
  odd.e_parity = 1;
  EXPECT_THROW(witt_type_equiv({a, Tower::simple(1, 0)}, {odd, Tower::simple(1, 0)}, 1), IncomparableTokens);
}

TEST(Endo, WittTypeEquivIsAnEquivalence) {
  std::mt19937_64 rng(4);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<EndoClassToken> toks{simple("a", 2, {"g1"}), simple("b", 2, {"g1"}), simple("c", 4, {"galpha"})};
  auto draw = [&]() -> WittTypeRef {
    int s = uni(0, 4);
    if (s == 4) return {std::nullopt, Tower::null(C({"gpi"}))};
    Tower tw = s == 0 ? Tower::hyp() : s == 1 ? Tower::simple(2, 1) : Tower::simple(1, s - 2);
    return {toks[static_cast<std::size_t>(uni(0, 2))], tw};
  };
  for (int i = 0; i < 500; ++i) {
    WittTypeRef x = draw(), y = draw(), z = draw();
    EXPECT_TRUE(witt_type_equiv(x, x, 1));
    EXPECT_EQ(witt_type_equiv(x, y, 1), witt_type_equiv(y, x, 1));
    if (witt_type_equiv(x, y, 1) && witt_type_equiv(y, z, 1)) EXPECT_TRUE(witt_type_equiv(x, z, 1));
  }
}

TEST(Endo, LiftExamples) {
  EndoParameter fm{1, 0, C({}), {{simple("a", 2), 3, WittType{"a", Tower::simple(1, 0)}}}};
  EXPECT_EQ(lift(fm).at("a"), 7);
  EXPECT_EQ(degree(fm), 14);
  EndoParameter pr{1, 0, C({}), {{pair_token("q", 2), 2, WittType{}}}};
  EXPECT_EQ(lift(pr).at("q"), 2);
  EXPECT_EQ(lift(pr).at("q*"), 2);
  EndoParameter zero{1, 0, C({}), {{simple("a", 2), 0, WittType{}}}};
  EXPECT_EQ(lift(zero).at("a"), 0);
  EXPECT_EQ(degree(EndoParameter{}), 0);
  // additivity over disjoint supports
  EndoParameter both = fm;
  both.support.push_back(pr.support[0]);
  EXPECT_EQ(degree(both), degree(fm) + degree(pr));
  // null class: gcd(1, 2) = 1, so diman counts twice and f1 must be even
  EndoParameter nl{1, 0, C({}), {{null_token(), 2, WittType{std::nullopt, Tower::null(C({"g1", "gpi"}))}}}};
  EXPECT_EQ(lift(nl).at("z"), 8);
  nl.support[0].f1 = 1;
  EXPECT_THROW(lift(nl), InvalidParameter);
}

TEST(Endo, WTDExamples) {
  EXPECT_TRUE(WT_D(SupportEntry{simple("a", 2), 1, WittType{}}, 1).is_hyperbolic());
  SupportEntry s0{simple("a", 2, {"gpi"}), 1, WittType{"a", Tower::simple(1, 0)}};
  SupportEntry s1 = s0;
  s1.f2.tower.selector = 1;
  EXPECT_EQ(WT_D(s0, 1), WT_D(s1, 1));
  EXPECT_EQ(WT_D(s0, 1), C({"gpi"}));
  EXPECT_TRUE(WT_D(SupportEntry{simple("a", 2), 1, WittType{"a", Tower::simple(2, 1)}}, 1).is_hyperbolic());
}

TEST(Endo, ValidateExamples) {
  EndoParameter fm{1, 7, C({"g1"}), {{simple("a", 2, {"g1"}), 3, WittType{"a", Tower::simple(1, 0)}}}};
  EXPECT_TRUE(validate(fm).ok);
  fm.m = 8;
  auto v = validate(fm);
  EXPECT_FALSE(v.ok);
  EXPECT_EQ(v.diagnostics, std::vector<std::string>{"degree"});
  fm.m = 7;
  fm.h_class = C({});
  v = validate(fm);
  EXPECT_EQ(v.diagnostics, std::vector<std::string>{"witt_sum"});
  fm.support[0].f2.tower = Tower::simple(2, 0);
  EXPECT_FALSE(validate(fm).ok);
}

TEST(Endo, EnumerateExamples) {
  // two simple fixed classes, no null: 2^2
  LiftInput two{1, 3, C({}), {{simple("a", 2), 2}, {simple("b", 2), 1}}};
  two.h_class = C({"g1"});
  auto out = enumerate(two);
  EXPECT_EQ(out.size(), 4u);
  for (const auto& fm : out) {
    EXPECT_TRUE(validate(fm).ok);
    EXPECT_EQ(lift(fm).at("a"), 2);
    EXPECT_EQ(lift(fm).at("b"), 1);
  }
  // lexicographic: token a varies slowest
  EXPECT_TRUE(out[0].support[0].f2.tower.hyperbolic);
  EXPECT_EQ(out[0].support[1].f2.tower.selector, 0);
  EXPECT_EQ(out[1].support[1].f2.tower.selector, 1);
  // three fixed classes, one of them null: 2^2
  LiftInput three{1, 5, C({"gpi"}), {{simple("a", 2), 1}, {simple("b", 2), 2}, {null_token(), 4}}};
  EXPECT_EQ(count(three), 4);
  EXPECT_EQ(count_closed_form(three), 4);
  // the null tower is pinned to gpi - Tr(a) = g1 + gpi
  for (const auto& fm : enumerate(three)) EXPECT_EQ(*fm.support[2].f2.tower.null_class, C({"g1", "gpi"}));
  LiftInput pairs{1, 2, C({}), {{pair_token("q", 2), 1}}};
  EXPECT_EQ(count(pairs), 1);
  EXPECT_EQ(count(LiftInput{1, 0, C({}), {}}), 1);
}

TEST(Endo, CountExamples) {
  LiftInput in{1, 3, C({"g1"}), {{simple("a", 2), 1}, {simple("b", 2), 1}, {simple("c", 2), 1}}};
  EXPECT_EQ(count(in), 8);
  LiftInput one{1, 1, C({"g1"}), {{null_token(), 2}}};
  EXPECT_EQ(count(one), 1);
  EXPECT_EQ(count_closed_form(one), 1);
}

TEST(Endo, InfeasibleInputs) {
  LiftInput bad{1, 1, C({"gpi"}), {{simple("a", 2), 1}}};
  EXPECT_THROW(enumerate(bad), InfeasibleLift);
  bad.h_class = C({"g1"});
  bad.m = 2;
  EXPECT_THROW(enumerate(bad), InfeasibleLift);
  // null multiplicity too small for the pinned class
  LiftInput small{1, 1, C({"g1", "gpi"}), {{null_token(), 2}}};
  EXPECT_THROW(enumerate(small), InfeasibleLift);
  EXPECT_THROW(enumerate(LiftInput{1, 1, C({}), {{simple("a", 3), 1}}}), InvalidParameter);
}

TEST(Endo, RandomConfigurations) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    int eps = i % 3 ? 1 : -1;
    EndoParameter fm = random_parameter(rng, eps);
    ASSERT_TRUE(validate(fm).ok) << i;
    LiftInput in = lift_input_of(fm);
    auto all = enumerate(in);
    EXPECT_EQ(static_cast<long>(all.size()), count_closed_form(in)) << i;
    bool found = false;
    for (const auto& g : all) {
      EXPECT_TRUE(validate(g).ok);
      EXPECT_EQ(lift(g), lift(fm));
      found |= g.support.size() == fm.support.size();
    }
    EXPECT_TRUE(found);
    // flipping one selector bit keeps validity
    for (std::size_t k = 0; k < fm.support.size(); ++k) {
      auto& t = fm.support[k].f2.tower;
      if (fm.support[k].token.kind != TokenKind::simple_nonnull || t.hyperbolic || t.diman != 1) continue;
      EndoParameter g = fm;
      g.support[k].f2.tower.selector ^= 1;
      EXPECT_TRUE(validate(g).ok);
    }
  }
}
