#include <gtest/gtest.h>

#include <set>

#include "hermiwitt/errors.hpp"
#include "hermiwitt/sampling.hpp"
#include "hermiwitt/wittclass.hpp"

using namespace hermiwitt;

namespace {

const FieldContext& F(long p, int n = 32) { return FieldContext::get(p, n); }
WittClassD C(std::vector<std::string> names, int eps = 1) { return WittClassD::from_names(eps, names); }
Quat alpha(const FieldContext& c) { return Quat::from_L(find_nonsquare_unit_L(c)); }

}  // namespace

TEST(WittClass, Names) {
  EXPECT_EQ(C({"g1", "gpi"}).names(), (std::vector<std::string>{"g1", "gpi"}));
  EXPECT_EQ(C({"gskew"}, -1).bits(), 1u);
  EXPECT_THROW(C({"gskew"}), InvalidParameter);
  EXPECT_THROW(C({"g1"}, -1), InvalidParameter);
  EXPECT_EQ(C({"g1", "g1"}), WittClassD::hyperbolic(1));
}

TEST(WittClass, ClassifyExamples) {
  for (long p : {3L, 5L, 7L}) {
    const auto& c = F(p);
    EXPECT_EQ(classify_line(Quat::one(c), 1), C({"g1"}));
    EXPECT_EQ(classify_line(Quat::from_F(Padic(c, p)), 1), C({"g1"}));
    EXPECT_EQ(classify_line(Quat::pi(c), 1), C({"gpi"}));
    EXPECT_EQ(classify_line(alpha(c), 1), C({"galpha"}));
    EXPECT_EQ(classify_line(Quat::u(c) * Quat::pi(c), -1), C({"gskew"}, -1));
    // alpha + p pi_D: symmetric and congruent to alpha
    Quat a2 = alpha(c) + Quat::pi(c) * Padic(c, p);
    EXPECT_EQ(classify_line(a2, 1), C({"galpha"}));
    EXPECT_TRUE(equivalence_oracle(alpha(c), a2));
  }
  const auto& c = F(5);
  EXPECT_THROW(classify_line(Quat::zero(c), 1), IndistinguishableZero);
  EXPECT_THROW(classify_line(Quat::one(c), -1), WrongSymmetryType);
  EXPECT_THROW(classify_line(Quat::u(c) * Quat::pi(c), 1), WrongSymmetryType);
}

// alpha (1 + p pi_D) is not rho-symmetric: rho reverses the product
TEST(WittClass, UnitTimesPerturbationIsNotSymmetric) {
  const auto& c = F(5);
  Quat x = alpha(c) * (Quat::one(c) + Quat::pi(c) * Padic(c, 5));
  EXPECT_EQ(symmetry_type(x), SymmetryType::neither);
  Sampler s(c, 4);
  for (int i = 0; i < 50; ++i) {
    Quat y = s.quat(0, 1);
    EXPECT_EQ(classify_line(y.rho() * alpha(c) * y, 1), C({"galpha"}));
  }
}

TEST(WittClass, GroupLaw) {
  EXPECT_EQ(C({"g1"}) + C({"g1"}), WittClassD::hyperbolic(1));
  EXPECT_EQ(C({"g1"}) + C({"galpha"}), C({"g1", "galpha"}));
  EXPECT_EQ(WittClassD::hyperbolic(1) + C({"gpi"}), C({"gpi"}));
  EXPECT_THROW(C({"g1"}) + C({"gskew"}, -1), EpsilonMismatch);
}

TEST(WittClass, ClassOfForm) {
  const auto& c = F(7);
  auto form = [&](std::vector<Quat> d) { return diagonal_form(DiagonalForm{1, d}); };
  EXPECT_TRUE(class_of_form(form({Quat::one(c), -Quat::one(c)})).is_hyperbolic());
  EXPECT_EQ(class_of_form(form({Quat::one(c), alpha(c), Quat::pi(c)})), C({"g1", "galpha", "gpi"}));
  EXPECT_TRUE(class_of_form(hyperbolic_plane(c, 1)).is_hyperbolic());
  EXPECT_TRUE(class_of_form(hyperbolic_plane(c, -1)).is_hyperbolic());
}

TEST(WittClass, IsotropyExamples) {
  const auto& c = F(5);
  EXPECT_TRUE(is_isotropic(DiagonalForm{1, {Quat::one(c), -Quat::one(c)}}));
  EXPECT_FALSE(is_isotropic(DiagonalForm{1, {Quat::one(c), Quat::pi(c)}}));
  EXPECT_FALSE(is_isotropic(DiagonalForm{1, {Quat::one(c)}}));
  Quat upi = Quat::u(c) * Quat::pi(c);
  EXPECT_TRUE(is_isotropic(DiagonalForm{-1, {upi, upi * Padic(c, 3)}}));
}

TEST(WittClass, AnisotropicTable) {
  for (long p : {3L, 5L, 7L, 13L}) {
    const auto& c = F(p);
    auto t = anisotropic_table(c, 1);
    // {}, g1, galpha, g1+galpha, gpi, g1+gpi, galpha+gpi, all three
    std::array<int, 8> want{0, 1, 1, 2, 1, 2, 2, 3};
    EXPECT_EQ(t, want) << p;
    EXPECT_EQ(anisotropic_table(c, -1)[0], 0);
    EXPECT_EQ(anisotropic_table(c, -1)[1], 1);
    EXPECT_EQ(anisotropic_dim(c, C({"g1"})), 1);
    for (unsigned b = 0; b < 8; ++b) {
      auto rep = anisotropic_representative(c, WittClassD(1, b));
      EXPECT_EQ(static_cast<int>(rep.rank()), t[b]);
      EXPECT_EQ(class_of_diagonal(rep), WittClassD(1, b));
    }
  }
}

TEST(WittClass, MinusOneIsTrivialClass) {
  // derived, not assumed: <-1> = <1> because -1 is a square in L
  for (long p : {3L, 5L, 7L, 11L}) EXPECT_EQ(classify_line(-Quat::one(F(p)), 1), C({"g1"}));
}

TEST(WittClass, EquivalenceOracleExamples) {
  const auto& c = F(5);
  Sampler s(c, 8);
  for (int i = 0; i < 50; ++i) {
    Padic x = s.element(-2, 2);
    EXPECT_TRUE(equivalence_oracle(Quat::one(c), Quat::from_F(x * x)));
  }
  EXPECT_FALSE(equivalence_oracle(Quat::one(c), Quat::pi(c)));
  for (int i = 0; i < 200; ++i) {
    Quat d = s.symmetric(-1, 2), y = s.quat(-1, 2);
    EXPECT_TRUE(equivalence_oracle(d, y.rho() * d * y));
    Quat k = s.skew(-1, 2);
    EXPECT_TRUE(equivalence_oracle(k, y.rho() * k * y));
  }
  EXPECT_THROW(equivalence_oracle(Quat::one(c), Quat::u(c) * Quat::pi(c)), WrongSymmetryType);
}

class WittProperties : public ::testing::TestWithParam<long> {};

TEST_P(WittProperties, Closure) {
  const auto& c = F(GetParam());
  Sampler s(c, 2000 + static_cast<unsigned>(GetParam()));
  std::set<WittClassD> seen, skew;
  for (int i = 0; i < 500; ++i) {
    seen.insert(classify_line(s.symmetric(-3, 3), 1));
    skew.insert(classify_line(s.skew(-3, 3), -1));
  }
  EXPECT_EQ(seen.size(), 3u);
  std::set<WittClassD> group{WittClassD::hyperbolic(1)};
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& a : std::set<WittClassD>(group))
      for (const auto& b : seen) grew |= group.insert(a + b).second;
  }
  EXPECT_EQ(group.size(), 8u);
  EXPECT_EQ(skew.size(), 1u);
  skew.insert(WittClassD::hyperbolic(-1));
  EXPECT_EQ(skew.size(), 2u);
}

TEST_P(WittProperties, ScalingAndCongruence) {
  const auto& c = F(GetParam());
  Sampler s(c, 31);
  for (int i = 0; i < 300; ++i) {
    int eps = i % 2 ? 1 : -1;
    Quat d = s.line(eps, -2, 3);
    Padic x = s.element(-3, 3);
    EXPECT_EQ(classify_line(d, eps), classify_line(d * x, eps));
    if (eps == 1) {
      // d' = d + t with t symmetric and nu_D(t) > nu_D(d), i.e. d' = d(1 + d^{-1} t)
      Quat t = s.symmetric(0, 2).shift((d.nu_D() + 2) / 2 + 1);
      Quat d2 = d + t;
      ASSERT_GE((d.inverse() * t).nu_D(), 1);
      EXPECT_TRUE(congruent_mod_nuD(d, d2));
      EXPECT_EQ(classify_line(d, 1), classify_line(d2, 1));
    }
  }
}

TEST_P(WittProperties, OracleAgreement) {
  const auto& c = F(GetParam());
  Sampler s(c, 901);
  for (int i = 0; i < 300; ++i) {
    Quat d = s.symmetric(-2, 2), d2 = s.symmetric(-2, 2);
    bool same = classify_line(d, 1) == classify_line(d2, 1);
    EXPECT_EQ(same, is_isotropic(DiagonalForm{1, {d, -d2}}));
    EXPECT_EQ(same, equivalence_oracle(d, d2));
  }
}

TEST_P(WittProperties, ClassOfFormCongruenceInvariant) {
  const auto& c = F(GetParam());
  Sampler s(c, 77);
  for (int i = 0; i < 30; ++i) {
    int eps = i % 2 ? 1 : -1;
    HermitianForm h = s.form(eps, static_cast<std::size_t>(s.uniform(1, 3)));
    EXPECT_EQ(class_of_form(h), class_of_form(congruence(h, s.invertible(h.rank()))));
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, WittProperties, ::testing::Values(3L, 5L, 7L, 13L));
