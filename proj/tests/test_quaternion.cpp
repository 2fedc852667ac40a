#include <gtest/gtest.h>

#include "hermiwitt/errors.hpp"
#include "hermiwitt/quaternion.hpp"
#include "hermiwitt/sampling.hpp"

using namespace hermiwitt;

namespace {
const FieldContext& F(long p, int n = 32) { return FieldContext::get(p, n); }
}  // namespace

TEST(Quat, MultiplicationExamples) {
  const auto& c = F(5);
  Quat pi = Quat::pi(c), u = Quat::u(c);
  EXPECT_EQ(pi * pi, Quat::from_F(Padic(c, 5)));
  EXPECT_EQ(u * pi, Quat(QuadElem(c.unramified(), 0), QuadElem::generator(c.unramified())));
  EXPECT_EQ(pi * u, -(u * pi));
}

TEST(Quat, RhoExamples) {
  const auto& c = F(7);
  EXPECT_EQ(Quat::pi(c).rho(), Quat::pi(c));
  EXPECT_EQ(Quat::u(c).rho(), Quat::u(c));
  Quat upi = Quat::u(c) * Quat::pi(c);
  EXPECT_EQ(upi.rho(), -upi);
}

TEST(Quat, TrdNrdExamples) {
  const auto& c = F(5);
  EXPECT_EQ(Quat::one(c).trd(), Padic(c, 2));
  EXPECT_EQ(Quat::one(c).nrd(), Padic(c, 1));
  EXPECT_TRUE(Quat::pi(c).trd().is_zero());
  EXPECT_EQ(Quat::pi(c).nrd(), Padic(c, -5));
  EXPECT_TRUE(Quat::u(c).trd().is_zero());
  EXPECT_EQ(Quat::u(c).nrd(), Padic(c, -c.nonresidue()));
}

TEST(Quat, NuDExamples) {
  const auto& c = F(5);
  EXPECT_EQ(Quat::pi(c).nu_D(), 1);
  EXPECT_EQ(Quat::from_F(Padic(c, 5)).nu_D(), 2);
  EXPECT_EQ((Quat::u(c) + Quat::pi(c)).nu_D(), 0);
  EXPECT_THROW(Quat::zero(c).nu_D(), IndistinguishableZero);
}

TEST(Quat, SymmetryTypeExamples) {
  const auto& c = F(5);
  Quat one = Quat::one(c), pi = Quat::pi(c), u = Quat::u(c);
  EXPECT_EQ(symmetry_type(one + pi * Padic(c, 3)), SymmetryType::symmetric);
  EXPECT_EQ(symmetry_type(u * pi), SymmetryType::skew);
  EXPECT_EQ(symmetry_type(u + u * pi), SymmetryType::neither);
}

TEST(Quat, CongruenceExamples) {
  const auto& c = F(5);
  Quat one = Quat::one(c), pi = Quat::pi(c);
  Quat piF = Quat::from_F(Padic(c, 5));
  EXPECT_TRUE(congruent_mod_nuD(one, one + pi));
  EXPECT_TRUE(congruent_mod_nuD(one, one + piF * pi));
  EXPECT_FALSE(congruent_mod_nuD(pi, piF));
  EXPECT_THROW(congruent_mod_nuD(one, Quat::zero(c)), IndistinguishableZero);
  // a vanishing difference still certifies when the window lies above nu_D(d)
  EXPECT_TRUE(congruent_mod_nuD(one, one));
}

TEST(Quat, CoordinatesRoundTrip) {
  Sampler s(F(7), 3);
  for (int i = 0; i < 50; ++i) {
    Quat x = s.quat(-2, 3);
    EXPECT_EQ(Quat::from_coords(x.coords()), x);
  }
}

class QuatProperties : public ::testing::TestWithParam<long> {};

TEST_P(QuatProperties, RhoAndNorms) {
  const auto& c = F(GetParam());
  Sampler s(c, 100 + static_cast<unsigned>(GetParam()));
  for (int i = 0; i < 1000; ++i) {
    Quat x = s.quat(-2, 3), y = s.quat(-2, 3);
    EXPECT_EQ((x * y).rho(), y.rho() * x.rho());
    EXPECT_EQ(x.rho().rho(), x);
    EXPECT_EQ((x * y).nrd(), x.nrd() * y.nrd());
    EXPECT_EQ(x.trd(), x.rho().trd());
    EXPECT_EQ(x.rho().nrd(), x.nrd());
    EXPECT_EQ(x.nu_D(), x.nrd().valuation());
    EXPECT_EQ((x * y).nu_D(), x.nu_D() + y.nu_D());
    EXPECT_EQ(x * x.inverse(), Quat::one(c));
    // conj is the canonical involution: x conj(x) = nrd(x)
    EXPECT_EQ(x * x.conj(), Quat::from_F(x.nrd()));
  }
}

TEST_P(QuatProperties, Associative) {
  const auto& c = F(GetParam());
  Sampler s(c, 7);
  for (int i = 0; i < 200; ++i) {
    Quat x = s.quat(0, 2), y = s.quat(0, 2), z = s.quat(0, 2);
    EXPECT_EQ((x * y) * z, x * (y * z));
  }
}

TEST_P(QuatProperties, SymmetricSkewSplit) {
  const auto& c = F(GetParam());
  Sampler s(c, 17);
  const Padic half = Padic::rational(c, 1, 2);
  for (int i = 0; i < 300; ++i) {
    Quat x = s.quat(-1, 2);
    Quat sym = (x + x.rho()) * half, sk = (x - x.rho()) * half;
    EXPECT_EQ(sym + sk, x);
    if (!sym.is_zero()) EXPECT_EQ(symmetry_type(sym), SymmetryType::symmetric);
    if (!sk.is_zero()) EXPECT_EQ(symmetry_type(sk), SymmetryType::skew);
  }
  EXPECT_EQ(symmetry_type(Quat::one(c)), SymmetryType::symmetric);
  EXPECT_EQ(symmetry_type(Quat::u(c)), SymmetryType::symmetric);
  EXPECT_EQ(symmetry_type(Quat::pi(c)), SymmetryType::symmetric);
  EXPECT_EQ(symmetry_type(Quat::u(c) * Quat::pi(c)), SymmetryType::skew);
}

INSTANTIATE_TEST_SUITE_P(Primes, QuatProperties, ::testing::Values(3L, 5L, 7L, 13L));
