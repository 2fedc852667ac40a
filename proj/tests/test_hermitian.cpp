#include <gtest/gtest.h>

#include "hermiwitt/errors.hpp"
#include "hermiwitt/hermitian.hpp"
#include "hermiwitt/sampling.hpp"
#include "hermiwitt/wittclass.hpp"

using namespace hermiwitt;

namespace {

const FieldContext& F(long p, int n = 32) { return FieldContext::get(p, n); }

HermitianForm diag(int eps, std::vector<Quat> d) { return diagonal_form(DiagonalForm{eps, std::move(d)}); }

Quat upi(const FieldContext& c) { return Quat::u(c) * Quat::pi(c); }

DMatrix random_vector(Sampler& s, std::size_t n) {
  DMatrix v(n, 1, Quat::zero(s.context()));
  for (std::size_t i = 0; i < n; ++i) v(i, 0) = s.coin() ? s.quat(-1, 2) : Quat::zero(s.context());
  return v;
}

}  // namespace

TEST(Hermitian, ValidateExamples) {
  const auto& c = F(5);
  EXPECT_TRUE(validate(diag(1, {Quat::one(c)})));
  EXPECT_FALSE(validate(diag(-1, {Quat::one(c)})));
  EXPECT_TRUE(validate(diag(-1, {upi(c)})));
  EXPECT_TRUE(validate(hyperbolic_plane(c, 1)));
  EXPECT_TRUE(validate(hyperbolic_plane(c, -1)));
  EXPECT_THROW(make_form(2, DMatrix::identity(1, Quat::one(c))), InvalidParameter);
}

TEST(Hermitian, DiagonalizeExamples) {
  const auto& c = F(5);
  auto d = diagonalize(diag(1, {Quat::one(c), Quat::pi(c)}));
  EXPECT_EQ(d.transform, DMatrix::identity(2, Quat::one(c)));
  ASSERT_EQ(d.lines.rank(), 2u);
  EXPECT_EQ(d.lines.entries[0], Quat::one(c));
  EXPECT_EQ(d.lines.entries[1], Quat::pi(c));
  for (int eps : {1, -1}) {
    auto hd = diagonalize(hyperbolic_plane(c, eps));
    EXPECT_EQ(hd.hyperbolic_pairs, 1u);
    EXPECT_EQ(hd.lines.rank(), 0u);
    EXPECT_TRUE(class_of_diagonal(hd.lines).is_hyperbolic());
  }
  auto bad = make_form(1, DMatrix(2, 2, Quat::zero(c)));
  EXPECT_THROW(diagonalize(bad), DegenerateForm);
}

TEST(Hermitian, DiagonalizeCertifiesCongruence) {
  for (long p : {3L, 5L, 7L}) {
    const auto& c = F(p);
    Sampler s(c, 40 + static_cast<unsigned>(p));
    for (int eps : {1, -1})
      for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 0; k < 15; ++k) {
          HermitianForm h = s.form(eps, n);
          auto d = diagonalize(h);
          EXPECT_EQ(rho_transpose(d.transform) * h.gram * d.transform, d.reduced);
          EXPECT_EQ(d.lines.rank() + 2 * d.hyperbolic_pairs, n);
          for (const auto& e : d.lines.entries)
            EXPECT_EQ(symmetry_type(e), eps == 1 ? SymmetryType::symmetric : SymmetryType::skew);
        }
  }
}

TEST(Hermitian, CongruentDiagonalKeepsClass) {
  const auto& c = F(7);
  Sampler s(c, 5);
  Quat alpha = Quat::from_L(find_nonsquare_unit_L(c));
  HermitianForm h = diag(1, {Quat::one(c), alpha});
  for (int i = 0; i < 30; ++i) {
    HermitianForm g = congruence(h, s.invertible(2));
    EXPECT_EQ(class_of_form(g), class_of_form(h));
  }
}

TEST(Hermitian, WittDecomposeExamples) {
  const auto& c = F(5);
  auto w = witt_decompose(diag(1, {Quat::one(c), -Quat::one(c)}));
  EXPECT_EQ(w.witt_index, 1u);
  EXPECT_EQ(w.anisotropic.rank(), 0u);
  w = witt_decompose(diag(1, {Quat::one(c)}));
  EXPECT_EQ(w.witt_index, 0u);
  EXPECT_EQ(w.anisotropic.rank(), 1u);
  w = witt_decompose(diag(1, {Quat::one(c), Quat::pi(c)}));
  EXPECT_EQ(w.witt_index, 0u);
  EXPECT_EQ(w.anisotropic.rank(), 2u);
}

TEST(Hermitian, TwistExamples) {
  const auto& c = F(5);
  auto t = twist(diag(1, {Quat::one(c)}), upi(c));
  EXPECT_EQ(t.epsilon, -1);
  EXPECT_EQ(t.gram(0, 0), upi(c));
  EXPECT_TRUE(validate(t));
  auto m = diag(1, {Quat::one(c), Quat::pi(c)});
  EXPECT_EQ(twist(m, Quat::one(c)).gram, m.gram);
  auto t2 = twist(diag(-1, {upi(c)}), upi(c));
  EXPECT_EQ(t2.epsilon, 1);
  EXPECT_EQ(t2.gram(0, 0), upi(c) * upi(c));
  EXPECT_EQ(symmetry_type(t2.gram(0, 0)), SymmetryType::symmetric);
  EXPECT_TRUE(t2.gram(0, 0).b().is_zero());
  EXPECT_TRUE(t2.gram(0, 0).a().in_base());
  // sigma_h(u + pi_D) = -u + pi_D for h = <pi_D>
  EXPECT_THROW(twist(diag(1, {Quat::pi(c)}), Quat::u(c) + Quat::pi(c)), NotSelfAdjoint);
  EXPECT_THROW(twist(m, Quat::zero(c)), Singular);
}

TEST(Hermitian, TwistInvolutive) {
  const auto& c = F(7);
  Sampler s(c, 9);
  Quat g = upi(c);
  for (int i = 0; i < 40; ++i) {
    std::vector<Quat> d;
    for (int k = 0; k < 3; ++k) d.push_back(Quat::from_F(s.element(0, 2)));
    HermitianForm h = diag(1, d);
    HermitianForm back = twist(twist(h, g), g.inverse());
    EXPECT_EQ(back.epsilon, 1);
    EXPECT_EQ(back.gram, h.gram);
    // twisting twice by g is scaling by g^2 in F
    HermitianForm sq = twist(twist(h, g), g);
    EXPECT_EQ(sq.gram, h.gram.right_scale(g * g));
  }
}

TEST(Hermitian, TraceLiftExamples) {
  const auto& c = F(5);
  HermitianForm one = diag(1, {Quat::one(c)});
  LMatrix hl = trace_lift_hL(one);
  EXPECT_EQ(hl.rows(), 2u);
  DMatrix v = DMatrix::identity(1, Quat::one(c));
  auto x = l_coordinates(v);
  EXPECT_EQ(l_bilinear(hl, x, x).trace(), Padic(c, 2));
}

TEST(Hermitian, TraceLiftIdentity) {
  for (long p : {3L, 5L, 11L}) {
    const auto& c = F(p);
    Sampler s(c, 77 + static_cast<unsigned>(p));
    for (int k = 0; k < 10; ++k) {
      int eps = s.coin() ? 1 : -1;
      HermitianForm h = s.form(eps, static_cast<std::size_t>(s.uniform(1, 3)));
      LMatrix hl = trace_lift_hL(h);
      ASSERT_EQ(hl.rows(), 2 * h.rank());
      for (int i = 0; i < 20; ++i) {
        DMatrix v = random_vector(s, h.rank()), w = random_vector(s, h.rank());
        EXPECT_EQ(l_bilinear(hl, l_coordinates(v), l_coordinates(w)).trace(), evaluate(h, v, w).trd());
      }
    }
  }
}

TEST(Hermitian, ReducedNormIsMultiplicative) {
  const auto& c = F(5);
  Sampler s(c, 21);
  for (int i = 0; i < 30; ++i) {
    DMatrix a = s.invertible(2), b = s.invertible(2);
    EXPECT_EQ(reduced_norm(a * b), reduced_norm(a) * reduced_norm(b));
  }
  EXPECT_EQ(reduced_norm(DMatrix::identity(2, Quat::one(c)).right_scale(Quat::pi(c))), Padic(c, 25));
}

TEST(Hermitian, CayleyIsometriesHaveReducedNormOne) {
  for (long p : {3L, 5L}) {
    const auto& c = F(p);
    Sampler s(c, 300 + static_cast<unsigned>(p));
    for (int eps : {1, -1})
      for (std::size_t n = 1; n <= 3; ++n)
        for (int k = 0; k < 10; ++k) {
          HermitianForm h = s.form(eps, n);
          DMatrix g = cayley_isometry(s.skew_adjoint(h), h);
          EXPECT_TRUE(is_isometry(g, h));
          Padic nrd = reduced_norm(g);
          EXPECT_EQ(nrd, Padic(c, 1));
          EXPECT_GE(nrd.precision(), c.precision() - 8);
        }
  }
  const auto& c = F(5);
  HermitianForm h = diag(1, {Quat::one(c)});
  EXPECT_THROW(cayley_isometry(DMatrix::identity(1, Quat::one(c)), h), NotSkewAdjoint);
}

TEST(Hermitian, WittDecomposeIsCongruenceInvariant) {
  for (long p : {3L, 5L, 13L}) {
    const auto& c = F(p);
    Sampler s(c, 500 + static_cast<unsigned>(p));
    for (int k = 0; k < 40; ++k) {
      int eps = k % 2 ? 1 : -1;
      HermitianForm h = s.form(eps, static_cast<std::size_t>(s.uniform(1, 3)));
      auto a = witt_decompose(h);
      auto b = witt_decompose(congruence(h, s.invertible(h.rank())));
      EXPECT_EQ(a.witt_index, b.witt_index);
      EXPECT_EQ(class_of_diagonal(a.anisotropic), class_of_diagonal(b.anisotropic));
      // adding a hyperbolic plane
      auto c2 = witt_decompose(orthogonal_sum(h, hyperbolic_plane(c, eps)));
      EXPECT_EQ(c2.witt_index, a.witt_index + 1);
      EXPECT_EQ(class_of_diagonal(c2.anisotropic), class_of_diagonal(a.anisotropic));
    }
  }
}
