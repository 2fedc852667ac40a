#include "hermiwitt/sampling.hpp"

#include "hermiwitt/errors.hpp"

namespace hermiwitt {

long Sampler::uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

mpz_class Sampler::integer_mod_pN() {
  mpz_class acc = 0;
  const long p = ctx_->prime();
  for (int i = 0; i < ctx_->precision(); ++i) acc = acc * p + uniform(0, p - 1);
  return acc;
}

Padic Sampler::unit() {
  mpz_class u = integer_mod_pN() * ctx_->prime() + uniform(1, ctx_->prime() - 1);
  return Padic(*ctx_, u);
}

Padic Sampler::element(int vmin, int vmax) { return unit().shift(static_cast<int>(uniform(vmin, vmax))); }

Padic Sampler::maybe_zero(int vmin, int vmax) {
  if (uniform(0, 3) == 0) return Padic(*ctx_, 0);
  return element(vmin, vmax);
}

QuadElem Sampler::l_element(int vmin, int vmax) {
  const auto& L = ctx_->unramified();
  const int v = static_cast<int>(uniform(vmin, vmax));
  switch (uniform(0, 2)) {
    case 0: return QuadElem(L, unit().shift(v), Padic(*ctx_, 0));
    case 1: return QuadElem(L, Padic(*ctx_, 0), unit().shift(v));
    default: {
      // at least one coordinate of exact valuation v
      Padic a = unit().shift(v);
      Padic b = element(v, v + 2);
      if (coin()) std::swap(a, b);
      return QuadElem(L, a, b);
    }
  }
}

QuadElem Sampler::l_maybe_zero(int vmin, int vmax) {
  if (uniform(0, 3) == 0) return QuadElem(ctx_->unramified(), 0);
  return l_element(vmin, vmax);
}

Quat Sampler::quat(int vmin, int vmax) {
  for (;;) {
    Quat q(l_maybe_zero(vmin, vmax), l_maybe_zero(vmin, vmax));
    if (!q.is_zero()) return q;
  }
}

Quat Sampler::symmetric(int vmin, int vmax) {
  const auto& L = ctx_->unramified();
  for (;;) {
    Quat q(l_maybe_zero(vmin, vmax), QuadElem::from_base(L, maybe_zero(vmin, vmax)));
    if (!q.is_zero()) return q;
  }
}

Quat Sampler::skew(int vmin, int vmax) {
  const auto& L = ctx_->unramified();
  return Quat(QuadElem(L, 0), QuadElem(L, Padic(*ctx_, 0), element(vmin, vmax)));
}

DMatrix Sampler::matrix(std::size_t rows, std::size_t cols, int vmin, int vmax) {
  DMatrix m(rows, cols, Quat::zero(*ctx_));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = coin() ? quat(vmin, vmax) : Quat::zero(*ctx_);
  return m;
}

DMatrix Sampler::invertible(std::size_t n) {
  for (;;) {
    DMatrix m = matrix(n, n, 0, 1);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i) + quat(0, 0);
    try {
      (void)inverse(m);
      return m;
    } catch (const Error&) {
    }
  }
}

HermitianForm Sampler::form(int epsilon, std::size_t n) {
  const Padic eps(*ctx_, epsilon);
  for (;;) {
    DMatrix a = matrix(n, n, 0, 2);
    HermitianForm h = make_form(epsilon, a + rho_transpose(a).right_scale(eps));
    // occasionally plant a hyperbolic block
    try {
      (void)inverse(h.gram);
      (void)diagonalize(h);
      return h;
    } catch (const Error&) {
    }
  }
}

DMatrix Sampler::skew_adjoint(const HermitianForm& h) {
  // S with rho(S)^T = -eps S; then X = M^{-1} S satisfies rho(X)^T M = -M X
  const Padic meps(*ctx_, -h.epsilon);
  DMatrix a = matrix(h.rank(), h.rank(), 0, 2);
  DMatrix s = a + rho_transpose(a).right_scale(meps);
  DMatrix minv = inverse(h.gram);
  DMatrix x = minv * s;
  int low = 1, prec = ctx_->precision();
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) {
      if (!x(i, j).is_zero()) low = std::min(low, x(i, j).nu_D());
      prec = std::min(prec, x(i, j).precision());
    }
  // p^k pushes nu_D to >= 1; the extra factor buys back what M^{-1} lost, so
  // X is known to full precision
  const int k = (low < 1 ? (1 - low + 1) / 2 : 0) + (ctx_->precision() - prec);
  if (k > 0) x = minv * s.right_scale(Padic::p_power(*ctx_, k));
  return x;
}

DMatrix Sampler::vector(std::size_t n, int vmin, int vmax) {
  DMatrix v(n, 1, Quat::zero(*ctx_));
  for (std::size_t i = 0; i < n; ++i) v(i, 0) = quat(vmin, vmax);
  return v;
}

QuadElem Sampler::e_element(const QuadFieldPtr& E, int vmin, int vmax) {
  return QuadElem(E, maybe_zero(vmin, vmax), maybe_zero(vmin, vmax));
}

EMatrix Sampler::e_invertible(const QuadFieldPtr& E, std::size_t n) {
  for (;;) {
    EMatrix m(n, n, QuadElem(E, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = e_element(E, 0, 2);
    if (!determinant(m).is_zero()) return m;
  }
}

EForm Sampler::e_form(const QuadFieldPtr& E, int epsilon, std::size_t n) {
  std::vector<QuadElem> d;
  for (std::size_t i = 0; i < n; ++i) d.push_back(QuadElem::from_base(E, element(0, 2)));
  EForm h = e_diagonal(E, 1, d);
  if (epsilon == -1) h = EForm{-1, h.gram.right_scale(QuadElem::generator(E))};
  return e_congruence(h, e_invertible(E, n));
}

EMatrix Sampler::e_line(const SplitData& sd) {
  for (;;) {
    EMatrix x(2, 1, QuadElem(sd.field(), 0));
    x(0, 0) = e_element(sd.field(), 0, 2);
    x(1, 0) = e_element(sd.field(), 0, 2);
    if (!sd.line_form(x, x).is_zero()) return x;
  }
}

}  // namespace hermiwitt
