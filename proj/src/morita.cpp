#include "hermiwitt/morita.hpp"

#include "hermiwitt/errors.hpp"

namespace hermiwitt {

namespace {

QuadElem e_zero(const QuadFieldPtr& E) { return QuadElem(E, 0); }
QuadElem e_one(const QuadFieldPtr& E) { return QuadElem(E, 1); }

EMatrix e_col(const QuadElem& a, const QuadElem& b) {
  EMatrix m(2, 1, a);
  m(1, 0) = b;
  return m;
}

Quat quat_of(const FieldContext& ctx, const Padic& a) { return Quat::from_F(a.is_zero() ? Padic(ctx, 0) : a); }

// z . (a + bX) = z (a + b beta0)
Quat rmul(const Quat& z, const QuadElem& e, const Quat& beta0) { return z * e.a() + z * beta0 * e.b(); }

Padic in_F(const QuadElem& z, const char* what) {
  if (!z.b().is_zero()) throw PrecisionExhausted(std::string(what) + " left F at tracked precision");
  return z.a();
}

}  // namespace

// ---------------------------------------------------------------------------
// E-forms

EMatrix sigma_transpose(const EMatrix& m) {
  EMatrix t(m.cols(), m.rows(), m.any());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t(j, i) = m(i, j).conj();
  return t;
}

bool validate(const EForm& h) {
  if (h.gram.rows() != h.gram.cols()) return false;
  const Padic eps(h.field()->base(), h.epsilon);
  return h.gram == sigma_transpose(h.gram).right_scale(eps);
}

EForm e_congruence(const EForm& h, const EMatrix& s) { return EForm{h.epsilon, sigma_transpose(s) * h.gram * s}; }

EForm e_scale(const EForm& h, const Padic& s) { return EForm{h.epsilon, h.gram.right_scale(s)}; }

EForm e_orthogonal_sum(const EForm& a, const EForm& b) {
  if (a.epsilon != b.epsilon) throw EpsilonMismatch("orthogonal sum of E-forms with different epsilon");
  const std::size_t n = a.rank(), m = b.rank();
  EMatrix g(n + m, n + m, e_zero(a.field()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = a.gram(i, j);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(n + i, n + j) = b.gram(i, j);
  return EForm{a.epsilon, g};
}

EForm e_diagonal(const QuadFieldPtr& E, int epsilon, const std::vector<QuadElem>& d) {
  if (d.empty()) throw InvalidParameter("empty diagonal E-form");
  (void)E;
  return EForm{epsilon, EMatrix::diagonal(d)};
}

std::string WittClassE::to_string() const {
  return std::string("{eps=") + (epsilon == 1 ? "+1" : "-1") + ",dim=" + (odd ? "odd" : "even") +
         ",disc=" + (nonnorm ? "nonnorm" : "norm") + "}";
}

WittClassE e_class(const EForm& h) {
  if (!validate(h)) throw InvalidParameter("E-Gram matrix is not epsilon-hermitian");
  const QuadFieldPtr& E = h.field();
  EMatrix g = h.gram;
  if (h.epsilon == -1) g = g.right_scale(QuadElem::generator(E));
  QuadElem det = determinant(g);
  if (det.is_zero()) throw DegenerateForm("E-form is degenerate");
  const std::size_t m = h.rank();
  Padic d = in_F(det, "hermitian determinant");
  if ((m * (m - 1) / 2) % 2) d = -d;
  return WittClassE{h.epsilon, m % 2 == 1, !is_norm(d, *E)};
}

WittClassE e_add(const QuadField& E, const WittClassE& a, const WittClassE& b) {
  if (a.epsilon != b.epsilon) throw EpsilonMismatch("adding E-Witt classes of different epsilon");
  // d(h + h') = (-1)^{mn} d(h) d(h')
  bool twist = a.odd && b.odd && !is_norm(Padic(E.base(), -1), E);
  return WittClassE{a.epsilon, a.odd != b.odd, (a.nonnorm != b.nonnorm) != twist};
}

WittClassE e_scale_class(const QuadField& E, const WittClassE& a, const Padic& s) {
  WittClassE out = a;
  if (a.odd && !is_norm(s, E)) out.nonnorm = !out.nonnorm;
  return out;
}

Padic non_norm(const QuadField& E) {
  const FieldContext& ctx = E.base();
  return E.ramified() ? Padic(ctx, ctx.nonresidue()) : Padic(ctx, ctx.prime());
}

EForm e_representative(const QuadFieldPtr& E, const WittClassE& c) {
  const FieldContext& ctx = E->base();
  EForm out{1, EMatrix(1, 1, e_one(E))};
  if (c.is_hyperbolic()) {
    EMatrix g(2, 2, e_zero(E));
    g(0, 1) = e_one(E);
    g(1, 0) = QuadElem(E, c.epsilon);
    return EForm{c.epsilon, g};
  }
  // hermitian representative first
  Padic delta = c.nonnorm ? non_norm(*E) : Padic(ctx, 1);
  if (c.odd)
    out = e_diagonal(E, 1, {QuadElem::from_base(E, delta)});
  else
    out = e_diagonal(E, 1, {e_one(E), QuadElem::from_base(E, -non_norm(*E))});
  if (c.epsilon == -1) out = EForm{-1, out.gram.right_scale(QuadElem::generator(E).inverse())};
  return out;
}

// ---------------------------------------------------------------------------
// E (x) D

EDElem EDElem::one(const QuadFieldPtr& E, const FieldContext& ctx) { return {E, Quat::one(ctx), Quat::zero(ctx)}; }

EDElem EDElem::scalar(const QuadElem& z, const FieldContext& ctx) {
  return {z.field(), quat_of(ctx, z.a()), quat_of(ctx, z.b())};
}

EDElem EDElem::operator*(const EDElem& o) const {
  const Padic& c = E->c();
  return {E, x * o.x + (y * o.y) * c, x * o.y + y * o.x};
}

EDElem EDElem::involution() const { return {E, x.rho(), -y.rho()}; }

QuadElem tr_E(const EDElem& a) { return QuadElem(a.E, a.x.trd(), a.y.trd()); }

Quat embed_quadratic(const QuadField& E) {
  const FieldContext& ctx = E.base();
  const Padic& c = E.c();
  const int v = c.valuation();
  const auto& L = ctx.unramified();
  if (v % 2 == 0) {
    // c = p^{2k} w with w a unit non-square, so w / r is a square
    const int k = v / 2;
    Padic w = c.shift(-k * 2);
    Padic q = w / Padic(ctx, ctx.nonresidue());
    if (!is_square(q)) throw NotQuadratic("c is a square in F");
    Padic t = sqrt(q).shift(k);
    return Quat::from_L(QuadElem(L, Padic(ctx, 0), t));
  }
  // (b pi_D)^2 = N(b) p
  QuadElem b = solve_norm_equation(L, c.shift(-1));
  return Quat(QuadElem(L, 0), b);
}

// ---------------------------------------------------------------------------
// SplitData

SplitData SplitData::from_generator(const Quat& beta0, int variant) {
  Quat sq = beta0 * beta0;
  if (!sq.b().is_zero() || !sq.a().in_base()) throw NotQuadratic("beta0^2 is not in F");
  if (beta0.b().is_zero() && beta0.a().in_base()) throw NotQuadratic("beta0 lies in F");
  auto E = std::make_shared<const QuadField>(sq.a().a(), "F[beta0]");
  return SplitData(E, beta0, variant);
}

namespace {

struct BForm {
  Quat gamma, beta0;
  QuadFieldPtr E;
  bool skew;
  Padic T(const Quat& y, const Quat& y2) const { return (y.rho() * y2 * gamma).trd(); }
  QuadElem operator()(const Quat& y, const Quat& y2) const {
    const Padic& c = E->c();
    Padic t0 = T(y, y2), t1 = T(y, y2 * beta0) / c;
    if (skew) return QuadElem(E, t1 * c, t0);  // X b
    return QuadElem(E, t0, t1);
  }
};

BForm make_bform(const QuadFieldPtr& E, const Quat& beta0) {
  const FieldContext& ctx = beta0.context();
  // gamma rho(beta0) + beta0 gamma = 0
  FMatrix m(4, 4, Padic(ctx, 0));
  for (int k = 0; k < 4; ++k) {
    std::array<Padic, 4> e{Padic(ctx, 0), Padic(ctx, 0), Padic(ctx, 0), Padic(ctx, 0)};
    e[static_cast<std::size_t>(k)] = Padic(ctx, 1);
    Quat g = Quat::from_coords(e);
    auto img = (g * beta0.rho() + beta0 * g).coords();
    for (int i = 0; i < 4; ++i) m(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) = img[static_cast<std::size_t>(i)];
  }
  auto ech = echelon(m);
  for (const auto& kv : ech.kernel) {
    Quat g = Quat::from_coords({kv[0], kv[1], kv[2], kv[3]});
    Quat sym = g + g.rho();
    if (!sym.is_zero()) return BForm{sym, beta0, E, false};
    Quat sk = g - g.rho();
    if (!sk.is_zero()) return BForm{sk, beta0, E, true};
  }
  throw PrecisionExhausted("no conjugator gamma found at tracked precision");
}

}  // namespace

SplitData::SplitData(QuadFieldPtr E, int variant) : SplitData(E, embed_quadratic(*E), variant) {}

SplitData::SplitData(QuadFieldPtr E, Quat beta0, int variant)
    : E_(std::move(E)),
      beta0_(std::move(beta0)),
      w_(Quat::zero(E_->base())),
      to_adapted_(1, 1, Padic(E_->base(), 0)),
      p_inv_(1, 1, QuadElem(E_, 0)),
      phi_inv_(1, 1, Padic(E_->base(), 0)) {
  if (variant < 0) throw InvalidParameter("split variant must be >= 0");
  const FieldContext& ctx = E_->base();
  // w anticommutes with beta0: D = E + wE
  const std::array<Quat, 3> ys{Quat::u(ctx), Quat::pi(ctx), Quat::u(ctx) * Quat::pi(ctx)};
  for (const auto& y : ys) {
    w_ = y * beta0_ - beta0_ * y;
    if (!w_.is_zero()) break;
  }
  if (w_.is_zero()) throw PrecisionExhausted("beta0 is central at tracked precision");

  FMatrix a(4, 4, Padic(ctx, 0));
  const std::array<Quat, 4> basis{Quat::one(ctx), beta0_, w_, w_ * beta0_};
  for (std::size_t k = 0; k < 4; ++k) {
    auto cc = basis[k].coords();
    for (std::size_t i = 0; i < 4; ++i) a(i, k) = cc[i];
  }
  to_adapted_ = inverse(a);

  BForm b = make_bform(E_, beta0_);
  // v1: the variant-th anisotropic line in a fixed list; lines 1 + w z are
  // pairwise distinct for distinct z in E
  std::vector<Quat> cands{Quat::one(ctx), w_};
  for (long i = 0; i <= 3; ++i)
    for (long j = 0; j <= 3; ++j)
      if (i || j) cands.push_back(Quat::one(ctx) + w_ * (Quat::from_F(Padic(ctx, i)) + beta0_ * Padic(ctx, j)));
  std::optional<Quat> v1;
  int seen = 0;
  for (const auto& cnd : cands)
    if (!b(cnd, cnd).is_zero() && seen++ == variant) {
      v1 = cnd;
      break;
    }
  if (!v1) throw PrecisionExhausted("b vanishes on every candidate line");
  // complement outside v1 E
  auto ec = [&](const Quat& z) {
    auto cz = z.coords();
    std::array<Padic, 4> ad{Padic(ctx, 0), Padic(ctx, 0), Padic(ctx, 0), Padic(ctx, 0)};
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t k = 0; k < 4; ++k) ad[i] += to_adapted_(i, k) * cz[k];
    return std::make_pair(QuadElem(E_, ad[0], ad[1]), QuadElem(E_, ad[2], ad[3]));
  };
  Quat other = ec(*v1).first.is_zero() ? Quat::one(ctx) : w_;
  QuadElem mu = b(*v1, *v1).inverse() * b(*v1, other);
  Quat v2 = other - rmul(*v1, mu, beta0_);
  v_ = {*v1, v2};
  for (const auto& vi : v_) {
    QuadElem bv = b(vi, vi);
    if (bv.is_zero()) throw PrecisionExhausted("orthogonal basis vector is isotropic");
    u_.push_back(in_F(bv, "b(v, v)").inverse());
  }
  if (!b(v_[0], v_[1]).is_zero()) throw PrecisionExhausted("b-orthogonalization failed");

  EMatrix p(2, 2, QuadElem(E_, 0));
  for (std::size_t j = 0; j < 2; ++j) {
    auto [e1, e2] = ec(v_[j]);
    p(0, j) = e1;
    p(1, j) = e2;
  }
  p_inv_ = inverse(p);

  // Phi^{-1} through the 8x8 F-matrix of Phi on the F-basis of E (x) D
  FMatrix big(8, 8, Padic(ctx, 0));
  for (std::size_t k = 0; k < 8; ++k) {
    std::array<Padic, 4> e{Padic(ctx, 0), Padic(ctx, 0), Padic(ctx, 0), Padic(ctx, 0)};
    e[k % 4] = Padic(ctx, 1);
    Quat q = Quat::from_coords(e);
    EDElem el = k < 4 ? EDElem{E_, q, Quat::zero(ctx)} : EDElem{E_, Quat::zero(ctx), q};
    EMatrix img = phi(el);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        big(2 * (2 * i + j), k) = img(i, j).a();
        big(2 * (2 * i + j) + 1, k) = img(i, j).b();
      }
  }
  phi_inv_ = inverse(big);
}

std::vector<QuadElem> SplitData::coords_E(const Quat& z) const {
  const FieldContext& ctx = context();
  auto cz = z.coords();
  std::array<Padic, 4> ad{Padic(ctx, 0), Padic(ctx, 0), Padic(ctx, 0), Padic(ctx, 0)};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) ad[i] += to_adapted_(i, k) * cz[k];
  EMatrix e = p_inv_ * e_col(QuadElem(E_, ad[0], ad[1]), QuadElem(E_, ad[2], ad[3]));
  return {e(0, 0), e(1, 0)};
}

EMatrix SplitData::u_matrix() const {
  return EMatrix::diagonal({QuadElem::from_base(E_, u_[0]), QuadElem::from_base(E_, u_[1])});
}

EMatrix SplitData::phi(const EDElem& a) const {
  EMatrix m(2, 2, QuadElem(E_, 0));
  const QuadElem X = QuadElem::generator(E_);
  for (std::size_t j = 0; j < 2; ++j) {
    auto cx = coords_E(a.x * v_[j]);
    auto cy = coords_E(a.y * v_[j]);
    for (std::size_t i = 0; i < 2; ++i) m(i, j) = cx[i] + X * cy[i];
  }
  return m;
}

EDElem SplitData::phi_inverse(const EMatrix& m) const {
  const FieldContext& ctx = context();
  FMatrix rhs(8, 1, Padic(ctx, 0));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      rhs(2 * (2 * i + j), 0) = m(i, j).a();
      rhs(2 * (2 * i + j) + 1, 0) = m(i, j).b();
    }
  FMatrix sol = phi_inv_ * rhs;
  return EDElem{E_, Quat::from_coords({sol(0, 0), sol(1, 0), sol(2, 0), sol(3, 0)}),
                Quat::from_coords({sol(4, 0), sol(5, 0), sol(6, 0), sol(7, 0)})};
}

EDElem SplitData::idempotent(int i) const {
  if (i != 0 && i != 1) throw InvalidParameter("idempotent index must be 0 or 1");
  EMatrix m(2, 2, QuadElem(E_, 0));
  m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = QuadElem(E_, 1);
  return phi_inverse(m);
}

EMatrix SplitData::adjoint(const EMatrix& m) const {
  EMatrix u = u_matrix();
  return u * sigma_transpose(m) * inverse(u);
}

QuadElem SplitData::line_form(const EMatrix& x, const EMatrix& y) const {
  return (sigma_transpose(x) * inverse(u_matrix()) * y)(0, 0);
}

EDElem SplitData::idempotent_for_line(const EMatrix& x) const {
  QuadElem d = line_form(x, x);
  if (d.is_zero()) throw InvalidParameter("isotropic line has no invariant projection");
  EMatrix p = x * sigma_transpose(x) * inverse(u_matrix());
  return phi_inverse(p.right_scale(d.inverse()));
}

int SplitData::check_relations() const {
  const FieldContext& ctx = context();
  const QuadFieldPtr& E = E_;
  const Quat z = Quat::zero(ctx);
  auto el = [&](const Quat& x, const Quat& y) { return EDElem{E, x, y}; };
  const EDElem one = EDElem::one(E, ctx), U = el(Quat::u(ctx), z), P = el(Quat::pi(ctx), z);
  const EDElem X = el(z, Quat::one(ctx));
  const EMatrix I = EMatrix::identity(2, QuadElem(E, 1));
  auto scal = [&](const Padic& s) { return I.right_scale(s); };
  int fails = 0;
  auto check = [&](bool ok) { fails += ok ? 0 : 1; };
  check(phi(one) == I);
  check(phi(P) * phi(P) == scal(Padic(ctx, ctx.prime())));
  check(phi(U) * phi(U) == scal(Padic(ctx, ctx.nonresidue())));
  check(phi(P) * phi(U) == -(phi(U) * phi(P)));
  check(phi(X) * phi(X) == scal(E->c()));
  check(phi(X) * phi(U) == phi(U) * phi(X) && phi(X) * phi(P) == phi(P) * phi(X));
  for (const auto& g : {U, P, U * P, X}) check(phi(g.involution()) == adjoint(phi(g)));
  const EDElem a = el(Quat::one(ctx) + Quat::u(ctx), Quat::pi(ctx));
  const EDElem b = el(Quat::pi(ctx) * Quat::u(ctx), Quat::one(ctx) - Quat::pi(ctx));
  check(phi(a * b) == phi(a) * phi(b));
  check(phi_inverse(phi(a)) == a);
  return fails;
}

// ---------------------------------------------------------------------------
// E (x) D forms

EDForm compute_htilde_beta(const HermitianForm& h, const DMatrix& beta) {
  if (!validate(h)) throw InvalidParameter("form is not epsilon-hermitian");
  const std::size_t n = h.rank();
  if (beta.rows() != n || beta.cols() != n) throw InvalidParameter("beta has the wrong shape");
  const FieldContext& ctx = h.context();
  DMatrix sq = beta * beta;
  const Quat c0 = sq(0, 0);
  if (c0.is_zero() || !c0.b().is_zero() || !c0.a().in_base()) throw NotQuadratic("beta^2 is not a nonzero scalar of F");
  if (sq != scalar_matrix(n, c0)) throw NotQuadratic("beta^2 is not scalar");
  const Padic c = c0.a().a();
  if (is_square(c)) throw NotQuadratic("F[beta] is not a field: beta^2 is a square");
  if (!(rho_transpose(beta) * h.gram + h.gram * beta).is_zero()) throw NotSkewAdjoint("sigma_h(beta) != -beta");
  auto E = std::make_shared<const QuadField>(c, "F[beta]");
  (void)ctx;
  return EDForm{h, beta, E};
}

EDElem evaluate(const EDForm& f, const DMatrix& v, const DMatrix& w) {
  const Padic& c = f.E->c();
  return EDElem{f.E, evaluate(f.h, v, w), evaluate(f.h, v, f.beta * w) * c.inverse()};
}

QuadElem h_beta_value(const EDForm& f, const DMatrix& v, const DMatrix& w) { return tr_E(evaluate(f, v, w)); }

DMatrix act(const EDForm& f, const DMatrix& v, const EDElem& a) {
  return v.right_scale(a.x) + (f.beta * v).right_scale(a.y);
}

namespace {

// F-coordinates of a column over D
std::vector<Padic> flatten(const DMatrix& v) {
  std::vector<Padic> out;
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (const auto& c : v(i, 0).coords()) out.push_back(c);
  return out;
}

std::size_t f_rank(const std::vector<std::vector<Padic>>& rows) {
  if (rows.empty()) return 0;
  FMatrix m(rows.size(), rows[0].size(), rows[0][0]);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return echelon(m).rank;
}

void require_invariant_idempotent(const EDElem& e) {
  if (e * e != e) throw InvalidParameter("e is not an idempotent");
  if (e.involution() != e) throw InvalidParameter("e is not fixed by sigma_E (x) rho");
}

}  // namespace

FunctorResult functor_Fe(const EDForm& f, const EDElem& e) {
  require_invariant_idempotent(e);
  const FieldContext& ctx = f.h.context();
  const std::size_t m = f.d_rank();
  std::vector<DMatrix> basis;
  std::vector<std::vector<Padic>> rows;
  const std::array<Quat, 4> qs{Quat::one(ctx), Quat::u(ctx), Quat::pi(ctx), Quat::u(ctx) * Quat::pi(ctx)};
  for (std::size_t i = 0; i < m && basis.size() < m; ++i)
    for (const auto& q : qs) {
      if (basis.size() == m) break;
      DMatrix v(m, 1, Quat::zero(ctx));
      v(i, 0) = q;
      DMatrix a = act(f, v, e);
      if (a.is_zero()) continue;
      auto trial = rows;
      trial.push_back(flatten(a));
      trial.push_back(flatten(f.beta * a));
      if (f_rank(trial) == rows.size() + 2) {
        rows = std::move(trial);
        basis.push_back(a);
      }
    }
  if (basis.size() != m) throw InvalidParameter("V e does not have E-dimension dim_D V; e is not of rank 1");
  EMatrix g(m, m, QuadElem(f.E, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) g(i, j) = h_beta_value(f, basis[i], basis[j]);
  EForm out{f.h.epsilon, g};
  if (determinant(g).is_zero()) throw DegenerateForm("F_e produced a degenerate form");
  if (!validate(out)) throw PrecisionExhausted("F_e output is not epsilon-hermitian at tracked precision");
  return FunctorResult{out, basis};
}

EMatrix ge_block(const SplitData& sd, const QuadElem& h11, const QuadElem& h12, const QuadElem& h21,
                 const QuadElem& h22) {
  Padic q = sd.u(1) / sd.u(0);
  EMatrix m(2, 2, h11);
  m(0, 1) = h12;
  m(1, 0) = h21 * q;
  m(1, 1) = h22 * q;
  return m;
}

EDForm functor_Ge(const EForm& hE, const SplitData& sd) {
  if (!validate(hE)) throw InvalidParameter("E-form is not epsilon-hermitian");
  if (!same_field(*hE.field(), *sd.field())) throw WrongBase("E-form and splitting use different fields");
  if (determinant(hE.gram).is_zero()) throw DegenerateForm("G_e of a degenerate E-form");
  const FieldContext& ctx = sd.context();
  const QuadFieldPtr& E = sd.field();
  const std::size_t k = hE.rank();
  // the D-generator 1 of the row module corresponds to r = (b(1, v1), b(1, v2))
  BForm b = make_bform(E, sd.beta0());
  const std::array<QuadElem, 2> r{b(Quat::one(ctx), sd.v(0)), b(Quat::one(ctx), sd.v(1))};
  // the b used by SplitData is normalized by u; recover the matching scale
  EMatrix K(2, 2, QuadElem(E, 0));
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t c = 0; c < 2; ++c)
      K(a, c) = r[a].conj() * r[c] * (sd.u(static_cast<int>(a)) / sd.u(0));
  EDElem kx = sd.phi_inverse(K);
  const Padic& cc = E->c();
  DMatrix M(k, k, Quat::zero(ctx));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      const QuadElem& hij = hE.gram(i, j);
      M(i, j) = kx.x * hij.a() + kx.y * (hij.b() * cc);
    }
  DMatrix beta = scalar_matrix(k, -sd.beta0().rho());
  HermitianForm h = make_form(hE.epsilon, M);
  if (!validate(h)) throw PrecisionExhausted("G_e output is not epsilon-hermitian at tracked precision");
  return EDForm{h, beta, E};
}

Similitude similitude_scale(const SplitData& sd, const EDElem& e, const EDElem& f) {
  require_invariant_idempotent(e);
  require_invariant_idempotent(f);
  const QuadFieldPtr& E = sd.field();
  const EMatrix pe = sd.phi(e), pf = sd.phi(f);
  auto line = [&](const EMatrix& p) {
    for (std::size_t j = 0; j < 2; ++j) {
      EMatrix col = p.column(j);
      if (!col.is_zero()) return col;
    }
    throw InvalidParameter("zero idempotent");
  };
  auto perp = [&](const EMatrix& x) {
    return e_col(x(1, 0).conj() * sd.u(0), -(x(0, 0).conj() * sd.u(1)));
  };
  const EMatrix I = EMatrix::identity(2, QuadElem(E, 1));
  if (pe == I || pf == I) throw InvalidParameter("idempotent of rank 2");
  EMatrix x = line(pe), y = line(pf), xp = perp(x), yp = perp(y);
  Padic bx = in_F(sd.line_form(x, x), "b'(x, x)"), by = in_F(sd.line_form(y, y), "b'(y, y)");
  Padic bxp = in_F(sd.line_form(xp, xp), "b'(x', x')"), byp = in_F(sd.line_form(yp, yp), "b'(y', y')");
  Padic s = by / bx;
  QuadElem nb(E, 0);
  try {
    nb = solve_norm_equation(E, s * bxp / byp);
  } catch (const NotANorm& err) {
    throw NoSimilitudeFound(err.what());
  }
  EMatrix src(2, 2, QuadElem(E, 0)), dst(2, 2, QuadElem(E, 0));
  for (std::size_t i = 0; i < 2; ++i) {
    src(i, 0) = x(i, 0);
    src(i, 1) = xp(i, 0);
    dst(i, 0) = y(i, 0);
    dst(i, 1) = yp(i, 0) * nb;
  }
  EMatrix g = dst * inverse(src);
  if (g * pe * inverse(g) != pf) throw NoSimilitudeFound("g e g^{-1} != f at tracked precision");
  if (g * sd.adjoint(g) != I.right_scale(s)) throw NoSimilitudeFound("multiplier check failed");
  return Similitude{sd.phi_inverse(g), s};
}

WittClassE WittTower::at(const EDElem& f) const {
  Similitude sim = similitude_scale(*split, split->idempotent(0), f);
  return e_scale_class(*split->field(), at_e, sim.s.inverse());
}

WittTower witt_tower_of(const EDForm& f, int variant) {
  auto sd = std::make_shared<const SplitData>(f.E, variant);
  WittClassE cls = e_class(functor_Fe(f, sd->idempotent(0)).form);
  return WittTower{sd, f, cls};
}

WittTower witt_tower_of(const HermitianForm& h, const DMatrix& beta, int variant) {
  return witt_tower_of(compute_htilde_beta(h, beta), variant);
}

Lambda lambda_beta(const FieldContext& ctx) { return Lambda{Padic(ctx, 1), Padic(ctx, 0)}; }

namespace {
void require_equivariant(const Lambda& l) {
  if (l.l0.is_zero()) throw InvalidParameter("lambda must be nonzero");
  if (!l.lX.is_zero()) throw InvalidParameter("lambda must kill X to be sigma_E-equivariant");
}
}  // namespace

HermitianForm trace_transfer(const EDForm& f, const Lambda& lambda) {
  require_equivariant(lambda);
  HermitianForm out = make_form(f.h.epsilon, f.h.gram.right_scale(lambda.l0));
  if (determinant(l_matrix(out.gram)).is_zero()) throw DegenerateForm("transferred form is degenerate");
  return out;
}

FMatrix trace_transfer(const EForm& h, const Lambda& lambda) {
  require_equivariant(lambda);
  const std::size_t k = h.rank();
  const QuadFieldPtr& E = h.field();
  const QuadElem X = QuadElem::generator(E), one(E, 1);
  FMatrix out(2 * k, 2 * k, Padic(E->base(), 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t b = 0; b < 2; ++b) {
          QuadElem v = (a ? X.conj() : one) * h.gram(i, j) * (b ? X : one);
          out(2 * i + a, 2 * j + b) = v.a() * lambda.l0;
        }
  return out;
}

}  // namespace hermiwitt
