#pragma once

#include <memory>
#include <string>

#include "hermiwitt/hermitian.hpp"
#include "hermiwitt/wittclass.hpp"

namespace hermiwitt {

using EMatrix = Matrix<QuadElem>;

// ---------------------------------------------------------------------------
// E-side: eps-hermitian forms over (E, sigma_E), E = F[X]/(X^2 - c)

struct EForm {
  int epsilon;
  EMatrix gram;  // gram = eps * sigma(gram)^T
  std::size_t rank() const { return gram.rows(); }
  const QuadFieldPtr& field() const { return gram.any().field(); }
};

EMatrix sigma_transpose(const EMatrix& m);
bool validate(const EForm& h);
EForm e_congruence(const EForm& h, const EMatrix& s);
EForm e_scale(const EForm& h, const Padic& s);
EForm e_orthogonal_sum(const EForm& a, const EForm& b);
EForm e_diagonal(const QuadFieldPtr& E, int epsilon, const std::vector<QuadElem>& d);

// Witt class in W_eps(sigma_E): dimension parity and whether the signed
// discriminant is a norm. For eps = -1 the form is first twisted by X.
struct WittClassE {
  int epsilon = 1;
  bool odd = false;
  bool nonnorm = false;
  bool is_hyperbolic() const { return !odd && !nonnorm; }
  int anisotropic_dim() const { return odd ? 1 : (nonnorm ? 2 : 0); }
  bool operator==(const WittClassE& o) const { return epsilon == o.epsilon && odd == o.odd && nonnorm == o.nonnorm; }
  bool operator!=(const WittClassE& o) const { return !(*this == o); }
  std::string to_string() const;
};

WittClassE e_class(const EForm& h);
WittClassE e_add(const QuadField& E, const WittClassE& a, const WittClassE& b);
WittClassE e_scale_class(const QuadField& E, const WittClassE& a, const Padic& s);
// a non-norm unit-or-uniformizer of F for E: p (E unramified) or r (E ramified)
Padic non_norm(const QuadField& E);
// diagonal representative of minimal rank
EForm e_representative(const QuadFieldPtr& E, const WittClassE& c);

// ---------------------------------------------------------------------------
// E (x) D, elements 1(x)x + X(x)y

struct EDElem {
  QuadFieldPtr E;
  Quat x, y;
  static EDElem one(const QuadFieldPtr& E, const FieldContext& ctx);
  static EDElem scalar(const QuadElem& z, const FieldContext& ctx);  // z (x) 1
  EDElem operator+(const EDElem& o) const { return {E, x + o.x, y + o.y}; }
  EDElem operator-(const EDElem& o) const { return {E, x - o.x, y - o.y}; }
  EDElem operator*(const EDElem& o) const;
  EDElem involution() const;  // sigma_E (x) rho
  bool is_zero() const { return x.is_zero() && y.is_zero(); }
  bool operator==(const EDElem& o) const { return (*this - o).is_zero(); }
  bool operator!=(const EDElem& o) const { return !(*this == o); }
};

// tr_E(1(x)x + X(x)y) = trd(x) + X trd(y)
QuadElem tr_E(const EDElem& a);

// embed E into D: beta0 in D with beta0^2 = c
Quat embed_quadratic(const QuadField& E);

// Splitting Phi: E (x) D -> M_2(E). E (x) D acts on D by x.z = x z and
// X.z = z beta0; Phi records that action in an E-basis (v1, v2) of D
// orthogonal for a sigma_E-hermitian b with b(xz, z') = b(z, rho(x) z').
// Then Phi pushes sigma_E (x) rho to u sigma(.)^T u^{-1}, u = diag(1/b(v_i, v_i)).
class SplitData {
 public:
  // variant selects among several deterministic bases; each is a valid Phi
  SplitData(QuadFieldPtr E, int variant = 0);
  static SplitData from_generator(const Quat& beta0, int variant = 0);

  const QuadFieldPtr& field() const noexcept { return E_; }
  const FieldContext& context() const { return E_->base(); }
  const Quat& beta0() const noexcept { return beta0_; }
  const Quat& v(int i) const { return v_.at(i); }
  const Padic& u(int i) const { return u_.at(i); }
  EMatrix u_matrix() const;

  EMatrix phi(const EDElem& a) const;
  EDElem phi_inverse(const EMatrix& m) const;
  // canonical idempotents Phi^{-1}(E11), Phi^{-1}(E22)
  EDElem idempotent(int i = 0) const;
  // Phi^{-1} of the orthogonal projection onto the line through x (b'(x,x) != 0)
  EDElem idempotent_for_line(const EMatrix& x) const;
  // u sigma(m)^T u^{-1}
  EMatrix adjoint(const EMatrix& m) const;
  // b'(x, y) = sigma(x)^T u^{-1} y on E^2
  QuadElem line_form(const EMatrix& x, const EMatrix& y) const;

  // relation checks; returns the number of failed relations
  int check_relations() const;

 private:
  SplitData(QuadFieldPtr E, Quat beta0, int variant);
  std::vector<QuadElem> coords_E(const Quat& z) const;  // z = v1 f1 + v2 f2
  QuadFieldPtr E_;
  Quat beta0_;
  std::vector<Quat> v_;
  std::vector<Padic> u_;
  Quat w_;
  FMatrix to_adapted_;  // standard F-coords -> coords in (1, beta0, w, w beta0)
  EMatrix p_inv_;       // E-coords in (1, w) -> E-coords in (v1, v2)
  FMatrix phi_inv_;     // 8x8
};

// ---------------------------------------------------------------------------
// eps-hermitian E (x) D-forms, stored as (h, beta): V = D^n with X acting as
// beta, and htilde = 1(x)h + X(x)h(., beta .)/c, the unique lift with
// (lambda_beta (x) id) o htilde = h.

struct EDForm {
  HermitianForm h;
  DMatrix beta;
  QuadFieldPtr E;
  std::size_t d_rank() const { return h.rank(); }
};

EDForm compute_htilde_beta(const HermitianForm& h, const DMatrix& beta);
EDElem evaluate(const EDForm& f, const DMatrix& v, const DMatrix& w);
// h_beta = tr_E o htilde_beta, an E-valued form on V
QuadElem h_beta_value(const EDForm& f, const DMatrix& v, const DMatrix& w);
// v . (1(x)x + X(x)y) = v x + (beta v) y
DMatrix act(const EDForm& f, const DMatrix& v, const EDElem& a);

// restriction of tr_E o htilde to V e in a chosen E-basis
struct FunctorResult {
  EForm form;
  std::vector<DMatrix> basis;  // E-basis of V e
};
FunctorResult functor_Fe(const EDForm& f, const EDElem& e);
// G_e: eps-hermitian E-form -> E (x) D form on D^k
EDForm functor_Ge(const EForm& hE, const SplitData& sd);
// the displayed 2x2 block [[h, h], [u2/u1 h, u2/u1 h]] for a scalar value h
EMatrix ge_block(const SplitData& sd, const QuadElem& h11, const QuadElem& h12, const QuadElem& h21, const QuadElem& h22);

struct Similitude {
  EDElem g;
  Padic s;  // g (sigma_E (x) rho)(g) = s
};
// g with g e g^{-1} = f; throws NoSimilitudeFound if the norm search fails
Similitude similitude_scale(const SplitData& sd, const EDElem& e, const EDElem& f);

// Witt class of htilde as a Witt tower: value at the canonical idempotent
// together with the rule wtower(f) = s^{-1} wtower(e).
struct WittTower {
  std::shared_ptr<const SplitData> split;
  EDForm form;
  WittClassE at_e;
  WittClassE at(const EDElem& f) const;
  int anisotropic_dim() const { return at_e.anisotropic_dim(); }
};
WittTower witt_tower_of(const HermitianForm& h, const DMatrix& beta, int variant = 0);
WittTower witt_tower_of(const EDForm& f, int variant = 0);

// lambda(a + bX) = l0 a + lX b; equivariance forces lX = 0
struct Lambda {
  Padic l0;
  Padic lX;
};
Lambda lambda_beta(const FieldContext& ctx);
HermitianForm trace_transfer(const EDForm& f, const Lambda& lambda);
// E-form to an F-bilinear form on the F-basis (w_1, w_1 X, w_2, ...)
FMatrix trace_transfer(const EForm& h, const Lambda& lambda);

}  // namespace hermiwitt
