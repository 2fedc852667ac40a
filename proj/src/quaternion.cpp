#include "hermiwitt/quaternion.hpp"

#include <algorithm>
#include <climits>

#include "hermiwitt/errors.hpp"

namespace hermiwitt {

namespace {
void require_L(const QuadElem& x) {
  if (!is_unramified_L(x)) throw WrongBase("quaternion coordinates must lie in L");
}
}  // namespace

Quat::Quat(QuadElem a, QuadElem b) : a_(std::move(a)), b_(std::move(b)) {
  require_L(a_);
  require_L(b_);
}

Quat Quat::zero(const FieldContext& ctx) { return Quat(QuadElem(ctx.unramified(), 0), QuadElem(ctx.unramified(), 0)); }
Quat Quat::one(const FieldContext& ctx) { return Quat(QuadElem(ctx.unramified(), 1), QuadElem(ctx.unramified(), 0)); }
Quat Quat::u(const FieldContext& ctx) { return Quat(QuadElem::generator(ctx.unramified()), QuadElem(ctx.unramified(), 0)); }
Quat Quat::pi(const FieldContext& ctx) { return Quat(QuadElem(ctx.unramified(), 0), QuadElem(ctx.unramified(), 1)); }

Quat Quat::from_F(const Padic& x) {
  const auto& L = x.context().unramified();
  return Quat(QuadElem::from_base(L, x), QuadElem(L, 0));
}

Quat Quat::from_L(const QuadElem& x) { return Quat(x, QuadElem(x.field(), 0)); }

Quat Quat::from_coords(const std::array<Padic, 4>& c) {
  const auto& L = c[0].context().unramified();
  return Quat(QuadElem(L, c[0], c[1]), QuadElem(L, c[2], c[3]));
}

std::array<Padic, 4> Quat::coords() const { return {a_.a(), a_.b(), b_.a(), b_.b()}; }

Quat Quat::operator*(const Quat& o) const {
  // (a + b pi)(a' + b' pi) = (a a' + b tau(b') p) + (a b' + b tau(a')) pi
  return Quat(a_ * o.a_ + (b_ * o.b_.conj()).shift(1), a_ * o.b_ + b_ * o.a_.conj());
}

int Quat::nu_D() const {
  if (is_zero()) throw IndistinguishableZero("nu_D of zero quaternion");
  int best = INT_MAX;
  if (!a_.is_zero()) best = 2 * a_.valuation();
  if (!b_.is_zero()) best = std::min(best, 2 * b_.valuation() + 1);
  return best;
}

int Quat::nu_D_lower_bound() const {
  if (!is_zero()) return nu_D();
  return std::min(2 * a_.precision(), 2 * b_.precision() + 1);
}

Quat Quat::rho() const { return Quat(a_, b_.conj()); }
Quat Quat::conj() const { return Quat(a_.conj(), -b_); }
Padic Quat::trd() const { return a_.trace(); }
Padic Quat::nrd() const { return a_.norm() - b_.norm().shift(1); }

Quat Quat::inverse() const {
  if (is_zero()) throw DivisionByIndistinguishableZero("inverse of zero quaternion");
  Padic n = nrd();
  if (n.is_zero()) throw PrecisionExhausted("reduced norm vanished at tracked precision");
  return conj() * n.inverse();
}

std::string Quat::to_string() const { return "[" + a_.to_string() + "] + [" + b_.to_string() + "]*pi_D"; }

SymmetryType symmetry_type(const Quat& x) {
  if (x.b().b().is_zero()) return SymmetryType::symmetric;
  if (x.a().is_zero() && x.b().a().is_zero()) return SymmetryType::skew;
  return SymmetryType::neither;
}

const char* to_string(SymmetryType t) {
  switch (t) {
    case SymmetryType::symmetric: return "symmetric";
    case SymmetryType::skew: return "skew";
    case SymmetryType::neither: return "neither";
  }
  return "?";
}

bool congruent_mod_nuD(const Quat& d, const Quat& d2) {
  const int v = d.nu_D();
  (void)d2.nu_D();
  Quat diff = d - d2;
  if (diff.is_zero()) {
    if (diff.nu_D_lower_bound() > v) return true;
    throw PrecisionExhausted("difference vanishes below the precision window");
  }
  return diff.nu_D() > v;
}

}  // namespace hermiwitt
