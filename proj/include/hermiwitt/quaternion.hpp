#pragma once

#include <array>
#include <string>

#include "hermiwitt/padic.hpp"

namespace hermiwitt {

// a + b*pi_D in D = L + L*pi_D, pi_D^2 = p, pi_D x = tau(x) pi_D.
class Quat {
 public:
  Quat(QuadElem a, QuadElem b);
  static Quat zero(const FieldContext& ctx);
  static Quat one(const FieldContext& ctx);
  static Quat u(const FieldContext& ctx);
  static Quat pi(const FieldContext& ctx);
  static Quat from_F(const Padic& x);
  static Quat from_L(const QuadElem& x);
  // coordinates in the F-basis (1, u, pi_D, u*pi_D)
  static Quat from_coords(const std::array<Padic, 4>& c);
  std::array<Padic, 4> coords() const;

  const FieldContext& context() const noexcept { return a_.context(); }
  const QuadElem& a() const noexcept { return a_; }
  const QuadElem& b() const noexcept { return b_; }

  bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
  int nu_D() const;             // throws IndistinguishableZero
  int nu_D_lower_bound() const;  // for zero elements: what the precision guarantees
  int precision() const noexcept { return std::min(a_.precision(), b_.precision()); }

  Quat operator-() const { return Quat(-a_, -b_); }
  Quat operator+(const Quat& o) const { return Quat(a_ + o.a_, b_ + o.b_); }
  Quat operator-(const Quat& o) const { return Quat(a_ - o.a_, b_ - o.b_); }
  Quat operator*(const Quat& o) const;
  Quat operator*(const Padic& s) const { return Quat(a_ * s, b_ * s); }
  Quat& operator+=(const Quat& o) { return *this = *this + o; }
  Quat& operator-=(const Quat& o) { return *this = *this - o; }
  Quat& operator*=(const Quat& o) { return *this = *this * o; }

  Quat rho() const;    // a + tau(b) pi_D
  Quat conj() const;   // canonical involution: tau(a) - b pi_D
  Padic trd() const;
  Padic nrd() const;
  Quat inverse() const;
  Quat shift(int k) const { return Quat(a_.shift(k), b_.shift(k)); }  // times p^k

  bool operator==(const Quat& o) const { return (*this - o).is_zero(); }
  bool operator!=(const Quat& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  QuadElem a_, b_;
};

inline Quat operator*(const Padic& s, const Quat& x) { return x * s; }

enum class SymmetryType { symmetric, skew, neither };
SymmetryType symmetry_type(const Quat& x);
const char* to_string(SymmetryType t);
bool congruent_mod_nuD(const Quat& d, const Quat& d2);

inline Quat zero_like(const Quat& x) { return Quat::zero(x.context()); }
inline Quat one_like(const Quat& x) { return Quat::one(x.context()); }
inline int pivot_weight(const Quat& x) { return x.nu_D(); }
inline Quat inverse(const Quat& x) { return x.inverse(); }

}  // namespace hermiwitt
