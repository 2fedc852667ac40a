#pragma once

#include <array>
#include <string>
#include <vector>

#include "hermiwitt/hermitian.hpp"

namespace hermiwitt {

// Element of W_eps(D, rho) in generator coordinates.
// eps = +1: bits over {<1>, <alpha>, <pi_D>}; eps = -1: one bit for <u pi_D>.
class WittClassD {
 public:
  static constexpr unsigned kOne = 1, kAlpha = 2, kPi = 4, kSkew = 1;

  WittClassD(int epsilon, unsigned bits);
  static WittClassD hyperbolic(int epsilon) { return WittClassD(epsilon, 0); }

  int epsilon() const noexcept { return eps_; }
  unsigned bits() const noexcept { return bits_; }
  bool is_hyperbolic() const noexcept { return bits_ == 0; }
  std::vector<std::string> names() const;
  static WittClassD from_names(int epsilon, const std::vector<std::string>& names);

  WittClassD operator+(const WittClassD& o) const;  // XOR; EpsilonMismatch
  WittClassD& operator+=(const WittClassD& o) { return *this = *this + o; }
  bool operator==(const WittClassD& o) const { return eps_ == o.eps_ && bits_ == o.bits_; }
  bool operator!=(const WittClassD& o) const { return !(*this == o); }
  bool operator<(const WittClassD& o) const { return eps_ != o.eps_ ? eps_ < o.eps_ : bits_ < o.bits_; }
  std::string to_string() const;

 private:
  int eps_;
  unsigned bits_;
};

inline WittClassD witt_add(const WittClassD& a, const WittClassD& b) { return a + b; }

// generator representatives: 1, alpha, pi_D (eps = +1) and u pi_D (eps = -1)
Quat generator_representative(const FieldContext& ctx, unsigned bit, int epsilon);

WittClassD classify_line(const Quat& d, int epsilon);
WittClassD class_of_form(const HermitianForm& h);
WittClassD class_of_diagonal(const DiagonalForm& d);

// Independent route through reduced norms modulo squares.
bool is_isotropic(const DiagonalForm& d);
bool equivalence_oracle(const Quat& d, const Quat& d2);

// Derived once per field context from is_isotropic on representatives.
int anisotropic_dim(const FieldContext& ctx, const WittClassD& c);
std::array<int, 8> anisotropic_table(const FieldContext& ctx, int epsilon);
// anisotropic diagonal representative of c
DiagonalForm anisotropic_representative(const FieldContext& ctx, const WittClassD& c);

}  // namespace hermiwitt
