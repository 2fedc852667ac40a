#pragma once

#include <cstdint>
#include <random>

#include "hermiwitt/hermitian.hpp"
#include "hermiwitt/morita.hpp"

namespace hermiwitt {

// Seeded generators for the property suites.
class Sampler {
 public:
  Sampler(const FieldContext& ctx, std::uint64_t seed) : ctx_(&ctx), rng_(seed) {}

  const FieldContext& context() const noexcept { return *ctx_; }
  std::mt19937_64& rng() noexcept { return rng_; }
  long uniform(long lo, long hi);  // inclusive
  bool coin() { return uniform(0, 1) == 1; }

  mpz_class integer_mod_pN();
  Padic unit();                          // valuation 0
  Padic element(int vmin, int vmax);     // nonzero, valuation in [vmin, vmax]
  Padic maybe_zero(int vmin, int vmax);  // zero with probability ~1/4
  QuadElem l_element(int vmin, int vmax);
  QuadElem l_maybe_zero(int vmin, int vmax);
  Quat quat(int vmin, int vmax);
  Quat symmetric(int vmin, int vmax);
  Quat skew(int vmin, int vmax);
  Quat line(int epsilon, int vmin, int vmax) { return epsilon == 1 ? symmetric(vmin, vmax) : skew(vmin, vmax); }

  DMatrix matrix(std::size_t rows, std::size_t cols, int vmin, int vmax);
  DMatrix invertible(std::size_t n);
  HermitianForm form(int epsilon, std::size_t n);
  // X with sigma_h(X) = -X and nu_D >= 1 entrywise
  DMatrix skew_adjoint(const HermitianForm& h);
  DMatrix vector(std::size_t n, int vmin, int vmax);

  // E-side
  QuadElem e_element(const QuadFieldPtr& E, int vmin, int vmax);  // may be zero
  EMatrix e_invertible(const QuadFieldPtr& E, std::size_t n);
  // congruent to a diagonal <a_i> (eps = 1) or <a_i X> (eps = -1), a_i in F
  EForm e_form(const QuadFieldPtr& E, int epsilon, std::size_t n);
  // x in E^2 with b'(x, x) != 0
  EMatrix e_line(const SplitData& sd);

 private:
  const FieldContext* ctx_;
  std::mt19937_64 rng_;
};

}  // namespace hermiwitt
