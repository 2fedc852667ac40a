#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace hermiwitt {

class QuadField;

// Shared, immutable data for Q_p truncated at absolute precision N.
// Contexts are interned: get() returns the same object for the same (p, N),
// and it lives until program exit, so elements just keep a raw pointer.
class FieldContext {
 public:
  static const FieldContext& get(long prime, int precision);

  long prime() const noexcept { return p_; }
  int precision() const noexcept { return n_; }
  // smallest positive non-residue mod p; u^2 = r in L
  long nonresidue() const noexcept { return r_; }
  bool minus_one_is_square() const noexcept { return p_ % 4 == 1; }

  mpz_class power(int k) const;  // p^k, k >= 0
  const mpz_class& prime_z() const noexcept { return pz_; }

  // L = F[u], u^2 = r
  const std::shared_ptr<const QuadField>& unramified() const noexcept { return l_; }

  FieldContext(const FieldContext&) = delete;
  FieldContext& operator=(const FieldContext&) = delete;

 private:
  FieldContext(long p, int n);
  long p_;
  int n_;
  long r_;
  mpz_class pz_;
  std::vector<mpz_class> powers_;
  std::shared_ptr<const QuadField> l_;
};

// x = p^val * unit, unit known modulo p^(abs - val).
// A zero element carries no unit; val == abs by convention.
class Padic {
 public:
  Padic(const FieldContext& ctx, long value);
  Padic(const FieldContext& ctx, const mpz_class& value);

  static Padic zero(const FieldContext& ctx, int abs_precision);
  static Padic zero(const FieldContext& ctx) { return zero(ctx, ctx.precision()); }
  // num * p^base_val known modulo p^abs; normalizes
  static Padic from_scaled(const FieldContext& ctx, const mpz_class& num, int base_val, int abs);
  static Padic rational(const FieldContext& ctx, const mpz_class& num, const mpz_class& den);
  static Padic p_power(const FieldContext& ctx, int k);

  const FieldContext& context() const noexcept { return *ctx_; }
  bool is_zero() const noexcept { return unit_ == 0; }
  int valuation() const;  // throws IndistinguishableZero
  int precision() const noexcept { return abs_; }
  int relative_precision() const noexcept { return is_zero() ? 0 : abs_ - val_; }
  const mpz_class& unit() const noexcept { return unit_; }
  long residue() const;                 // unit mod p
  std::vector<long> digits() const;     // unit digits, little endian, relative_precision() of them
  mpz_class representative() const;     // requires valuation >= 0 (or zero)

  Padic operator-() const;
  Padic operator+(const Padic& o) const;
  Padic operator-(const Padic& o) const;
  Padic operator*(const Padic& o) const;
  Padic operator/(const Padic& o) const;
  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator-=(const Padic& o) { return *this = *this - o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }
  Padic inverse() const;
  Padic shift(int k) const;  // times p^k
  Padic with_precision(int abs) const;  // drop to a lower absolute precision

  // indistinguishable at the joint precision
  bool operator==(const Padic& o) const { return (*this - o).is_zero(); }
  bool operator!=(const Padic& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  Padic(const FieldContext* ctx, mpz_class unit, int val, int abs)
      : ctx_(ctx), unit_(std::move(unit)), val_(val), abs_(abs) {}
  const FieldContext* ctx_;
  mpz_class unit_;
  int val_;
  int abs_;
};

// F[X]/(X^2 - c) with c a non-square. Used for L (c = r) and for the
// quadratic subfields E in the morita module.
class QuadField {
 public:
  QuadField(Padic c, std::string name);
  const Padic& c() const noexcept { return c_; }
  const FieldContext& base() const noexcept { return c_.context(); }
  bool ramified() const { return c_.valuation() % 2 != 0; }
  const std::string& name() const noexcept { return name_; }

 private:
  Padic c_;
  std::string name_;
};
using QuadFieldPtr = std::shared_ptr<const QuadField>;

// a + b X in a QuadField; for L, X = u.
class QuadElem {
 public:
  QuadElem(QuadFieldPtr field, Padic a, Padic b);
  QuadElem(QuadFieldPtr field, long a);
  static QuadElem from_base(QuadFieldPtr field, const Padic& a);
  static QuadElem generator(QuadFieldPtr field);  // X

  const QuadFieldPtr& field() const noexcept { return field_; }
  const FieldContext& context() const noexcept { return a_.context(); }
  const Padic& a() const noexcept { return a_; }
  const Padic& b() const noexcept { return b_; }

  bool is_zero() const noexcept { return a_.is_zero() && b_.is_zero(); }
  bool in_base() const noexcept { return b_.is_zero(); }
  // unramified: min of coordinate valuations; ramified: normalized nu_E = nu_F(norm)
  int valuation() const;
  int precision() const noexcept;

  QuadElem operator-() const;
  QuadElem operator+(const QuadElem& o) const;
  QuadElem operator-(const QuadElem& o) const;
  QuadElem operator*(const QuadElem& o) const;
  QuadElem operator/(const QuadElem& o) const;
  QuadElem operator*(const Padic& s) const;
  QuadElem& operator+=(const QuadElem& o) { return *this = *this + o; }
  QuadElem& operator-=(const QuadElem& o) { return *this = *this - o; }
  QuadElem& operator*=(const QuadElem& o) { return *this = *this * o; }
  QuadElem inverse() const;
  QuadElem conj() const;  // tau on L, sigma_E on E
  Padic norm() const;
  Padic trace() const;
  QuadElem shift(int k) const;

  bool operator==(const QuadElem& o) const { return (*this - o).is_zero(); }
  bool operator!=(const QuadElem& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  void check_field(const QuadElem& o) const;
  QuadFieldPtr field_;
  Padic a_, b_;
};

bool same_field(const QuadField& x, const QuadField& y);
bool is_unramified_L(const QuadElem& x);

// --- residue fields -------------------------------------------------------
namespace residue {
long mod(long a, long p);
long powmod(long b, unsigned long e, long p);
long inv(long a, long p);
int legendre(long a, long p);     // 0, 1, -1
long sqrt(long a, long p);        // a must be a nonzero QR; returns the root <= (p-1)/2
long smallest_nonresidue(long p);
}  // namespace residue

// --- decision procedures ----------------------------------------------------
bool is_square(const Padic& x);
bool is_square(const QuadElem& x);  // x in L
Padic sqrt(const Padic& x);
QuadElem sqrt(const QuadElem& x);   // x in L
QuadElem find_nonsquare_unit_L(const FieldContext& ctx);

// Hilbert symbol (a, b)_p for odd p, a, b in F^x
int hilbert_symbol(const Padic& a, const Padic& b);
bool is_norm(const Padic& t, const QuadField& E);
// some x in E with N(x) = t; throws NotANorm
QuadElem solve_norm_equation(const QuadFieldPtr& E, const Padic& t);

// --- the tagged value used at API/JSON boundaries ---------------------------
using LocalFieldElement = std::variant<Padic, QuadElem>;
enum class ArithOp { add, sub, mul, div };
LocalFieldElement field_arith(const LocalFieldElement& x, const LocalFieldElement& y, ArithOp op);
int valuation(const LocalFieldElement& x);
LocalFieldElement tau_conj(const LocalFieldElement& x);
std::pair<Padic, Padic> norm_trace_L(const LocalFieldElement& x);
bool is_square(const LocalFieldElement& x);
LocalFieldElement sqrt(const LocalFieldElement& x);

// helpers used by generic matrix code
inline Padic zero_like(const Padic& x) { return Padic(x.context(), 0); }
inline Padic one_like(const Padic& x) { return Padic(x.context(), 1); }
inline int pivot_weight(const Padic& x) { return x.valuation(); }
inline Padic inverse(const Padic& x) { return x.inverse(); }
inline QuadElem zero_like(const QuadElem& x) { return QuadElem(x.field(), 0); }
inline QuadElem one_like(const QuadElem& x) { return QuadElem(x.field(), 1); }
inline int pivot_weight(const QuadElem& x) { return x.valuation(); }
inline QuadElem inverse(const QuadElem& x) { return x.inverse(); }

}  // namespace hermiwitt
