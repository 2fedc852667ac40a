#include "hermiwitt/padic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "hermiwitt/errors.hpp"

namespace hermiwitt {

namespace {

mpz_class fmod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

constexpr int kMaxPrecision = 4096;

}  // namespace

// ---------------------------------------------------------------------------
// residue fields

namespace residue {

long mod(long a, long p) {
  long r = a % p;
  return r < 0 ? r + p : r;
}

long powmod(long b, unsigned long e, long p) {
  unsigned __int128 acc = 1, base = static_cast<unsigned long>(mod(b, p));
  while (e) {
    if (e & 1) acc = acc * base % static_cast<unsigned long>(p);
    base = base * base % static_cast<unsigned long>(p);
    e >>= 1;
  }
  return static_cast<long>(acc);
}

long inv(long a, long p) {
  a = mod(a, p);
  if (a == 0) throw DivisionByIndistinguishableZero("residue inverse of 0");
  return powmod(a, static_cast<unsigned long>(p - 2), p);
}

int legendre(long a, long p) {
  a = mod(a, p);
  if (a == 0) return 0;
  return powmod(a, static_cast<unsigned long>((p - 1) / 2), p) == 1 ? 1 : -1;
}

long smallest_nonresidue(long p) {
  for (long r = 2; r < p; ++r)
    if (legendre(r, p) == -1) return r;
  throw InvalidParameter("no non-residue mod " + std::to_string(p));
}

// Tonelli-Shanks
long sqrt(long a, long p) {
  a = mod(a, p);
  if (a == 0 || legendre(a, p) != 1) throw NotASquare("residue " + std::to_string(a) + " mod " + std::to_string(p));
  long q = p - 1;
  int s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  long z = smallest_nonresidue(p);
  long m = s;
  long c = powmod(z, q, p);
  long t = powmod(a, q, p);
  long x = powmod(a, (q + 1) / 2, p);
  auto mulm = [p](long u, long v) {
    return static_cast<long>(static_cast<unsigned __int128>(u) * static_cast<unsigned long>(v) % static_cast<unsigned long>(p));
  };
  while (t != 1) {
    long i = 0, t2 = t;
    while (t2 != 1) {
      t2 = mulm(t2, t2);
      ++i;
    }
    long b = c;
    for (long j = 0; j < m - i - 1; ++j) b = mulm(b, b);
    x = mulm(x, b);
    c = mulm(b, b);
    t = mulm(t, c);
    m = i;
  }
  return std::min(x, p - x);
}

}  // namespace residue

// ---------------------------------------------------------------------------
// FieldContext

FieldContext::FieldContext(long p, int n) : p_(p), n_(n), r_(residue::smallest_nonresidue(p)), pz_(p) {
  powers_.reserve(static_cast<std::size_t>(4 * n + 64));
  mpz_class acc = 1;
  for (int k = 0; k < 4 * n + 64; ++k) {
    powers_.push_back(acc);
    acc *= pz_;
  }
  l_ = std::make_shared<const QuadField>(Padic(*this, r_), "L");
}

const FieldContext& FieldContext::get(long prime, int precision) {
  if (prime < 3 || mpz_probab_prime_p(mpz_class(prime).get_mpz_t(), 30) == 0)
    throw InvalidParameter("p must be an odd prime, got " + std::to_string(prime));
  if (precision < 1 || precision > kMaxPrecision)
    throw InvalidParameter("precision out of range: " + std::to_string(precision));
  static std::mutex mu;
  static std::map<std::pair<long, int>, std::unique_ptr<FieldContext>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = registry[{prime, precision}];
  if (!slot) slot.reset(new FieldContext(prime, precision));
  return *slot;
}

mpz_class FieldContext::power(int k) const {
  if (k < 0) throw InvalidParameter("negative power of p");
  if (static_cast<std::size_t>(k) < powers_.size()) return powers_[static_cast<std::size_t>(k)];
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), pz_.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

// ---------------------------------------------------------------------------
// Padic

Padic::Padic(const FieldContext& ctx, long value) : Padic(from_scaled(ctx, mpz_class(value), 0, ctx.precision())) {}

Padic::Padic(const FieldContext& ctx, const mpz_class& value) : Padic(from_scaled(ctx, value, 0, ctx.precision())) {}

Padic Padic::zero(const FieldContext& ctx, int abs_precision) {
  int abs = std::min(abs_precision, ctx.precision());
  // a zero known only modulo p^abs, abs <= 0, is still information once
  // negative valuations are in play; below -N nothing meaningful survives
  if (abs < -ctx.precision())
    throw PrecisionExhausted("no p-adic digits left (absolute precision " + std::to_string(abs) + ")");
  return Padic(&ctx, mpz_class(0), abs, abs);
}

Padic Padic::from_scaled(const FieldContext& ctx, const mpz_class& num, int base_val, int abs) {
  abs = std::min(abs, ctx.precision());
  if (num == 0 || abs <= base_val) return zero(ctx, abs);
  mpz_class m = fmod(num, ctx.power(abs - base_val));
  if (m == 0) return zero(ctx, abs);
  unsigned long k = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), ctx.prime_z().get_mpz_t());
  return Padic(&ctx, m, base_val + static_cast<int>(k), abs);
}

Padic Padic::rational(const FieldContext& ctx, const mpz_class& num, const mpz_class& den) {
  return Padic(ctx, num) / Padic(ctx, den);
}

Padic Padic::p_power(const FieldContext& ctx, int k) { return from_scaled(ctx, mpz_class(1), k, k + ctx.precision()); }

int Padic::valuation() const {
  if (is_zero()) throw IndistinguishableZero("valuation of O(p^" + std::to_string(abs_) + ")");
  return val_;
}

long Padic::residue() const {
  if (is_zero()) throw IndistinguishableZero("residue of zero");
  return mpz_fdiv_ui(unit_.get_mpz_t(), static_cast<unsigned long>(ctx_->prime()));
}

std::vector<long> Padic::digits() const {
  std::vector<long> out;
  mpz_class u = unit_;
  for (int i = 0; i < relative_precision(); ++i) {
    out.push_back(static_cast<long>(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(ctx_->prime()))));
  }
  return out;
}

mpz_class Padic::representative() const {
  if (is_zero()) return 0;
  if (val_ < 0) throw InvalidParameter("negative valuation has no integral representative");
  return unit_ * ctx_->power(val_);
}

Padic Padic::operator-() const {
  if (is_zero()) return *this;
  return Padic(ctx_, ctx_->power(abs_ - val_) - unit_, val_, abs_);
}

Padic Padic::operator+(const Padic& o) const {
  int abs = std::min(abs_, o.abs_);
  int m = std::min(val_, o.val_);
  if (abs <= m) return zero(*ctx_, abs);
  mpz_class num = 0;
  if (!is_zero() && val_ - m < abs - m) num += unit_ * ctx_->power(val_ - m);
  if (!o.is_zero() && o.val_ - m < abs - m) num += o.unit_ * ctx_->power(o.val_ - m);
  return from_scaled(*ctx_, num, m, abs);
}

Padic Padic::operator-(const Padic& o) const { return *this + (-o); }

Padic Padic::operator*(const Padic& o) const {
  if (is_zero() || o.is_zero()) {
    int abs;
    if (is_zero() && o.is_zero())
      abs = abs_ + o.abs_;
    else if (is_zero())
      abs = abs_ + o.val_;
    else
      abs = o.abs_ + val_;
    return zero(*ctx_, abs);
  }
  int val = val_ + o.val_;
  int rel = std::min(abs_ - val_, o.abs_ - o.val_);
  return from_scaled(*ctx_, unit_ * o.unit_, val, val + rel);
}

Padic Padic::inverse() const {
  if (is_zero()) throw DivisionByIndistinguishableZero("inverse of O(p^" + std::to_string(abs_) + ")");
  int rel = abs_ - val_;
  mpz_class inv;
  mpz_class mod = ctx_->power(rel);
  mpz_invert(inv.get_mpz_t(), unit_.get_mpz_t(), mod.get_mpz_t());
  return from_scaled(*ctx_, inv, -val_, -val_ + rel);
}

Padic Padic::operator/(const Padic& o) const { return *this * o.inverse(); }

Padic Padic::shift(int k) const {
  if (is_zero()) return zero(*ctx_, abs_ + k);
  return from_scaled(*ctx_, unit_, val_ + k, abs_ + k);
}

Padic Padic::with_precision(int abs) const {
  if (abs >= abs_) return *this;
  if (is_zero()) return zero(*ctx_, abs);
  return from_scaled(*ctx_, unit_, val_, abs);
}

std::string Padic::to_string() const {
  std::ostringstream os;
  const long p = ctx_->prime();
  if (is_zero()) {
    os << "O(" << p << "^" << abs_ << ")";
    return os.str();
  }
  if (val_ >= 0)
    os << representative().get_str();
  else
    os << unit_.get_str() << "*" << p << "^" << val_;
  os << " + O(" << p << "^" << abs_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// quadratic extensions

bool same_field(const QuadField& x, const QuadField& y) {
  if (&x == &y) return true;
  return &x.base() == &y.base() && x.c() == y.c() && x.c().precision() == y.c().precision();
}

QuadField::QuadField(Padic c, std::string name) : c_(std::move(c)), name_(std::move(name)) {
  if (c_.is_zero()) throw NotQuadratic("X^2 = 0");
  if (is_square(c_)) throw NotQuadratic(c_.to_string() + " is a square in F");
}

QuadElem::QuadElem(QuadFieldPtr field, Padic a, Padic b) : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {}

QuadElem::QuadElem(QuadFieldPtr field, long a)
    : field_(std::move(field)), a_(Padic(field_->base(), a)), b_(Padic(field_->base(), 0)) {}

QuadElem QuadElem::from_base(QuadFieldPtr field, const Padic& a) {
  Padic z(field->base(), 0);
  return QuadElem(std::move(field), a, z);
}

QuadElem QuadElem::generator(QuadFieldPtr field) {
  const FieldContext& ctx = field->base();
  return QuadElem(std::move(field), Padic(ctx, 0), Padic(ctx, 1));
}

void QuadElem::check_field(const QuadElem& o) const {
  if (!same_field(*field_, *o.field_)) throw WrongBase("mixing elements of " + field_->name() + " and " + o.field_->name());
}

int QuadElem::valuation() const {
  if (is_zero()) throw IndistinguishableZero("valuation of zero in " + field_->name());
  const int vc = field_->c().valuation();
  int best = a_.is_zero() ? INT32_MAX : 2 * a_.valuation();
  if (!b_.is_zero()) best = std::min(best, 2 * b_.valuation() + vc);
  return (vc % 2 == 0) ? best / 2 : best;
}

int QuadElem::precision() const noexcept { return std::min(a_.precision(), b_.precision()); }

QuadElem QuadElem::operator-() const { return QuadElem(field_, -a_, -b_); }

QuadElem QuadElem::operator+(const QuadElem& o) const {
  check_field(o);
  return QuadElem(field_, a_ + o.a_, b_ + o.b_);
}

QuadElem QuadElem::operator-(const QuadElem& o) const {
  check_field(o);
  return QuadElem(field_, a_ - o.a_, b_ - o.b_);
}

QuadElem QuadElem::operator*(const QuadElem& o) const {
  check_field(o);
  return QuadElem(field_, a_ * o.a_ + field_->c() * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
}

QuadElem QuadElem::operator*(const Padic& s) const { return QuadElem(field_, a_ * s, b_ * s); }

QuadElem QuadElem::conj() const { return QuadElem(field_, a_, -b_); }

Padic QuadElem::norm() const { return a_ * a_ - field_->c() * b_ * b_; }

Padic QuadElem::trace() const { return a_ + a_; }

QuadElem QuadElem::inverse() const {
  if (is_zero()) throw DivisionByIndistinguishableZero("inverse of zero in " + field_->name());
  Padic n = norm();
  if (n.is_zero()) throw PrecisionExhausted("norm vanished at tracked precision");
  Padic ninv = n.inverse();
  return QuadElem(field_, a_ * ninv, -(b_ * ninv));
}

QuadElem QuadElem::operator/(const QuadElem& o) const {
  check_field(o);
  return *this * o.inverse();
}

QuadElem QuadElem::shift(int k) const { return QuadElem(field_, a_.shift(k), b_.shift(k)); }

std::string QuadElem::to_string() const {
  return "(" + a_.to_string() + ") + (" + b_.to_string() + ")*" + (field_->name() == "L" ? "u" : "X");
}

bool is_unramified_L(const QuadElem& x) { return same_field(*x.field(), *x.context().unramified()); }

// ---------------------------------------------------------------------------
// squares

namespace {

// residue of y with nu(y) >= 0 (caller guarantees)
long residue_of(const Padic& y) {
  if (y.is_zero()) {
    if (y.precision() < 1) throw PrecisionExhausted("residue unknown");
    return 0;
  }
  if (y.valuation() > 0) return 0;
  if (y.valuation() < 0) throw InvalidParameter("residue of a non-integral element");
  return y.residue();
}

void require_L(const QuadElem& x) {
  const QuadField& f = *x.field();
  if (f.c().is_zero() || f.c().valuation() != 0) throw WrongBase("expected an element of the unramified extension");
}

// (a0, b0) residue of x * p^{-nu(x)} for x in L
std::pair<long, long> unit_residue(const QuadElem& x) {
  const int v = x.valuation();
  return {residue_of(x.a().shift(-v)), residue_of(x.b().shift(-v))};
}

const Padic& half(const FieldContext& ctx) {
  thread_local std::map<const FieldContext*, Padic> cache;
  auto it = cache.find(&ctx);
  if (it == cache.end()) it = cache.emplace(&ctx, Padic(ctx, 2).inverse()).first;
  return it->second;
}

}  // namespace

bool is_square(const Padic& x) {
  if (x.is_zero()) throw IndistinguishableZero("is_square of zero");
  if (x.valuation() % 2 != 0) return false;
  return residue::legendre(x.residue(), x.context().prime()) == 1;
}

bool is_square(const QuadElem& x) {
  require_L(x);
  if (x.is_zero()) throw IndistinguishableZero("is_square of zero");
  // L|F unramified: nu_L(x) is nu_F of a coordinate, always "even" in the
  // normalization of the residue field; squareness is decided by the unit part.
  auto [a0, b0] = unit_residue(x);
  const long p = x.context().prime();
  const long c0 = x.field()->c().residue();
  long n = residue::mod(a0 * a0 - residue::mod(c0 * residue::mod(b0 * b0, p), p), p);
  return residue::legendre(n, p) == 1;
}

Padic sqrt(const Padic& x) {
  if (!is_square(x)) throw NotASquare(x.to_string());
  const FieldContext& ctx = x.context();
  const int v = x.valuation();
  Padic unit = x.shift(-v);
  Padic y(ctx, residue::sqrt(unit.residue(), ctx.prime()));
  for (int it = 0; it < 64; ++it) {
    if ((y * y - unit).is_zero()) break;
    y = (y + unit / y) * half(ctx);
  }
  if (!(y * y - unit).is_zero()) throw PrecisionExhausted("Hensel lifting did not converge");
  return y.shift(v / 2);
}

QuadElem sqrt(const QuadElem& x) {
  require_L(x);
  if (!is_square(x)) throw NotASquare(x.to_string());
  const FieldContext& ctx = x.context();
  const long p = ctx.prime();
  const long c0 = x.field()->c().residue();
  const int v = x.valuation();
  QuadElem unit = x.shift(-v);
  auto [a0, b0] = unit_residue(x);
  // residue root in F_p[u]/(u^2 - c0): s^2 + c0 t^2 = a0, 2 s t = b0
  long s0 = 0, t0 = 0;
  if (b0 == 0) {
    if (residue::legendre(a0, p) == 1) {
      s0 = residue::sqrt(a0, p);
    } else {
      t0 = residue::sqrt(residue::mod(a0 * residue::inv(c0, p), p), p);
    }
  } else {
    long n = residue::mod(a0 * a0 - c0 * residue::mod(b0 * b0, p), p);
    long m = residue::sqrt(n, p);
    long inv2 = residue::inv(2, p);
    bool found = false;
    for (long cand : {residue::mod((a0 + m) * inv2, p), residue::mod((a0 - m) * inv2, p)}) {
      if (cand != 0 && residue::legendre(cand, p) == 1) {
        s0 = residue::sqrt(cand, p);
        t0 = residue::mod(b0 * residue::inv(2 * s0, p), p);
        found = true;
        break;
      }
    }
    if (!found) throw NotASquare("residue root not found");
  }
  // lexicographically smaller of (s0, t0) and (-s0, -t0)
  std::pair<long, long> pos{s0, t0}, neg{residue::mod(-s0, p), residue::mod(-t0, p)};
  if (neg < pos) pos = neg;
  QuadElem y(x.field(), Padic(ctx, pos.first), Padic(ctx, pos.second));
  const Padic& h = half(ctx);
  for (int it = 0; it < 64; ++it) {
    if ((y * y - unit).is_zero()) break;
    y = (y + unit / y) * h;
  }
  if (!(y * y - unit).is_zero()) throw PrecisionExhausted("Hensel lifting did not converge");
  return y.shift(v / 2);
}

QuadElem find_nonsquare_unit_L(const FieldContext& ctx) {
  const auto& L = ctx.unramified();
  const long p = ctx.prime();
  // c*u has norm -c^2 r, a non-square exactly when -1 is a square in F.
  if (ctx.minus_one_is_square()) return QuadElem::generator(L);
  for (long j = 1; j < p; ++j) {
    QuadElem cand(L, Padic(ctx, j), Padic(ctx, 1));
    if (!is_square(cand)) return cand;
  }
  for (long a = 0; a < p; ++a)
    for (long b = 1; b < p; ++b) {
      QuadElem cand(L, Padic(ctx, a), Padic(ctx, b));
      if (!is_square(cand)) return cand;
    }
  throw InvalidParameter("no non-square unit found in L");
}

// ---------------------------------------------------------------------------
// norms

int hilbert_symbol(const Padic& a, const Padic& b) {
  const long p = a.context().prime();
  const long al = a.valuation(), be = b.valuation();
  const long ua = a.residue(), ub = b.residue();
  int s = ((al * be) % 2 != 0 && ((p - 1) / 2) % 2 != 0) ? -1 : 1;
  if (be % 2 != 0) s *= residue::legendre(ua, p);
  if (al % 2 != 0) s *= residue::legendre(ub, p);
  return s;
}

bool is_norm(const Padic& t, const QuadField& E) { return hilbert_symbol(t, E.c()) == 1; }

QuadElem solve_norm_equation(const QuadFieldPtr& E, const Padic& t) {
  const FieldContext& ctx = E->base();
  if (t.is_zero()) throw IndistinguishableZero("norm equation with t = 0");
  if (!is_norm(t, *E)) throw NotANorm(t.to_string() + " is not a norm from " + E->name());
  const Padic& c = E->c();
  Padic zero(ctx, 0);
  auto check = [&](const QuadElem& x) {
    if (!(x.norm() - t).is_zero()) throw PrecisionExhausted("norm equation solution lost precision");
    return x;
  };
  if (is_square(t)) return check(QuadElem(E, sqrt(t), zero));
  Padic q = -t / c;
  if (is_square(q)) return check(QuadElem(E, zero, sqrt(q)));
  // t = s^2 - c b^2 with nu(c b^2) = nu(t): sweep the residue of b
  const int diff = t.valuation() - c.valuation();
  if (diff % 2 != 0) throw NotANorm("valuation parity rules out a solution");
  const int k = diff / 2;
  for (long j = 1; j < ctx.prime(); ++j) {
    Padic b = Padic(ctx, j).shift(k);
    Padic z = t + c * b * b;
    if (!z.is_zero() && is_square(z)) return check(QuadElem(E, sqrt(z), b));
  }
  throw NotANorm("residue sweep exhausted");
}

// ---------------------------------------------------------------------------
// LocalFieldElement boundary

namespace {
const QuadElem& as_L(const LocalFieldElement& x, const char* op) {
  if (!std::holds_alternative<QuadElem>(x)) throw WrongBase(std::string(op) + " needs an element of L");
  const QuadElem& q = std::get<QuadElem>(x);
  require_L(q);
  return q;
}
}  // namespace

LocalFieldElement field_arith(const LocalFieldElement& x, const LocalFieldElement& y, ArithOp op) {
  if (x.index() != y.index()) throw WrongBase("operands live over different bases");
  return std::visit(
      [&](const auto& a) -> LocalFieldElement {
        using T = std::decay_t<decltype(a)>;
        const T& b = std::get<T>(y);
        switch (op) {
          case ArithOp::add: return a + b;
          case ArithOp::sub: return a - b;
          case ArithOp::mul: return a * b;
          case ArithOp::div: return a / b;
        }
        throw InvalidParameter("unknown op");
      },
      x);
}

int valuation(const LocalFieldElement& x) {
  return std::visit([](const auto& a) { return a.valuation(); }, x);
}

LocalFieldElement tau_conj(const LocalFieldElement& x) { return as_L(x, "tau_conj").conj(); }

std::pair<Padic, Padic> norm_trace_L(const LocalFieldElement& x) {
  const QuadElem& q = as_L(x, "norm_trace_L");
  return {q.norm(), q.trace()};
}

bool is_square(const LocalFieldElement& x) {
  return std::visit([](const auto& a) { return is_square(a); }, x);
}

LocalFieldElement sqrt(const LocalFieldElement& x) {
  return std::visit([](const auto& a) -> LocalFieldElement { return sqrt(a); }, x);
}

}  // namespace hermiwitt
