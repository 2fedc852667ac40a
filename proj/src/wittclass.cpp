#include "hermiwitt/wittclass.hpp"

#include <map>
#include <mutex>

#include "hermiwitt/errors.hpp"

namespace hermiwitt {

WittClassD::WittClassD(int epsilon, unsigned bits) : eps_(epsilon), bits_(bits) {
  if (epsilon != 1 && epsilon != -1) throw InvalidParameter("epsilon must be +1 or -1");
  if (bits >= (epsilon == 1 ? 8u : 2u)) throw InvalidParameter("Witt class coordinates out of range");
}

std::vector<std::string> WittClassD::names() const {
  std::vector<std::string> out;
  if (eps_ == -1) {
    if (bits_) out.push_back("gskew");
    return out;
  }
  if (bits_ & kOne) out.push_back("g1");
  if (bits_ & kAlpha) out.push_back("galpha");
  if (bits_ & kPi) out.push_back("gpi");
  return out;
}

WittClassD WittClassD::from_names(int epsilon, const std::vector<std::string>& names) {
  unsigned bits = 0;
  for (const auto& n : names) {
    unsigned b;
    if (epsilon == -1 && n == "gskew")
      b = kSkew;
    else if (epsilon == 1 && n == "g1")
      b = kOne;
    else if (epsilon == 1 && n == "galpha")
      b = kAlpha;
    else if (epsilon == 1 && n == "gpi")
      b = kPi;
    else
      throw InvalidParameter("unknown generator '" + n + "' for epsilon " + std::to_string(epsilon));
    bits ^= b;
  }
  return WittClassD(epsilon, bits);
}

WittClassD WittClassD::operator+(const WittClassD& o) const {
  if (eps_ != o.eps_) throw EpsilonMismatch("adding Witt classes of different epsilon");
  return WittClassD(eps_, bits_ ^ o.bits_);
}

std::string WittClassD::to_string() const {
  std::string s = "{";
  auto n = names();
  for (std::size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + n[i];
  return s + "}";
}

Quat generator_representative(const FieldContext& ctx, unsigned bit, int epsilon) {
  if (epsilon == -1) return Quat::u(ctx) * Quat::pi(ctx);
  switch (bit) {
    case WittClassD::kOne: return Quat::one(ctx);
    case WittClassD::kAlpha: return Quat::from_L(find_nonsquare_unit_L(ctx));
    case WittClassD::kPi: return Quat::pi(ctx);
  }
  throw InvalidParameter("not a generator bit");
}

// ---------------------------------------------------------------------------

namespace {

void require_type(const Quat& d, int epsilon) {
  if (d.is_zero()) throw IndistinguishableZero("line entry is zero at tracked precision");
  SymmetryType want = epsilon == 1 ? SymmetryType::symmetric : SymmetryType::skew;
  if (symmetry_type(d) != want)
    throw WrongSymmetryType(std::string("expected a ") + to_string(want) + " element, got " + to_string(symmetry_type(d)));
}

int floor_div2(int v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

}  // namespace

WittClassD classify_line(const Quat& d, int epsilon) {
  if (epsilon != 1 && epsilon != -1) throw InvalidParameter("epsilon must be +1 or -1");
  require_type(d, epsilon);
  if (epsilon == -1) return WittClassD(-1, WittClassD::kSkew);
  const int k = floor_div2(d.nu_D());
  Quat s = d.shift(-k);
  if (s.nu_D() == 1) return WittClassD(1, WittClassD::kPi);
  // congruent mod nu_D to its unit L-part
  return WittClassD(1, is_square(s.a()) ? WittClassD::kOne : WittClassD::kAlpha);
}

WittClassD class_of_diagonal(const DiagonalForm& d) {
  WittClassD acc = WittClassD::hyperbolic(d.epsilon);
  for (const auto& e : d.entries) acc += classify_line(e, d.epsilon);
  return acc;
}

WittClassD class_of_form(const HermitianForm& h) { return class_of_diagonal(diagonalize(h).lines); }

// ---------------------------------------------------------------------------
// reduced norms modulo squares

namespace {

template <class Fn>
auto decide(Fn fn) {
  try {
    return fn();
  } catch (const PrecisionExhausted& e) {
    throw OracleInconclusive(e.what());
  } catch (const IndistinguishableZero& e) {
    throw OracleInconclusive(e.what());
  }
}

bool same_square_class(const Padic& x, const Padic& y) { return is_square(x * y); }

}  // namespace

bool is_isotropic(const DiagonalForm& d) {
  for (const auto& e : d.entries) require_type(e, d.epsilon);
  const std::size_t n = d.rank();
  if (n > 3) throw InvalidParameter("is_isotropic handles rank <= 3");
  if (n <= 1) return false;
  return decide([&]() {
    std::vector<Padic> nr;
    for (const auto& e : d.entries) nr.push_back(e.nrd());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (same_square_class(nr[i], nr[j])) return true;
    if (n == 2 || d.epsilon == -1) return false;
    // nrd classes of symmetric lines: [1], [r], [-p]
    const FieldContext& ctx = d.entries[0].context();
    Padic prod = nr[0] * nr[1] * nr[2];
    return is_square(prod) || same_square_class(prod, Padic(ctx, ctx.nonresidue())) ||
           same_square_class(prod, Padic(ctx, -ctx.prime()));
  });
}

bool equivalence_oracle(const Quat& d, const Quat& d2) {
  if (d.is_zero() || d2.is_zero()) throw IndistinguishableZero("equivalence_oracle on zero");
  SymmetryType t = symmetry_type(d);
  if (t == SymmetryType::neither || symmetry_type(d2) != t)
    throw WrongSymmetryType("equivalence_oracle needs two symmetric or two skew elements");
  return decide([&]() {
    if ((d.nu_D() - d2.nu_D()) % 2 != 0) return false;
    return same_square_class(d.nrd(), d2.nrd());
  });
}

// ---------------------------------------------------------------------------

namespace {

DiagonalForm representative_lines(const FieldContext& ctx, const WittClassD& c) {
  DiagonalForm d{c.epsilon(), {}};
  if (c.epsilon() == -1) {
    if (c.bits()) d.entries.push_back(generator_representative(ctx, WittClassD::kSkew, -1));
    return d;
  }
  for (unsigned b : {WittClassD::kOne, WittClassD::kAlpha, WittClassD::kPi})
    if (c.bits() & b) d.entries.push_back(generator_representative(ctx, b, 1));
  return d;
}

// drop isotropic pairs until the remainder is certified anisotropic
DiagonalForm reduce(DiagonalForm d) {
  bool changed = true;
  while (changed && d.rank() >= 2) {
    changed = false;
    for (std::size_t i = 0; i < d.rank() && !changed; ++i)
      for (std::size_t j = i + 1; j < d.rank() && !changed; ++j)
        if (is_isotropic(DiagonalForm{d.epsilon, {d.entries[i], d.entries[j]}})) {
          d.entries.erase(d.entries.begin() + static_cast<long>(j));
          d.entries.erase(d.entries.begin() + static_cast<long>(i));
          changed = true;
        }
  }
  if (d.rank() == 3 && is_isotropic(d)) throw OracleInconclusive("rank-3 representative could not be reduced");
  return d;
}

}  // namespace

std::array<int, 8> anisotropic_table(const FieldContext& ctx, int epsilon) {
  static std::mutex mu;
  static std::map<std::pair<const FieldContext*, int>, std::array<int, 8>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({&ctx, epsilon});
    if (it != cache.end()) return it->second;
  }
  std::array<int, 8> table{};
  const unsigned count = epsilon == 1 ? 8 : 2;
  for (unsigned bits = 0; bits < count; ++bits)
    table[bits] = static_cast<int>(reduce(representative_lines(ctx, WittClassD(epsilon, bits))).rank());
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(std::make_pair(&ctx, epsilon), table);
  return table;
}

int anisotropic_dim(const FieldContext& ctx, const WittClassD& c) { return anisotropic_table(ctx, c.epsilon())[c.bits()]; }

DiagonalForm anisotropic_representative(const FieldContext& ctx, const WittClassD& c) {
  return reduce(representative_lines(ctx, c));
}

}  // namespace hermiwitt
