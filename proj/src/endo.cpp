#include "hermiwitt/endo.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "hermiwitt/errors.hpp"

namespace hermiwitt {

const char* to_string(TokenKind k) {
  switch (k) {
    case TokenKind::simple_nonnull:
      return "simple_nonnull";
    case TokenKind::simple_null:
      return "simple_null";
    case TokenKind::nonsimple_pair:
      return "nonsimple_pair";
  }
  return "?";
}

TokenKind token_kind_from_string(const std::string& s) {
  if (s == "simple_nonnull") return TokenKind::simple_nonnull;
  if (s == "simple_null") return TokenKind::simple_null;
  if (s == "nonsimple_pair") return TokenKind::nonsimple_pair;
  throw InvalidParameter("unknown token kind '" + s + "'");
}

// the anisotropic table over D is the popcount of the generator bits
// (checked against is_isotropic in the wittclass suite)
int anisotropic_dim(const WittClassD& c) { return std::popcount(c.bits()); }

Tower Tower::null(const WittClassD& c) {
  if (c.is_hyperbolic()) return hyp();
  return Tower{false, hermiwitt::anisotropic_dim(c), 0, c};
}

int Tower::anisotropic_dim() const { return hyperbolic ? 0 : diman; }

bool Tower::operator==(const Tower& o) const {
  if (hyperbolic || o.hyperbolic) return hyperbolic == o.hyperbolic;
  return diman == o.diman && selector == o.selector && null_class == o.null_class;
}

std::string Tower::to_string() const {
  if (hyperbolic) return "HYP";
  if (null_class) return null_class->to_string();
  return "(" + std::to_string(diman) + "," + std::to_string(selector) + ")";
}

bool norm_containment(int e_parity, int f_parity) { return e_parity == 0 && f_parity == 0; }

int degree_factor(int degree) {
  if (degree < 1) throw InvalidParameter("token degree must be positive");
  return 2 / std::gcd(degree, 2);
}

namespace {

void check_token(const EndoClassToken& t) {
  if (t.id.empty()) throw InvalidParameter("token without id");
  if (t.degree < 1) throw InvalidParameter("token " + t.id + ": degree must be positive");
  if (t.kind == TokenKind::simple_null && t.degree != 1) throw InvalidParameter("token " + t.id + ": null class has degree 1");
  // an odd degree would give three tower shapes per parity instead of two
  if (t.kind == TokenKind::simple_nonnull && t.degree % 2)
    throw InvalidParameter("token " + t.id + ": simple non-null class needs even degree");
  for (int b : {t.e_parity, t.f_parity})
    if (b != 0 && b != 1) throw InvalidParameter("token " + t.id + ": parities are bits");
}

WittClassD odd_trace(const EndoClassToken& t, int epsilon) {
  WittClassD c = WittClassD::from_names(epsilon, t.odd_trace);
  if (c.is_hyperbolic()) throw InvalidParameter("token " + t.id + ": odd_trace must be anisotropic");
  return c;
}

// type-level invariants of one support entry; throws InvalidParameter
void check_entry(const SupportEntry& s, int epsilon) {
  const EndoClassToken& t = s.token;
  check_token(t);
  if (s.f1 < 0) throw InvalidParameter("token " + t.id + ": f1 must be nonnegative");
  const Tower& tw = s.f2.tower;
  switch (t.kind) {
    case TokenKind::nonsimple_pair:
      if (!tw.hyperbolic) throw InvalidParameter("token " + t.id + ": nonsimple classes carry the 0 type");
      if (s.f1 % degree_factor(t.degree)) throw InvalidParameter("token " + t.id + ": f1 fails divisibility");
      break;
    case TokenKind::simple_null:
      if (s.f2.beta && !tw.hyperbolic) throw InvalidParameter("token " + t.id + ": null class needs beta = ZERO");
      if (!tw.hyperbolic && (!tw.null_class || tw.null_class->epsilon() != epsilon))
        throw InvalidParameter("token " + t.id + ": null tower must be a Witt class with the ambient epsilon");
      if (s.f1 % degree_factor(t.degree)) throw InvalidParameter("token " + t.id + ": f1 fails divisibility");
      break;
    case TokenKind::simple_nonnull:
      if (!tw.hyperbolic) {
        if (!s.f2.beta || *s.f2.beta != t.id) throw InvalidParameter("token " + t.id + ": beta must reference the token");
        if (tw.null_class) throw InvalidParameter("token " + t.id + ": simple tower given as a D-class");
        // two tower tokens per parity: HYP and (2,1); (1,0) and (1,1)
        bool ok = (tw.diman == 1 && (tw.selector == 0 || tw.selector == 1)) || (tw.diman == 2 && tw.selector == 1);
        if (!ok) throw InvalidParameter("token " + t.id + ": tower must be HYP, (1,0), (1,1) or (2,1)");
        if (tw.diman == 1) odd_trace(t, epsilon);
      }
      break;
  }
}

}  // namespace

WittClassD WT_D(const SupportEntry& s, int epsilon) {
  const Tower& tw = s.f2.tower;
  if (tw.hyperbolic) return WittClassD::hyperbolic(epsilon);
  switch (s.token.kind) {
    case TokenKind::nonsimple_pair:
      return WittClassD::hyperbolic(epsilon);
    case TokenKind::simple_null:
      return *tw.null_class;
    case TokenKind::simple_nonnull:
      // same parity, same trace: the selector bit is invisible here
      return tw.diman % 2 ? odd_trace(s.token, epsilon) : WittClassD::hyperbolic(epsilon);
  }
  return WittClassD::hyperbolic(epsilon);
}

bool witt_type_equiv(const WittTypeRef& a, const WittTypeRef& b, int epsilon) {
  if (a.tower.hyperbolic && b.tower.hyperbolic) return true;
  if (a.beta.has_value() != b.beta.has_value()) return false;
  if (!a.beta) return a.tower == b.tower;
  const EndoClassToken &x = *a.beta, &y = *b.beta;
  if (x.min_tr != y.min_tr) throw IncomparableTokens("beta_min,tr differ: " + x.min_tr + " vs " + y.min_tr);
  if (norm_containment(x.e_parity, x.f_parity) != norm_containment(y.e_parity, y.f_parity))
    throw IncomparableTokens("norm containment differs between " + x.id + " and " + y.id);
  if (a.tower.hyperbolic != b.tower.hyperbolic) return false;
  auto trace = [&](const WittTypeRef& r) {
    return WT_D(SupportEntry{*r.beta, 0, WittType{r.beta->id, r.tower}}, epsilon);
  };
  return trace(a) == trace(b) && a.tower.diman == b.tower.diman && a.tower.selector == b.tower.selector;
}

std::map<std::string, int> lift(const EndoParameter& fm) {
  std::map<std::string, int> out;
  for (const auto& s : fm.support) {
    check_entry(s, fm.epsilon);
    const EndoClassToken& t = s.token;
    if (out.count(t.id)) throw InvalidParameter("token " + t.id + " listed twice");
    if (t.kind == TokenKind::nonsimple_pair) {
      out[t.id] = s.f1;
      out[t.id + "*"] = s.f1;
    } else {
      out[t.id] = 2 * s.f1 + s.f2.tower.anisotropic_dim() * degree_factor(t.degree);
    }
  }
  return out;
}

long degree(const EndoParameter& fm) {
  long d = 0;
  for (const auto& s : fm.support) {
    const EndoClassToken& t = s.token;
    if (t.kind == TokenKind::nonsimple_pair)
      d += 2L * s.f1 * t.degree;
    else
      d += static_cast<long>(2 * s.f1 + s.f2.tower.anisotropic_dim() * degree_factor(t.degree)) * t.degree;
  }
  return d;
}

Verdict validate(const EndoParameter& fm) {
  Verdict v;
  try {
    lift(fm);
  } catch (const Error& e) {
    v.ok = false;
    v.diagnostics.push_back(std::string("type: ") + e.what());
    return v;
  }
  if (fm.h_class.epsilon() != fm.epsilon) {
    v.ok = false;
    v.diagnostics.push_back("type: h_class has the wrong epsilon");
    return v;
  }
  if (std::count_if(fm.support.begin(), fm.support.end(), [](const SupportEntry& s) { return s.token.kind == TokenKind::simple_null; }) > 1) {
    v.ok = false;
    v.diagnostics.push_back("type: more than one null class");
  }
  if (degree(fm) != 2L * fm.m) {
    v.ok = false;
    v.diagnostics.push_back("degree");
  }
  WittClassD sum = WittClassD::hyperbolic(fm.epsilon);
  for (const auto& s : fm.support) sum += WT_D(s, fm.epsilon);
  if (sum != fm.h_class) {
    v.ok = false;
    v.diagnostics.push_back("witt_sum");
  }
  return v;
}

namespace {

struct Choice {
  int f1;
  WittType f2;
};

std::vector<Choice> simple_choices(const LiftEntry& e) {
  const EndoClassToken& t = e.token;
  std::vector<Choice> out;
  if (e.f % 2 == 0) {
    out.push_back({e.f / 2, WittType{std::nullopt, Tower::hyp()}});
    if (e.f >= 2) out.push_back({(e.f - 2) / 2, WittType{t.id, Tower::simple(2, 1)}});
  } else {
    for (int sel : {0, 1}) out.push_back({(e.f - 1) / 2, WittType{t.id, Tower::simple(1, sel)}});
  }
  return out;
}

}  // namespace

std::vector<EndoParameter> enumerate(const LiftInput& in) {
  if (in.h_class.epsilon() != in.epsilon) throw InvalidParameter("h_class has the wrong epsilon");
  std::vector<LiftEntry> entries = in.entries;
  std::sort(entries.begin(), entries.end(), [](const LiftEntry& a, const LiftEntry& b) { return a.token.id < b.token.id; });
  for (std::size_t i = 0; i + 1 < entries.size(); ++i)
    if (entries[i].token.id == entries[i + 1].token.id) throw InvalidParameter("token " + entries[i].token.id + " listed twice");

  long deg = 0;
  std::optional<std::size_t> null_at;
  WittClassD fixed_sum = WittClassD::hyperbolic(in.epsilon);
  std::vector<std::vector<Choice>> options(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const LiftEntry& e = entries[i];
    check_token(e.token);
    if (e.f < 0) throw InvalidParameter("token " + e.token.id + ": negative multiplicity");
    switch (e.token.kind) {
      case TokenKind::nonsimple_pair:
        deg += 2L * e.f * e.token.degree;
        if (e.f % degree_factor(e.token.degree)) throw InfeasibleLift("token " + e.token.id + ": f fails divisibility");
        options[i] = {{e.f, WittType{std::nullopt, Tower::hyp()}}};
        break;
      case TokenKind::simple_nonnull: {
        deg += static_cast<long>(e.f) * e.token.degree;
        options[i] = simple_choices(e);
        if (e.f % 2) fixed_sum += odd_trace(e.token, in.epsilon);
        break;
      }
      case TokenKind::simple_null:
        deg += e.f;
        if (null_at) throw InvalidParameter("more than one null class");
        null_at = i;
        break;
    }
  }
  if (deg != 2L * in.m) throw InfeasibleLift("lift degree " + std::to_string(deg) + " != 2m = " + std::to_string(2L * in.m));
  if (null_at) {
    // the constraint pins the null tower
    const LiftEntry& e = entries[*null_at];
    WittClassD need = in.h_class + fixed_sum;
    int d = anisotropic_dim(need);
    int f1 = e.f / 2 - d;
    if (e.f % 2 || f1 < 0 || f1 % degree_factor(1))
      throw InfeasibleLift("null class " + e.token.id + ": f = " + std::to_string(e.f) + " cannot carry " + need.to_string());
    options[*null_at] = {{f1, WittType{std::nullopt, Tower::null(need)}}};
  } else if (fixed_sum != in.h_class) {
    throw InfeasibleLift("Witt sum " + fixed_sum.to_string() + " != " + in.h_class.to_string() + " and no null class");
  }

  std::vector<EndoParameter> out;
  std::vector<std::size_t> idx(entries.size(), 0);
  for (;;) {
    EndoParameter fm{in.epsilon, in.m, in.h_class, {}};
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].f == 0) continue;
      const Choice& c = options[i][idx[i]];
      fm.support.push_back(SupportEntry{entries[i].token, c.f1, c.f2});
    }
    out.push_back(std::move(fm));
    // odometer, last token fastest so the output is lexicographic
    std::size_t k = entries.size();
    while (k > 0) {
      --k;
      if (++idx[k] < options[k].size()) break;
      idx[k] = 0;
      if (k == 0) return out;
    }
    if (entries.empty()) return out;
  }
}

long count(const LiftInput& in) { return static_cast<long>(enumerate(in).size()); }

long count_closed_form(const LiftInput& in) {
  int i0 = 0;
  bool null = false;
  for (const auto& e : in.entries) {
    if (e.token.kind == TokenKind::nonsimple_pair || e.f == 0) continue;
    ++i0;
    null |= e.token.kind == TokenKind::simple_null;
  }
  return 1L << (null ? i0 - 1 : i0);
}

LiftInput lift_input_of(const EndoParameter& fm) {
  LiftInput in{fm.epsilon, fm.m, fm.h_class, {}};
  auto l = lift(fm);
  for (const auto& s : fm.support) in.entries.push_back({s.token, l.at(s.token.id)});
  return in;
}

namespace {

WittClassD random_class(std::mt19937_64& rng, int eps, bool nonzero) {
  unsigned hi = eps == 1 ? 7 : 1;
  return WittClassD(eps, std::uniform_int_distribution<unsigned>(nonzero ? 1 : 0, hi)(rng));
}

}  // namespace

EndoParameter random_parameter(std::mt19937_64& rng, int epsilon) {
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  EndoParameter fm;
  fm.epsilon = epsilon;
  const int nsimple = uni(0, 3), npair = uni(0, 2);
  for (int i = 0; i < nsimple; ++i) {
    EndoClassToken t;
    t.id = "s" + std::to_string(i);
    t.degree = 2 * uni(1, 3);
    t.min_tr = "m0";
    t.odd_trace = random_class(rng, epsilon, true).names();
    t.e_parity = uni(0, 1);
    t.f_parity = uni(0, 1);
    int shape = uni(0, 3);
    Tower tw = shape == 0 ? Tower::hyp() : shape == 1 ? Tower::simple(2, 1) : Tower::simple(1, shape - 2);
    fm.support.push_back({t, uni(shape == 0 ? 1 : 0, 3), WittType{tw.hyperbolic ? std::nullopt : std::optional<std::string>(t.id), tw}});
  }
  for (int i = 0; i < npair; ++i) {
    EndoClassToken t;
    t.id = "p" + std::to_string(i);
    t.kind = TokenKind::nonsimple_pair;
    t.degree = uni(1, 4);
    fm.support.push_back({t, degree_factor(t.degree) * uni(1, 2), WittType{}});
  }
  if (uni(0, 1)) {
    EndoClassToken t;
    t.id = "z";
    t.kind = TokenKind::simple_null;
    WittClassD c = random_class(rng, epsilon, false);
    fm.support.push_back({t, 2 * uni(c.is_hyperbolic() ? 1 : 0, 2), WittType{std::nullopt, Tower::null(c)}});
  }
  fm.m = static_cast<int>(degree(fm) / 2);
  WittClassD sum = WittClassD::hyperbolic(epsilon);
  for (const auto& s : fm.support) sum += WT_D(s, epsilon);
  fm.h_class = sum;
  return fm;
}

}  // namespace hermiwitt
