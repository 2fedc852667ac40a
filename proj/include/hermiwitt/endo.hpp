#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hermiwitt/wittclass.hpp"

namespace hermiwitt {

// Token-level self-dual endo-classes. Nothing here touches p-adic numbers:
// the invariants that would need element-level wild arithmetic are declared
// attributes of the token.

enum class TokenKind { simple_nonnull, simple_null, nonsimple_pair };
const char* to_string(TokenKind k);
TokenKind token_kind_from_string(const std::string& s);  // InvalidParameter

struct EndoClassToken {
  std::string id;
  TokenKind kind = TokenKind::simple_nonnull;
  int degree = 1;
  // simple non-null only
  int e_parity = 0;  // 0 even, 1 odd
  int f_parity = 0;
  std::string min_tr;  // class of beta_{min,tr}, compared for condition (A)
  std::vector<std::string> odd_trace;  // Tr of an odd-dimensional tower, as generator names

  bool operator==(const EndoClassToken& o) const = default;
};

// Tower token: HYP, (diman, selector) for simple non-null classes, or a full
// Witt class over D for the null class (E = F there).
struct Tower {
  bool hyperbolic = true;
  int diman = 0;
  int selector = 0;
  std::optional<WittClassD> null_class;

  static Tower hyp() { return Tower{}; }
  static Tower simple(int diman, int selector) { return Tower{false, diman, selector, std::nullopt}; }
  static Tower null(const WittClassD& c);
  int anisotropic_dim() const;
  bool operator==(const Tower& o) const;
  bool operator!=(const Tower& o) const { return !(*this == o); }
  std::string to_string() const;
};

// anisotropic dimension over D: one line per generator bit
int anisotropic_dim(const WittClassD& c);

struct WittType {
  std::optional<std::string> beta;  // token id, or ZERO
  Tower tower;
  bool is_zero_type() const { return tower.hyperbolic; }
};

struct SupportEntry {
  EndoClassToken token;
  int f1 = 0;
  WittType f2;
};

struct EndoParameter {
  int epsilon = 1;
  int m = 0;  // dim_D V
  WittClassD h_class = WittClassD::hyperbolic(1);
  std::vector<SupportEntry> support;
};

bool norm_containment(int e_parity, int f_parity);

// the three bullets; IncomparableTokens when (A) or (B) fails
struct WittTypeRef {
  std::optional<EndoClassToken> beta;  // nullopt = ZERO
  Tower tower;
};
bool witt_type_equiv(const WittTypeRef& a, const WittTypeRef& b, int epsilon);

// deg(D) / gcd(deg(c), deg(D)) with deg(D) = 2
int degree_factor(int degree);

// GL-lift: simple classes keep the token id; a nonsimple pair contributes
// id and id* (its sigma-dual), each with multiplicity f1
std::map<std::string, int> lift(const EndoParameter& fm);
long degree(const EndoParameter& fm);
WittClassD WT_D(const SupportEntry& s, int epsilon);

struct Verdict {
  bool ok = true;
  std::vector<std::string> diagnostics;
};
Verdict validate(const EndoParameter& fm);

// GL-lift grouped into self-dual tokens
struct LiftEntry {
  EndoClassToken token;
  int f = 0;  // f(c); for a nonsimple pair the common value on c and c*
};
struct LiftInput {
  int epsilon = 1;
  int m = 0;
  WittClassD h_class = WittClassD::hyperbolic(1);
  std::vector<LiftEntry> entries;
};

std::vector<EndoParameter> enumerate(const LiftInput& in);
long count(const LiftInput& in);
// 2^{#I0} or 2^{#I0 - 1}; I0 = fixed classes with f > 0
long count_closed_form(const LiftInput& in);

// the GL-lift of a parameter, grouped back into LiftEntries
LiftInput lift_input_of(const EndoParameter& fm);
// a random valid parameter with up to three simple, two nonsimple and one null
// class; used by the property suites
EndoParameter random_parameter(std::mt19937_64& rng, int epsilon);

}  // namespace hermiwitt
