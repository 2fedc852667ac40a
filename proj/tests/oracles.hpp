#pragma once
// Test-only oracles, deliberately written without the library's decision code.

#include <set>
#include <utility>

namespace oracle {

inline long mulmod(long a, long b, long p) { return static_cast<long>((static_cast<__int128>(a) * b) % p + p) % p; }

// (a + b w)^e in F_p[w]/(w^2 - r)
inline std::pair<long, long> fp2_pow(long a, long b, long r, long p, unsigned long e) {
  long ra = 1, rb = 0;
  a = ((a % p) + p) % p;
  b = ((b % p) + p) % p;
  while (e) {
    if (e & 1) {
      long na = (mulmod(ra, a, p) + mulmod(mulmod(rb, b, p), r, p)) % p;
      long nb = (mulmod(ra, b, p) + mulmod(rb, a, p)) % p;
      ra = na;
      rb = nb;
    }
    long na = (mulmod(a, a, p) + mulmod(mulmod(b, b, p), r, p)) % p;
    long nb = mulmod(2 * a % p, b, p);
    a = na;
    b = nb;
    e >>= 1;
  }
  return {ra, rb};
}

// Euler criterion in the field with p^2 elements
inline bool fp2_is_square(long a, long b, long r, long p) {
  auto [x, y] = fp2_pow(a, b, r, p, static_cast<unsigned long>((p * p - 1) / 2));
  return x == 1 && y == 0;
}

// squares mod p by enumeration
inline bool fp_is_square(long a, long p) {
  a = ((a % p) + p) % p;
  for (long x = 1; x < p; ++x)
    if (x * x % p == a) return true;
  return false;
}

inline std::set<std::pair<long, long>> fp2_squares(long r, long p) {
  std::set<std::pair<long, long>> out;
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b) {
      if (a == 0 && b == 0) continue;
      out.insert({(a * a + r * (b * b % p)) % p, 2 * a * b % p});
    }
  return out;
}

// t = s^2 - c b^2 solvable modulo p^3 with integral s, b; valid as a norm
// test when nu(t), nu(c) are 0 or 1 (Hensel lifts the rest).
inline bool norm_mod_p3(long t, long c, long p) {
  const long m = p * p * p;
  t = ((t % m) + m) % m;
  c = ((c % m) + m) % m;
  for (long s = 0; s < m; ++s)
    for (long b = 0; b < m; ++b) {
      long v = (mulmod(s, s, m) - mulmod(c, mulmod(b, b, m), m) + m) % m;
      if (v == t) return true;
    }
  return false;
}

}  // namespace oracle
