#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace telic {

using BigInt = boost::multiprecision::cpp_int;

inline int sgn(const BigInt& x) { return x.sign(); }

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

/// floor(a / b) for b > 0. Plain operator/ truncates toward zero.
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --q;
  return q;
}

/// Largest m with m*m <= x. Pre: x >= 0.
/// boost's sqrt already truncates; the adjustment loops keep the two-sided
/// bound m^2 <= x < (m+1)^2 a hard guarantee rather than a library promise.
inline BigInt isqrt(const BigInt& x) {
  BigInt m = boost::multiprecision::sqrt(x);
  while (m * m > x) --m;
  while ((m + 1) * (m + 1) <= x) ++m;
  return m;
}

inline bool is_pow2(const BigInt& x) {
  return x > 0 && (x & (x - 1)) == 0;
}

/// e with 2^e == x. Pre: is_pow2(x).
inline unsigned log2_exact(BigInt x) {
  unsigned e = 0;
  while (x > 1) {
    x >>= 1;
    ++e;
  }
  return e;
}

}  // namespace telic
