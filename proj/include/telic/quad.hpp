#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "telic/bigint.hpp"

namespace telic {

/// Exact dyadic rational num / 2^exp.
///
/// Canonical form: num odd or zero, and exp == 0 when num == 0. Grid points,
/// certificates and solver witnesses live here; general field values live in
/// Quad below.
class Dyadic {
 public:
  Dyadic() = default;
  explicit Dyadic(BigInt integer) : num_(std::move(integer)) { canonicalize(); }
  Dyadic(BigInt numerator, unsigned exponent)
      : num_(std::move(numerator)), exp_(exponent) {
    canonicalize();
  }

  const BigInt& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }

  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  Dyadic operator-() const { return Dyadic(-num_, exp_); }

  bool operator==(const Dyadic&) const = default;
  static int compare(const Dyadic& a, const Dyadic& b);
  bool operator<(const Dyadic& o) const { return compare(*this, o) < 0; }

 private:
  void canonicalize();

  BigInt num_ = 0;
  unsigned exp_ = 0;
};

/// Exact element of the quadratic field Q(sqrt2):
///
///     value = (p + q * sqrt2) / den,   den >= 1,  gcd(p, q, den) == 1.
///
/// Dyadic denominators are the common case and the only ones the plain wire
/// forms speak; odd denominators arise internally (periodic points of the
/// tent map, preimages under the doubling map) and round-trip through the
/// parenthesized wire form.
///
/// All comparisons are decided by integer arithmetic alone: the sign of
/// p + q*sqrt2 follows from the signs of p and q, or, when they disagree,
/// from comparing p^2 against 2q^2 and attributing the sign of the dominant
/// term. No floating point anywhere.
class Quad {
 public:
  Quad() : p_(0), q_(0), den_(1) {}
  Quad(long v) : p_(v), q_(0), den_(1) {}  // NOLINT: implicit by design
  explicit Quad(BigInt p) : p_(std::move(p)), q_(0), den_(1) {}
  Quad(BigInt p, BigInt q, BigInt den)
      : p_(std::move(p)), q_(std::move(q)), den_(std::move(den)) {
    canonicalize();
  }
  Quad(const Dyadic& d);  // NOLINT: embedding is value-preserving

  static Quad sqrt2() { return Quad(0, 1, 1); }

  const BigInt& p() const { return p_; }
  const BigInt& q() const { return q_; }
  const BigInt& den() const { return den_; }

  Quad operator+(const Quad& o) const;
  Quad operator-(const Quad& o) const;
  Quad operator*(const Quad& o) const;
  Quad operator/(const Quad& o) const;  // throws std::domain_error on zero
  Quad operator-() const { return Quad(-p_, -q_, den_); }

  Quad& operator+=(const Quad& o) { return *this = *this + o; }
  Quad& operator-=(const Quad& o) { return *this = *this - o; }
  Quad& operator*=(const Quad& o) { return *this = *this * o; }

  /// -1, 0 or +1; exact.
  int sign() const;
  static int compare(const Quad& a, const Quad& b) { return (a - b).sign(); }

  bool operator==(const Quad&) const = default;  // canonical, so structural
  bool operator<(const Quad& o) const { return compare(*this, o) < 0; }
  bool operator<=(const Quad& o) const { return compare(*this, o) <= 0; }
  bool operator>(const Quad& o) const { return compare(*this, o) > 0; }
  bool operator>=(const Quad& o) const { return compare(*this, o) >= 0; }

  /// Exact floor. For q != 0 uses floor(q*sqrt2) = isqrt(2 q^2) (resp. its
  /// negative mirror), then floor(x / den) = floor(floor(x) / den).
  BigInt floor() const;

  /// value - floor(value), in [0, 1). The subtracted part is an integer.
  Quad frac() const { return *this - Quad(floor()); }

  bool is_rational() const { return q_ == 0; }
  bool is_integer() const { return q_ == 0 && den_ == 1; }
  bool is_dyadic() const { return q_ == 0 && is_pow2(den_); }
  std::optional<Dyadic> to_dyadic() const;

  /// Display-only decimal approximation; never used in any computation.
  double approx() const;

 private:
  void canonicalize();

  BigInt p_, q_, den_;
};

/// Parses the exact wire grammar:
///
///   <int>                            "3", "-2"
///   <int> "/" <uint pow2>            "3/8"        ("1/3" is an error)
///   [<int> "*"] "sqrt2" ["/" pow2]   "sqrt2", "3*sqrt2", "sqrt2/4"
///   "(" <int> [("+"|"-") <uint> "*sqrt2"] ")" "/" <denom>
///                                    "(-4 + 4*sqrt2)/2^2", "(2)/3"
///
/// where <denom> is "2^"<uint> or a plain <uint> >= 1. Only the parenthesized
/// form admits denominators that are not powers of two. Whitespace between
/// tokens is ignored. Errors name the offending token.
Quad parse_number(std::string_view text);

/// Emits the canonical wire form; parse_number(format_number(x)) == x.
std::string format_number(const Quad& x);
std::string format_number(const Dyadic& x);

}  // namespace telic
