#include "telic/quad.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "telic/errors.hpp"

namespace telic {

// ---------------------------------------------------------------------------
// Dyadic

void Dyadic::canonicalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ & 1) == 0) {
    num_ >>= 1;
    --exp_;
  }
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  unsigned e = std::max(exp_, o.exp_);
  return Dyadic((num_ << (e - exp_)) + (o.num_ << (e - o.exp_)), e);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const {
  return Dyadic(num_ * o.num_, exp_ + o.exp_);
}

int Dyadic::compare(const Dyadic& a, const Dyadic& b) {
  unsigned e = std::max(a.exp_, b.exp_);
  return sgn((a.num_ << (e - a.exp_)) - (b.num_ << (e - b.exp_)));
}

// ---------------------------------------------------------------------------
// Quad

Quad::Quad(const Dyadic& d) : p_(d.numerator()), q_(0), den_(pow2(d.exponent())) {}

void Quad::canonicalize() {
  if (den_ == 0) throw std::domain_error("Quad: zero denominator");
  if (den_ < 0) {
    den_ = -den_;
    p_ = -p_;
    q_ = -q_;
  }
  if (p_ == 0 && q_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(boost::multiprecision::gcd(abs(p_), abs(q_)), den_);
  if (g > 1) {
    p_ /= g;
    q_ /= g;
    den_ /= g;
  }
}

Quad Quad::operator+(const Quad& o) const {
  return Quad(p_ * o.den_ + o.p_ * den_, q_ * o.den_ + o.q_ * den_, den_ * o.den_);
}

Quad Quad::operator-(const Quad& o) const { return *this + (-o); }

Quad Quad::operator*(const Quad& o) const {
  return Quad(p_ * o.p_ + 2 * q_ * o.q_, p_ * o.q_ + q_ * o.p_, den_ * o.den_);
}

Quad Quad::operator/(const Quad& o) const {
  if (o.sign() == 0) throw std::domain_error("Quad: division by zero");
  // 1 / ((p + q sqrt2)/d) = d (p - q sqrt2) / (p^2 - 2 q^2); the norm is
  // nonzero for o != 0 because sqrt2 is irrational.
  BigInt norm = o.p_ * o.p_ - 2 * o.q_ * o.q_;
  return *this * Quad(o.den_ * o.p_, -o.den_ * o.q_, norm);
}

int Quad::sign() const {
  int sp = sgn(p_), sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // Signs disagree: the dominant term decides. p^2 == 2 q^2 cannot happen
  // for q != 0, but treat it as zero rather than trusting the algebra.
  BigInt pp = p_ * p_, qq = 2 * q_ * q_;
  if (pp == qq) return 0;
  return pp > qq ? sp : sq;
}

BigInt Quad::floor() const {
  BigInt t = p_;
  if (q_ != 0) {
    BigInt m = isqrt(2 * q_ * q_);
    // floor(q sqrt2): for q > 0 it is isqrt(2q^2); for q < 0 the value is
    // strictly between integers, so the floor is -(isqrt(2q^2) + 1).
    t += q_ > 0 ? m : -(m + 1);
  }
  return floor_div(t, den_);
}

std::optional<Dyadic> Quad::to_dyadic() const {
  if (!is_dyadic()) return std::nullopt;
  return Dyadic(p_, log2_exact(den_));
}

double Quad::approx() const {
  static const double kSqrt2 = std::sqrt(2.0);
  return (p_.convert_to<double>() + q_.convert_to<double>() * kSqrt2) /
         den_.convert_to<double>();
}

// ---------------------------------------------------------------------------
// Wire grammar

namespace {

struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& expected) {
    skip_ws();
    std::string got = pos < text.size() ? std::string        // next run of non-space
                      (text.substr(pos, std::min<std::size_t>(8, text.size() - pos)))
                                        : std::string("end of input");
    throw ParseError("number: expected " + expected + ", got '" + got + "' at offset " +
                     std::to_string(pos));
  }

  bool eat_keyword(std::string_view kw) {
    skip_ws();
    if (text.substr(pos, kw.size()) == kw) {
      pos += kw.size();
      return true;
    }
    return false;
  }

  BigInt parse_uint() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) fail("an unsigned integer");
    return BigInt(std::string(text.substr(start, pos - start)));
  }

  BigInt parse_int() {
    skip_ws();
    bool neg = eat('-');
    if (!neg) eat('+');
    BigInt v = parse_uint();
    return neg ? -v : v;
  }
};

// <int> | <int> "*" "sqrt2" | [-]"sqrt2"  ->  (rational part, sqrt2 coefficient)
std::pair<BigInt, BigInt> parse_term(Cursor& c) {
  c.skip_ws();
  std::size_t mark = c.pos;
  bool neg = c.eat('-');
  if (!neg) c.eat('+');
  if (c.eat_keyword("sqrt2")) return {0, neg ? -1 : 1};
  c.pos = mark;
  BigInt v = c.parse_int();
  if (c.eat('*')) {
    if (!c.eat_keyword("sqrt2")) c.fail("'sqrt2' after '*'");
    return {0, v};
  }
  return {v, 0};
}

// "2^"<uint> or plain <uint>. pow2_only rejects plain non-powers-of-two.
BigInt parse_denominator(Cursor& c, bool pow2_only) {
  c.skip_ws();
  std::size_t mark = c.pos;
  BigInt base = c.parse_uint();
  if (c.eat('^')) {
    if (base != 2) {
      c.pos = mark;
      c.fail("base 2 in a power denominator");
    }
    BigInt e = c.parse_uint();
    if (e > 1u << 20) throw ParseError("number: denominator exponent too large");
    return pow2(e.convert_to<unsigned>());
  }
  if (base == 0) {
    c.pos = mark;
    c.fail("a denominator >= 1");
  }
  if (pow2_only && !is_pow2(base))
    throw ParseError("number: denominator " + base.str() +
                     " is not a power of two (parenthesize for general denominators)");
  return base;
}

}  // namespace

Quad parse_number(std::string_view text) {
  Cursor c{text};
  BigInt p, q, den = 1;

  if (c.eat('(')) {
    auto first = parse_term(c);
    p = first.first;
    q = first.second;
    if (c.peek() == '+' || c.peek() == '-') {
      bool neg = c.eat('-');
      if (!neg) c.eat('+');
      auto second = parse_term(c);
      if (second.second == 0) c.fail("a sqrt2 term after the sign");
      if (q != 0) c.fail("at most one sqrt2 term");
      q = neg ? -second.second : second.second;
    }
    if (!c.eat(')')) c.fail("')'");
    if (!c.eat('/')) c.fail("'/' after ')'");
    den = parse_denominator(c, /*pow2_only=*/false);
  } else {
    auto first = parse_term(c);
    p = first.first;
    q = first.second;
    if (c.peek() == '+' || c.peek() == '-') {
      bool neg = c.eat('-');
      if (!neg) c.eat('+');
      auto second = parse_term(c);
      if (second.second == 0) c.fail("a sqrt2 term after the sign");
      if (q != 0) c.fail("at most one sqrt2 term");
      q = neg ? -second.second : second.second;
      if (c.peek() == '/') c.fail("no '/' after an unparenthesized sum (use parentheses)");
    } else if (c.eat('/')) {
      den = parse_denominator(c, /*pow2_only=*/true);
    }
  }

  if (!c.done()) c.fail("end of input");
  return Quad(std::move(p), std::move(q), std::move(den));
}

std::string format_number(const Quad& x) {
  std::ostringstream out;
  if (x.q() == 0) {
    if (x.den() == 1) {
      out << x.p();
    } else if (is_pow2(x.den())) {
      out << x.p() << '/' << x.den();
    } else {
      out << '(' << x.p() << ")/" << x.den();
    }
    return out.str();
  }
  out << '(' << x.p() << (x.q() > 0 ? " + " : " - ") << abs(x.q()) << "*sqrt2)";
  if (is_pow2(x.den()))
    out << "/2^" << log2_exact(x.den());
  else
    out << '/' << x.den();
  return out.str();
}

std::string format_number(const Dyadic& x) { return format_number(Quad(x)); }

}  // namespace telic
