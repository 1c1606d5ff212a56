#pragma once

#include "telic/errors.hpp"
#include "telic/quad.hpp"

namespace telic {

/// Closed subinterval [lo, hi] of [0, 1]. Degenerate (lo == hi) is allowed.
class Interval {
 public:
  Interval(Quad lo, Quad hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_.sign() < 0 || Quad::compare(hi_, Quad(1)) > 0 || Quad::compare(lo_, hi_) > 0)
      throw RangeError("interval: need 0 <= lo <= hi <= 1, got [" + format_number(lo_) +
                       ", " + format_number(hi_) + "]");
  }
  static Interval point(Quad x) { return Interval(x, x); }

  const Quad& lo() const { return lo_; }
  const Quad& hi() const { return hi_; }
  Quad length() const { return hi_ - lo_; }
  Quad center() const { return (lo_ + hi_) * Quad(BigInt(1), 0, 2); }
  bool degenerate() const { return lo_ == hi_; }
  bool contains(const Quad& x) const {
    return Quad::compare(lo_, x) <= 0 && Quad::compare(x, hi_) <= 0;
  }

  bool operator==(const Interval&) const = default;

 private:
  Quad lo_, hi_;
};

}  // namespace telic
