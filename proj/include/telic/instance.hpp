#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "telic/exec.hpp"
#include "telic/interval.hpp"
#include "telic/maps.hpp"

namespace telic {

enum class SolveMode { Decision, Search };

/// Parameters of the bounded instance family: target diameter a(n), iterate
/// count k(n), and the rotation constant. Empty rules mean the defaults
/// a(n) = 2^(-n^2) and the fixed-point-avoidance rule for k(n).
struct BoundedParams {
  std::function<Dyadic(unsigned)> a_rule;
  std::function<unsigned(unsigned)> k_rule;
  Quad kappa{-1, 1, 1};  // sqrt2 - 1
};

/// One telic instance: does some s in the grid I_{grid_precision} satisfy
/// system^n(homeo(s)) in target? Bounded instances additionally carry the
/// rotation constant and replace n by k(n) at verification time.
struct TelicInstance {
  MapSpec system;
  MapSpec homeo;
  unsigned n = 1;
  Interval target{Quad(0), Quad(1)};
  unsigned grid_precision = 1;
  SolveMode mode = SolveMode::Decision;
  std::optional<Quad> bounded_kappa;

  bool operator==(const TelicInstance&) const = default;

  /// k(n) for bounded instances, n otherwise.
  unsigned effective_n() const;
};

/// Validates the homeo kind and the precision rule l(n) >= n.
TelicInstance make_instance(MapSpec system, MapSpec homeo, unsigned n, Interval target,
                            std::optional<unsigned> grid_precision = {},
                            SolveMode mode = SolveMode::Decision);

/// I_r = {p/2^r : 0 <= p < 2^r}, ascending. Refuses r above the grid budget;
/// use grid_point for lazy access.
std::vector<Dyadic> grid(unsigned r, const ExecPolicy& pol = {});
Dyadic grid_point(unsigned r, const BigInt& index);
BigInt grid_size(unsigned r);

/// Membership in I_r by r doubling steps: z <- 2z, subtract 1 if z >= 1,
/// accept iff z ends at 0. Rejects y < 0 and y >= 1 up front.
bool is_dyadic_of_precision(const Quad& y, unsigned r);

/// Grid membership of s plus closed-interval membership of the iterate.
/// Malformed certificates verify false rather than erroring.
bool verify_certificate(const TelicInstance& inst, const Quad& s);

/// Distance from x to 0 on the circle: min(frac(x), 1 - frac(x)).
Quad circle_dist(const Quad& x);

Dyadic a_of_n(unsigned n, const BoundedParams& params = {});

/// n if circle_dist(n * kappa) > a(n), else n + 1. Needs irrational kappa.
unsigned k_of_n(unsigned n, const BoundedParams& params = {});

/// Rotation-by-kappa instance with target [c - a(n)/2, c + a(n)/2] and grid
/// I_{n^2}. The center must keep the target inside [0, 1].
TelicInstance make_bounded_instance(unsigned n, const Quad& center,
                                    const BoundedParams& params = {});

}  // namespace telic
