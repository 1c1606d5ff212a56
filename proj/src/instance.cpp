#include "telic/instance.hpp"

#include <string>
#include <utility>

#include "telic/errors.hpp"

namespace telic {

unsigned TelicInstance::effective_n() const {
  if (!bounded_kappa) return n;
  BoundedParams p;
  p.kappa = *bounded_kappa;
  return k_of_n(n, p);
}

TelicInstance make_instance(MapSpec system, MapSpec homeo, unsigned n, Interval target,
                            std::optional<unsigned> grid_precision, SolveMode mode) {
  if (!homeo.is_homeo())
    throw ValidationError(std::string("instance: homeo must be a homeomorphism kind, got ") +
                          kind_name(homeo.kind()));
  unsigned r = grid_precision.value_or(n * n);
  if (r < n)
    throw ValidationError("instance: grid precision " + std::to_string(r) +
                          " below n = " + std::to_string(n));
  TelicInstance inst;
  inst.system = std::move(system);
  inst.homeo = std::move(homeo);
  inst.n = n;
  inst.target = std::move(target);
  inst.grid_precision = r;
  inst.mode = mode;
  return inst;
}

BigInt grid_size(unsigned r) { return pow2(r); }

Dyadic grid_point(unsigned r, const BigInt& index) { return Dyadic(index, r); }

std::vector<Dyadic> grid(unsigned r, const ExecPolicy& pol) {
  if (r > pol.max_grid_bits || r >= 63)
    throw ResourceError("grid: 2^" + std::to_string(r) +
                        " points exceed the grid budget of 2^" +
                        std::to_string(pol.max_grid_bits));
  std::uint64_t total = std::uint64_t{1} << r;
  std::vector<Dyadic> out;
  out.reserve(total);
  for (std::uint64_t p = 0; p < total; ++p) out.emplace_back(BigInt(p), r);
  return out;
}

bool is_dyadic_of_precision(const Quad& y, unsigned r) {
  static const Quad one{1};
  if (y.sign() < 0 || y >= one) return false;
  Quad z = y;
  for (unsigned i = 0; i < r; ++i) {
    z = z + z;
    if (z >= one) z -= one;
  }
  return z.sign() == 0;
}

bool verify_certificate(const TelicInstance& inst, const Quad& s) {
  if (!is_dyadic_of_precision(s, inst.grid_precision)) return false;
  try {
    return inst.target.contains(iterate(inst.system, inst.homeo, s, inst.effective_n()));
  } catch (const RangeError&) {
    return false;
  }
}

Quad circle_dist(const Quad& x) {
  Quad t = x.frac();
  Quad u = Quad(1) - t;
  return t < u ? t : u;
}

Dyadic a_of_n(unsigned n, const BoundedParams& params) {
  if (params.a_rule) return params.a_rule(n);
  return Dyadic(BigInt(1), n * n);
}

unsigned k_of_n(unsigned n, const BoundedParams& params) {
  if (params.k_rule) return params.k_rule(n);
  if (params.kappa.q() == 0)
    throw ValidationError("bounded: kappa must be irrational, got " +
                          format_number(params.kappa));
  Quad dist = circle_dist(Quad(BigInt(n)) * params.kappa);
  return dist > Quad(a_of_n(n, params)) ? n : n + 1;
}

TelicInstance make_bounded_instance(unsigned n, const Quad& center,
                                    const BoundedParams& params) {
  Quad radius = Quad(a_of_n(n, params)) * Quad(BigInt(1), 0, 2);
  if (center < radius || center > Quad(1) - radius)
    throw RangeError("bounded: center " + format_number(center) +
                     " puts the target outside [0, 1]");
  TelicInstance inst = make_instance(MapSpec::rotation(params.kappa), MapSpec::identity(),
                                     n, Interval(center - radius, center + radius), n * n);
  inst.bounded_kappa = params.kappa;
  return inst;
}

}  // namespace telic
