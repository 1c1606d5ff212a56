#include "telic/maps.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "telic/errors.hpp"

namespace telic {

namespace {

const Quad& one() {
  static const Quad v(1);
  return v;
}

const Quad& half() {
  static const Quad v(BigInt(1), 0, 2);
  return v;
}

std::string range_text(bool mod1) { return mod1 ? "[0, 1)" : "[0, 1]"; }

void check_domain(const MapSpec& m, const Quad& x, const char* who) {
  bool bad = x.sign() < 0 || (m.mod1() ? x >= one() : x > one());
  if (bad)
    throw RangeError(std::string(who) + ": " + format_number(x) + " outside " +
                     range_text(m.mod1()));
}

std::size_t branch_index(const MapSpec& m, const Quad& x) {
  std::size_t i = 0;
  for (const Quad& t : m.breakpoints()) {
    if (t < x)
      ++i;
    else
      break;
  }
  return i;
}

void branch_hull(const MapSpec& m, std::size_t i, Quad& lo, Quad& hi) {
  lo = (i == 0) ? Quad(0) : m.breakpoints()[i - 1];
  hi = (i < m.breakpoints().size()) ? m.breakpoints()[i] : Quad(1);
}

bool branch_owns(const MapSpec& m, std::size_t i, const Quad& x) {
  if (x.sign() < 0) return false;
  if (m.mod1() && x >= one()) return false;
  Quad lo, hi;
  branch_hull(m, i, lo, hi);
  if (i == 0 ? x < lo : x <= lo) return false;
  return x <= hi;
}

void sort_dedupe(std::vector<Quad>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

/// Square roots representable in the field: sqrt(n/d) = sqrt(nd)/d, which
/// exists exactly when nd is a square (rational root) or twice a square
/// (root with a sqrt2 part).
Quad sqrt_exact(const Quad& y) {
  if (y.sign() < 0)
    throw RangeError("sqrt: " + format_number(y) + " is negative");
  if (!y.is_rational())
    throw UnsupportedError("sqrt: " + format_number(y) +
                           " has no representable square root");
  BigInt nd = y.p() * y.den();
  BigInt r = isqrt(nd);
  if (r * r == nd) return Quad(r, 0, y.den());
  if (nd % 2 == 0) {
    BigInt s = isqrt(nd / 2);
    if (2 * s * s == nd) return Quad(0, s, y.den());
  }
  throw UnsupportedError("sqrt: " + format_number(y) +
                         " has no representable square root");
}

std::vector<Quad> pre1_affine(const MapSpec& m, const Quad& y) {
  std::vector<Quad> out;
  if (y.sign() < 0) return out;
  if (m.mod1() ? y >= one() : y > one()) return out;
  for (std::size_t i = 0; i < m.branches().size(); ++i) {
    const AffineBranch& b = m.branches()[i];
    if (b.slope.sign() == 0) {
      if (y == b.offset)
        throw UnsupportedError("preimages: constant branch yields a continuum");
      continue;
    }
    Quad lo, hi;
    branch_hull(m, i, lo, hi);
    if (m.mod1()) {
      Quad v1 = b.slope * lo + b.offset;
      Quad v2 = b.slope * hi + b.offset;
      if (v2 < v1) std::swap(v1, v2);
      BigInt kmin = -((y - v1).floor());
      BigInt kmax = (v2 - y).floor();
      for (BigInt k = kmin; k <= kmax; ++k) {
        Quad x = (y + Quad(k) - b.offset) / b.slope;
        if (branch_owns(m, i, x) && eval_map(m, x) == y) out.push_back(x);
      }
    } else {
      Quad x = (y - b.offset) / b.slope;
      if (branch_owns(m, i, x) && eval_map(m, x) == y) out.push_back(x);
    }
  }
  sort_dedupe(out);
  return out;
}

struct RunStats {
  std::uint64_t distinct = 0;
  std::uint64_t max_multiplicity = 0;
  std::uint64_t collided = 0;
};

void count_runs_sorted(const std::vector<Quad>& vals, RunStats& st) {
  std::size_t i = 0;
  while (i < vals.size()) {
    std::size_t j = i + 1;
    while (j < vals.size() && vals[j] == vals[i]) ++j;
    std::uint64_t len = j - i;
    ++st.distinct;
    st.max_multiplicity = std::max(st.max_multiplicity, len);
    if (len >= 2) ++st.collided;
    i = j;
  }
}

}  // namespace

const char* kind_name(MapKind k) {
  switch (k) {
    case MapKind::Identity: return "identity";
    case MapKind::Tent: return "tent";
    case MapKind::Doubling: return "doubling";
    case MapKind::Squaring: return "squaring";
    case MapKind::Rotation: return "rotation";
    case MapKind::Alpha: return "alpha";
    case MapKind::PiecewiseAffine: return "pwa";
  }
  return "?";
}

MapSpec MapSpec::identity() { return MapSpec(); }

MapSpec MapSpec::tent() {
  MapSpec m;
  m.kind_ = MapKind::Tent;
  m.breakpoints_ = {half()};
  m.branches_ = {{Quad(2), Quad(0)}, {Quad(-2), Quad(2)}};
  m.entropy_ = EntropyLabel::Log2;
  return m;
}

MapSpec MapSpec::doubling() {
  MapSpec m;
  m.kind_ = MapKind::Doubling;
  m.breakpoints_ = {half()};
  m.branches_ = {{Quad(2), Quad(0)}, {Quad(2), Quad(-1)}};
  m.mod1_ = true;
  m.entropy_ = EntropyLabel::Log2;
  return m;
}

MapSpec MapSpec::squaring() {
  MapSpec m;
  m.kind_ = MapKind::Squaring;
  return m;
}

MapSpec MapSpec::rotation(const Quad& kappa) {
  MapSpec m;
  m.kind_ = MapKind::Rotation;
  m.kappa_ = kappa.frac();
  m.branches_ = {{Quad(1), m.kappa_}};
  m.mod1_ = true;
  return m;
}

MapSpec MapSpec::alpha() {
  MapSpec m;
  m.kind_ = MapKind::Alpha;
  m.breakpoints_ = {Quad(2, -1, 1)};
  m.branches_ = {{Quad(0, 1, 2), Quad(0)}, {Quad::sqrt2(), Quad(1, -1, 1)}};
  return m;
}

MapSpec MapSpec::piecewise_affine(std::vector<Quad> breakpoints,
                                  std::vector<AffineBranch> branches, bool mod1,
                                  EntropyLabel label) {
  if (branches.size() != breakpoints.size() + 1)
    throw ValidationError("pwa: need one branch more than breakpoints, got " +
                          std::to_string(branches.size()) + " branches for " +
                          std::to_string(breakpoints.size()) + " breakpoints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    bool inside = breakpoints[i].sign() > 0 && breakpoints[i] < one();
    bool ordered = i == 0 || breakpoints[i - 1] < breakpoints[i];
    if (!inside || !ordered)
      throw ValidationError("pwa: breakpoints must increase strictly inside (0, 1)");
  }
  MapSpec m;
  m.kind_ = MapKind::PiecewiseAffine;
  m.breakpoints_ = std::move(breakpoints);
  m.branches_ = std::move(branches);
  m.mod1_ = mod1;
  m.entropy_ = label;
  return m;
}

bool MapSpec::is_homeo() const {
  switch (kind_) {
    case MapKind::Identity:
    case MapKind::Alpha:
    case MapKind::Squaring:
      return true;
    case MapKind::Tent:
    case MapKind::Doubling:
    case MapKind::Rotation:
      return false;
    case MapKind::PiecewiseAffine:
      break;
  }
  if (mod1_) return false;
  int s = branches_.front().slope.sign();
  if (s == 0) return false;
  for (const AffineBranch& b : branches_)
    if (b.slope.sign() != s) return false;
  for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
    const Quad& t = breakpoints_[i];
    if (branches_[i].slope * t + branches_[i].offset !=
        branches_[i + 1].slope * t + branches_[i + 1].offset)
      return false;
  }
  Quad at0 = branches_.front().offset;
  Quad at1 = branches_.back().slope + branches_.back().offset;
  if (s > 0) return at0 == Quad(0) && at1 == one();
  return at0 == one() && at1 == Quad(0);
}

bool MapSpec::is_injective() const {
  return kind_ == MapKind::Rotation || is_homeo();
}

int MapSpec::monotone_direction() const {
  switch (kind_) {
    case MapKind::Identity:
    case MapKind::Alpha:
    case MapKind::Squaring:
    case MapKind::Rotation:
      return 1;
    default:
      return branches_.front().slope.sign();
  }
}

Quad eval_map(const MapSpec& m, const Quad& x) {
  check_domain(m, x, "map");
  if (m.kind() == MapKind::Squaring) return x * x;
  const AffineBranch& b = m.branches()[branch_index(m, x)];
  Quad y = b.slope * x + b.offset;
  return m.mod1() ? y.frac() : y;
}

Quad eval_inverse(const MapSpec& m, const Quad& y) {
  if (!m.is_injective())
    throw UnsupportedError(std::string("inverse: ") + kind_name(m.kind()) +
                           " is not injective");
  check_domain(m, y, "inverse");
  switch (m.kind()) {
    case MapKind::Identity:
      return y;
    case MapKind::Rotation:
      return (y - m.kappa()).frac();
    case MapKind::Squaring:
      return sqrt_exact(y);
    default:
      break;
  }
  std::vector<Quad> xs = pre1_affine(m, y);
  if (xs.size() != 1)
    throw RangeError("inverse: " + format_number(y) + " has no preimage");
  return xs.front();
}

Quad iterate(const MapSpec& m, const MapSpec& g, const Quad& x, unsigned n) {
  if (!g.is_homeo())
    throw ValidationError(std::string("iterate: conjugating map must be a "
                                      "homeomorphism, got ") +
                          kind_name(g.kind()));
  Quad y = eval_map(g, x);
  if (n == 0) return y;
  if (m.kind() == MapKind::Rotation) {
    check_domain(m, y, "map");
    return (y + Quad(BigInt(n)) * m.kappa()).frac();
  }
  for (unsigned i = 0; i < n; ++i) y = eval_map(m, y);
  return y;
}

std::vector<Quad> preimages(const MapSpec& m, const Quad& y, unsigned n) {
  if (n == 0) throw RangeError("preimages: need n >= 1");
  switch (m.kind()) {
    case MapKind::Identity: {
      if (y.sign() < 0 || y > one()) return {};
      return {y};
    }
    case MapKind::Rotation: {
      if (y.sign() < 0 || y >= one()) return {};
      return {(y - Quad(BigInt(n)) * m.kappa()).frac()};
    }
    case MapKind::Squaring: {
      if (y.sign() < 0 || y > one()) return {};
      Quad z = y;
      for (unsigned i = 0; i < n; ++i) z = sqrt_exact(z);
      return {z};
    }
    default:
      break;
  }
  std::vector<Quad> cur = {y};
  for (unsigned step = 0; step < n && !cur.empty(); ++step) {
    std::vector<Quad> next;
    for (const Quad& z : cur) {
      std::vector<Quad> pre = pre1_affine(m, z);
      next.insert(next.end(), pre.begin(), pre.end());
    }
    sort_dedupe(next);
    cur = std::move(next);
  }
  return cur;
}

ImageStats image_of_grid(const MapSpec& m, const MapSpec& g, unsigned n,
                         unsigned precision, const ExecPolicy& pol) {
  if (!g.is_homeo())
    throw ValidationError(std::string("image: conjugating map must be a "
                                      "homeomorphism, got ") +
                          kind_name(g.kind()));
  if (precision > pol.max_grid_bits || precision >= 63)
    throw ResourceError("image: grid 2^" + std::to_string(precision) +
                        " exceeds the grid budget of 2^" +
                        std::to_string(pol.max_grid_bits));
  std::uint64_t total = std::uint64_t{1} << precision;
  ImageStats st;
  st.grid_size = total;
  if (m.is_injective()) {
    st.distinct = total;
    st.max_multiplicity = 1;
    st.collided_values = 0;
    return st;
  }

  BigInt denom = pow2(precision);
  auto value_at = [&](std::uint64_t i) {
    return iterate(m, g, Quad(BigInt(i), 0, denom), n);
  };
  unsigned workers = effective_workers(pol.workers);
  RunStats runs;

  if (precision <= pol.memory_bits) {
    std::vector<Quad> vals(total);
    for_chunks(total, workers, [&](unsigned, std::uint64_t b, std::uint64_t e) {
      for (std::uint64_t i = b; i < e; ++i) vals[i] = value_at(i);
    });
    std::sort(vals.begin(), vals.end());
    count_runs_sorted(vals, runs);
  } else if (!pol.streaming) {
    throw ResourceError("image: grid 2^" + std::to_string(precision) +
                        " exceeds the in-memory budget of 2^" +
                        std::to_string(pol.memory_bits) +
                        "; enable streaming");
  } else {
    // Multi-pass: pass b keeps only values in [b/B, (b+1)/B).
    std::uint64_t buckets = std::uint64_t{1} << (precision - pol.memory_bits);
    Quad scale{BigInt(buckets)};
    for (std::uint64_t b = 0; b < buckets; ++b) {
      std::vector<std::vector<Quad>> parts(workers);
      for_chunks(total, workers,
                 [&](unsigned c, std::uint64_t lo, std::uint64_t hi) {
                   for (std::uint64_t i = lo; i < hi; ++i) {
                     Quad v = value_at(i);
                     BigInt idx = (v * scale).floor();
                     if (idx >= BigInt(buckets)) idx = BigInt(buckets) - 1;
                     if (idx == BigInt(b)) parts[c].push_back(std::move(v));
                   }
                 });
      std::vector<Quad> vals;
      for (auto& p : parts) vals.insert(vals.end(), p.begin(), p.end());
      std::sort(vals.begin(), vals.end());
      count_runs_sorted(vals, runs);
    }
  }

  st.distinct = runs.distinct;
  st.max_multiplicity = runs.max_multiplicity;
  st.collided_values = runs.collided;
  return st;
}

namespace {

PeriodicPoints periodic_mod1(const MapSpec& m, unsigned n) {
  // Branches must assemble into one global map frac(a x + b); then the
  // n-th iterate is frac(a^n x + C) and fixed points solve a shifted
  // linear equation per integer shift.
  const Quad a = m.branches().front().slope;
  const Quad b0 = m.branches().front().offset;
  if (!a.is_integer())
    throw UnsupportedError("periodic: circle map needs an integer slope");
  for (const AffineBranch& br : m.branches()) {
    if (br.slope != a || !(br.offset - b0).is_integer())
      throw UnsupportedError(
          "periodic: circle map branches must differ by integer offsets");
  }
  PeriodicPoints out;
  if (a == one()) {
    if ((Quad(BigInt(n)) * b0).frac().sign() == 0) out.all_points = true;
    return out;
  }
  Quad A{1};
  Quad C{0};
  for (unsigned t = 0; t < n; ++t) {
    C = a * C + b0;
    A = a * A;
  }
  Quad d = A - one();
  BigInt jlo, jhi;  // x = (j - C)/d in [0, 1)
  if (d.sign() > 0) {
    jlo = -((-C).floor());
    jhi = (C + d).floor();
    if (Quad(jhi) == C + d) --jhi;
  } else {
    jhi = C.floor();
    jlo = -((-C - d).floor());
    if (Quad(jlo) == C + d) ++jlo;
  }
  for (BigInt j = jlo; j <= jhi; ++j) {
    Quad x = (Quad(j) - C) / d;
    if (x.sign() < 0 || x >= one()) continue;
    Quad z = x;
    for (unsigned t = 0; t < n; ++t) z = eval_map(m, z);
    if (z == x) out.points.push_back(x);
  }
  sort_dedupe(out.points);
  return out;
}

PeriodicPoints periodic_itineraries(const MapSpec& m, unsigned n) {
  std::size_t nb = m.branches().size();
  double count = std::pow(static_cast<double>(nb), static_cast<double>(n));
  if (count > double(1 << 24))
    throw ResourceError("periodic: " + std::to_string(nb) + "^" +
                        std::to_string(n) + " itineraries exceed the budget");
  PeriodicPoints out;
  std::vector<std::size_t> it(n, 0);
  while (true) {
    Quad A{1};
    Quad C{0};
    for (unsigned t = 0; t < n; ++t) {
      const AffineBranch& br = m.branches()[it[t]];
      C = br.slope * C + br.offset;
      A = br.slope * A;
    }
    if (A == one()) {
      if (C.sign() == 0)
        throw UnsupportedError("periodic: period-" + std::to_string(n) +
                               " set contains a continuum");
    } else {
      Quad x = C / (one() - A);
      if (x.sign() >= 0 && x <= one()) {
        Quad z = x;
        for (unsigned t = 0; t < n; ++t) z = eval_map(m, z);
        if (z == x) out.points.push_back(x);
      }
    }
    std::size_t pos = 0;
    while (pos < n && ++it[pos] == nb) it[pos++] = 0;
    if (pos == n) break;
  }
  sort_dedupe(out.points);
  return out;
}

}  // namespace

PeriodicPoints periodic_points(const MapSpec& m, unsigned n) {
  if (n == 0) throw RangeError("periodic: need period >= 1");
  PeriodicPoints out;
  switch (m.kind()) {
    case MapKind::Identity:
      out.all_points = true;
      return out;
    case MapKind::Squaring:
      out.points = {Quad(0), Quad(1)};
      return out;
    case MapKind::Rotation:
      if ((Quad(BigInt(n)) * m.kappa()).frac().sign() == 0)
        out.all_points = true;
      return out;
    default:
      return m.mod1() ? periodic_mod1(m, n) : periodic_itineraries(m, n);
  }
}

}  // namespace telic
