#include "telic/solve.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "telic/errors.hpp"

namespace telic {

namespace {

void check_budget(const TelicInstance& inst, const ExecPolicy& pol, const char* who) {
  if (inst.grid_precision > pol.max_grid_bits || inst.grid_precision >= 63)
    throw ResourceError(std::string(who) + ": grid 2^" +
                        std::to_string(inst.grid_precision) +
                        " exceeds the grid budget of 2^" +
                        std::to_string(pol.max_grid_bits));
}

/// Per-point membership with the verifier's reject-on-range semantics.
bool hits(const TelicInstance& inst, unsigned en, const Quad& s) {
  try {
    return inst.target.contains(iterate(inst.system, inst.homeo, s, en));
  } catch (const RangeError&) {
    return false;
  }
}

/// Smallest i in [lo, hi) with pred(i), or hi. pred must be monotone
/// (false then true) over the range.
BigInt bisect_first(BigInt lo, BigInt hi,
                    const std::function<bool(const BigInt&)>& pred) {
  while (lo < hi) {
    BigInt mid = (lo + hi) / 2;
    if (pred(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

bool order_compatible(const MapSpec& system) {
  return system.kind() == MapKind::Rotation || system.is_homeo();
}

/// Direction of system^en o homeo on the grid order.
int composite_direction(const TelicInstance& inst, unsigned en) {
  int sys = inst.system.monotone_direction();
  int dir = (sys < 0 && en % 2 == 1) ? -1 : 1;
  return dir * inst.homeo.monotone_direction();
}

/// Shared machinery of the rotation searches. The unreduced value
/// v(i) = g(i/2^r) + frac(en*kappa) is monotone in i and lies in [0, 2);
/// reducing mod 1 splits the grid at a single wrap index into two arcs,
/// each monotone, one of them shifted by 1.
struct RotationSearch {
  const TelicInstance* inst;
  BigInt denom;
  Quad shift;
  int gd;
  std::uint64_t evals = 0;

  RotationSearch(const TelicInstance& instance, unsigned en, const BigInt& total)
      : inst(&instance),
        denom(total),
        shift((Quad(BigInt(en)) * instance.system.kappa()).frac()),
        gd(instance.homeo.monotone_direction()) {}

  Quad raw(const BigInt& i) {
    ++evals;
    return eval_map(inst->homeo, Quad(i, 0, denom)) + shift;
  }

  struct Arc {
    BigInt begin, end;
    bool wrapped;
  };

  /// The arcs in grid order. Excludes index 0 when a decreasing g pins
  /// g(0) = 1, which the circle domain rejects.
  std::vector<Arc> arcs(const BigInt& total) {
    static const Quad one{1};
    std::vector<Arc> out;
    BigInt start = 0;
    if (gd < 0) {
      ++evals;
      if (eval_map(inst->homeo, Quad(BigInt(0), 0, denom)) >= one) start = 1;
    }
    if (start >= total) return out;
    Quad v_start = raw(start);
    Quad v_end = raw(total - 1);
    Quad v_min = gd > 0 ? v_start : v_end;
    Quad v_max = gd > 0 ? v_end : v_start;
    if (v_max < one) {
      out.push_back({start, total, false});
    } else if (v_min >= one) {
      out.push_back({start, total, true});
    } else if (gd > 0) {
      BigInt w = bisect_first(start, total, [&](const BigInt& i) { return raw(i) >= one; });
      out.push_back({start, w, false});
      out.push_back({w, total, true});
    } else {
      BigInt w = bisect_first(start, total, [&](const BigInt& i) { return raw(i) < one; });
      out.push_back({start, w, true});
      out.push_back({w, total, false});
    }
    return out;
  }

  void arc_bounds(bool wrapped, Quad& lo, Quad& hi) const {
    static const Quad one{1};
    lo = inst->target.lo();
    hi = inst->target.hi();
    if (wrapped) {
      lo += one;
      hi += one;
    }
  }

  /// First hit on one arc, one lower_bound plus one membership check.
  std::optional<BigInt> arc_witness(const Arc& a) {
    Quad lo, hi;
    arc_bounds(a.wrapped, lo, hi);
    BigInt first = gd > 0
        ? bisect_first(a.begin, a.end, [&](const BigInt& i) { return raw(i) >= lo; })
        : bisect_first(a.begin, a.end, [&](const BigInt& i) { return raw(i) <= hi; });
    if (first >= a.end) return std::nullopt;
    Quad val = raw(first);
    bool ok = gd > 0 ? val <= hi : val >= lo;
    if (!ok) return std::nullopt;
    return first;
  }

  /// Full hit range on one arc, two binary searches.
  IndexRange arc_range(const Arc& a) {
    Quad lo, hi;
    arc_bounds(a.wrapped, lo, hi);
    if (gd > 0) {
      BigInt first = bisect_first(a.begin, a.end, [&](const BigInt& i) { return raw(i) >= lo; });
      BigInt past = bisect_first(first, a.end, [&](const BigInt& i) { return raw(i) > hi; });
      return {first, past};
    }
    BigInt first = bisect_first(a.begin, a.end, [&](const BigInt& i) { return raw(i) <= hi; });
    BigInt past = bisect_first(first, a.end, [&](const BigInt& i) { return raw(i) < lo; });
    return {first, past};
  }
};

}  // namespace

SolveResult solve_brute(const TelicInstance& inst, const ExecPolicy& pol) {
  check_budget(inst, pol, "brute");
  unsigned en = inst.effective_n();
  std::uint64_t total = std::uint64_t{1} << inst.grid_precision;
  BigInt denom = pow2(inst.grid_precision);
  unsigned workers = effective_workers(pol.workers);

  std::vector<std::uint64_t> local(workers, total);
  for_chunks(total, workers, [&](unsigned c, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i) {
      if (hits(inst, en, Quad(BigInt(i), 0, denom))) {
        local[c] = i;
        break;
      }
    }
  });
  std::uint64_t best = *std::min_element(local.begin(), local.end());

  SolveResult res;
  if (best < total) {
    res.decision = true;
    res.witness = Dyadic(BigInt(best), inst.grid_precision);
    res.evals = best + 1;
  } else {
    res.evals = total;
  }
  return res;
}

SolveAllResult solve_all(const TelicInstance& inst, const ExecPolicy& pol) {
  check_budget(inst, pol, "enumerate");
  unsigned en = inst.effective_n();
  std::uint64_t total = std::uint64_t{1} << inst.grid_precision;
  BigInt denom = pow2(inst.grid_precision);
  unsigned workers = effective_workers(pol.workers);

  std::vector<std::vector<Dyadic>> local(workers);
  for_chunks(total, workers, [&](unsigned c, std::uint64_t b, std::uint64_t e) {
    for (std::uint64_t i = b; i < e; ++i)
      if (hits(inst, en, Quad(BigInt(i), 0, denom)))
        local[c].emplace_back(BigInt(i), inst.grid_precision);
  });

  SolveAllResult res;
  res.evals = total;
  for (auto& part : local)
    res.witnesses.insert(res.witnesses.end(), part.begin(), part.end());
  return res;
}

SolveResult solve_order(const TelicInstance& inst) {
  if (!order_compatible(inst.system))
    throw UnsupportedError(std::string("order solver: ") + kind_name(inst.system.kind()) +
                           " is not order-compatible");
  unsigned en = inst.effective_n();
  BigInt total = pow2(inst.grid_precision);
  SolveResult res;

  if (inst.system.kind() == MapKind::Rotation) {
    RotationSearch rs(inst, en, total);
    for (const RotationSearch::Arc& a : rs.arcs(total)) {
      if (std::optional<BigInt> w = rs.arc_witness(a)) {
        res.decision = true;
        res.witness = Dyadic(*w, inst.grid_precision);
        break;
      }
    }
    res.evals = rs.evals;
    return res;
  }

  std::uint64_t evals = 0;
  BigInt denom = total;
  auto h = [&](const BigInt& i) {
    ++evals;
    return iterate(inst.system, inst.homeo, Quad(i, 0, denom), en);
  };
  int dir = composite_direction(inst, en);
  BigInt first = bisect_first(BigInt(0), total, [&](const BigInt& i) {
    return dir > 0 ? h(i) >= inst.target.lo() : h(i) <= inst.target.hi();
  });
  if (first < total) {
    Quad val = h(first);
    bool ok = dir > 0 ? val <= inst.target.hi() : val >= inst.target.lo();
    if (ok) {
      res.decision = true;
      res.witness = Dyadic(first, inst.grid_precision);
    }
  }
  res.evals = evals;
  return res;
}

std::vector<IndexRange> hit_index_ranges(const TelicInstance& inst, const ExecPolicy& pol) {
  unsigned en = inst.effective_n();
  BigInt total = pow2(inst.grid_precision);

  if (order_compatible(inst.system)) {
    std::vector<IndexRange> out;
    if (inst.system.kind() == MapKind::Rotation) {
      RotationSearch rs(inst, en, total);
      for (const RotationSearch::Arc& a : rs.arcs(total)) {
        IndexRange r = rs.arc_range(a);
        if (r.begin < r.end) out.push_back(std::move(r));
      }
      std::sort(out.begin(), out.end(),
                [](const IndexRange& x, const IndexRange& y) { return x.begin < y.begin; });
      return out;
    }
    std::uint64_t evals = 0;
    BigInt denom = total;
    auto h = [&](const BigInt& i) {
      ++evals;
      return iterate(inst.system, inst.homeo, Quad(i, 0, denom), en);
    };
    int dir = composite_direction(inst, en);
    BigInt first, past;
    if (dir > 0) {
      first = bisect_first(BigInt(0), total, [&](const BigInt& i) { return h(i) >= inst.target.lo(); });
      past = bisect_first(first, total, [&](const BigInt& i) { return h(i) > inst.target.hi(); });
    } else {
      first = bisect_first(BigInt(0), total, [&](const BigInt& i) { return h(i) <= inst.target.hi(); });
      past = bisect_first(first, total, [&](const BigInt& i) { return h(i) < inst.target.lo(); });
    }
    if (first < past) out.push_back({first, past});
    return out;
  }

  check_budget(inst, pol, "hit-ranges");
  BigInt denom = total;
  std::uint64_t n64 = std::uint64_t{1} << inst.grid_precision;
  std::vector<IndexRange> out;
  for (std::uint64_t i = 0; i < n64; ++i) {
    if (!hits(inst, en, Quad(BigInt(i), 0, denom))) continue;
    if (!out.empty() && out.back().end == BigInt(i))
      out.back().end = BigInt(i) + 1;
    else
      out.push_back({BigInt(i), BigInt(i) + 1});
  }
  return out;
}

}  // namespace telic
