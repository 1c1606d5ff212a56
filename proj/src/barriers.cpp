#include "telic/barriers.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "telic/errors.hpp"
#include "telic/solve.hpp"

namespace telic {

namespace {

void check_grid_budget(unsigned r, const ExecPolicy& pol, const char* who) {
  if (r > pol.max_grid_bits || r >= 63)
    throw ResourceError(std::string(who) + ": grid 2^" + std::to_string(r) +
                        " exceeds the grid budget of 2^" +
                        std::to_string(pol.max_grid_bits));
}

/// frac(2^k * h(p/2^r)) over I_r in grid order; this is E2^k after h.
std::vector<Quad> doubled_image(unsigned r, unsigned k, const MapSpec& homeo,
                                const ExecPolicy& pol, const char* who) {
  check_grid_budget(r, pol, who);
  std::uint64_t total = std::uint64_t{1} << r;
  BigInt denom = pow2(r);
  Quad scale{pow2(k)};
  std::vector<Quad> vals(total);
  for_chunks(total, effective_workers(pol.workers),
             [&](unsigned, std::uint64_t b, std::uint64_t e) {
               for (std::uint64_t i = b; i < e; ++i)
                 vals[i] = (scale * eval_map(homeo, Quad(BigInt(i), 0, denom))).frac();
             });
  return vals;
}

Quad abs_diff(const Quad& a, const Quad& b) { return a < b ? b - a : a - b; }

Quad midpoint(const Quad& a, const Quad& b) {
  return (a + b) * Quad(BigInt(1), 0, 2);
}

}  // namespace

SmallPreimageReport check_small_preimage(unsigned n, unsigned k, const MapSpec& homeo,
                                         const ExecPolicy& pol) {
  std::vector<Quad> vals = doubled_image(n, k, homeo, pol, "small-preimage");
  std::vector<std::pair<Quad, std::uint64_t>> pairs;
  pairs.reserve(vals.size());
  for (std::uint64_t i = 0; i < vals.size(); ++i) pairs.emplace_back(vals[i], i);
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    int c = Quad::compare(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  SmallPreimageReport rep;
  rep.injective = true;
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    if (pairs[i].first == pairs[i - 1].first) {
      rep.injective = false;
      rep.colliding_pair = {Dyadic(BigInt(pairs[i - 1].second), n),
                            Dyadic(BigInt(pairs[i].second), n)};
      break;
    }
  }
  return rep;
}

PerturbReport perturb_witness(unsigned n, unsigned m, const Dyadic& s,
                              const MapSpec& homeo, const ExecPolicy& pol) {
  unsigned r = 1;
  for (unsigned i = 0; i < m; ++i) {
    if (n != 0 && r > 4096 / n) throw ResourceError("perturb: n^m overflows any grid budget");
    r *= n;
  }
  std::vector<Quad> vals = doubled_image(r, n, homeo, pol, "perturb");
  std::uint64_t total = vals.size();

  if (s.sign() < 0 || s.exponent() > r || Quad(s) >= Quad(1))
    throw RangeError("perturb: s = " + format_number(s) + " is not in I_" +
                     std::to_string(r));
  std::uint64_t idx =
      (s.numerator() * pow2(r - s.exponent())).convert_to<std::uint64_t>();

  auto far = [&](std::uint64_t i) {
    std::uint64_t d = i > idx ? i - idx : idx - i;
    return BigInt(3) * d >= pow2(r);
  };

  PerturbReport rep;
  rep.c1 = vals[idx];

  bool found = false;
  Quad best_diff;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (!far(i) || vals[i] == rep.c1) continue;
    Quad d = abs_diff(vals[i], rep.c1);
    if (!found || d < best_diff || (d == best_diff && vals[i] < rep.c3)) {
      found = true;
      best_diff = d;
      rep.c3 = vals[i];
    }
  }
  if (!found)
    throw UnsupportedError("perturb: no far point attains a distinct value");
  rep.separation = best_diff;
  for (std::uint64_t i = 0; i < total; ++i) {
    if (far(i) && vals[i] == rep.c3) {
      rep.s_prime = Dyadic(BigInt(i), r);
      break;
    }
  }
  rep.all_preimages_far = true;
  for (std::uint64_t i = 0; i < total; ++i)
    if (vals[i] == rep.c3 && !far(i)) {
      rep.all_preimages_far = false;
      break;
    }

  std::vector<Quad> uniq = vals;
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  auto pos = std::lower_bound(uniq.begin(), uniq.end(), rep.c1);
  if (pos + 1 != uniq.end())
    rep.c2 = midpoint(rep.c1, *(pos + 1));
  else if (pos != uniq.begin())
    rep.c2 = midpoint(*(pos - 1), rep.c1);
  else
    rep.c2 = rep.c1 < Quad(1) ? midpoint(rep.c1, Quad(1)) : midpoint(Quad(0), rep.c1);
  return rep;
}

CardinalityGap cardinality_gap(const MapSpec& from_system, const MapSpec& from_homeo,
                               const MapSpec& to_system, const MapSpec& to_homeo,
                               unsigned n, const ExecPolicy& pol) {
  CardinalityGap gap;
  gap.card_from = image_of_grid(from_system, from_homeo, n, n * n, pol).distinct;
  gap.card_to = image_of_grid(to_system, to_homeo, n, n * n, pol).distinct;
  gap.gap = gap.card_from < gap.card_to;
  return gap;
}

std::optional<std::pair<Dyadic, Dyadic>> level1_witness(const MapSpec& from,
                                                        const MapSpec& to, unsigned r,
                                                        const ExecPolicy& pol) {
  check_grid_budget(r, pol, "level1");

  // Mirror pairs (x, 1-x), coarse to fine: both maps in the zoo that
  // identify anything identify at least one mirror pair.
  for (unsigned p = 1; p <= r; ++p) {
    std::uint64_t half_count = std::uint64_t{1} << (p - 1);
    BigInt denom = pow2(p);
    for (std::uint64_t o = 1; o < half_count; o += 2) {
      Quad x{BigInt(o), 0, denom};
      Quad y = Quad(1) - x;
      if (eval_map(from, x) != eval_map(from, y)) continue;
      if (eval_map(to, x) != eval_map(to, y))
        return std::make_pair(Dyadic(BigInt(o), p), Dyadic(denom - o, p));
    }
  }

  // Full collision scan.
  std::uint64_t total = std::uint64_t{1} << r;
  BigInt denom = pow2(r);
  std::vector<std::pair<Quad, std::uint64_t>> pairs;
  pairs.reserve(total);
  for (std::uint64_t i = 0; i < total; ++i)
    pairs.emplace_back(eval_map(from, Quad(BigInt(i), 0, denom)), i);
  std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
    int c = Quad::compare(a.first, b.first);
    return c != 0 ? c < 0 : a.second < b.second;
  });
  std::optional<std::pair<std::uint64_t, std::uint64_t>> best;
  std::size_t i = 0;
  while (i < pairs.size()) {
    std::size_t j = i + 1;
    while (j < pairs.size() && pairs[j].first == pairs[i].first) ++j;
    if (j - i >= 2) {
      std::uint64_t i0 = pairs[i].second;
      Quad t0 = eval_map(to, Quad(BigInt(i0), 0, denom));
      for (std::size_t a = i + 1; a < j; ++a) {
        std::uint64_t ja = pairs[a].second;
        if (eval_map(to, Quad(BigInt(ja), 0, denom)) != t0) {
          if (!best || std::make_pair(i0, ja) < *best) best = {i0, ja};
          break;
        }
      }
    }
    i = j;
  }
  if (!best) return std::nullopt;
  return std::make_pair(Dyadic(BigInt(best->first), r), Dyadic(BigInt(best->second), r));
}

namespace {

using Ranges = std::vector<IndexRange>;

Ranges normalize(Ranges rs) {
  std::sort(rs.begin(), rs.end(),
            [](const IndexRange& a, const IndexRange& b) { return a.begin < b.begin; });
  Ranges out;
  for (IndexRange& r : rs) {
    if (r.begin >= r.end) continue;
    if (!out.empty() && r.begin <= out.back().end)
      out.back().end = std::max(out.back().end, r.end);
    else
      out.push_back(std::move(r));
  }
  return out;
}

/// a \ b for normalized range lists.
Ranges difference(const Ranges& a, const Ranges& b) {
  Ranges out;
  std::size_t bi = 0;
  for (const IndexRange& r : a) {
    BigInt cur = r.begin;
    while (cur < r.end) {
      while (bi < b.size() && b[bi].end <= cur) ++bi;
      if (bi == b.size() || b[bi].begin >= r.end) {
        out.push_back({cur, r.end});
        break;
      }
      if (b[bi].begin > cur) out.push_back({cur, b[bi].begin});
      cur = b[bi].end;
    }
  }
  return out;
}

TelicInstance side_instance(const MapSpec& system, const MapSpec& homeo, unsigned iters,
                            const Interval& target, unsigned grid) {
  TelicInstance inst;
  inst.system = system;
  inst.homeo = homeo;
  inst.n = iters;
  inst.target = target;
  inst.grid_precision = grid;
  return inst;
}

bool measure_preserving(const MapSpec& m) {
  switch (m.kind()) {
    case MapKind::Identity:
    case MapKind::Rotation:
    case MapKind::Doubling:
    case MapKind::Tent:
      return true;
    default:
      return false;
  }
}

}  // namespace

ReductionReport check_reduction_family(const EtaTable& eta, ReductionLevel level,
                                       const ReductionSides& sides, const ExecPolicy& pol) {
  if (level == ReductionLevel::L1 && !(sides.from_homeo == sides.to_homeo))
    throw ValidationError("level 1 requires matching homeomorphisms on both sides");

  auto hit = [&](bool from_side, const Interval& target, unsigned grid) {
    const MapSpec& sys = from_side ? sides.from_system : sides.to_system;
    const MapSpec& hom = from_side ? sides.from_homeo : sides.to_homeo;
    unsigned iters = from_side ? sides.from_iters : sides.to_iters;
    return normalize(hit_index_ranges(side_instance(sys, hom, iters, target, grid), pol));
  };

  ReductionReport rep;
  rep.all_pass = true;
  for (const EtaEntry& entry : eta.entries) {
    EntryVerdict v{entry.from, entry.to, true, {}, {}};
    auto flag = [&](const char* what) { v.violations.emplace_back(what); };
    auto flag_at = [&](const char* what, const Ranges& where, unsigned grid) {
      flag(what);
      if (!v.violating_x && !where.empty())
        v.violating_x = Dyadic(where.front().begin, grid);
    };

    unsigned grid = sides.grid_precision;
    switch (level) {
      case ReductionLevel::L1:
      case ReductionLevel::L3: {
        Ranges f = hit(true, entry.from, grid);
        Ranges t = hit(false, entry.to, grid);
        if (f != t) {
          Ranges fx = difference(f, t);
          Ranges tx = difference(t, f);
          if (!fx.empty() && (tx.empty() || fx.front().begin < tx.front().begin))
            flag_at("equivalence", fx, grid);
          else
            flag_at("equivalence", tx, grid);
        }
        if (level == ReductionLevel::L1 && entry.from.degenerate() && !entry.to.degenerate())
          flag("degeneracy");
        break;
      }
      case ReductionLevel::L2: {
        bool fe = hit(true, entry.from, grid).empty();
        bool te = hit(false, entry.to, grid).empty();
        if (fe != te) flag("existence");
        break;
      }
      case ReductionLevel::L4: {
        Ranges f = hit(true, entry.from, grid);
        Ranges t = hit(false, entry.to, grid);
        Ranges extra = difference(t, f);
        if (!extra.empty()) flag_at("implication", extra, grid);
        if (!f.empty() && t.empty()) flag("emptiness");
        break;
      }
      case ReductionLevel::L4a: {
        unsigned dg = eta.domain_grid ? eta.domain_grid : grid;
        Ranges f = hit(true, entry.from, dg);
        Ranges t = hit(false, entry.to, dg);
        Ranges extra = difference(t, f);
        if (!extra.empty()) flag_at("implication", extra, dg);
        if (!hit(true, entry.from, grid).empty() && hit(false, entry.to, grid).empty())
          flag("emptiness");
        if (measure_preserving(sides.to_system) &&
            entry.to.length() > entry.from.length())
          flag("length");
        if (!sides.from_system.is_injective() && sides.to_system.is_homeo() &&
            entry.from.degenerate() && !entry.to.degenerate())
          flag("degeneracy");
        break;
      }
    }
    v.pass = v.violations.empty();
    rep.all_pass = rep.all_pass && v.pass;
    rep.entries.push_back(std::move(v));
  }
  return rep;
}

ReductionReport check_reduction_family(const EtaTable& eta, ReductionLevel level,
                                       const MapSpec& from_system, const MapSpec& from_homeo,
                                       const MapSpec& to_system, const MapSpec& to_homeo,
                                       unsigned n, const ExecPolicy& pol) {
  ReductionSides sides{from_system, from_homeo, n, to_system, to_homeo, n, n * n};
  return check_reduction_family(eta, level, sides, pol);
}

namespace {

using Words = std::vector<std::uint64_t>;

void set_bit(Words& w, std::uint64_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }

bool all_zero(const Words& w) {
  for (std::uint64_t x : w)
    if (x != 0) return false;
  return true;
}

bool words_subset(const Words& a, const Words& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace

ReductionSearchReport search_reduction_level(unsigned level, const ReductionSides& sides,
                                             unsigned n, unsigned candidate_precision,
                                             const ExecPolicy& pol) {
  if (level != 3 && level != 4)
    throw ValidationError("reduction search: level must be 3 or 4, got " +
                          std::to_string(level));
  unsigned grid = sides.grid_precision;
  check_grid_budget(grid, pol, "reduction-search");
  std::uint64_t total = std::uint64_t{1} << grid;
  BigInt denom = pow2(grid);

  auto values = [&](const MapSpec& sys, const MapSpec& hom, unsigned iters) {
    std::vector<Quad> out(total);
    for_chunks(total, effective_workers(pol.workers),
               [&](unsigned, std::uint64_t b, std::uint64_t e) {
                 for (std::uint64_t i = b; i < e; ++i) {
                   try {
                     out[i] = iterate(sys, hom, Quad(BigInt(i), 0, denom), iters);
                   } catch (const RangeError&) {
                     out[i] = Quad(-1);  // never inside a target
                   }
                 }
               });
    return out;
  };
  std::vector<Quad> fv = values(sides.from_system, sides.from_homeo, sides.from_iters);
  std::vector<Quad> tv = values(sides.to_system, sides.to_homeo, sides.to_iters);

  std::size_t words = (total + 63) / 64;
  std::uint64_t cuts = (std::uint64_t{1} << candidate_precision) + 1;
  BigInt cdenom = pow2(candidate_precision);
  // lt[u] = {i : tv[i] < u/2^cp}, le[u] = {i : tv[i] <= u/2^cp}
  std::vector<Words> lt(cuts, Words(words, 0)), le(cuts, Words(words, 0));
  for (std::uint64_t u = 0; u < cuts; ++u) {
    Quad cut{BigInt(u), 0, cdenom};
    for (std::uint64_t i = 0; i < total; ++i) {
      int c = Quad::compare(tv[i], cut);
      if (c < 0) set_bit(lt[u], i);
      if (c <= 0) set_bit(le[u], i);
    }
  }

  ReductionSearchReport rep;
  std::uint64_t targets = std::uint64_t{1} << n;
  BigInt tden = pow2(n);
  for (std::uint64_t j = 0; j < targets; ++j) {
    Interval J{Quad(BigInt(j), 0, tden), Quad(BigInt(j + 1), 0, tden)};
    Words fbs(words, 0);
    for (std::uint64_t i = 0; i < total; ++i)
      if (J.contains(fv[i])) set_bit(fbs, i);
    bool fempty = all_zero(fbs);

    TargetFeasibility tf{J, false, std::nullopt, std::nullopt};
    std::uint64_t best_len = 0;
    for (std::uint64_t u = 0; u + 1 <= cuts; ++u) {
      for (std::uint64_t v = u; v + 1 <= cuts; ++v) {
        Words cand(words, 0);
        for (std::size_t w = 0; w < words; ++w) cand[w] = le[v][w] & ~lt[u][w];
        bool ok;
        if (level == 3) {
          ok = cand == fbs;
        } else {
          ok = words_subset(cand, fbs) && (fempty || !all_zero(cand));
        }
        if (!ok) continue;
        std::uint64_t len = v - u;
        if (!tf.feasible || len < best_len) {
          tf.feasible = true;
          best_len = len;
          tf.example = Interval{Quad(BigInt(u), 0, cdenom), Quad(BigInt(v), 0, cdenom)};
          tf.min_length = Dyadic(BigInt(len), candidate_precision);
        }
      }
    }
    rep.any_feasible = rep.any_feasible || tf.feasible;
    rep.targets.push_back(std::move(tf));
  }
  return rep;
}

std::vector<FixedPointRow> fixedpoint_report(unsigned n_max, const BoundedParams& params) {
  std::vector<FixedPointRow> rows;
  rows.reserve(n_max);
  for (unsigned n = 1; n <= n_max; ++n) {
    FixedPointRow row;
    row.n = n;
    row.k = k_of_n(n, params);
    row.translation = (Quad(BigInt(row.k)) * params.kappa).frac();
    row.dist = circle_dist(row.translation);
    row.diameter = a_of_n(n, params);
    row.disjoint_for_all_J = row.dist > Quad(row.diameter);
    rows.push_back(std::move(row));
  }
  return rows;
}

SemiconjugacyReport check_semiconjugacy(const PhiTable& phi, const MapSpec& T,
                                        const MapSpec& S, unsigned max_period) {
  std::map<Quad, Quad> table;
  for (const auto& [x, fx] : phi.entries) {
    if (x.sign() < 0 || x > Quad(1) || fx.sign() < 0 || fx > Quad(1))
      throw ValidationError("semiconjugacy: sample (" + format_number(x) + ", " +
                            format_number(fx) + ") leaves [0, 1]");
    auto [it, inserted] = table.emplace(x, fx);
    if (!inserted && it->second != fx)
      throw ValidationError("semiconjugacy: conflicting samples at x = " +
                            format_number(x));
  }

  SemiconjugacyReport rep;
  Quad first_missing;
  bool have_missing = false;
  for (const auto& [x, fx] : table) {
    Quad tx;
    try {
      tx = eval_map(T, x);
    } catch (const RangeError&) {
      continue;  // x outside T's domain: lookup-only
    }
    auto it = table.find(tx);
    if (it == table.end()) {
      if (!have_missing) {
        first_missing = tx;
        have_missing = true;
      }
      continue;
    }
    ++rep.checked;
    if (it->second != eval_map(S, fx)) rep.violations.push_back({x, "equivariance"});
  }
  if (rep.checked == 0) {
    std::string detail = have_missing
        ? ", first missing sample at T(x) = " + format_number(first_missing)
        : "";
    throw ValidationError("semiconjugacy: no sampled x has T(x) sampled" + detail);
  }

  for (unsigned p = 1; p <= max_period; ++p) {
    PeriodicPoints pt = periodic_points(T, p);
    PeriodicPoints ps = periodic_points(S, p);
    for (const auto& [x, fx] : table) {
      bool x_periodic =
          pt.all_points || std::binary_search(pt.points.begin(), pt.points.end(), x);
      if (!x_periodic) continue;
      bool image_periodic =
          ps.all_points || std::binary_search(ps.points.begin(), ps.points.end(), fx);
      if (!image_periodic) rep.violations.push_back({x, "periodicity"});
    }
  }
  rep.holds = rep.violations.empty();
  return rep;
}

}  // namespace telic
