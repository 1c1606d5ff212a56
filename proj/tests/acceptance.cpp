// Acceptance suite: one line per criterion, exit code = number of failures.
// Every check is exact; no tolerances anywhere.

#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "telic/barriers.hpp"
#include "telic/bssvm.hpp"
#include "telic/instance.hpp"
#include "telic/solve.hpp"
#include "testutil.hpp"

using namespace telic;

namespace {

struct Failure {
  std::string detail;
};

void expect(bool ok, const std::string& detail) {
  if (!ok) throw Failure{detail};
}

Quad q(long a, long b) { return Quad(a, 0, b); }

std::string show(const Interval& iv) {
  return "[" + format_number(iv.lo()) + ", " + format_number(iv.hi()) + "]";
}

std::string kind_label(const MapSpec& m) { return kind_name(m.kind()); }

// 64 targets per n: 16 left endpoints crossed with 4 widths, clipped at 1.
Interval target_fixture(unsigned j) {
  Quad lo = q(long(j % 16), 16);
  Quad hi = lo + q(long(j / 16) + 1, 16);
  if (hi > Quad(1)) hi = Quad(1);
  return Interval(lo, hi);
}

bool scan_membership(const TelicInstance& inst, const Quad& s) {
  try {
    return inst.target.contains(
        iterate(inst.system, inst.homeo, s, inst.effective_n()));
  } catch (const RangeError&) {
    return false;
  }
}

void criterion1() {
  std::vector<MapSpec> systems = {MapSpec::identity(), MapSpec::squaring(),
                                  MapSpec::rotation(Quad(-1, 1, 1))};
  std::vector<MapSpec> homeos = {MapSpec::identity(), MapSpec::alpha()};
  for (const MapSpec& sys : systems)
    for (const MapSpec& g : homeos)
      for (unsigned n = 1; n <= 3; ++n)
        for (unsigned j = 0; j < 64; ++j) {
          TelicInstance inst = make_instance(sys, g, n, target_fixture(j));
          SolveResult fast = solve_order(inst);
          SolveResult slow = solve_brute(inst);
          std::string where = kind_label(sys) + "/" + kind_label(g) +
                              " n=" + std::to_string(n) + " target=" +
                              show(inst.target);
          expect(fast.decision == slow.decision,
                 "order and brute disagree at " + where);
          if (fast.decision)
            expect(verify_certificate(inst, Quad(*fast.witness)),
                   "order witness fails to verify at " + where);
          if (slow.decision)
            expect(verify_certificate(inst, Quad(*slow.witness)),
                   "brute witness fails to verify at " + where);
        }
}

void criterion2() {
  std::vector<MapSpec> systems = {MapSpec::identity(), MapSpec::tent(),
                                  MapSpec::doubling(), MapSpec::squaring(),
                                  MapSpec::rotation(Quad(-1, 1, 1))};
  std::vector<MapSpec> homeos = {MapSpec::identity(), MapSpec::alpha()};
  for (const MapSpec& sys : systems)
    for (const MapSpec& g : homeos)
      for (unsigned n = 1; n <= 3; ++n)
        for (unsigned j = 0; j < 64; ++j) {
          TelicInstance inst = make_instance(sys, g, n, target_fixture(j));
          BigInt total = grid_size(inst.grid_precision);
          for (BigInt i = 0; i < total; ++i) {
            Quad s(grid_point(inst.grid_precision, i));
            bool expected = scan_membership(inst, s);
            expect(verify_certificate(inst, s) == expected,
                   "verifier disagrees with the scan at " + kind_label(sys) +
                       "/" + kind_label(g) + " n=" + std::to_string(n) +
                       " target=" + show(inst.target) + " s=" +
                       format_number(s));
          }
        }

  // off-grid and out-of-range certificates always verify false
  TelicInstance inst = make_instance(MapSpec::doubling(), MapSpec::identity(),
                                     2, Interval(Quad(0), Quad(1)), 4);
  for (const Quad& s : {Quad(0, 1, 2), q(2, 3), q(1, 32), q(-1, 8), Quad(1)})
    expect(!verify_certificate(inst, s),
           "non-certificate " + format_number(s) + " verified true");
}

void criterion3() {
  testutil::Sampler sampler(0xacce9701u);
  for (int t = 0; t < 100; ++t) {
    Quad y = (t % 2) ? Quad(sampler.dyadic(1 + unsigned(sampler.below(12))))
                     : sampler.quad01();
    for (unsigned n = 1; n <= 6; ++n) {
      auto pre = preimages(MapSpec::doubling(), y, n);
      expect(pre.size() == (std::size_t{1} << n),
             "expected 2^" + std::to_string(n) + " preimages of " +
                 format_number(y) + ", got " + std::to_string(pre.size()));
    }
  }
}

void criterion4() {
  for (unsigned n = 1; n <= 10; ++n)
    for (unsigned k = 1; k <= 10; ++k) {
      SmallPreimageReport rep = check_small_preimage(n, k);
      expect(rep.injective, "collision at n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
    }
}

void criterion5() {
  for (unsigned n : {2u, 3u}) {
    std::uint64_t bound = n == 2 ? 7 : 92;  // floor(sqrt2 * 2^(n^2-n)) + 2
    for (unsigned j = 0; j < (1u << n); ++j) {
      Interval target(q(long(j), 1 << n), q(long(j) + 1, 1 << n));
      TelicInstance inst =
          make_instance(MapSpec::doubling(), MapSpec::alpha(), n, target,
                        n * n, SolveMode::Search);
      SolveAllResult all = solve_all(inst);
      expect(all.witnesses.size() <= bound,
             "witness count " + std::to_string(all.witnesses.size()) +
                 " exceeds " + std::to_string(bound) + " at n=" +
                 std::to_string(n) + " target=" + show(target));
    }
  }
}

void criterion6() {
  CardinalityGap g2 = cardinality_gap(MapSpec::tent(), MapSpec::identity(),
                                      MapSpec::squaring(), MapSpec::identity(),
                                      2);
  expect(g2.card_from == 5, "card_from at n=2 is " +
                                std::to_string(g2.card_from) + ", want 5");
  expect(g2.card_to == 16,
         "card_to at n=2 is " + std::to_string(g2.card_to) + ", want 16");
  expect(g2.gap, "no gap reported at n=2");

  CardinalityGap g3 = cardinality_gap(MapSpec::tent(), MapSpec::identity(),
                                      MapSpec::squaring(), MapSpec::identity(),
                                      3);
  expect(g3.card_from < 512, "card_from at n=3 is " +
                                 std::to_string(g3.card_from) +
                                 ", want < 512");
}

void criterion7() {
  auto w = level1_witness(MapSpec::tent(), MapSpec::squaring(), 4);
  expect(w.has_value(), "no witness pair found");
  expect(w->first == Dyadic(1, 2) && w->second == Dyadic(3, 2),
         "got (" + format_number(w->first) + ", " + format_number(w->second) +
             "), want (1/4, 3/4)");
}

void criterion8() {
  auto rows = fixedpoint_report(10);
  expect(rows.size() == 10, "want 10 rows");
  for (const FixedPointRow& r : rows) {
    expect(r.k == r.n || r.k == r.n + 1,
           "k(" + std::to_string(r.n) + ") = " + std::to_string(r.k));
    if (r.n >= 2)
      expect(r.disjoint_for_all_J,
             "translate not disjoint at n=" + std::to_string(r.n));
  }

  // every fixed eta entry K = J is rejected at level 4
  for (unsigned n = 2; n <= 10; ++n)
    for (long c : {3, 5, 7, 9, 11}) {
      TelicInstance inst = make_bounded_instance(n, q(c, 16));
      EtaTable eta{n, n * n, {{inst.target, inst.target}}};
      ReductionSides sides{MapSpec::rotation(Quad(-1, 1, 1)),
                           MapSpec::identity(),
                           inst.effective_n(),
                           MapSpec::identity(),
                           MapSpec::identity(),
                           n,
                           n * n};
      ReductionReport rep =
          check_reduction_family(eta, ReductionLevel::L4, sides);
      std::string where =
          "n=" + std::to_string(n) + " center=" + format_number(q(c, 16));
      expect(!rep.all_pass, "fixed entry accepted at " + where);
      bool implied = false;
      for (const std::string& v : rep.entries.at(0).violations)
        if (v == "implication") implied = true;
      expect(implied, "no implication violation at " + where);
    }
}

void criterion9() {
  EtaTable pass{2, 6, {{Interval(Quad(0), Quad(1)), Interval(Quad(0), Quad(1))},
                       {Interval::point(q(1, 2)), Interval::point(q(1, 8))}}};
  ReductionReport ok = check_reduction_family(
      pass, ReductionLevel::L4a, MapSpec::doubling(), MapSpec::identity(),
      MapSpec::identity(), MapSpec::identity(), 2);
  expect(ok.all_pass, "golden passing table rejected");

  EtaTable fat{2, 6, {{Interval::point(q(1, 2)), Interval(q(1, 4), q(3, 8))}}};
  ReductionReport deg = check_reduction_family(
      fat, ReductionLevel::L4a, MapSpec::doubling(), MapSpec::identity(),
      MapSpec::identity(), MapSpec::identity(), 2);
  bool flagged_deg = false;
  for (const std::string& v : deg.entries.at(0).violations)
    if (v == "degeneracy") flagged_deg = true;
  expect(!deg.all_pass && flagged_deg,
         "degenerate-to-nondegenerate entry not flagged");

  EtaTable wide{2, 6, {{Interval(Quad(0), q(1, 8)), Interval(Quad(0), q(1, 4))}}};
  ReductionReport len = check_reduction_family(
      wide, ReductionLevel::L4a, MapSpec::doubling(), MapSpec::identity(),
      MapSpec::identity(), MapSpec::identity(), 2);
  bool flagged_len = false;
  for (const std::string& v : len.entries.at(0).violations)
    if (v == "length") flagged_len = true;
  expect(!len.all_pass && flagged_len, "length-increasing entry not flagged");
}

void criterion10() {
  for (unsigned n = 1; n <= 8; ++n) {
    PeriodicPoints pts = periodic_points(MapSpec::rotation(Quad(-1, 1, 1)), n);
    expect(!pts.all_points && pts.points.empty(),
           "irrational rotation has periodic points at n=" + std::to_string(n));
  }
  for (unsigned n = 1; n <= 6; ++n) {
    PeriodicPoints pts = periodic_points(MapSpec::tent(), n);
    expect(pts.points.size() == (std::size_t{1} << n),
           "tent has " + std::to_string(pts.points.size()) +
               " period-" + std::to_string(n) + " points, want 2^n");
  }

  PhiTable ident;
  for (unsigned p = 0; p < 16; ++p) ident.entries.push_back({q(p, 16), q(p, 16)});
  ident.entries.push_back({Quad(1), Quad(1)});
  SemiconjugacyReport tent_rep =
      check_semiconjugacy(ident, MapSpec::tent(), MapSpec::tent());
  expect(tent_rep.holds, "tent identity fixture does not hold");

  MapSpec rot = MapSpec::rotation(Quad(-1, 1, 1));
  PhiTable translate;
  for (unsigned p = 0; p < 16; ++p) {
    Quad x = q(p, 16);
    translate.entries.push_back({x, (x + q(1, 4)).frac()});
    Quad y = eval_map(rot, x);
    translate.entries.push_back({y, (y + q(1, 4)).frac()});
  }
  SemiconjugacyReport rot_rep = check_semiconjugacy(translate, rot, rot);
  expect(rot_rep.holds && rot_rep.checked == 16,
         "rotation translate fixture does not hold");

  PhiTable mixed;
  mixed.entries.push_back({Quad(0), Quad(0)});
  mixed.entries.push_back({q(1, 2), q(1, 2)});
  mixed.entries.push_back({q(3, 4), q(3, 4)});
  SemiconjugacyReport bad =
      check_semiconjugacy(mixed, MapSpec::tent(), MapSpec::squaring());
  expect(!bad.holds, "tent-vs-squaring fixture holds unexpectedly");
  expect(!bad.violations.empty() && bad.violations.at(0).x == q(3, 4) &&
             bad.violations.at(0).what == "equivariance",
         "violation not reported at x = 3/4");
}

void criterion11() {
  BssProgram dbl = doubling_program();
  testutil::Sampler sampler(0xacce1101u);
  for (int t = 0; t < 1000; ++t) {
    Quad x = (t % 2) ? Quad(sampler.dyadic(1 + unsigned(sampler.below(20))))
                     : sampler.quad01();
    BssRun run = run_program(dbl, {x}, 100);
    expect(run.halted && run.time == 7,
           "doubling program took " + std::to_string(run.time) + " steps");
    expect(run.output.size() == 1 &&
               run.output.at(0) == eval_map(MapSpec::doubling(), x),
           "doubling program disagrees with the map at " + format_number(x));
  }

  for (unsigned r = 0; r <= 8; ++r) {
    BssProgram checker = make_precision_checker(r);
    std::uint64_t time_bound = 6 * r + 12;  // measured once, frozen
    BigInt total = grid_size(r + 2);
    for (BigInt i = 0; i < total; ++i) {
      Quad y(grid_point(r + 2, i));
      BssRun run = run_program(checker, {y}, 10000);
      bool member = i % 4 == 0;
      expect(run.halted && run.output.size() == 1 &&
                 run.output.at(0) == Quad(member ? 1 : 0),
             "checker r=" + std::to_string(r) + " wrong at " +
                 format_number(y));
      expect(run.time == time_bound,
             "checker r=" + std::to_string(r) + " took " +
                 std::to_string(run.time) + " steps at " + format_number(y));
    }
    for (const Quad& y : {Quad(-1, 1, 1), q(1, 3), q(2, 3)}) {
      BssRun run = run_program(checker, {y}, 10000);
      expect(run.output.at(0) == Quad(0) && run.time == time_bound,
             "checker r=" + std::to_string(r) + " mishandles " +
                 format_number(y));
    }
    for (const Quad& y : {q(-1, 8), Quad(1), q(3, 2)}) {
      BssRun run = run_program(checker, {y}, 10000);
      expect(run.output.at(0) == Quad(0) && run.time == 8,
             "checker r=" + std::to_string(r) + " mishandles out-of-range " +
                 format_number(y));
    }
    BssRun plain = run_program(checker, {q(3, 8)}, 10000);
    BssRun padded = run_program(checker, {q(3, 8), Quad(1), Quad(1)}, 10000);
    expect(padded.output.at(0) == plain.output.at(0),
           "padding changes acceptance at r=" + std::to_string(r));
  }
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<void()>>> criteria = {
      {"criterion 1 (order solver equivalence)", criterion1},
      {"criterion 2 (verifier equals exhaustive scan)", criterion2},
      {"criterion 3 (doubling preimage counts)", criterion3},
      {"criterion 4 (small preimage injectivity)", criterion4},
      {"criterion 5 (perturbation witness bound)", criterion5},
      {"criterion 6 (cardinality gap)", criterion6},
      {"criterion 7 (level-1 witness pair)", criterion7},
      {"criterion 8 (fixed point avoidance)", criterion8},
      {"criterion 9 (refined level-4 golden tables)", criterion9},
      {"criterion 10 (periodic points and semiconjugacy)", criterion10},
      {"criterion 11 (register machine programs)", criterion11},
  };

  int failures = 0;
  for (const auto& [name, body] : criteria) {
    try {
      body();
      std::cout << name << ": PASS\n";
    } catch (const Failure& f) {
      ++failures;
      std::cout << name << ": FAIL (" << f.detail << ")\n";
    } catch (const std::exception& e) {
      ++failures;
      std::cout << name << ": FAIL (unexpected error: " << e.what() << ")\n";
    }
  }
  if (failures) std::cout << failures << " criterion(s) failed\n";
  return failures;
}
