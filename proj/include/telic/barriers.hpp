#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "telic/exec.hpp"
#include "telic/instance.hpp"
#include "telic/interval.hpp"
#include "telic/maps.hpp"

namespace telic {

struct SmallPreimageReport {
  bool injective = false;
  std::optional<std::pair<Dyadic, Dyadic>> colliding_pair;
};

/// Injectivity of s -> frac(2^k * h(s)) on I_n by exact sorted comparison.
/// The default h is the alpha homeomorphism (the lemma's statement); pass
/// identity for the control case, which collides already at n = k = 1.
SmallPreimageReport check_small_preimage(unsigned n, unsigned k,
                                         const MapSpec& homeo = MapSpec::alpha(),
                                         const ExecPolicy& pol = {});

/// Perturbation data at s for the map s' -> E2^n(h(s')) on I_{n^m}:
///   c1  the value at s
///   c2  a nearby value outside the image (midpoint of the gap next to c1)
///   c3  the value nearest to c1, c3 != c1, achieved by some far point
///       (|s - s'| >= 1/3); s_prime is the smallest such point
///   all_preimages_far  whether every preimage of c3 is far from s
struct PerturbReport {
  Quad c1;
  Quad c2;
  Quad c3;
  Dyadic s_prime;
  Quad separation;  // |c1 - c3|
  bool all_preimages_far = false;
};

PerturbReport perturb_witness(unsigned n, unsigned m, const Dyadic& s,
                              const MapSpec& homeo = MapSpec::alpha(),
                              const ExecPolicy& pol = {});

struct CardinalityGap {
  std::uint64_t card_from = 0;
  std::uint64_t card_to = 0;
  bool gap = false;  // card_from < card_to
};

/// Distinct-image counts of both pairs on I_{n^2}.
CardinalityGap cardinality_gap(const MapSpec& from_system, const MapSpec& from_homeo,
                               const MapSpec& to_system, const MapSpec& to_homeo,
                               unsigned n, const ExecPolicy& pol = {});

/// A pair x1 < x2 in I_r with from(x1) = from(x2) but to(x1) != to(x2).
/// Searches mirror pairs (x, 1-x) coarse to fine first, then falls back to
/// a full collision scan; absent when `from` is injective on I_r.
std::optional<std::pair<Dyadic, Dyadic>> level1_witness(const MapSpec& from,
                                                        const MapSpec& to, unsigned r,
                                                        const ExecPolicy& pol = {});

/// One eta entry: from-side target J and its assigned to-side target K.
struct EtaEntry {
  Interval from;
  Interval to;
};

struct EtaTable {
  unsigned n = 0;            // informational; the checker takes n from the sides
  unsigned domain_grid = 0;  // discretization the table is total on
  std::vector<EtaEntry> entries;
};

/// Everything a reduction check needs about the two problems. from_iters
/// and to_iters may differ (bounded instances iterate k(n) on one side).
struct ReductionSides {
  MapSpec from_system;
  MapSpec from_homeo;
  unsigned from_iters = 1;
  MapSpec to_system;
  MapSpec to_homeo;
  unsigned to_iters = 1;
  unsigned grid_precision = 1;
};

enum class ReductionLevel { L1, L2, L3, L4, L4a };

/// Per-entry verdict. violations holds labels from {"equivalence",
/// "existence", "implication", "emptiness", "degeneracy", "length"};
/// violating_x is the first offending grid point where one exists.
struct EntryVerdict {
  Interval from;
  Interval to;
  bool pass = false;
  std::optional<Dyadic> violating_x;
  std::vector<std::string> violations;
};

struct ReductionReport {
  bool all_pass = false;
  std::vector<EntryVerdict> entries;
};

/// Checks every table entry against the level's quantified condition over
/// the grid, exactly:
///   L1   per-x equivalence plus the point-map constraint (degenerate J
///        must map to degenerate K); requires matching homeomorphisms
///   L2   witness existence on the from side iff on the to side
///   L3   per-x equivalence over I_{grid_precision}
///   L4   to-hits contained in from-hits, and from-solvability implies
///        to-solvability
///   L4a  L4 with the containment taken over the finer I_{domain_grid},
///        plus |K| <= |J| when the to-system preserves Lebesgue measure
///        and degenerate->degenerate when `from` is many-to-one and `to`
///        is a homeomorphism
ReductionReport check_reduction_family(const EtaTable& eta, ReductionLevel level,
                                       const ReductionSides& sides,
                                       const ExecPolicy& pol = {});

ReductionReport check_reduction_family(const EtaTable& eta, ReductionLevel level,
                                       const MapSpec& from_system, const MapSpec& from_homeo,
                                       const MapSpec& to_system, const MapSpec& to_homeo,
                                       unsigned n, const ExecPolicy& pol = {});

/// Feasibility of one scan target J: whether any candidate K on the
/// candidate grid satisfies the level condition, with a minimal-length
/// example when one exists.
struct TargetFeasibility {
  Interval target;
  bool feasible = false;
  std::optional<Interval> example;
  std::optional<Dyadic> min_length;
};

struct ReductionSearchReport {
  std::vector<TargetFeasibility> targets;
  bool any_feasible = false;
};

/// For every J of length 2^-n on the n-grid, scans every dyadic candidate
/// interval at candidate_precision for the level-3 or level-4 condition.
/// A report with no feasible target is a finite-scale non-existence
/// certificate for the level at this n.
ReductionSearchReport search_reduction_level(unsigned level, const ReductionSides& sides,
                                             unsigned n, unsigned candidate_precision,
                                             const ExecPolicy& pol = {});

struct FixedPointRow {
  unsigned n = 0;
  unsigned k = 0;
  Quad translation;      // frac(k(n) * kappa)
  Quad dist;             // circle distance of the translation from 0
  Dyadic diameter;       // a(n)
  bool disjoint_for_all_J = false;
};

/// Rows for n = 1..n_max: a diameter-a(n) interval and its k(n)-step
/// rotation translate are disjoint iff the circle distance exceeds a(n),
/// decided in closed form.
std::vector<FixedPointRow> fixedpoint_report(unsigned n_max,
                                             const BoundedParams& params = {});

struct PhiTable {
  std::vector<std::pair<Quad, Quad>> entries;  // x -> phi(x)
};

struct SemiconjugacyViolation {
  Quad x;
  std::string what;  // "equivariance" or "periodicity"
};

struct SemiconjugacyReport {
  bool holds = false;
  unsigned checked = 0;  // equivariance checks performed
  std::vector<SemiconjugacyViolation> violations;
};

/// Verifies phi(T(x)) = S(phi(x)) on every sampled x whose T-image is also
/// sampled (entries without that are lookup-only), and that phi carries
/// sampled period-p points of T to period-p points of S for p <= max_period.
/// Raises ValidationError when no entry is checkable.
SemiconjugacyReport check_semiconjugacy(const PhiTable& phi, const MapSpec& T,
                                        const MapSpec& S, unsigned max_period = 3);

}  // namespace telic
