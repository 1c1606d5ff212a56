#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "telic/exec.hpp"
#include "telic/instance.hpp"

namespace telic {

struct SolveResult {
  bool decision = false;
  std::optional<Dyadic> witness;
  std::uint64_t evals = 0;
  bool operator==(const SolveResult&) const = default;
};

struct SolveAllResult {
  std::vector<Dyadic> witnesses;
  std::uint64_t evals = 0;
};

/// Ground truth: scans the whole grid and returns the smallest witness.
/// Deterministic under any worker count; evals is the canonical sequential
/// count (witness index + 1, or the full grid size when absent).
SolveResult solve_brute(const TelicInstance& inst, const ExecPolicy& pol = {});

/// Every witness, ascending.
SolveAllResult solve_all(const TelicInstance& inst, const ExecPolicy& pol = {});

/// Binary-search solver for order-compatible systems (Identity, Squaring,
/// Rotation, monotone piecewise-affine homeomorphisms). Uses at most
/// 3 * (grid_precision + 2) evaluations. The witness is valid but not
/// necessarily the smallest. Tent and Doubling raise UnsupportedError;
/// callers fall back to solve_brute.
SolveResult solve_order(const TelicInstance& inst);

/// Half-open range of grid indices.
struct IndexRange {
  BigInt begin;
  BigInt end;
  bool operator==(const IndexRange&) const = default;
};

/// The full hit set {i : verify_certificate(inst, i/2^r)} as ascending
/// disjoint index ranges. Order-compatible systems get at most two ranges
/// by binary search, with no grid-size budget; everything else is a
/// budget-gated scan compressed to ranges.
std::vector<IndexRange> hit_index_ranges(const TelicInstance& inst,
                                         const ExecPolicy& pol = {});

}  // namespace telic
