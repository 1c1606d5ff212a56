#pragma once

#include <cstdint>
#include <vector>

#include "telic/exec.hpp"
#include "telic/quad.hpp"

namespace telic {

enum class MapKind { Identity, Tent, Doubling, Squaring, Rotation, Alpha, PiecewiseAffine };
enum class EntropyLabel { Zero, Log2 };

const char* kind_name(MapKind k);

struct AffineBranch {
  Quad slope;
  Quad offset;
  bool operator==(const AffineBranch&) const = default;
};

/// One self-map of the unit interval or circle.
///
/// Every kind except Squaring carries piecewise-affine data so the generic
/// machinery (branch evaluation, preimage back-solving, itinerary
/// composition) covers the whole zoo uniformly:
///
///   Identity     x
///   Tent         2 min(x, 1-x)                     interval, onto [0,1]
///   Doubling     2x mod 1                          circle, domain [0,1)
///   Squaring     x^2                               interval homeomorphism
///   Rotation(k)  x + k mod 1                       circle, k reduced mod 1
///   Alpha        x/sqrt2 on [0, 2-sqrt2],          interval homeomorphism
///                sqrt2 x + 1 - sqrt2 on (2-sqrt2, 1]
///
/// Branch ownership: branch 0 covers [0, t_1]; branch i covers (t_i, t_{i+1}];
/// the last branch ends at 1 (exclusive for circle kinds). Circle kinds
/// evaluate into [0, 1), interval kinds into [0, 1].
///
/// The entropy label is informational metadata only; nothing computes with it.
class MapSpec {
 public:
  MapSpec() : branches_{{Quad(1), Quad(0)}} {}  // the identity map

  static MapSpec identity();
  static MapSpec tent();
  static MapSpec doubling();
  static MapSpec squaring();
  static MapSpec rotation(const Quad& kappa);
  static MapSpec alpha();
  static MapSpec piecewise_affine(std::vector<Quad> breakpoints,
                                  std::vector<AffineBranch> branches, bool mod1,
                                  EntropyLabel label = EntropyLabel::Zero);

  MapKind kind() const { return kind_; }
  const Quad& kappa() const { return kappa_; }
  const std::vector<Quad>& breakpoints() const { return breakpoints_; }
  const std::vector<AffineBranch>& branches() const { return branches_; }
  bool mod1() const { return mod1_; }
  EntropyLabel entropy_label() const { return entropy_; }

  /// Evaluates into [0, 1) rather than [0, 1].
  bool is_circle() const { return mod1_; }
  /// Has affine branch data (everything except Squaring).
  bool is_affine() const { return kind_ != MapKind::Squaring; }
  /// Usable as the conjugating homeomorphism g: Identity, Alpha, Squaring,
  /// or a monotone PiecewiseAffine without mod 1.
  bool is_homeo() const;
  /// Injective on its domain (homeomorphism kinds plus Rotation).
  bool is_injective() const;
  /// +1 increasing, -1 decreasing. Pre: is_homeo() or Rotation-free affine
  /// monotone data; Identity/Alpha/Squaring are +1.
  int monotone_direction() const;

  bool operator==(const MapSpec&) const = default;

 private:
  MapKind kind_ = MapKind::Identity;
  Quad kappa_;
  std::vector<Quad> breakpoints_;
  std::vector<AffineBranch> branches_;
  bool mod1_ = false;
  EntropyLabel entropy_ = EntropyLabel::Zero;
};

/// One application of m. Domain: [0, 1] for interval kinds, [0, 1) for
/// circle kinds; violations raise RangeError.
Quad eval_map(const MapSpec& m, const Quad& x);

/// Inverse of an injective map at y. Squaring demands an exactly
/// representable square root (rational with square numerator and
/// denominator), otherwise UnsupportedError; Tent/Doubling are not
/// invertible and raise UnsupportedError.
Quad eval_inverse(const MapSpec& m, const Quad& y);

/// m^n(g(x)). g must be a homeomorphism kind (ValidationError otherwise).
/// Rotation iterates collapse to a single translation by n*kappa.
Quad iterate(const MapSpec& m, const MapSpec& g, const Quad& x, unsigned n);

/// All x with m^n(x) == y, ascending, exact. n >= 1.
std::vector<Quad> preimages(const MapSpec& m, const Quad& y, unsigned n);

struct ImageStats {
  std::uint64_t grid_size = 0;
  std::uint64_t distinct = 0;
  std::uint64_t max_multiplicity = 0;
  std::uint64_t collided_values = 0;  // values hit two or more times
  bool operator==(const ImageStats&) const = default;
};

/// Exact distinct-value count of {m^n(g(s)) : s in I_precision} plus
/// collision statistics. I_r = {p/2^r : 0 <= p < 2^r}. Injective pairs are
/// counted without enumeration. Budgets per ExecPolicy.
ImageStats image_of_grid(const MapSpec& m, const MapSpec& g, unsigned n,
                         unsigned precision, const ExecPolicy& pol = {});

/// Fixed points of m^n. all_points marks maps whose period-n set is the whole
/// domain (Identity, rational rotations at full turns).
struct PeriodicPoints {
  bool all_points = false;
  std::vector<Quad> points;
};
PeriodicPoints periodic_points(const MapSpec& m, unsigned n);

}  // namespace telic
