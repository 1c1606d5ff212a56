#include "doctest.h"

#include <vector>

#include "telic/errors.hpp"
#include "telic/exec.hpp"
#include "telic/maps.hpp"
#include "testutil.hpp"

using namespace telic;

namespace {

Quad q(long a, long b) { return Quad(a, 0, b); }

MapSpec monotone_pwa() {
  // x/2 on [0,1/2], 3x/2 - 1/2 above; continuous, onto [0,1]
  return MapSpec::piecewise_affine({q(1, 2)},
                                   {{q(1, 2), Quad(0)}, {q(3, 2), q(-1, 2)}},
                                   /*mod1=*/false);
}

}  // namespace

TEST_CASE("eval on the interval kinds") {
  CHECK(eval_map(MapSpec::identity(), q(3, 7)) == q(3, 7));
  CHECK(eval_map(MapSpec::tent(), q(1, 4)) == q(1, 2));
  CHECK(eval_map(MapSpec::tent(), q(3, 4)) == q(1, 2));
  CHECK(eval_map(MapSpec::tent(), q(1, 2)) == Quad(1));
  CHECK(eval_map(MapSpec::tent(), Quad(1)) == Quad(0));
  CHECK(eval_map(MapSpec::squaring(), q(3, 4)) == q(9, 16));
  CHECK(eval_map(MapSpec::squaring(), Quad(1)) == Quad(1));
  CHECK(eval_map(MapSpec::squaring(), Quad::sqrt2() / Quad(2)) == q(1, 2));
}

TEST_CASE("eval on the circle kinds") {
  CHECK(eval_map(MapSpec::doubling(), q(1, 4)) == q(1, 2));
  CHECK(eval_map(MapSpec::doubling(), q(3, 4)) == q(1, 2));
  CHECK(eval_map(MapSpec::doubling(), Quad(0)) == Quad(0));

  MapSpec rot = MapSpec::rotation(Quad(-1, 1, 1));
  CHECK(eval_map(rot, Quad(0)) == Quad(-1, 1, 1));
  CHECK(eval_map(rot, q(7, 8)) == Quad(-9, 8, 8));  // wraps once

  // rational kappa is reduced mod 1 up front
  CHECK(MapSpec::rotation(q(5, 2)).kappa() == q(1, 2));
}

TEST_CASE("alpha is continuous across its breakpoint") {
  MapSpec a = MapSpec::alpha();
  Quad t(2, -1, 1);  // 2 - sqrt2
  CHECK(eval_map(a, t) == Quad(-1, 1, 1));
  CHECK(a.branches()[1].slope * t + a.branches()[1].offset == Quad(-1, 1, 1));
  CHECK(eval_map(a, Quad(0)) == Quad(0));
  CHECK(eval_map(a, Quad(1)) == Quad(1));
  CHECK(eval_map(a, q(3, 4)) == Quad(4, -1, 4));
}

TEST_CASE("domain violations raise RangeError") {
  CHECK_THROWS_AS(eval_map(MapSpec::tent(), q(-1, 8)), RangeError);
  CHECK_THROWS_AS(eval_map(MapSpec::tent(), q(9, 8)), RangeError);
  CHECK_THROWS_AS(eval_map(MapSpec::doubling(), Quad(1)), RangeError);
  CHECK_THROWS_AS(eval_map(MapSpec::rotation(Quad(-1, 1, 1)), Quad(1)),
                  RangeError);
}

TEST_CASE("homeomorphism and injectivity predicates") {
  CHECK(MapSpec::identity().is_homeo());
  CHECK(MapSpec::alpha().is_homeo());
  CHECK(MapSpec::squaring().is_homeo());
  CHECK(!MapSpec::tent().is_homeo());
  CHECK(!MapSpec::doubling().is_homeo());
  CHECK(!MapSpec::rotation(Quad(-1, 1, 1)).is_homeo());
  CHECK(MapSpec::rotation(Quad(-1, 1, 1)).is_injective());
  CHECK(!MapSpec::tent().is_injective());

  CHECK(monotone_pwa().is_homeo());
  CHECK(monotone_pwa().monotone_direction() == 1);

  MapSpec dec = MapSpec::piecewise_affine({}, {{Quad(-1), Quad(1)}}, false);
  CHECK(dec.is_homeo());
  CHECK(dec.monotone_direction() == -1);

  // discontinuous at the breakpoint, so not a homeomorphism
  MapSpec gap = MapSpec::piecewise_affine(
      {q(1, 2)}, {{q(1, 2), Quad(0)}, {q(1, 2), q(1, 2)}}, false);
  CHECK(!gap.is_homeo());

  CHECK(MapSpec::identity().monotone_direction() == 1);
  CHECK(MapSpec::squaring().monotone_direction() == 1);
}

TEST_CASE("iterate composes map powers with the conjugating homeo") {
  CHECK(iterate(MapSpec::doubling(), MapSpec::identity(), q(3, 8), 2) ==
        q(1, 2));
  CHECK(iterate(MapSpec::tent(), MapSpec::alpha(), q(3, 4), 0) ==
        eval_map(MapSpec::alpha(), q(3, 4)));

  // rotation iterates collapse to one translation; compare with the loop
  MapSpec rot = MapSpec::rotation(Quad(-1, 1, 1));
  Quad x(0);
  for (int i = 0; i < 5; ++i) x = eval_map(rot, x);
  CHECK(iterate(rot, MapSpec::identity(), Quad(0), 5) == x);
  CHECK(x == Quad(-7, 5, 1));

  CHECK_THROWS_AS(iterate(MapSpec::tent(), MapSpec::tent(), Quad(0), 1),
                  ValidationError);
}

TEST_CASE("eval_inverse on the injective kinds") {
  CHECK(eval_inverse(MapSpec::identity(), q(5, 8)) == q(5, 8));
  CHECK(eval_inverse(MapSpec::squaring(), q(9, 16)) == q(3, 4));
  CHECK(eval_inverse(MapSpec::squaring(), q(1, 2)) == Quad(0, 1, 2));
  CHECK(eval_inverse(MapSpec::alpha(), Quad(-1, 1, 1)) == Quad(2, -1, 1));
  CHECK(eval_inverse(MapSpec::rotation(Quad(-1, 1, 1)), Quad(-1, 1, 1)) ==
        Quad(0));
  CHECK_THROWS_AS(eval_inverse(MapSpec::squaring(), q(3, 4)),
                  UnsupportedError);
  CHECK_THROWS_AS(eval_inverse(MapSpec::tent(), q(1, 2)), UnsupportedError);
  CHECK_THROWS_AS(eval_inverse(MapSpec::doubling(), q(1, 2)),
                  UnsupportedError);
}

TEST_CASE("preimages are exact and ascending") {
  auto pre = preimages(MapSpec::doubling(), q(3, 4), 1);
  CHECK(pre == std::vector<Quad>{q(3, 8), q(7, 8)});

  CHECK(preimages(MapSpec::tent(), q(1, 2), 1) ==
        std::vector<Quad>{q(1, 4), q(3, 4)});
  CHECK(preimages(MapSpec::tent(), Quad(1), 1) == std::vector<Quad>{q(1, 2)});
  CHECK(preimages(MapSpec::tent(), Quad(0), 1) ==
        std::vector<Quad>{Quad(0), Quad(1)});
  CHECK(preimages(MapSpec::doubling(), Quad(0), 2) ==
        std::vector<Quad>{Quad(0), q(1, 4), q(1, 2), q(3, 4)});
  CHECK(preimages(MapSpec::squaring(), q(9, 16), 1) ==
        std::vector<Quad>{q(3, 4)});
  CHECK(preimages(MapSpec::rotation(Quad(-1, 1, 1)), Quad(-1, 1, 1), 1) ==
        std::vector<Quad>{Quad(0)});
  CHECK(preimages(MapSpec::identity(), q(2, 3), 5) ==
        std::vector<Quad>{q(2, 3)});

  CHECK_THROWS_AS(preimages(MapSpec::doubling(), q(1, 2), 0), RangeError);
  CHECK_THROWS_AS(preimages(MapSpec::squaring(), q(3, 4), 1),
                  UnsupportedError);
}

TEST_CASE("doubling preimages multiply and map back") {
  auto pre = preimages(MapSpec::doubling(), q(3, 8), 3);
  CHECK(pre.size() == 8);
  for (const Quad& x : pre)
    CHECK(iterate(MapSpec::doubling(), MapSpec::identity(), x, 3) == q(3, 8));
}

TEST_CASE("image_of_grid counts collisions exactly") {
  ImageStats tent2 = image_of_grid(MapSpec::tent(), MapSpec::identity(), 2, 4);
  CHECK(tent2 == ImageStats{16, 5, 4, 5});

  // injective pairs skip enumeration entirely
  CHECK(image_of_grid(MapSpec::squaring(), MapSpec::identity(), 1, 4) ==
        ImageStats{16, 16, 1, 0});
  CHECK(image_of_grid(MapSpec::identity(), MapSpec::identity(), 7, 4) ==
        ImageStats{16, 16, 1, 0});

  ExecPolicy tight;
  tight.memory_bits = 2;  // forces the bucketed pass
  tight.streaming = true;
  CHECK(image_of_grid(MapSpec::doubling(), MapSpec::alpha(), 2, 4, tight) ==
        image_of_grid(MapSpec::doubling(), MapSpec::alpha(), 2, 4));

  ExecPolicy cramped = tight;
  cramped.streaming = false;  // past the memory budget without opting in
  CHECK_THROWS_WITH_AS(
      image_of_grid(MapSpec::doubling(), MapSpec::alpha(), 2, 4, cramped),
      doctest::Contains("streaming"), ResourceError);

  ExecPolicy small;
  small.max_grid_bits = 3;
  CHECK_THROWS_AS(
      image_of_grid(MapSpec::tent(), MapSpec::identity(), 1, 10, small),
      ResourceError);
}

TEST_CASE("periodic points of the named maps") {
  auto per = periodic_points(MapSpec::tent(), 1);
  CHECK(!per.all_points);
  CHECK(per.points == std::vector<Quad>{Quad(0), q(2, 3)});

  CHECK(periodic_points(MapSpec::tent(), 2).points ==
        std::vector<Quad>{Quad(0), q(2, 5), q(2, 3), q(4, 5)});
  CHECK(periodic_points(MapSpec::doubling(), 1).points ==
        std::vector<Quad>{Quad(0)});
  CHECK(periodic_points(MapSpec::doubling(), 2).points ==
        std::vector<Quad>{Quad(0), q(1, 3), q(2, 3)});
  CHECK(periodic_points(MapSpec::alpha(), 2).points ==
        std::vector<Quad>{Quad(0), Quad(1)});
  CHECK(periodic_points(MapSpec::squaring(), 3).points ==
        std::vector<Quad>{Quad(0), Quad(1)});

  auto irr = periodic_points(MapSpec::rotation(Quad(-1, 1, 1)), 4);
  CHECK(!irr.all_points);
  CHECK(irr.points.empty());

  auto half = periodic_points(MapSpec::rotation(q(1, 2)), 2);
  CHECK(half.all_points);
  CHECK(periodic_points(MapSpec::rotation(q(1, 2)), 1).points.empty());
  CHECK(periodic_points(MapSpec::identity(), 1).all_points);

  MapSpec shift = MapSpec::piecewise_affine({}, {{Quad(1), Quad(0)}}, false);
  CHECK_THROWS_WITH_AS(periodic_points(shift, 1),
                       doctest::Contains("continuum"), UnsupportedError);
}
