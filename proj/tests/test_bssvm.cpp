#include "doctest.h"

#include <vector>

#include "telic/bssvm.hpp"
#include "telic/errors.hpp"
#include "telic/maps.hpp"
#include "testutil.hpp"

using namespace telic;
using bss::Branch;
using bss::Computation;
using bss::Copy;
using bss::Halt;
using bss::LoadConst;
using bss::Op;

namespace {
Quad q(long a, long b) { return Quad(a, 0, b); }
}

TEST_CASE("doubling program computes 2x mod 1 in constant time") {
  BssProgram prog = doubling_program();
  validate_program(prog);
  CHECK(prog.constants == std::vector<Quad>{Quad(1), Quad(0)});
  CHECK(prog.instructions.size() == 11);

  auto run = [&](const Quad& x) { return run_program(prog, {x}, 100); };
  CHECK(run(q(3, 8)).output == std::vector<Quad>{q(3, 4)});
  CHECK(run(q(3, 4)).output == std::vector<Quad>{q(1, 2)});
  CHECK(run(Quad(0)).output == std::vector<Quad>{Quad(0)});
  CHECK(run(q(3, 8)).time == 7);
  CHECK(run(q(3, 4)).time == 7);  // the wrapping path costs the same
  CHECK(run(Quad(0)).halted);

  testutil::Sampler s(0x5eed0b55u);
  for (int t = 0; t < 50; ++t) {
    Quad x = (t % 2) ? Quad(s.dyadic(1 + unsigned(s.below(20)))) : s.quad01();
    BssRun r = run(x);
    CHECK(r.halted);
    CHECK(r.time == 7);
    CHECK(r.output == std::vector<Quad>{eval_map(MapSpec::doubling(), x)});
  }
}

TEST_CASE("fuel is a hard budget") {
  BssProgram prog = doubling_program();
  BssRun dry = run_program(prog, {q(3, 8)}, 0);
  CHECK(!dry.halted);
  CHECK(dry.time == 0);
  CHECK(dry.output == std::vector<Quad>{q(3, 8)});

  BssRun partial = run_program(prog, {q(3, 8)}, 3);
  CHECK(!partial.halted);
  CHECK(partial.time == 3);

  CHECK(!run_program(prog, {q(3, 8)}, 6).halted);
  BssRun exact = run_program(prog, {q(3, 8)}, 7);
  CHECK(exact.halted);  // the halt label is free
  CHECK(exact.time == 7);
}

TEST_CASE("copy advances the trace counters") {
  BssProgram prog;
  prog.instructions = {Copy{1, 2}, Halt{}};
  BssConfig cfg;
  cfg.registers = {Quad(0), Quad(5)};
  BssConfig next = step(cfg, prog);
  CHECK(next.instr == 2);
  CHECK(next.i == 2);
  CHECK(next.j == 2);
  REQUIRE(next.registers.size() >= 3);
  CHECK(next.registers[2] == Quad(5));

  BssProgram arith;
  arith.instructions = {Computation{Op::Add, 1, 1, 1}, Halt{}};
  BssConfig after = step(cfg, arith);
  CHECK(after.i == 1);
  CHECK(after.j == 1);
  CHECK(after.registers[1] == Quad(10));

  BssConfig at_halt;
  at_halt.instr = 2;
  CHECK_THROWS_AS(step(at_halt, prog), ValidationError);
  BssConfig outside;
  outside.instr = 99;
  CHECK_THROWS_AS(step(outside, prog), ValidationError);
}

TEST_CASE("program validation") {
  BssProgram no_halt;
  no_halt.instructions = {Copy{1, 1}};
  CHECK_THROWS_AS(validate_program(no_halt), ValidationError);

  BssProgram early_halt;
  early_halt.instructions = {Halt{}, Copy{1, 1}};
  CHECK_THROWS_AS(validate_program(early_halt), ValidationError);

  BssProgram two_halts;
  two_halts.instructions = {Halt{}, Halt{}};
  CHECK_THROWS_AS(validate_program(two_halts), ValidationError);

  BssProgram stray;
  stray.instructions = {Branch{9}, Halt{}};
  CHECK_THROWS_AS(validate_program(stray), ValidationError);
  CHECK_THROWS_AS(run_program(stray, {Quad(0)}, 10), ValidationError);

  BssProgram fine;
  fine.instructions = {Branch{2}, Halt{}};
  validate_program(fine);
}

TEST_CASE("branching and arithmetic cost one step each") {
  BssProgram taken;
  taken.instructions = {LoadConst{Quad(1), 0}, Branch{4},
                        LoadConst{Quad(5), 2}, Halt{}};
  BssRun t = run_program(taken, {Quad(0)}, 10);
  CHECK(t.time == 2);
  CHECK(t.halted);

  BssProgram skipped;
  skipped.instructions = {LoadConst{Quad(-1), 0}, Branch{4},
                          LoadConst{Quad(5), 2}, Halt{}};
  BssRun s = run_program(skipped, {Quad(0)}, 10);
  CHECK(s.time == 3);

  BssProgram square;
  square.instructions = {Computation{Op::Mul, 1, 1, 1}, Halt{}};
  BssRun m = run_program(square, {Quad(-1, 1, 1)}, 10);
  CHECK(m.output == std::vector<Quad>{Quad(3, -2, 1)});
  CHECK(m.time == 1);
}

TEST_CASE("precision checker accepts exactly its grid") {
  for (unsigned r : {0u, 1u, 5u}) {
    BssProgram prog = make_precision_checker(r);
    validate_program(prog);
    CHECK(prog.instructions.size() == 9 * r + 20);
  }

  BssProgram two = make_precision_checker(2);
  auto run = [&](const Quad& x) { return run_program(two, {x}, 1000); };
  for (unsigned p = 0; p < 16; ++p) {
    BssRun res = run(q(p, 16));
    CHECK(res.halted);
    CHECK(res.time == 24);  // balanced branches, constant cost
    CHECK(res.output == std::vector<Quad>{Quad(p % 4 == 0 ? 1 : 0)});
  }

  CHECK(run(Quad(-1, 1, 1)).output == std::vector<Quad>{Quad(0)});
  CHECK(run(q(2, 3)).output == std::vector<Quad>{Quad(0)});
  CHECK(run(Quad(-1, 1, 1)).time == 24);

  for (const Quad& bad : {q(-1, 8), Quad(1), q(3, 2)}) {
    BssRun res = run(bad);
    CHECK(res.output == std::vector<Quad>{Quad(0)});
    CHECK(res.time == 8);  // rejected by the range guard
  }

  BssRun zero = run_program(make_precision_checker(0), {Quad(0)}, 1000);
  CHECK(zero.output == std::vector<Quad>{Quad(1)});
  CHECK(zero.time == 12);
}

TEST_CASE("unary padding does not change acceptance") {
  BssProgram prog = make_precision_checker(3);
  for (const Quad& y : {q(3, 8), q(1, 3), q(5, 16)}) {
    BssRun plain = run_program(prog, {y}, 1000);
    BssRun padded = run_program(prog, {y, Quad(1), Quad(1)}, 1000);
    REQUIRE(plain.output.size() == 1);
    REQUIRE(padded.output.size() == 3);
    CHECK(padded.output[0] == plain.output[0]);
    CHECK(padded.time == plain.time);
  }
}
