#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "telic/quad.hpp"

namespace telic {

namespace bss {

enum class Op { Add, Sub, Mul };

struct Computation {
  Op op = Op::Add;
  unsigned src1 = 0;
  unsigned src2 = 0;
  unsigned dst = 0;
  bool operator==(const Computation&) const = default;
};

struct LoadConst {
  Quad value;
  unsigned dst = 0;
  bool operator==(const LoadConst&) const = default;
};

/// Taken iff register 0 is >= 0. Targets are 1-based labels.
struct Branch {
  unsigned target = 0;
  bool operator==(const Branch&) const = default;
};

struct Copy {
  unsigned src = 0;
  unsigned dst = 0;
  bool operator==(const Copy&) const = default;
};

struct Halt {
  bool operator==(const Halt&) const = default;
};

using Instr = std::variant<Computation, LoadConst, Branch, Copy, Halt>;

}  // namespace bss

struct BssProgram {
  std::vector<Quad> constants;
  std::vector<bss::Instr> instructions;  // labels are 1-based
  bool operator==(const BssProgram&) const = default;
};

/// Exactly one halt, placed last; branch targets within the label range.
void validate_program(const BssProgram& prog);

struct BssConfig {
  std::size_t instr = 1;
  std::uint64_t i = 1;  // copy counters; advance on Copy instructions only
  std::uint64_t j = 1;
  std::vector<Quad> registers;  // registers[0] is the branch test register
};

/// One instruction. The machine must not already sit at the halt label.
BssConfig step(BssConfig cfg, const BssProgram& prog);

struct BssRun {
  std::vector<Quad> output;  // registers 1..k for input size k
  std::uint64_t time = 0;    // executed instructions; halt is not counted
  bool halted = false;
};

BssRun run_program(const BssProgram& prog, const std::vector<Quad>& input,
                   std::uint64_t fuel);

/// x -> 2x mod 1 on [0, 1); runs in the same number of steps on every input.
BssProgram doubling_program();

/// Accepts (output 1) exactly the inputs in I_r, rejects (output 0) all other
/// reals; constant step count on every input in [0, 1).
BssProgram make_precision_checker(unsigned r);

}  // namespace telic
