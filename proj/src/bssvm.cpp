#include "telic/bssvm.hpp"

#include <string>

#include "telic/errors.hpp"

namespace telic {

namespace {

using bss::Branch;
using bss::Computation;
using bss::Copy;
using bss::Halt;
using bss::Instr;
using bss::LoadConst;
using bss::Op;

Quad& reg(BssConfig& cfg, unsigned idx) {
  if (idx >= cfg.registers.size()) cfg.registers.resize(idx + 1, Quad(0));
  return cfg.registers[idx];
}

void exec_one(BssConfig& cfg, const Instr& ins) {
  std::size_t next = cfg.instr + 1;
  if (const auto* c = std::get_if<Computation>(&ins)) {
    Quad a = reg(cfg, c->src1);
    Quad b = reg(cfg, c->src2);
    Quad r;
    switch (c->op) {
      case Op::Add:
        r = a + b;
        break;
      case Op::Sub:
        r = a - b;
        break;
      case Op::Mul:
        r = a * b;
        break;
    }
    reg(cfg, c->dst) = r;
  } else if (const auto* c = std::get_if<LoadConst>(&ins)) {
    reg(cfg, c->dst) = c->value;
  } else if (const auto* c = std::get_if<Branch>(&ins)) {
    if (reg(cfg, 0).sign() >= 0) next = c->target;
  } else if (const auto* c = std::get_if<Copy>(&ins)) {
    Quad v = reg(cfg, c->src);
    reg(cfg, c->dst) = v;
    ++cfg.i;
    ++cfg.j;
  }
  cfg.instr = next;
}

}  // namespace

void validate_program(const BssProgram& prog) {
  std::size_t n = prog.instructions.size();
  if (n == 0) throw ValidationError("program has no instructions");
  for (std::size_t k = 0; k < n; ++k) {
    const Instr& ins = prog.instructions[k];
    bool is_halt = std::holds_alternative<Halt>(ins);
    if (is_halt && k + 1 != n)
      throw ValidationError("instruction " + std::to_string(k + 1) +
                            ": halt before the final label");
    if (!is_halt && k + 1 == n)
      throw ValidationError("final instruction is not halt");
    if (const auto* b = std::get_if<Branch>(&ins)) {
      if (b->target < 1 || b->target > n)
        throw ValidationError("instruction " + std::to_string(k + 1) +
                              ": branch target " + std::to_string(b->target) +
                              " out of range");
    }
  }
}

BssConfig step(BssConfig cfg, const BssProgram& prog) {
  if (cfg.instr < 1 || cfg.instr > prog.instructions.size())
    throw ValidationError("step: instruction index " + std::to_string(cfg.instr) +
                          " out of range");
  const Instr& ins = prog.instructions[cfg.instr - 1];
  if (std::holds_alternative<Halt>(ins))
    throw ValidationError("step: machine already sits at halt");
  exec_one(cfg, ins);
  return cfg;
}

BssRun run_program(const BssProgram& prog, const std::vector<Quad>& input,
                   std::uint64_t fuel) {
  validate_program(prog);
  BssRun res;
  if (fuel == 0) {
    res.output = input;
    return res;
  }
  BssConfig cfg;
  cfg.registers.assign(input.size() + 1, Quad(0));
  for (std::size_t k = 0; k < input.size(); ++k) cfg.registers[k + 1] = input[k];
  while (true) {
    const Instr& ins = prog.instructions[cfg.instr - 1];
    if (std::holds_alternative<Halt>(ins)) {
      res.halted = true;
      break;
    }
    if (res.time == fuel) break;
    exec_one(cfg, ins);
    ++res.time;
  }
  res.output.reserve(input.size());
  for (std::size_t k = 0; k < input.size(); ++k) res.output.push_back(reg(cfg, k + 1));
  return res;
}

BssProgram doubling_program() {
  BssProgram p;
  p.constants = {Quad(1), Quad(0)};
  auto& ins = p.instructions;
  ins.push_back(LoadConst{Quad(1), 3});            // 1
  ins.push_back(Computation{Op::Add, 1, 1, 2});    // 2: r2 = 2x
  ins.push_back(Computation{Op::Sub, 2, 3, 0});    // 3: r0 = 2x - 1
  ins.push_back(Branch{8});                        // 4
  ins.push_back(Copy{2, 1});                       // 5: r1 = 2x
  ins.push_back(LoadConst{Quad(0), 0});            // 6
  ins.push_back(Branch{11});                       // 7
  ins.push_back(Computation{Op::Sub, 2, 3, 1});    // 8: r1 = 2x - 1
  ins.push_back(Copy{1, 1});                       // 9: pad to balance the paths
  ins.push_back(Copy{1, 1});                       // 10
  ins.push_back(Halt{});                           // 11
  return p;
}

BssProgram make_precision_checker(unsigned r) {
  BssProgram p;
  p.constants = {Quad(1), Quad(0)};
  auto& ins = p.instructions;
  unsigned accept = 9 * r + 15;
  unsigned out_reject = 9 * r + 18;
  unsigned halt = 9 * r + 20;
  // y in r1; working copy z in r2; accept/reject flag ends up in r1.
  ins.push_back(LoadConst{Quad(1), 3});            // 1
  ins.push_back(Copy{1, 2});                       // 2: z = y
  ins.push_back(Copy{1, 0});                       // 3
  ins.push_back(Branch{7});                        // 4: y >= 0, keep going
  ins.push_back(LoadConst{Quad(0), 0});            // 5
  ins.push_back(Branch{out_reject});               // 6
  ins.push_back(Computation{Op::Sub, 2, 3, 0});    // 7: r0 = y - 1
  ins.push_back(Branch{out_reject});               // 8: y >= 1, reject
  // r doubling rounds of 9 labels each, 6 executed on either path
  for (unsigned t = 0; t < r; ++t) {
    unsigned b = 9 + 9 * t;
    ins.push_back(Computation{Op::Add, 2, 2, 2});  // b    : z = 2z
    ins.push_back(Computation{Op::Sub, 2, 3, 0});  // b + 1: r0 = z - 1
    ins.push_back(Branch{b + 6});                  // b + 2
    ins.push_back(Copy{2, 2});                     // b + 3: pad
    ins.push_back(LoadConst{Quad(0), 0});          // b + 4
    ins.push_back(Branch{b + 9});                  // b + 5
    ins.push_back(Computation{Op::Sub, 2, 3, 2});  // b + 6: z = z - 1
    ins.push_back(Copy{2, 2});                     // b + 7: pad
    ins.push_back(Copy{2, 2});                     // b + 8
  }
  // z == 0 test via the sign of -z
  ins.push_back(LoadConst{Quad(0), 4});            // e
  ins.push_back(Computation{Op::Sub, 4, 2, 0});    // e + 1: r0 = -z
  ins.push_back(Branch{accept});                   // e + 2
  ins.push_back(LoadConst{Quad(0), 1});            // e + 3: in-range reject
  ins.push_back(LoadConst{Quad(0), 0});            // e + 4
  ins.push_back(Branch{halt});                     // e + 5
  ins.push_back(LoadConst{Quad(1), 1});            // e + 6: accept
  ins.push_back(LoadConst{Quad(0), 0});            // e + 7
  ins.push_back(Branch{halt});                     // e + 8
  ins.push_back(LoadConst{Quad(0), 1});            // e + 9: out-of-range reject
  ins.push_back(Copy{1, 1});                       // e + 10
  ins.push_back(Halt{});                           // e + 11
  return p;
}

}  // namespace telic
