#include "telic/json_io.hpp"

#include <utility>

#include "telic/errors.hpp"

namespace telic {

namespace {

const Json& need(const Json& j, const std::string& ctx, const char* field) {
  if (!j.is_object())
    throw ParseError(ctx + ": expected an object with field \"" + field + "\"");
  auto it = j.find(field);
  if (it == j.end()) throw ParseError(ctx + ": missing field \"" + field + "\"");
  return *it;
}

Quad number_from(const Json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_number(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Quad(BigInt(v.get<long long>()));
  throw ParseError(where + ": expected a number string");
}

Quad read_number(const Json& j, const std::string& ctx, const char* field) {
  return number_from(need(j, ctx, field), ctx + ".\"" + field + "\"");
}

unsigned read_count(const Json& j, const std::string& ctx, const char* field) {
  const Json& v = need(j, ctx, field);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(ctx + ": field \"" + field + "\" must be a non-negative integer");
  long long raw = v.get<long long>();
  if (raw > 0x7fffffffLL)
    throw ParseError(ctx + ": field \"" + field + "\" is out of range");
  return static_cast<unsigned>(raw);
}

bool read_bool(const Json& j, const std::string& ctx, const char* field) {
  const Json& v = need(j, ctx, field);
  if (!v.is_boolean())
    throw ParseError(ctx + ": field \"" + field + "\" must be a boolean");
  return v.get<bool>();
}

std::string read_string(const Json& j, const std::string& ctx, const char* field) {
  const Json& v = need(j, ctx, field);
  if (!v.is_string())
    throw ParseError(ctx + ": field \"" + field + "\" must be a string");
  return v.get<std::string>();
}

const char* label_name(EntropyLabel l) {
  return l == EntropyLabel::Log2 ? "log2" : "zero";
}

}  // namespace

Json map_to_json(const MapSpec& m) {
  Json j = Json::object();
  j["kind"] = kind_name(m.kind());
  switch (m.kind()) {
    case MapKind::Rotation:
      j["kappa"] = format_number(m.kappa());
      break;
    case MapKind::PiecewiseAffine: {
      Json bk = Json::array();
      for (const Quad& b : m.breakpoints()) bk.push_back(format_number(b));
      j["breakpoints"] = std::move(bk);
      Json br = Json::array();
      for (const AffineBranch& b : m.branches()) {
        Json e = Json::object();
        e["slope"] = format_number(b.slope);
        e["offset"] = format_number(b.offset);
        br.push_back(std::move(e));
      }
      j["branches"] = std::move(br);
      j["mod1"] = m.mod1();
      j["entropy_label"] = label_name(m.entropy_label());
      break;
    }
    default:
      break;
  }
  return j;
}

MapSpec map_from_json(const Json& j) {
  const std::string ctx = "map";
  std::string kind = read_string(j, ctx, "kind");
  if (kind == "identity") return MapSpec::identity();
  if (kind == "tent") return MapSpec::tent();
  if (kind == "doubling") return MapSpec::doubling();
  if (kind == "squaring") return MapSpec::squaring();
  if (kind == "alpha") return MapSpec::alpha();
  if (kind == "rotation") return MapSpec::rotation(read_number(j, ctx, "kappa"));
  if (kind == "pwa") {
    const Json& bkj = need(j, ctx, "breakpoints");
    if (!bkj.is_array())
      throw ParseError("map: field \"breakpoints\" must be an array");
    std::vector<Quad> bk;
    for (const Json& b : bkj) bk.push_back(number_from(b, "map.\"breakpoints\""));
    const Json& brj = need(j, ctx, "branches");
    if (!brj.is_array()) throw ParseError("map: field \"branches\" must be an array");
    std::vector<AffineBranch> br;
    for (const Json& b : brj)
      br.push_back({read_number(b, "map.branch", "slope"),
                    read_number(b, "map.branch", "offset")});
    bool mod1 = read_bool(j, ctx, "mod1");
    EntropyLabel label = EntropyLabel::Zero;
    if (j.contains("entropy_label")) {
      std::string s = read_string(j, ctx, "entropy_label");
      if (s == "log2")
        label = EntropyLabel::Log2;
      else if (s != "zero")
        throw ParseError("map: unknown entropy_label \"" + s + "\"");
    }
    return MapSpec::piecewise_affine(std::move(bk), std::move(br), mod1, label);
  }
  throw ParseError("map: unknown kind \"" + kind + "\"");
}

Json interval_to_json(const Interval& iv) {
  Json j = Json::object();
  j["lo"] = format_number(iv.lo());
  j["hi"] = format_number(iv.hi());
  return j;
}

Interval interval_from_json(const Json& j, const std::string& ctx) {
  Quad lo = read_number(j, ctx, "lo");
  Quad hi = read_number(j, ctx, "hi");
  try {
    return Interval(lo, hi);
  } catch (const RangeError& e) {
    throw ParseError(ctx + ": " + e.what());
  }
}

Json instance_to_json(const TelicInstance& inst) {
  Json j = Json::object();
  j["system"] = map_to_json(inst.system);
  j["homeo"] = map_to_json(inst.homeo);
  j["n"] = inst.n;
  j["target"] = interval_to_json(inst.target);
  j["grid_precision"] = inst.grid_precision;
  if (inst.bounded_kappa) {
    Json b = Json::object();
    b["kappa"] = format_number(*inst.bounded_kappa);
    j["bounded"] = std::move(b);
  }
  j["mode"] = inst.mode == SolveMode::Search ? "search" : "decision";
  return j;
}

TelicInstance instance_from_json(const Json& j) {
  const std::string ctx = "instance";
  MapSpec system = map_from_json(need(j, ctx, "system"));
  MapSpec homeo = map_from_json(need(j, ctx, "homeo"));
  unsigned n = read_count(j, ctx, "n");
  Interval target = interval_from_json(need(j, ctx, "target"), "instance.\"target\"");
  std::optional<unsigned> grid;
  if (j.contains("grid_precision")) grid = read_count(j, ctx, "grid_precision");
  SolveMode mode = SolveMode::Decision;
  if (j.contains("mode")) {
    std::string m = read_string(j, ctx, "mode");
    if (m == "search")
      mode = SolveMode::Search;
    else if (m != "decision")
      throw ParseError("instance: unknown mode \"" + m + "\"");
  }
  TelicInstance inst =
      make_instance(std::move(system), std::move(homeo), n, target, grid, mode);
  if (j.contains("bounded"))
    inst.bounded_kappa = read_number(j.at("bounded"), "instance.\"bounded\"", "kappa");
  return inst;
}

Json result_to_json(const SolveResult& res) {
  Json j = Json::object();
  j["decision"] = res.decision;
  if (res.witness) j["witness"] = format_number(*res.witness);
  j["evals"] = res.evals;
  return j;
}

SolveResult result_from_json(const Json& j) {
  const std::string ctx = "result";
  SolveResult res;
  const Json& d = need(j, ctx, "decision");
  if (!d.is_boolean()) throw ParseError("result: field \"decision\" must be a boolean");
  res.decision = d.get<bool>();
  if (j.contains("witness")) {
    Quad w = read_number(j, ctx, "witness");
    auto dy = w.to_dyadic();
    if (!dy) throw ParseError("result: field \"witness\" must be dyadic");
    res.witness = *dy;
  }
  const Json& e = need(j, ctx, "evals");
  if (!e.is_number_integer() || e.get<long long>() < 0)
    throw ParseError("result: field \"evals\" must be a non-negative integer");
  res.evals = static_cast<std::uint64_t>(e.get<long long>());
  return res;
}

Json all_result_to_json(const SolveAllResult& res) {
  Json j = Json::object();
  j["decision"] = !res.witnesses.empty();
  if (!res.witnesses.empty()) j["witness"] = format_number(res.witnesses.front());
  j["witness_count"] = res.witnesses.size();
  j["evals"] = res.evals;
  return j;
}

Json eta_to_json(const EtaTable& eta) {
  Json j = Json::array();
  for (const EtaEntry& e : eta.entries) {
    Json entry = Json::object();
    entry["from"] = interval_to_json(e.from);
    entry["to"] = interval_to_json(e.to);
    j.push_back(std::move(entry));
  }
  return j;
}

EtaTable eta_from_json(const Json& j, unsigned n, unsigned domain_grid) {
  if (!j.is_array()) throw ParseError("eta: expected an array of entries");
  EtaTable eta;
  eta.n = n;
  eta.domain_grid = domain_grid;
  for (const Json& e : j)
    eta.entries.push_back({interval_from_json(need(e, "eta entry", "from"), "eta.\"from\""),
                           interval_from_json(need(e, "eta entry", "to"), "eta.\"to\"")});
  return eta;
}

Json phi_to_json(const PhiTable& phi) {
  Json j = Json::array();
  for (const auto& [x, fx] : phi.entries) {
    Json e = Json::object();
    e["x"] = format_number(x);
    e["fx"] = format_number(fx);
    j.push_back(std::move(e));
  }
  return j;
}

PhiTable phi_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("phi: expected an array of samples");
  PhiTable phi;
  for (const Json& e : j)
    phi.entries.emplace_back(read_number(e, "phi sample", "x"),
                             read_number(e, "phi sample", "fx"));
  return phi;
}

Json program_to_json(const BssProgram& prog) {
  Json j = Json::object();
  Json consts = Json::array();
  for (const Quad& c : prog.constants) consts.push_back(format_number(c));
  j["constants"] = std::move(consts);
  Json ins = Json::array();
  for (const bss::Instr& instr : prog.instructions) {
    Json e = Json::object();
    if (const auto* c = std::get_if<bss::Computation>(&instr)) {
      switch (c->op) {
        case bss::Op::Add:
          e["op"] = "add";
          break;
        case bss::Op::Sub:
          e["op"] = "sub";
          break;
        case bss::Op::Mul:
          e["op"] = "mul";
          break;
      }
      e["src1"] = c->src1;
      e["src2"] = c->src2;
      e["dst"] = c->dst;
    } else if (const auto* c = std::get_if<bss::LoadConst>(&instr)) {
      e["op"] = "const";
      e["value"] = format_number(c->value);
      e["dst"] = c->dst;
    } else if (const auto* c = std::get_if<bss::Branch>(&instr)) {
      e["op"] = "branch";
      e["target"] = c->target;
    } else if (const auto* c = std::get_if<bss::Copy>(&instr)) {
      e["op"] = "copy";
      e["src"] = c->src;
      e["dst"] = c->dst;
    } else {
      e["op"] = "halt";
    }
    ins.push_back(std::move(e));
  }
  j["instructions"] = std::move(ins);
  return j;
}

BssProgram program_from_json(const Json& j) {
  const std::string ctx = "program";
  BssProgram prog;
  if (j.contains("constants")) {
    const Json& cj = j.at("constants");
    if (!cj.is_array())
      throw ParseError("program: field \"constants\" must be an array");
    for (const Json& c : cj)
      prog.constants.push_back(number_from(c, "program.\"constants\""));
  }
  const Json& ij = need(j, ctx, "instructions");
  if (!ij.is_array())
    throw ParseError("program: field \"instructions\" must be an array");
  for (const Json& e : ij) {
    std::string op = read_string(e, "program instruction", "op");
    const std::string ictx = "program \"" + op + "\" instruction";
    if (op == "add" || op == "sub" || op == "mul") {
      bss::Op code = op == "add"   ? bss::Op::Add
                     : op == "sub" ? bss::Op::Sub
                                   : bss::Op::Mul;
      prog.instructions.push_back(bss::Computation{
          code, read_count(e, ictx, "src1"), read_count(e, ictx, "src2"),
          read_count(e, ictx, "dst")});
    } else if (op == "const") {
      prog.instructions.push_back(
          bss::LoadConst{read_number(e, ictx, "value"), read_count(e, ictx, "dst")});
    } else if (op == "branch") {
      prog.instructions.push_back(bss::Branch{read_count(e, ictx, "target")});
    } else if (op == "copy") {
      prog.instructions.push_back(
          bss::Copy{read_count(e, ictx, "src"), read_count(e, ictx, "dst")});
    } else if (op == "halt") {
      prog.instructions.push_back(bss::Halt{});
    } else {
      throw ParseError("program: unknown op \"" + op + "\"");
    }
  }
  return prog;
}

Json parse_json_text(const std::string& text, const std::string& what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(what + ": malformed JSON");
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace telic
