#include "telic/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "telic/barriers.hpp"
#include "telic/bssvm.hpp"
#include "telic/errors.hpp"
#include "telic/json_io.hpp"
#include "telic/solve.hpp"

namespace telic::cli {

namespace {

struct CommonOpts {
  std::string emit = "json";
  std::string out_path;
  unsigned max_grid_bits = 22;
  unsigned workers = 0;
  bool streaming = false;
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--emit", c.emit, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", c.out_path, "Write the report to this file");
  sub->add_option("--max-grid-bits", c.max_grid_bits,
                  "Largest grid exponent brute enumeration may touch")
      ->envname("TELIC_MAX_GRID_BITS");
  sub->add_option("--workers", c.workers, "Worker threads (0 = all cores)");
  sub->add_flag("--streaming", c.streaming,
                "Allow multi-pass image counting past the memory budget");
}

ExecPolicy policy(const CommonOpts& c) {
  ExecPolicy pol;
  pol.max_grid_bits = c.max_grid_bits;
  pol.workers = c.workers;
  pol.streaming = c.streaming;
  return pol;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file \"" + path + "\"");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_report(const CommonOpts& c, std::ostream& out, const std::string& text) {
  if (!c.out_path.empty()) {
    std::ofstream f(c.out_path, std::ios::binary);
    if (!f) throw ParseError("cannot open output file \"" + c.out_path + "\"");
    f << text;
  } else {
    out << text;
  }
}

void emit(const CommonOpts& c, std::ostream& out, const Json& j,
          const std::string& csv) {
  write_report(c, out, c.emit == "csv" ? csv : dump_json(j));
}

Quad number_arg(const std::string& text, const char* flag) {
  try {
    return parse_number(text);
  } catch (const ParseError& e) {
    throw ParseError(std::string(flag) + ": " + e.what());
  }
}

MapSpec map_arg(const std::string& text, const char* flag) {
  if (text == "identity") return MapSpec::identity();
  if (text == "tent") return MapSpec::tent();
  if (text == "doubling") return MapSpec::doubling();
  if (text == "squaring") return MapSpec::squaring();
  if (text == "alpha") return MapSpec::alpha();
  if (text == "rotation") return MapSpec::rotation(Quad(-1, 1, 1));
  if (text.rfind("rotation:", 0) == 0)
    return MapSpec::rotation(number_arg(text.substr(9), flag));
  return map_from_json(
      parse_json_text(read_file(text), std::string(flag) + " file \"" + text + "\""));
}

std::string approx_str(const Quad& x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x.approx());
  return buf;
}

std::string approx_str(const Dyadic& x) { return approx_str(Quad(x)); }

const char* bool_str(bool b) { return b ? "true" : "false"; }

std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

// ---- solve / verify ----

int cmd_solve(const CommonOpts& c, const std::string& path, const std::string& solver,
              std::ostream& out) {
  TelicInstance inst =
      instance_from_json(parse_json_text(read_file(path), "instance file \"" + path + "\""));
  ExecPolicy pol = policy(c);
  Json j;
  std::string csv;
  bool decision = false;
  bool decision_mode = inst.mode == SolveMode::Decision;
  if (decision_mode) {
    SolveResult res;
    if (solver == "brute") {
      res = solve_brute(inst, pol);
    } else if (solver == "order") {
      res = solve_order(inst);
    } else {
      try {
        res = solve_order(inst);
      } catch (const UnsupportedError&) {
        res = solve_brute(inst, pol);
      }
    }
    decision = res.decision;
    j = result_to_json(res);
    csv = "decision,witness,evals,witness_approx\n";
    csv += std::string(bool_str(res.decision)) + "," +
           (res.witness ? format_number(*res.witness) : "") + "," +
           std::to_string(res.evals) + "," +
           (res.witness ? approx_str(*res.witness) : "") + "\n";
  } else {
    SolveAllResult res = solve_all(inst, pol);
    decision = !res.witnesses.empty();
    j = all_result_to_json(res);
    csv = "index,witness,witness_approx\n";
    for (std::size_t i = 0; i < res.witnesses.size(); ++i)
      csv += std::to_string(i) + "," + format_number(res.witnesses[i]) + "," +
             approx_str(res.witnesses[i]) + "\n";
  }
  emit(c, out, j, csv);
  return decision_mode && !decision ? 1 : 0;
}

int cmd_verify(const CommonOpts& c, const std::string& path, const std::string& cert,
               std::ostream& out) {
  TelicInstance inst =
      instance_from_json(parse_json_text(read_file(path), "instance file \"" + path + "\""));
  Quad s = number_arg(cert, "--certificate");
  bool valid = verify_certificate(inst, s);
  Json j = Json::object();
  j["valid"] = valid;
  j["certificate"] = format_number(s);
  std::string csv = "valid,certificate\n";
  csv += std::string(bool_str(valid)) + "," + csv_quote(format_number(s)) + "\n";
  emit(c, out, j, csv);
  return 0;
}

// ---- enumerate / periodic ----

int cmd_enumerate(const CommonOpts& c, const MapSpec& system, const MapSpec& homeo,
                  unsigned n, unsigned precision, std::ostream& out) {
  ImageStats st = image_of_grid(system, homeo, n, precision, policy(c));
  Json j = Json::object();
  j["grid_size"] = st.grid_size;
  j["distinct"] = st.distinct;
  j["max_multiplicity"] = st.max_multiplicity;
  j["collided_values"] = st.collided_values;
  std::string csv = "grid_size,distinct,max_multiplicity,collided_values\n";
  csv += std::to_string(st.grid_size) + "," + std::to_string(st.distinct) + "," +
         std::to_string(st.max_multiplicity) + "," + std::to_string(st.collided_values) +
         "\n";
  emit(c, out, j, csv);
  return 0;
}

int cmd_periodic(const CommonOpts& c, const MapSpec& m, unsigned n, std::ostream& out) {
  PeriodicPoints pts = periodic_points(m, n);
  Json j = Json::object();
  j["all_points"] = pts.all_points;
  std::string csv;
  if (pts.all_points) {
    csv = "all_points\ntrue\n";
  } else {
    j["count"] = pts.points.size();
    Json arr = Json::array();
    for (const Quad& p : pts.points) arr.push_back(format_number(p));
    j["points"] = std::move(arr);
    csv = "index,point,point_approx\n";
    for (std::size_t i = 0; i < pts.points.size(); ++i)
      csv += std::to_string(i) + "," + csv_quote(format_number(pts.points[i])) + "," +
             approx_str(pts.points[i]) + "\n";
  }
  emit(c, out, j, csv);
  return 0;
}

// ---- lemma ----

int cmd_lemma_small_preimage(const CommonOpts& c, unsigned n, unsigned k,
                             const MapSpec& homeo, std::ostream& out) {
  SmallPreimageReport rep = check_small_preimage(n, k, homeo, policy(c));
  Json j = Json::object();
  j["injective"] = rep.injective;
  std::string pair_text;
  if (rep.colliding_pair) {
    Json p = Json::array();
    p.push_back(format_number(rep.colliding_pair->first));
    p.push_back(format_number(rep.colliding_pair->second));
    j["colliding_pair"] = std::move(p);
    pair_text = format_number(rep.colliding_pair->first) + ";" +
                format_number(rep.colliding_pair->second);
  }
  std::string csv = "injective,colliding_pair\n";
  csv += std::string(bool_str(rep.injective)) + "," + csv_quote(pair_text) + "\n";
  emit(c, out, j, csv);
  return 0;
}

int cmd_lemma_perturb(const CommonOpts& c, unsigned n, unsigned m, const std::string& s,
                      const MapSpec& homeo, std::ostream& out) {
  Quad sq = number_arg(s, "--s");
  auto dy = sq.to_dyadic();
  if (!dy) throw ParseError("--s: " + format_number(sq) + " is not dyadic");
  PerturbReport rep = perturb_witness(n, m, *dy, homeo, policy(c));
  Json j = Json::object();
  j["c1"] = format_number(rep.c1);
  j["c2"] = format_number(rep.c2);
  j["c3"] = format_number(rep.c3);
  j["s_prime"] = format_number(rep.s_prime);
  j["separation"] = format_number(rep.separation);
  j["all_preimages_far"] = rep.all_preimages_far;
  std::string csv =
      "c1,c2,c3,s_prime,separation,all_preimages_far,c1_approx,c3_approx,"
      "separation_approx\n";
  csv += csv_quote(format_number(rep.c1)) + "," + csv_quote(format_number(rep.c2)) + "," +
         csv_quote(format_number(rep.c3)) + "," + format_number(rep.s_prime) + "," +
         csv_quote(format_number(rep.separation)) + "," + bool_str(rep.all_preimages_far) +
         "," + approx_str(rep.c1) + "," + approx_str(rep.c3) + "," +
         approx_str(rep.separation) + "\n";
  emit(c, out, j, csv);
  return 0;
}

int cmd_lemma_preimages(const CommonOpts& c, const MapSpec& m, const std::string& y,
                        unsigned n, std::ostream& out) {
  Quad yq = number_arg(y, "--y");
  std::vector<Quad> pre = preimages(m, yq, n);
  Json j = Json::object();
  j["count"] = pre.size();
  Json arr = Json::array();
  for (const Quad& p : pre) arr.push_back(format_number(p));
  j["preimages"] = std::move(arr);
  std::string csv = "index,preimage,preimage_approx\n";
  for (std::size_t i = 0; i < pre.size(); ++i)
    csv += std::to_string(i) + "," + csv_quote(format_number(pre[i])) + "," +
           approx_str(pre[i]) + "\n";
  emit(c, out, j, csv);
  return 0;
}

// ---- barrier ----

int cmd_barrier_cardinality(const CommonOpts& c, const MapSpec& fs, const MapSpec& fh,
                            const MapSpec& ts, const MapSpec& th, unsigned n,
                            std::ostream& out) {
  CardinalityGap gap = cardinality_gap(fs, fh, ts, th, n, policy(c));
  Json j = Json::object();
  j["card_from"] = gap.card_from;
  j["card_to"] = gap.card_to;
  j["gap"] = gap.gap;
  std::string csv = "card_from,card_to,gap\n";
  csv += std::to_string(gap.card_from) + "," + std::to_string(gap.card_to) + "," +
         bool_str(gap.gap) + "\n";
  emit(c, out, j, csv);
  return 0;
}

int cmd_barrier_level1(const CommonOpts& c, const MapSpec& from, const MapSpec& to,
                       unsigned precision, std::ostream& out) {
  auto pair = level1_witness(from, to, precision, policy(c));
  Json j = Json::object();
  j["found"] = pair.has_value();
  std::string csv = "found,x1,x2\n";
  if (pair) {
    j["x1"] = format_number(pair->first);
    j["x2"] = format_number(pair->second);
    csv += std::string("true,") + format_number(pair->first) + "," +
           format_number(pair->second) + "\n";
  } else {
    csv += "false,,\n";
  }
  emit(c, out, j, csv);
  return 0;
}

int cmd_barrier_search(const CommonOpts& c, unsigned level, const ReductionSides& sides,
                       unsigned n, unsigned candidate_precision, std::ostream& out) {
  ReductionSearchReport rep =
      search_reduction_level(level, sides, n, candidate_precision, policy(c));
  Json j = Json::object();
  j["any_feasible"] = rep.any_feasible;
  Json arr = Json::array();
  std::string csv = "target_lo,target_hi,feasible,example_lo,example_hi,min_length\n";
  for (const TargetFeasibility& t : rep.targets) {
    Json e = Json::object();
    e["target"] = interval_to_json(t.target);
    e["feasible"] = t.feasible;
    if (t.example) e["example"] = interval_to_json(*t.example);
    if (t.min_length) e["min_length"] = format_number(*t.min_length);
    arr.push_back(std::move(e));
    csv += csv_quote(format_number(t.target.lo())) + "," +
           csv_quote(format_number(t.target.hi())) + "," + bool_str(t.feasible) + "," +
           (t.example ? csv_quote(format_number(t.example->lo())) : "") + "," +
           (t.example ? csv_quote(format_number(t.example->hi())) : "") + "," +
           (t.min_length ? format_number(*t.min_length) : "") + "\n";
  }
  j["targets"] = std::move(arr);
  emit(c, out, j, csv);
  return 0;
}

// ---- reduction-check ----

ReductionLevel level_arg(const std::string& text) {
  if (text == "1") return ReductionLevel::L1;
  if (text == "2") return ReductionLevel::L2;
  if (text == "3") return ReductionLevel::L3;
  if (text == "4") return ReductionLevel::L4;
  if (text == "4a") return ReductionLevel::L4a;
  throw ParseError("--level: expected one of 1, 2, 3, 4, 4a, got \"" + text + "\"");
}

int cmd_reduction_eta(const CommonOpts& c, const std::string& path,
                      const std::string& level, const ReductionSides& sides, unsigned n,
                      unsigned domain_grid, std::ostream& out) {
  EtaTable eta = eta_from_json(parse_json_text(read_file(path), "eta file \"" + path + "\""),
                               n, domain_grid);
  ReductionReport rep = check_reduction_family(eta, level_arg(level), sides, policy(c));
  Json j = Json::object();
  j["all_pass"] = rep.all_pass;
  Json arr = Json::array();
  std::string csv = "from_lo,from_hi,to_lo,to_hi,pass,violations,violating_x\n";
  for (const EntryVerdict& v : rep.entries) {
    Json e = Json::object();
    e["from"] = interval_to_json(v.from);
    e["to"] = interval_to_json(v.to);
    e["pass"] = v.pass;
    Json viol = Json::array();
    std::string joined;
    for (const std::string& w : v.violations) {
      viol.push_back(w);
      if (!joined.empty()) joined += ";";
      joined += w;
    }
    e["violations"] = std::move(viol);
    if (v.violating_x) e["violating_x"] = format_number(*v.violating_x);
    arr.push_back(std::move(e));
    csv += csv_quote(format_number(v.from.lo())) + "," +
           csv_quote(format_number(v.from.hi())) + "," +
           csv_quote(format_number(v.to.lo())) + "," +
           csv_quote(format_number(v.to.hi())) + "," + bool_str(v.pass) + "," +
           csv_quote(joined) + "," + (v.violating_x ? format_number(*v.violating_x) : "") +
           "\n";
  }
  j["entries"] = std::move(arr);
  emit(c, out, j, csv);
  return 0;
}

int cmd_reduction_phi(const CommonOpts& c, const std::string& path, const MapSpec& t_map,
                      const MapSpec& s_map, unsigned max_period, std::ostream& out) {
  PhiTable phi = phi_from_json(parse_json_text(read_file(path), "phi file \"" + path + "\""));
  SemiconjugacyReport rep = check_semiconjugacy(phi, t_map, s_map, max_period);
  Json j = Json::object();
  j["holds"] = rep.holds;
  j["checked"] = rep.checked;
  Json arr = Json::array();
  std::string csv = "x,what\n";
  for (const SemiconjugacyViolation& v : rep.violations) {
    Json e = Json::object();
    e["x"] = format_number(v.x);
    e["what"] = v.what;
    arr.push_back(std::move(e));
    csv += csv_quote(format_number(v.x)) + "," + v.what + "\n";
  }
  j["violations"] = std::move(arr);
  emit(c, out, j, csv);
  return 0;
}

// ---- fixedpoint ----

int cmd_fixedpoint(const CommonOpts& c, unsigned n_max, const std::string& kappa,
                   std::ostream& out) {
  BoundedParams params;
  if (!kappa.empty()) params.kappa = number_arg(kappa, "--kappa");
  std::vector<FixedPointRow> rows = fixedpoint_report(n_max, params);
  Json j = Json::object();
  Json arr = Json::array();
  std::string csv =
      "n,k,translation,dist,diameter,disjoint,translation_approx,dist_approx\n";
  for (const FixedPointRow& r : rows) {
    Json e = Json::object();
    e["n"] = r.n;
    e["k"] = r.k;
    e["translation"] = format_number(r.translation);
    e["dist"] = format_number(r.dist);
    e["diameter"] = format_number(r.diameter);
    e["disjoint_for_all_J"] = r.disjoint_for_all_J;
    arr.push_back(std::move(e));
    csv += std::to_string(r.n) + "," + std::to_string(r.k) + "," +
           csv_quote(format_number(r.translation)) + "," +
           csv_quote(format_number(r.dist)) + "," + format_number(r.diameter) + "," +
           bool_str(r.disjoint_for_all_J) + "," + approx_str(r.translation) + "," +
           approx_str(r.dist) + "\n";
  }
  j["rows"] = std::move(arr);
  emit(c, out, j, csv);
  return 0;
}

// ---- bss-run ----

BssProgram program_arg(const std::string& text) {
  if (text == "doubling") return doubling_program();
  const std::string prefix = "precision-checker:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("--program: bad precision \"" + digits + "\"");
    unsigned long r = std::stoul(digits);
    if (r > 100000) throw ResourceError("--program: precision " + digits + " is too large");
    return make_precision_checker(static_cast<unsigned>(r));
  }
  return program_from_json(
      parse_json_text(read_file(text), "program file \"" + text + "\""));
}

std::vector<Quad> input_arg(const std::string& text) {
  std::vector<Quad> vals;
  std::size_t start = 0;
  if (text.empty()) return vals;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string piece = text.substr(start, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - start);
    std::size_t a = piece.find_first_not_of(" \t");
    std::size_t b = piece.find_last_not_of(" \t");
    if (a == std::string::npos)
      throw ParseError("--input: empty entry");
    vals.push_back(number_arg(piece.substr(a, b - a + 1), "--input"));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return vals;
}

int cmd_bss_run(const CommonOpts& c, const std::string& program, const std::string& input,
                std::uint64_t fuel, std::ostream& out) {
  BssProgram prog = program_arg(program);
  BssRun res = run_program(prog, input_arg(input), fuel);
  Json j = Json::object();
  Json arr = Json::array();
  std::string joined;
  for (const Quad& v : res.output) {
    arr.push_back(format_number(v));
    if (!joined.empty()) joined += ";";
    joined += format_number(v);
  }
  j["output"] = std::move(arr);
  j["time"] = res.time;
  j["halted"] = res.halted;
  std::string csv = "time,halted,output\n";
  csv += std::to_string(res.time) + "," + std::string(bool_str(res.halted)) + "," +
         csv_quote(joined) + "\n";
  emit(c, out, j, csv);
  return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact solvers and reduction checkers for algebraic telic problems"};
  app.require_subcommand(1);
  CommonOpts common;

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Decide or search one instance file");
  std::string instance_path, solver = "auto";
  solve_cmd->add_option("--instance", instance_path, "Instance JSON file")->required();
  solve_cmd->add_option("--solver", solver, "Solver choice")
      ->check(CLI::IsMember({"auto", "brute", "order"}));
  add_common(solve_cmd, common);

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check one certificate");
  std::string verify_path, certificate;
  verify_cmd->add_option("--instance", verify_path, "Instance JSON file")->required();
  verify_cmd->add_option("--certificate", certificate, "Certificate in the number grammar")
      ->required();
  add_common(verify_cmd, common);

  // enumerate
  auto* enum_cmd = app.add_subcommand("enumerate", "Exact image statistics of a grid");
  std::string enum_map, enum_homeo = "identity";
  unsigned enum_n = 1, enum_precision = 1;
  enum_cmd->add_option("--map", enum_map, "System map")->required();
  enum_cmd->add_option("--homeo", enum_homeo, "Homeomorphism applied first");
  enum_cmd->add_option("--n", enum_n, "Iterates")->required();
  enum_cmd->add_option("--precision", enum_precision, "Grid exponent r")->required();
  add_common(enum_cmd, common);

  // lemma
  auto* lemma_cmd = app.add_subcommand("lemma", "Finite lemma instances");
  std::string lemma_name, lemma_s = "0", lemma_y, lemma_homeo = "alpha",
              lemma_map = "doubling";
  unsigned lemma_n = 1, lemma_k = 1, lemma_m = 2;
  lemma_cmd->add_option("--name", lemma_name, "Lemma to run")
      ->required()
      ->check(CLI::IsMember({"small-preimage", "perturb", "2n-to-one"}));
  lemma_cmd->add_option("--n", lemma_n, "Grid / iterate parameter");
  lemma_cmd->add_option("--k", lemma_k, "Doubling exponent (small-preimage)");
  lemma_cmd->add_option("--m", lemma_m, "Grid power (perturb)");
  lemma_cmd->add_option("--s", lemma_s, "Base point in I_{n^m} (perturb)");
  lemma_cmd->add_option("--y", lemma_y, "Target value (2n-to-one)");
  lemma_cmd->add_option("--homeo", lemma_homeo, "Homeomorphism");
  lemma_cmd->add_option("--map", lemma_map, "System map (2n-to-one)");
  add_common(lemma_cmd, common);

  // barrier
  auto* barrier_cmd = app.add_subcommand("barrier", "Reduction-impossibility witnesses");
  std::string barrier_name, b_from_map = "doubling", b_from_homeo = "identity",
              b_to_map = "identity", b_to_homeo = "identity";
  unsigned b_n = 2, b_precision = 4, b_level = 4, b_candidate = 6, b_grid = 0;
  barrier_cmd->add_option("--name", barrier_name, "Barrier check")
      ->required()
      ->check(CLI::IsMember({"cardinality", "level1", "search"}));
  barrier_cmd->add_option("--from-map", b_from_map, "From-side system");
  barrier_cmd->add_option("--from-homeo", b_from_homeo, "From-side homeomorphism");
  barrier_cmd->add_option("--to-map", b_to_map, "To-side system");
  barrier_cmd->add_option("--to-homeo", b_to_homeo, "To-side homeomorphism");
  barrier_cmd->add_option("--n", b_n, "Instance parameter n");
  barrier_cmd->add_option("--precision", b_precision, "Grid exponent (level1)");
  barrier_cmd->add_option("--level", b_level, "Search level (3 or 4)");
  barrier_cmd->add_option("--candidate-precision", b_candidate,
                          "Candidate interval grid exponent (search)");
  barrier_cmd->add_option("--grid", b_grid, "Evaluation grid exponent (default n^2)");
  add_common(barrier_cmd, common);

  // reduction-check
  auto* red_cmd = app.add_subcommand("reduction-check",
                                     "Check an eta table or a phi table exactly");
  std::string red_eta, red_phi, red_level = "4", r_from_map = "doubling",
              r_from_homeo = "identity", r_to_map = "identity", r_to_homeo = "identity",
              red_t_map = "tent", red_s_map = "tent";
  unsigned red_n = 2, red_grid = 0, red_domain_grid = 0, red_from_iters = 0,
           red_to_iters = 0, red_max_period = 3;
  red_cmd->add_option("--eta", red_eta, "Eta table JSON file");
  red_cmd->add_option("--phi", red_phi, "Phi table JSON file");
  red_cmd->add_option("--level", red_level, "Reduction level (eta)");
  red_cmd->add_option("--from-map", r_from_map, "From-side system (eta)");
  red_cmd->add_option("--from-homeo", r_from_homeo, "From-side homeomorphism (eta)");
  red_cmd->add_option("--to-map", r_to_map, "To-side system (eta)");
  red_cmd->add_option("--to-homeo", r_to_homeo, "To-side homeomorphism (eta)");
  red_cmd->add_option("--n", red_n, "Instance parameter n");
  red_cmd->add_option("--grid", red_grid, "Witness grid exponent (default n^2)");
  red_cmd->add_option("--domain-grid", red_domain_grid,
                      "Level-4a containment grid (default --grid)");
  red_cmd->add_option("--from-iters", red_from_iters, "From-side iterates (default n)");
  red_cmd->add_option("--to-iters", red_to_iters, "To-side iterates (default n)");
  red_cmd->add_option("--t-map", red_t_map, "Upstairs map T (phi)");
  red_cmd->add_option("--s-map", red_s_map, "Downstairs map S (phi)");
  red_cmd->add_option("--max-period", red_max_period, "Largest period checked (phi)");
  add_common(red_cmd, common);

  // fixedpoint
  auto* fixed_cmd = app.add_subcommand("fixedpoint", "Bounded-family disjointness rows");
  unsigned fixed_n_max = 10;
  std::string fixed_kappa;
  fixed_cmd->add_option("--n-max", fixed_n_max, "Rows 1..n_max");
  fixed_cmd->add_option("--kappa", fixed_kappa, "Rotation constant (default sqrt2 - 1)");
  add_common(fixed_cmd, common);

  // periodic
  auto* periodic_cmd = app.add_subcommand("periodic", "Exact period-n point set");
  std::string periodic_map;
  unsigned periodic_n = 1;
  periodic_cmd->add_option("--map", periodic_map, "Map")->required();
  periodic_cmd->add_option("--n", periodic_n, "Period")->required();
  add_common(periodic_cmd, common);

  // bss-run
  auto* bss_cmd = app.add_subcommand("bss-run", "Run a register machine program");
  std::string bss_program, bss_input;
  std::uint64_t bss_fuel = 1000000;
  bss_cmd->add_option("--program", bss_program,
                      "doubling, precision-checker:R, or a program JSON file")
      ->required();
  bss_cmd->add_option("--input", bss_input, "Comma-separated input registers");
  bss_cmd->add_option("--fuel", bss_fuel, "Step budget");
  add_common(bss_cmd, common);

  try {
    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("telic");
    for (const std::string& a : args) argv.push_back(a.c_str());
    app.parse(static_cast<int>(argv.size()), argv.data());

    if (app.got_subcommand(solve_cmd))
      return cmd_solve(common, instance_path, solver, out);
    if (app.got_subcommand(verify_cmd))
      return cmd_verify(common, verify_path, certificate, out);
    if (app.got_subcommand(enum_cmd))
      return cmd_enumerate(common, map_arg(enum_map, "--map"),
                           map_arg(enum_homeo, "--homeo"), enum_n, enum_precision, out);
    if (app.got_subcommand(lemma_cmd)) {
      if (lemma_name == "small-preimage")
        return cmd_lemma_small_preimage(common, lemma_n, lemma_k,
                                        map_arg(lemma_homeo, "--homeo"), out);
      if (lemma_name == "perturb")
        return cmd_lemma_perturb(common, lemma_n, lemma_m, lemma_s,
                                 map_arg(lemma_homeo, "--homeo"), out);
      if (lemma_y.empty()) throw ParseError("lemma 2n-to-one: missing --y");
      return cmd_lemma_preimages(common, map_arg(lemma_map, "--map"), lemma_y, lemma_n,
                                 out);
    }
    if (app.got_subcommand(barrier_cmd)) {
      if (barrier_name == "cardinality")
        return cmd_barrier_cardinality(
            common, map_arg(b_from_map, "--from-map"), map_arg(b_from_homeo, "--from-homeo"),
            map_arg(b_to_map, "--to-map"), map_arg(b_to_homeo, "--to-homeo"), b_n, out);
      if (barrier_name == "level1")
        return cmd_barrier_level1(common, map_arg(b_from_map, "--from-map"),
                                  map_arg(b_to_map, "--to-map"), b_precision, out);
      ReductionSides sides{map_arg(b_from_map, "--from-map"),
                           map_arg(b_from_homeo, "--from-homeo"),
                           b_n,
                           map_arg(b_to_map, "--to-map"),
                           map_arg(b_to_homeo, "--to-homeo"),
                           b_n,
                           b_grid ? b_grid : b_n * b_n};
      return cmd_barrier_search(common, b_level, sides, b_n, b_candidate, out);
    }
    if (app.got_subcommand(red_cmd)) {
      if (!red_eta.empty() && !red_phi.empty())
        throw ParseError("reduction-check: --eta and --phi are mutually exclusive");
      if (!red_phi.empty())
        return cmd_reduction_phi(common, red_phi, map_arg(red_t_map, "--t-map"),
                                 map_arg(red_s_map, "--s-map"), red_max_period, out);
      if (red_eta.empty())
        throw ParseError("reduction-check: missing field --eta or --phi");
      unsigned grid = red_grid ? red_grid : red_n * red_n;
      ReductionSides sides{map_arg(r_from_map, "--from-map"),
                           map_arg(r_from_homeo, "--from-homeo"),
                           red_from_iters ? red_from_iters : red_n,
                           map_arg(r_to_map, "--to-map"),
                           map_arg(r_to_homeo, "--to-homeo"),
                           red_to_iters ? red_to_iters : red_n,
                           grid};
      return cmd_reduction_eta(common, red_eta, red_level, sides, red_n,
                               red_domain_grid ? red_domain_grid : grid, out);
    }
    if (app.got_subcommand(fixed_cmd))
      return cmd_fixedpoint(common, fixed_n_max, fixed_kappa, out);
    if (app.got_subcommand(periodic_cmd))
      return cmd_periodic(common, map_arg(periodic_map, "--map"), periodic_n, out);
    if (app.got_subcommand(bss_cmd))
      return cmd_bss_run(common, bss_program, bss_input, bss_fuel, out);
    err << "error: no subcommand selected\n";
    return 2;
  } catch (const CLI::Success& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace telic::cli
