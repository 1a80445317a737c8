#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "setcsp/formula.hpp"
#include "setcsp/gadget.hpp"
#include "setcsp/inner_res.hpp"
#include "setcsp/membership.hpp"
#include "setcsp/oracle.hpp"
#include "setcsp/outer_res.hpp"
#include "setcsp/parser.hpp"
#include "setcsp/reduction.hpp"

using namespace setcsp;

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRefused = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw setcsp::Error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

setcsp::OracleConfig oracle_config() {
  setcsp::OracleConfig cfg;
  if (const char* cap = std::getenv("SETCSP_ORACLE_CAP")) {
    try {
      cfg.max_vars = std::stoi(cap);
    } catch (const std::exception&) {
      throw setcsp::Error("SETCSP_ORACLE_CAP must be an integer");
    }
  }
  return cfg;
}

void print_trace(const setcsp::ClausalFormula& f,
                 const std::vector<setcsp::TraceEvent>& trace) {
  using K = setcsp::TraceEvent::Kind;
  int removals = 0;
  for (const auto& e : trace)
    if (e.kind == K::RemoveInnerClause || e.kind == K::RemoveLiteral)
      ++removals;
  std::cout << "trace: " << removals << " removal steps\n";
  for (const auto& e : trace) {
    switch (e.kind) {
      case K::RemoveInnerClause:
        std::cout << "  clause " << e.clause << " literal " << e.literal
                  << ": inner clause " << e.inner << " entailed, removed\n";
        break;
      case K::RemoveLiteral:
        std::cout << "  clause " << e.clause << " literal " << e.literal
                  << ": term emptied, literal removed\n";
        break;
      case K::PsiReject:
        std::cout << "  positive units are contradictory\n";
        break;
      case K::EmptyClause:
        std::cout << "  clause " << e.clause << " emptied\n";
        break;
    }
  }
  bool ok = replay_trace(f, trace);
  std::cout << "trace replay: " << (ok ? "justified" : "NOT justified")
            << "\n";
}

int cmd_solve(const std::string& path, const std::string& witness_path,
              bool raw, bool stats) {
  setcsp::CspInstance inst = parse_instance(slurp(path));
  setcsp::LanguageTemplates templates;
  if (raw) {
    std::cerr << "warning: --raw-horn-horn skips the membership check; "
                 "answers are only guaranteed for languages that would "
                 "pass it\n";
    try {
      templates = make_raw_templates(inst.defs);
    } catch (const setcsp::NotHornHorn& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitRefused;
    }
  } else {
    setcsp::LanguageReduction red =
        reduce_language(inst.defs, oracle_config());
    if (!red.ok) {
      std::cerr << "error: relation " << red.failed_relation
                << " is outside the tractable class; refusing to solve\n";
      return kExitRefused;
    }
    templates = std::move(red.templates);
  }
  setcsp::SolveOutcome out = solve_instance(inst, templates);
  if (stats)
    std::cout << "stats: iterations=" << out.stats.iterations
              << " inner_res_calls=" << out.stats.inner_res_calls
              << " literals_removed=" << out.stats.literals_removed
              << " inner_clauses_removed=" << out.stats.inner_clauses_removed
              << "\n";
  if (!out.sat) {
    std::cout << "UNSAT\n";
    print_trace(compile_instance(inst, templates.by_relation), out.trace);
    return kExitUnsat;
  }
  setcsp::ClausalFormula compiled =
      compile_instance(inst, templates.by_relation);
  std::string encoded = encode_witness(out.model);
  if (!eval_block_model(compiled, decode_witness(encoded)))
    throw std::logic_error("witness failed the self-check");
  std::cout << "SAT (" << out.model.blocks << " blocks)\n";
  if (!witness_path.empty()) {
    std::ofstream w(witness_path, std::ios::binary);
    if (!w) throw setcsp::Error("cannot write " + witness_path);
    w << encoded;
    std::cout << "witness written to " << witness_path << "\n";
  }
  return kExitSat;
}

int cmd_check_language(const std::string& path) {
  setcsp::CspInstance inst = parse_instance(slurp(path));
  setcsp::OracleConfig cfg = oracle_config();
  bool all_in = true;
  for (const auto& def : inst.defs) {
    setcsp::MembershipVerdict v = check_membership(def, cfg);
    if (v.kind == setcsp::MembershipVerdict::Kind::In) {
      std::cout << def.name << ": IN (template: " << render(v.form)
                << "; guard searched " << v.guard_pairs
                << " assignment pairs)\n";
    } else {
      all_in = false;
      std::cout << def.name << ": OUT (strongly reduced form has clause "
                << v.offending_clause
                << " with two positive literals: " << render(v.form)
                << ")\n";
    }
  }
  return all_in ? kExitSat : kExitUnsat;
}

int cmd_reduce(const std::string& path) {
  setcsp::CspInstance inst = parse_instance(slurp(path));
  setcsp::OracleConfig cfg = oracle_config();
  bool all = true;
  for (const auto& def : inst.defs) {
    setcsp::ReductionOutcome r = reduce_relation(def, cfg);
    if (r.horn_horn) {
      std::cout << def.name << ": " << render(r.form) << "\n";
    } else {
      all = false;
      std::cout << def.name << ": not reducible (clause "
                << r.offending_clause << " keeps two positive literals in "
                << render(r.form) << ")\n";
    }
  }
  return all ? kExitSat : kExitUnsat;
}

int cmd_oracle(const std::string& mode, const std::string& formula,
               const std::string& formula2) {
  setcsp::OracleConfig cfg = oracle_config();
  if (mode == "sat") {
    setcsp::ClausalFormula f =
        setcsp::to_clausal(parse_formula(formula));
    auto pattern = oracle_sat(f, cfg);
    if (!pattern) {
      std::cout << "UNSAT\n";
      return kExitUnsat;
    }
    setcsp::BlockModel m = pattern_to_block_model(*pattern, f.vars);
    std::cout << "SAT\n" << encode_witness(m);
    return kExitSat;
  }
  if (mode == "equiv") {
    if (formula2.empty())
      throw setcsp::Error("equiv mode needs two formulas");
    setcsp::SurfaceFormula a = parse_formula(formula);
    setcsp::SurfaceFormula b = parse_formula(formula2);
    std::vector<std::string> vars = collect_vars(a);
    for (const auto& v : collect_vars(b))
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        vars.push_back(v);
    bool eq = oracle_equiv(setcsp::to_clausal(a, vars),
                           setcsp::to_clausal(b, vars), cfg);
    std::cout << (eq ? "EQUIVALENT" : "NOT EQUIVALENT") << "\n";
    return eq ? kExitSat : kExitUnsat;
  }
  throw setcsp::Error("oracle mode must be sat or equiv");
}

int cmd_gadget(const std::string& dimacs_path, const std::string& out_path) {
  setcsp::ThreeSat cnf = parse_dimacs_3sat(slurp(dimacs_path));
  setcsp::GadgetInstance g = gadget_from_3sat(cnf);
  std::string text = render(g.instance);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw setcsp::Error("cannot write " + out_path);
    out << text;
  }
  return kExitSat;
}

int cmd_verify(const std::string& instance_path,
               const std::string& witness_path, bool raw) {
  setcsp::CspInstance inst = parse_instance(slurp(instance_path));
  setcsp::LanguageTemplates templates;
  if (raw) {
    templates = make_raw_templates(inst.defs);
  } else {
    setcsp::LanguageReduction red =
        reduce_language(inst.defs, oracle_config());
    if (!red.ok) {
      std::cerr << "error: relation " << red.failed_relation
                << " is outside the tractable class\n";
      return kExitRefused;
    }
    templates = std::move(red.templates);
  }
  setcsp::ClausalFormula compiled =
      compile_instance(inst, templates.by_relation);
  setcsp::BlockModel m = decode_witness(slurp(witness_path));
  for (const auto& v : inst.vars)
    if (!m.assignment.count(v)) {
      std::cout << "INVALID: witness misses variable " << v << "\n";
      return kExitUnsat;
    }
  bool ok = eval_block_model(compiled, m);
  std::cout << (ok ? "VALID" : "INVALID") << "\n";
  return ok ? kExitSat : kExitUnsat;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"set constraint solver over subsets of the naturals"};
  app.require_subcommand(1);

  std::string instance_path, witness_path, formula, formula2, mode = "sat";
  std::string out_path;
  bool raw = false, stats = false;

  CLI::App* solve = app.add_subcommand("solve", "decide an instance");
  solve->add_option("instance", instance_path)->required();
  solve->add_option("--witness", witness_path,
                    "write the satisfying block model here");
  solve->add_flag("--raw-horn-horn", raw,
                  "accept hand-written Horn-Horn definitions unchecked");
  solve->add_flag("--stats", stats);

  CLI::App* check = app.add_subcommand(
      "check-language", "classify each relation definition");
  check->add_option("file", instance_path)->required();

  CLI::App* reduce =
      app.add_subcommand("reduce", "print reduced templates");
  reduce->add_option("file", instance_path)->required();

  CLI::App* oracle =
      app.add_subcommand("oracle", "brute-force ground truth");
  oracle->add_option("--mode", mode, "sat or equiv")
      ->check(CLI::IsMember({"sat", "equiv"}));
  oracle->add_option("formula", formula)->required();
  oracle->add_option("formula2", formula2);

  CLI::App* gadget = app.add_subcommand(
      "gadget", "emit the satisfiability gadget for a DIMACS 3SAT file");
  gadget->add_option("dimacs", instance_path)->required();
  gadget->add_option("-o,--output", out_path);

  CLI::App* verify =
      app.add_subcommand("verify", "check a witness against an instance");
  verify->add_option("instance", instance_path)->required();
  verify->add_option("witness", witness_path)->required();
  verify->add_flag("--raw-horn-horn", raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed())
      return cmd_solve(instance_path, witness_path, raw, stats);
    if (check->parsed()) return cmd_check_language(instance_path);
    if (reduce->parsed()) return cmd_reduce(instance_path);
    if (oracle->parsed()) return cmd_oracle(mode, formula, formula2);
    if (gadget->parsed()) return cmd_gadget(instance_path, out_path);
    if (verify->parsed())
      return cmd_verify(instance_path, witness_path, raw);
  } catch (const setcsp::CapError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const setcsp::NotHornHorn& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitRefused;
  } catch (const setcsp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
