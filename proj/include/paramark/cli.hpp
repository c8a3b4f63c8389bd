#pragma once

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "paramark/errors.hpp"
#include "paramark/etr.hpp"
#include "paramark/model.hpp"
#include "paramark/model_io.hpp"
#include "paramark/oracle.hpp"
#include "paramark/polynomial.hpp"
#include "paramark/qualitative.hpp"
#include "paramark/quantitative.hpp"
#include "paramark/rational.hpp"
#include "paramark/reductions.hpp"
#include "paramark/smt.hpp"

// Command-line front end. Results go to standard output (or --out),
// diagnostics to standard error. Exit codes: 0 = query answered (including
// "no"), 1 = usage or input error, 2 = no verdict (solver unavailable,
// unknown, timeout, or a sweep that found no witness), 3 = internal limit.
// Every printed probability is an exact rational or a polynomial; no
// floating point touches the result path.

namespace paramark {

namespace clidetail {

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SolverUnavailable:
    case ErrorKind::SolverFailed:
    case ErrorKind::UnparseableModel:
      return 2;
    case ErrorKind::DegreeExceeded:
    case ErrorKind::ExponentOverflow:
    case ErrorKind::EliminationBlowup:
    case ErrorKind::LimitExceeded:
    case ErrorKind::Internal:
      return 3;
    default:
      return 1;
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Usage, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline ParametricModel load_model(const std::string& path) {
  if (path.empty()) fail(ErrorKind::Usage, "a model is required (-m/--model)");
  return parse_model(read_file(path));
}

inline std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

inline Valuation parse_valuation(const std::string& text) {
  Valuation val;
  for (const std::string& pair : split_csv(text)) {
    auto eq = pair.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == pair.size())
      fail(ErrorKind::Usage, "--val expects name=a/b pairs, got '" + pair + "'");
    val[pair.substr(0, eq)] = rat_parse(pair.substr(eq + 1));
  }
  return val;
}

inline RelOp parse_relop(const std::string& s) {
  if (s == "lt") return RelOp::Lt;
  if (s == "le") return RelOp::Le;
  if (s == "gt") return RelOp::Gt;
  if (s == "ge") return RelOp::Ge;
  fail(ErrorKind::Usage, "--relop must be one of lt, le, gt, ge");
}

inline ValueDomain parse_domain(const std::string& s) {
  if (s == "wd") return ValueDomain::Wd;
  if (s == "gp") return ValueDomain::Gp;
  if (s == "bool") return ValueDomain::Boolean;
  fail(ErrorKind::Usage, "--domain must be one of wd, gp, bool");
}

inline GridDomain grid_domain(ValueDomain d) {
  switch (d) {
    case ValueDomain::Wd: return GridDomain::WdClosed;
    case ValueDomain::Gp: return GridDomain::GpInterior;
    case ValueDomain::Boolean: return GridDomain::Boolean;
  }
  fail(ErrorKind::Internal, "unmapped value domain");
}

inline StrategyQuantifier parse_quantifier(const std::string& s) {
  if (s == "exists") return StrategyQuantifier::Exists;
  if (s == "forall") return StrategyQuantifier::Forall;
  fail(ErrorKind::Usage, "--quantifier must be exists or forall");
}

inline EncodingStyle parse_style(const std::string& s) {
  if (s == "equations") return EncodingStyle::EquationSystem;
  if (s == "solution-function") return EncodingStyle::SolutionFunction;
  fail(ErrorKind::Usage, "--style must be equations or solution-function");
}

inline QualKind parse_kind(const std::string& s) {
  if (s == "positive") return QualKind::Positive;
  if (s == "safety") return QualKind::Safety;
  if (s == "almost-sure") return QualKind::AlmostSure;
  if (s == "unsure") return QualKind::Unsure;
  fail(ErrorKind::Usage,
       "--kind must be one of positive, safety, almost-sure, unsure");
}

inline Rational parse_threshold(const std::string& s) {
  try {
    return rat_parse(s);
  } catch (const Error&) {
    fail(ErrorKind::Usage, "--threshold expects a rational like 1/2, got '" + s + "'");
  }
}

inline std::string val_text(const Valuation& val) {
  std::string out;
  for (const auto& [k, v] : val) {
    if (!out.empty()) out += ", ";
    out += k + "=" + rat_str(v);
  }
  return out;
}

inline nlohmann::json val_json(const Valuation& val) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : val) j[k] = rat_str(v);
  return j;
}

// Exact value of the query's objective at one valuation: plain reachability
// for chains, the quantifier-matching extremum for decision processes.
inline Rational value_at(const ParametricModel& m,
                         const std::vector<std::string>& targets,
                         StrategyQuantifier quantifier, RelOp relop,
                         const Valuation& val) {
  ConcreteModel c = instantiate(m, val);
  if (c.mdp)
    return mdp_reach_extremum_exact(c, targets, extremum_for(quantifier, relop))
        .value;
  return mc_reach_exact(c, targets);
}

// Shared output sink: everything a command prints goes through one writer so
// --out redirects the whole result.
struct Sink {
  std::string out_path;
  std::ostringstream buf;

  template <typename T>
  Sink& operator<<(const T& v) {
    buf << v;
    return *this;
  }

  void flush() {
    if (out_path.empty()) {
      std::cout << buf.str();
      return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) fail(ErrorKind::Usage, "cannot write '" + out_path + "'");
    f << buf.str();
  }
};

// Options shared by the analysis subcommands; each subcommand registers only
// the flags it understands.
struct Options {
  std::string model_path;
  std::string targets_csv;
  std::string relop = "ge";
  std::string threshold = "1/2";
  std::string val_text;
  std::string domain;
  std::string quantifier = "exists";
  std::string style = "equations";
  std::string kind;
  std::string extremum;
  std::string solver;
  std::string gadget;
  std::string poly_text;
  std::string cnf_path;
  std::string system_path;
  std::string out_path;
  double timeout = 60.0;
  int grid = 20;
  bool json = false;
};

inline void check_targets(const ParametricModel& m,
                          const std::vector<std::string>& targets) {
  for (const auto& t : targets)
    if (!m.has_state(t))
      fail(ErrorKind::Semantic, "target state '" + t + "' not declared");
}

inline std::vector<std::string> effective_targets(const ParametricModel& m,
                                                  const Options& opt) {
  std::vector<std::string> targets = split_csv(opt.targets_csv);
  if (targets.empty()) targets = m.targets;
  if (targets.empty())
    fail(ErrorKind::Usage,
         "no targets: pass --targets or declare @targets in the model");
  check_targets(m, targets);
  return targets;
}

inline int run_check(const Options& opt) {
  ParametricModel m = load_model(opt.model_path);
  std::vector<std::string> targets = effective_targets(m, opt);
  RelOp relop = parse_relop(opt.relop);
  Rational lambda = parse_threshold(opt.threshold);
  StrategyQuantifier quantifier = parse_quantifier(opt.quantifier);
  ValueDomain domain = parse_domain(opt.domain.empty() ? "gp" : opt.domain);

  // The engines answer comparisons against 1/2; other thresholds are folded
  // into the model first.
  ParametricModel work = m;
  work.targets = targets;
  if (lambda != rat(1, 2)) work = normalize_threshold(work, lambda, relop);

  EncodingRequest req;
  req.model = work;
  req.targets = work.targets;
  req.relop = relop;
  req.kind = work.mdp ? ModelKind::Pmdp : ModelKind::Pmc;
  req.quantifier = quantifier;
  req.domain = domain;
  req.style = parse_style(opt.style);
  EtrPtr formula = encode(req);

  std::string solver = opt.solver;
  if (solver.empty()) {
    const char* env = std::getenv("PARAMARK_SOLVER");
    if (env) solver = env;
  }

  Sink out;
  out.out_path = opt.out_path;
  nlohmann::json j;

  if (!solver.empty()) {
    SolverVerdict verdict = solve(solver, formula, opt.timeout, work.params);
    if (verdict.status == SolverStatus::Unsat) {
      if (opt.json) {
        j = {{"answer", "unsat"}, {"method", "solver"}};
        out << j.dump() << "\n";
      } else {
        out << "unsat\n";
      }
      out.flush();
      return 0;
    }
    if (verdict.status != SolverStatus::Sat) {
      std::cerr << "solver returned no verdict (unknown or error)\n";
      return 2;
    }
    if (!verdict.witness) {
      std::cerr << (verdict.witness_irrational
                        ? "solver witness has irrational values; cannot verify exactly\n"
                        : "solver reported sat without a usable witness\n");
      return 2;
    }
    bool verified =
        check_witness(work, work.targets, quantifier, relop, *verdict.witness);
    if (!verified) {
      std::cerr << "solver witness failed exact re-verification\n";
      return 2;
    }
    Rational value = value_at(m, targets, quantifier, relop, *verdict.witness);
    if (opt.json) {
      j = {{"answer", "sat"},
           {"witness", val_json(*verdict.witness)},
           {"value", rat_str(value)},
           {"verified", true},
           {"method", "solver"}};
      out << j.dump() << "\n";
    } else {
      out << "sat\n";
      out << "witness: " << val_text(*verdict.witness) << "\n";
      out << "value: " << rat_str(value) << "\n";
      out << "verified: true\n";
    }
    out.flush();
    return 0;
  }

  // No solver: exact sweep as a semi-decision. A witness settles the query;
  // absence of one only rules out this grid.
  GridSpec grid{opt.grid, grid_domain(domain)};
  OracleReport report =
      sweep(work, work.targets, quantifier, relop, rat(1, 2), grid);
  if (!report.witnesses.empty()) {
    const OracleWitness& w = report.witnesses.front();
    Rational value = value_at(m, targets, quantifier, relop, w.val);
    if (opt.json) {
      j = {{"answer", "sat"},
           {"witness", val_json(w.val)},
           {"value", rat_str(value)},
           {"verified", true},
           {"method", "sweep"}};
      out << j.dump() << "\n";
    } else {
      out << "sat\n";
      out << "witness: " << val_text(w.val) << "\n";
      out << "value: " << rat_str(value) << "\n";
      out << "verified: true\n";
    }
    out.flush();
    return 0;
  }
  if (opt.json) {
    j = {{"answer", "unknown"},
         {"method", "sweep"},
         {"checked", report.checked}};
    out << j.dump() << "\n";
  } else {
    out << "unknown\n";
  }
  out.flush();
  std::cerr << "semi-decision: no witness among " << report.checked
            << " grid points at resolution " << opt.grid
            << "; refine --grid or configure --solver\n";
  return 2;
}

inline int run_encode(const Options& opt) {
  ParametricModel m = load_model(opt.model_path);
  EncodingRequest req;
  req.model = m;
  req.targets = effective_targets(m, opt);
  req.relop = parse_relop(opt.relop);
  req.kind = m.mdp ? ModelKind::Pmdp : ModelKind::Pmc;
  req.quantifier = parse_quantifier(opt.quantifier);
  req.domain = parse_domain(opt.domain.empty() ? "gp" : opt.domain);
  req.style = parse_style(opt.style);

  Sink out;
  out.out_path = opt.out_path;
  out << to_smt_script(encode(req));
  out.flush();
  return 0;
}

inline int run_solution_function(const Options& opt) {
  ParametricModel m = load_model(opt.model_path);
  SolutionFunction sf = solution_function(m, effective_targets(m, opt));
  Sink out;
  out.out_path = opt.out_path;
  if (opt.json) {
    nlohmann::json j = {{"value", sf.value.to_string()},
                        {"domain", "graph-preserving"}};
    out << j.dump() << "\n";
  } else {
    out << sf.value.to_string() << "\n";
  }
  out.flush();
  return 0;
}

inline int run_instantiate(const Options& opt) {
  ParametricModel m = load_model(opt.model_path);
  if (opt.val_text.empty())
    fail(ErrorKind::Usage, "instantiate needs --val name=a/b,...");
  Valuation val = parse_valuation(opt.val_text);

  Sink out;
  out.out_path = opt.out_path;
  // --targets switches between value mode and model mode, so the model's own
  // @targets line is deliberately not a fallback here.
  std::vector<std::string> targets = split_csv(opt.targets_csv);
  check_targets(m, targets);

  if (!targets.empty()) {
    ConcreteModel c = instantiate(m, val);
    Rational value;
    if (c.mdp) {
      if (opt.extremum != "min" && opt.extremum != "max")
        fail(ErrorKind::Usage,
             "instantiating a decision process with targets needs --extremum min|max");
      value = mdp_reach_extremum_exact(
                  c, targets,
                  opt.extremum == "min" ? Extremum::Min : Extremum::Max)
                  .value;
    } else {
      value = mc_reach_exact(c, targets);
    }
    if (opt.json) {
      nlohmann::json j = {{"value", rat_str(value)}};
      out << j.dump() << "\n";
    } else {
      out << rat_str(value) << "\n";
    }
    out.flush();
    return 0;
  }

  // No targets: print the instantiated model, labels folded to constants and
  // vanished transitions dropped.
  ClassifyResult cls = classify_valuation(m, val);
  if (!cls.well_defined)
    fail(ErrorKind::NotWellDefined, "valuation is not well-defined: " + cls.reason);
  ParametricModel inst = m;
  inst.params.clear();
  for (auto& r : inst.rows) {
    std::vector<Transition> kept;
    for (auto& t : r.out) {
      Rational c = t.label.eval(val);
      if (c != 0) kept.push_back({t.to, Polynomial::constant(c)});
    }
    r.out = std::move(kept);
  }
  out << print_model(inst);
  out.flush();
  return 0;
}

inline int run_qualitative(const Options& opt) {
  ParametricModel m = load_model(opt.model_path);
  std::vector<std::string> targets = effective_targets(m, opt);
  m.targets = targets;

  QualProblem problem;
  if (opt.kind.empty())
    fail(ErrorKind::Usage,
         "--kind is required: positive, safety, almost-sure, or unsure");
  problem.kind = parse_kind(opt.kind);
  problem.quantifier = parse_quantifier(opt.quantifier);
  problem.domain = parse_domain(opt.domain.empty() ? "wd" : opt.domain);

  QualDecision d = decide_qualitative(m, problem);
  Sink out;
  out.out_path = opt.out_path;
  if (opt.json) {
    nlohmann::json j;
    j["answer"] = d.answer;
    if (d.witness) j["witness"] = val_json(*d.witness);
    if (d.strategy_witness) {
      nlohmann::json s = nlohmann::json::object();
      for (const auto& [state, action] : d.strategy_witness->choice)
        s[state] = action;
      j["strategy"] = s;
    }
    out << j.dump() << "\n";
  } else {
    out << (d.answer ? "yes" : "no") << "\n";
    if (d.witness) out << "witness: " << val_text(*d.witness) << "\n";
    if (d.strategy_witness) {
      std::string s;
      for (const auto& [state, action] : d.strategy_witness->choice) {
        if (!s.empty()) s += ", ";
        s += state + "=" + action;
      }
      out << "strategy: " << s << "\n";
    }
  }
  out.flush();
  return 0;
}

inline int run_reduce(const Options& opt) {
  Sink out;
  out.out_path = opt.out_path;
  const std::string& g = opt.gadget;

  if (g == "threshold") {
    ParametricModel m = load_model(opt.model_path);
    Rational lambda = parse_threshold(opt.threshold);
    ParametricModel r = normalize_threshold(m, lambda, parse_relop(opt.relop));
    out << "# gadget: threshold (compare against 1/2 instead of "
        << rat_str(lambda) << ")\n";
    out << print_model(r);
  } else if (g == "gp") {
    ParametricModel m = load_model(opt.model_path);
    out << "# gadget: gp (reachability 0 outside the graph-preserving region)\n";
    out << print_model(gp_gadget(m));
  } else if (g == "poly") {
    if (opt.poly_text.empty())
      fail(ErrorKind::Usage, "--gadget poly needs --poly <polynomial>");
    PolyPmcResult r = poly_to_pmc(poly_parse(opt.poly_text));
    out << "# gadget: poly (reach probability (f + A)/B with A = "
        << rat_str(r.A) << ", B = " << rat_str(r.B) << ")\n";
    out << print_model(r.pmc);
  } else if (g == "sat3-positive" || g == "sat3-almostsure" || g == "sat3-unsure") {
    if (opt.cnf_path.empty())
      fail(ErrorKind::Usage, "--gadget " + g + " needs --cnf <dimacs file>");
    Cnf3 cnf = parse_dimacs(read_file(opt.cnf_path));
    SatVariant variant = g == "sat3-positive"    ? SatVariant::Positive
                         : g == "sat3-almostsure" ? SatVariant::AlmostSure
                                                  : SatVariant::Unsure;
    GadgetModel gm = sat3_to_pmc(cnf, variant);
    out << "# gadget: " << g << "\n";
    out << print_model(gm.model);
  } else if (g == "bcon4") {
    if (opt.system_path.empty())
      fail(ErrorKind::Usage, "--gadget bcon4 needs --system <polynomial system file>");
    PolySystem sys = parse_poly_system(read_file(opt.system_path), 4);
    GadgetModel gm = bcon4ineq_to_pmdp(sys);
    out << "# gadget: bcon4 (all strategies < 1/2 iff every polynomial is negative)\n";
    out << print_model(gm.model);
  } else if (g == "exists-to-pmc") {
    ParametricModel m = load_model(opt.model_path);
    out << "# gadget: exists-to-pmc (coin parameters replace action choice)\n";
    out << print_model(pmdp_exists_to_pmc(m));
  } else {
    fail(ErrorKind::Usage,
         "--gadget must be one of threshold, gp, poly, sat3-positive, "
         "sat3-almostsure, sat3-unsure, bcon4, exists-to-pmc");
  }
  out.flush();
  return 0;
}

inline int run_oracle(const Options& opt) {
  ParametricModel m = load_model(opt.model_path);
  std::vector<std::string> targets = effective_targets(m, opt);
  RelOp relop = parse_relop(opt.relop);
  Rational threshold = parse_threshold(opt.threshold);
  StrategyQuantifier quantifier = parse_quantifier(opt.quantifier);
  ValueDomain domain = parse_domain(opt.domain.empty() ? "gp" : opt.domain);

  GridSpec grid{opt.grid, grid_domain(domain)};
  OracleReport report = sweep(m, targets, quantifier, relop, threshold, grid);

  Sink out;
  out.out_path = opt.out_path;
  if (opt.json) {
    nlohmann::json j;
    j["checked"] = report.checked;
    j["witnesses"] = nlohmann::json::array();
    for (const auto& w : report.witnesses)
      j["witnesses"].push_back({{"val", val_json(w.val)},
                                 {"value", rat_str(w.value)},
                                 {"verdict", w.verdict}});
    j["counterexamples"] = nlohmann::json::array();
    for (const auto& c : report.counterexamples)
      j["counterexamples"].push_back({{"val", val_json(c.val)},
                                       {"formula_holds", c.formula_holds},
                                       {"truth", c.truth}});
    out << j.dump() << "\n";
  } else {
    out << "checked: " << report.checked << "\n";
    out << "witnesses: " << report.witnesses.size() << "\n";
    for (const auto& w : report.witnesses)
      out << val_text(w.val) << " -> " << rat_str(w.value) << "\n";
  }
  out.flush();
  return 0;
}

}  // namespace clidetail

inline int cli_main(int argc, const char* const* argv) {
  using clidetail::Options;
  Options opt;

  CLI::App app{"exact parameter synthesis for parametric Markov models"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("-m,--model", opt.model_path, "model file (.pmc/.pmdp text)");
    cmd->add_option("--targets", opt.targets_csv,
                    "target states, comma-separated (default: @targets)");
    cmd->add_option("--out", opt.out_path, "write the result to a file");
    cmd->add_flag("--json", opt.json, "machine-readable output");
  };

  CLI::App* check = app.add_subcommand("check", "decide a threshold query");
  add_common(check);
  check->add_option("--relop", opt.relop, "lt, le, gt, ge")->required();
  check->add_option("--threshold", opt.threshold, "rational threshold (default 1/2)");
  check->add_option("--domain", opt.domain, "wd or gp (default gp)");
  check->add_option("--quantifier", opt.quantifier, "exists or forall (default exists)");
  check->add_option("--style", opt.style,
                    "equations or solution-function (default equations)");
  check->add_option("--solver", opt.solver,
                    "SMT-LIB NRA solver executable (default: $PARAMARK_SOLVER)");
  check->add_option("--timeout", opt.timeout, "solver timeout in seconds (default 60)");
  check->add_option("--grid", opt.grid,
                    "sweep resolution when no solver is configured (default 20)");

  CLI::App* encode_cmd =
      app.add_subcommand("encode", "emit the query as an SMT-LIB script");
  add_common(encode_cmd);
  encode_cmd->add_option("--relop", opt.relop, "lt, le, gt, ge")->required();
  encode_cmd->add_option("--domain", opt.domain, "wd or gp (default gp)");
  encode_cmd->add_option("--quantifier", opt.quantifier, "exists or forall");
  encode_cmd->add_option("--style", opt.style, "equations or solution-function");

  CLI::App* sf = app.add_subcommand("solution-function",
                                    "print the exact reachability function");
  add_common(sf);

  CLI::App* inst = app.add_subcommand(
      "instantiate", "evaluate at a valuation (value with targets, model without)");
  add_common(inst);
  inst->add_option("--val", opt.val_text, "valuation, e.g. x=2/5,y=7/10")->required();
  inst->add_option("--extremum", opt.extremum,
                   "min or max (decision processes with targets)");

  CLI::App* qual =
      app.add_subcommand("qualitative", "decide a qualitative reachability question");
  add_common(qual);
  qual->add_option("--kind", opt.kind, "positive, safety, almost-sure, unsure")
      ->required();
  qual->add_option("--domain", opt.domain, "wd, gp, or bool (default wd)");
  qual->add_option("--quantifier", opt.quantifier, "exists or forall");

  CLI::App* reduce = app.add_subcommand("reduce", "emit a gadget construction");
  add_common(reduce);
  reduce
      ->add_option("--gadget", opt.gadget,
                   "threshold, gp, poly, sat3-positive, sat3-almostsure, "
                   "sat3-unsure, bcon4, exists-to-pmc")
      ->required();
  reduce->add_option("--threshold", opt.threshold, "threshold gadget: rational to fold");
  reduce->add_option("--relop", opt.relop, "threshold gadget: query relop");
  reduce->add_option("--poly", opt.poly_text, "poly gadget: the polynomial");
  reduce->add_option("--cnf", opt.cnf_path, "sat3 gadgets: DIMACS file");
  reduce->add_option("--system", opt.system_path,
                     "bcon4 gadget: '@vars ...' plus one polynomial per line");

  CLI::App* oracle =
      app.add_subcommand("oracle", "exact grid sweep for threshold witnesses");
  add_common(oracle);
  oracle->add_option("--relop", opt.relop, "lt, le, gt, ge")->required();
  oracle->add_option("--threshold", opt.threshold, "rational threshold (default 1/2)");
  oracle->add_option("--domain", opt.domain, "wd, gp, or bool (default gp)");
  oracle->add_option("--quantifier", opt.quantifier, "exists or forall");
  oracle->add_option("--grid", opt.grid, "grid resolution (default 20)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*check) return clidetail::run_check(opt);
    if (*encode_cmd) return clidetail::run_encode(opt);
    if (*sf) return clidetail::run_solution_function(opt);
    if (*inst) return clidetail::run_instantiate(opt);
    if (*qual) return clidetail::run_qualitative(opt);
    if (*reduce) return clidetail::run_reduce(opt);
    if (*oracle) return clidetail::run_oracle(opt);
    std::cerr << "no subcommand selected\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return clidetail::exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace paramark
