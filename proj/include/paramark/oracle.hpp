#pragma once

// Brute-force ground truth: exact grid sweeps over valuations, exact formula
// evaluation under explicit assignments, and encoder cross-checks that compare
// formula satisfaction under a canonical witness assignment against the
// independently computed reachability verdict.

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paramark/errors.hpp"
#include "paramark/etr.hpp"
#include "paramark/model.hpp"
#include "paramark/quantitative.hpp"

namespace paramark {

// --- formula evaluation ------------------------------------------------------

struct EtrAssignment {
  Valuation reals;
  std::map<std::string, bool> bools;
};

inline bool eval_formula(const EtrPtr& f, const EtrAssignment& asg) {
  switch (f->node) {
    case EtrFormula::Node::True:
      return true;
    case EtrFormula::Node::False:
      return false;
    case EtrFormula::Node::BoolVar: {
      auto it = asg.bools.find(f->name);
      if (it == asg.bools.end())
        fail(ErrorKind::MissingVariable,
             "assignment misses Boolean variable '" + f->name + "'");
      return it->second;
    }
    case EtrFormula::Node::PolyAtom: {
      for (const auto& v : f->lhs.vars())
        if (!asg.reals.count(v))
          fail(ErrorKind::MissingVariable,
               "assignment misses real variable '" + v + "'");
      for (const auto& v : f->rhs.vars())
        if (!asg.reals.count(v))
          fail(ErrorKind::MissingVariable,
               "assignment misses real variable '" + v + "'");
      return atom_op_holds(f->lhs.eval(asg.reals), f->op, f->rhs.eval(asg.reals));
    }
    case EtrFormula::Node::Not:
      return !eval_formula(f->kids.at(0), asg);
    case EtrFormula::Node::And:
      for (const auto& k : f->kids)
        if (!eval_formula(k, asg)) return false;
      return true;
    case EtrFormula::Node::Or:
      for (const auto& k : f->kids)
        if (eval_formula(k, asg)) return true;
      return false;
    case EtrFormula::Node::Implies:
      return !eval_formula(f->kids.at(0), asg) || eval_formula(f->kids.at(1), asg);
    case EtrFormula::Node::Iff:
      return eval_formula(f->kids.at(0), asg) == eval_formula(f->kids.at(1), asg);
  }
  fail(ErrorKind::Internal, "bad formula node");
}

// --- grids -------------------------------------------------------------------

enum class GridDomain { GpInterior, WdClosed, Boolean };

struct GridSpec {
  int resolution = 5;
  GridDomain domain = GridDomain::GpInterior;
};

// Cartesian grid over the declared parameters, last parameter fastest.
// GpInterior uses k/(n+1) for k = 1..n (strictly inside (0,1)); WdClosed uses
// k/n for k = 0..n; Boolean uses {0, 1}.
inline std::vector<Valuation> grid_points(const std::vector<std::string>& params,
                                          const GridSpec& grid) {
  if (grid.resolution < 1)
    fail(ErrorKind::Semantic, "grid resolution must be positive");
  std::vector<Rational> coords;
  switch (grid.domain) {
    case GridDomain::GpInterior:
      for (int k = 1; k <= grid.resolution; ++k)
        coords.push_back(rat(k, grid.resolution + 1));
      break;
    case GridDomain::WdClosed:
      for (int k = 0; k <= grid.resolution; ++k)
        coords.push_back(rat(k, grid.resolution));
      break;
    case GridDomain::Boolean:
      coords = {rat(0), rat(1)};
      break;
  }
  std::vector<Valuation> out;
  std::vector<std::size_t> idx(params.size(), 0);
  while (true) {
    Valuation val;
    for (std::size_t i = 0; i < params.size(); ++i) val[params[i]] = coords[idx[i]];
    out.push_back(std::move(val));
    std::size_t i = params.size();
    while (i > 0) {
      --i;
      if (++idx[i] < coords.size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (params.empty()) return out;
  }
}

// --- reports -----------------------------------------------------------------

struct OracleWitness {
  Valuation val;
  Rational value;
  bool verdict = false;
};

struct OracleMismatch {
  Valuation val;
  bool formula_holds = false;
  bool truth = false;
};

struct OracleReport {
  std::size_t checked = 0;
  std::vector<OracleWitness> witnesses;
  std::vector<OracleMismatch> counterexamples;
};

// --- exact sweeps ------------------------------------------------------------

// Exact per-point evaluation over the grid. Points outside the well-defined
// set are skipped (and not counted); every reported witness is definitive,
// absence of a witness only rules out this resolution.
inline OracleReport sweep(const ParametricModel& m,
                          const std::vector<std::string>& targets,
                          StrategyQuantifier quantifier, RelOp relop,
                          const Rational& threshold, const GridSpec& grid) {
  OracleReport report;
  for (const Valuation& val : grid_points(m.params, grid)) {
    ClassifyResult cls = classify_valuation(m, val);
    if (!cls.well_defined) continue;
    ConcreteModel c = instantiate(m, val);
    Rational value =
        c.mdp ? mdp_reach_extremum_exact(c, targets, extremum_for(quantifier, relop))
                    .value
              : mc_reach_exact(c, targets);
    ++report.checked;
    if (relop_holds(value, relop, threshold))
      report.witnesses.push_back({val, value, true});
  }
  return report;
}

// --- canonical witness assignment --------------------------------------------

namespace oracledetail {

// Breadth-first distance to the targets over positive-probability edges,
// optionally restricted to one chosen row per state. Unreached states get
// |S| + 1.
inline std::vector<int> bfs_rank(const ConcreteModel& c,
                                 const std::vector<std::string>& targets,
                                 const std::map<std::string, std::string>* chosen) {
  std::size_t n = c.states.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[c.states[i]] = i;
  std::vector<std::vector<std::size_t>> rev(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string& s = c.states[i];
    for (const CRow* row : c.rows_of(s)) {
      if (chosen) {
        auto it = chosen->find(s);
        if (it == chosen->end() || it->second != row->action) continue;
      }
      for (const auto& t : row->out)
        if (t.prob > 0) rev[index.at(t.to)].push_back(i);
    }
  }
  std::vector<int> dist(n, static_cast<int>(n) + 1);
  std::vector<std::size_t> queue;
  for (const auto& t : targets) {
    std::size_t i = index.at(t);
    if (dist[i] == static_cast<int>(n) + 1) {
      dist[i] = 0;
      queue.push_back(i);
    }
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::size_t s = queue[qi];
    for (std::size_t u : rev[s])
      if (dist[u] == static_cast<int>(n) + 1) {
        dist[u] = dist[s] + 1;
        queue.push_back(u);
      }
  }
  return dist;
}

// Layered certificate rank for the "every strategy reaches positively" flag:
// layer 0 is the target set, layer k+1 adds states where every row has a
// positive edge into earlier layers. States never added get |S| + 1.
inline std::vector<int> stage_rank(const ConcreteModel& c,
                                   const std::vector<std::string>& targets) {
  std::size_t n = c.states.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[c.states[i]] = i;
  std::vector<int> rank(n, static_cast<int>(n) + 1);
  for (const auto& t : targets) rank[index.at(t)] = 0;
  bool changed = true;
  int stage = 0;
  while (changed) {
    changed = false;
    ++stage;
    for (std::size_t i = 0; i < n; ++i) {
      if (rank[i] <= static_cast<int>(n)) continue;
      std::vector<const CRow*> rows = c.rows_of(c.states[i]);
      if (rows.empty()) continue;
      bool all = true;
      for (const CRow* row : rows) {
        bool step = false;
        for (const auto& t : row->out)
          if (t.prob > 0 && rank[index.at(t.to)] < stage) {
            step = true;
            break;
          }
        if (!step) {
          all = false;
          break;
        }
      }
      if (all) {
        rank[i] = stage;
        changed = true;
      }
    }
  }
  return rank;
}

}  // namespace oracledetail

// The assignment the soundness theorems construct: parameters from the
// valuation, p_s the exact reachability value (extremal per quantifier for
// decision processes), q_s its positivity, and r_s a breadth-first distance
// on the variant's certificate graph (targets 0, unreachable |S| + 1): the
// layered all-actions rank when the flag means "every strategy", the chosen
// extremal strategy's graph for exists-lower, and the full graph otherwise.
inline EtrAssignment canonical_aux(const ParametricModel& m,
                                   const std::vector<std::string>& targets,
                                   StrategyQuantifier quantifier, RelOp relop,
                                   const Valuation& val) {
  ConcreteModel c = instantiate(m, val);
  EtrAssignment asg;
  asg.reals = val;

  std::vector<Rational> values;
  std::vector<int> ranks;
  if (!c.mdp) {
    values = mc_reach_exact_values(c, targets);
    ranks = oracledetail::bfs_rank(c, targets, nullptr);
  } else {
    ExtremumResult res =
        mdp_reach_extremum_exact(c, targets, extremum_for(quantifier, relop));
    values = res.state_values;
    bool upper = (relop == RelOp::Le || relop == RelOp::Lt);
    bool exists = (quantifier == StrategyQuantifier::Exists);
    if (upper == exists)
      ranks = oracledetail::stage_rank(c, targets);
    else if (exists)
      ranks = oracledetail::bfs_rank(c, targets, &res.strategy.choice);
    else
      ranks = oracledetail::bfs_rank(c, targets, nullptr);
  }

  for (std::size_t i = 0; i < c.states.size(); ++i) {
    const std::string& s = c.states[i];
    asg.reals[prob_var(s)] = values[i];
    asg.reals[rank_var(s)] = rat(ranks[i]);
    asg.bools[flag_var(s)] = values[i] > 0;
  }
  return asg;
}

// --- encoder cross-check -----------------------------------------------------

// At every grid point inside the requested domain, the canonical assignment
// must satisfy the encoding exactly when the exact verdict holds. Mismatches
// are counterexamples; agreement with a positive verdict is recorded as a
// witness.
inline OracleReport cross_check(const ParametricModel& m,
                                const EncodingRequest& request,
                                const GridSpec& grid) {
  EtrPtr formula = encode(request);
  OracleReport report;
  for (const Valuation& val : grid_points(m.params, grid)) {
    ClassifyResult cls = classify_valuation(m, val);
    if (request.domain == ValueDomain::Gp ? !cls.graph_preserving
                                          : !cls.well_defined)
      continue;
    EtrAssignment aux =
        canonical_aux(m, request.targets, request.quantifier, request.relop, val);
    bool truth =
        check_witness(m, request.targets, request.quantifier, request.relop, val);
    bool holds = eval_formula(formula, aux);
    ++report.checked;
    if (holds != truth)
      report.counterexamples.push_back({val, holds, truth});
    else if (truth)
      report.witnesses.push_back({val, aux.reals.at(prob_var(m.init)), true});
  }
  return report;
}

}  // namespace paramark
