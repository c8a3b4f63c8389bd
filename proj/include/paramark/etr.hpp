#pragma once

// Real-arithmetic constraint encodings for reachability thresholds: the
// well-definedness and graph-preservation systems, threshold encodings for
// chains (equation and solution-function styles) and for decision processes
// (four bound/quantifier variants), and strategy-minimality certificates.
// All formulas are quantifier-free; every variable is implicitly existential.

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paramark/errors.hpp"
#include "paramark/model.hpp"
#include "paramark/polynomial.hpp"
#include "paramark/qualitative.hpp"
#include "paramark/quantitative.hpp"

namespace paramark {

// --- formula AST -------------------------------------------------------------

enum class AtomOp { Lt, Le, Eq, Ge, Gt };

inline AtomOp atom_op(RelOp op) {
  switch (op) {
    case RelOp::Lt: return AtomOp::Lt;
    case RelOp::Le: return AtomOp::Le;
    case RelOp::Gt: return AtomOp::Gt;
    case RelOp::Ge: return AtomOp::Ge;
  }
  fail(ErrorKind::Internal, "bad relop");
}

inline bool atom_op_holds(const Rational& lhs, AtomOp op, const Rational& rhs) {
  switch (op) {
    case AtomOp::Lt: return lhs < rhs;
    case AtomOp::Le: return lhs <= rhs;
    case AtomOp::Eq: return lhs == rhs;
    case AtomOp::Ge: return lhs >= rhs;
    case AtomOp::Gt: return lhs > rhs;
  }
  fail(ErrorKind::Internal, "bad atom op");
}

struct EtrFormula;
using EtrPtr = std::shared_ptr<const EtrFormula>;

// Real variables are model parameters, state probabilities p_<state> and rank
// reals r_<state>; Boolean variables are the positivity flags q_<state>.
struct EtrFormula {
  enum class Node { True, False, BoolVar, PolyAtom, Not, And, Or, Implies, Iff };
  Node node = Node::True;
  std::string name;        // BoolVar
  Polynomial lhs, rhs;     // PolyAtom
  AtomOp op = AtomOp::Eq;  // PolyAtom
  std::vector<EtrPtr> kids;
};

inline std::string prob_var(const std::string& state) { return "p_" + state; }
inline std::string flag_var(const std::string& state) { return "q_" + state; }
inline std::string rank_var(const std::string& state) { return "r_" + state; }

inline EtrPtr etr_true() {
  auto f = std::make_shared<EtrFormula>();
  f->node = EtrFormula::Node::True;
  return f;
}

inline EtrPtr etr_false() {
  auto f = std::make_shared<EtrFormula>();
  f->node = EtrFormula::Node::False;
  return f;
}

inline EtrPtr etr_bool(const std::string& name) {
  auto f = std::make_shared<EtrFormula>();
  f->node = EtrFormula::Node::BoolVar;
  f->name = name;
  return f;
}

inline EtrPtr etr_atom(Polynomial lhs, AtomOp op, Polynomial rhs) {
  auto f = std::make_shared<EtrFormula>();
  f->node = EtrFormula::Node::PolyAtom;
  f->lhs = std::move(lhs);
  f->op = op;
  f->rhs = std::move(rhs);
  return f;
}

inline EtrPtr etr_not(EtrPtr k) {
  auto f = std::make_shared<EtrFormula>();
  f->node = EtrFormula::Node::Not;
  f->kids.push_back(std::move(k));
  return f;
}

// Empty conjunctions collapse to true, singletons to the lone member.
inline EtrPtr etr_and(std::vector<EtrPtr> kids) {
  if (kids.empty()) return etr_true();
  if (kids.size() == 1) return kids.front();
  auto f = std::make_shared<EtrFormula>();
  f->node = EtrFormula::Node::And;
  f->kids = std::move(kids);
  return f;
}

// Empty disjunctions collapse to false, singletons to the lone member.
inline EtrPtr etr_or(std::vector<EtrPtr> kids) {
  if (kids.empty()) return etr_false();
  if (kids.size() == 1) return kids.front();
  auto f = std::make_shared<EtrFormula>();
  f->node = EtrFormula::Node::Or;
  f->kids = std::move(kids);
  return f;
}

inline EtrPtr etr_implies(EtrPtr a, EtrPtr b) {
  auto f = std::make_shared<EtrFormula>();
  f->node = EtrFormula::Node::Implies;
  f->kids.push_back(std::move(a));
  f->kids.push_back(std::move(b));
  return f;
}

inline EtrPtr etr_iff(EtrPtr a, EtrPtr b) {
  auto f = std::make_shared<EtrFormula>();
  f->node = EtrFormula::Node::Iff;
  f->kids.push_back(std::move(a));
  f->kids.push_back(std::move(b));
  return f;
}

struct EtrVars {
  std::set<std::string> reals;
  std::set<std::string> bools;
};

inline void collect_vars_into(const EtrPtr& f, EtrVars& out) {
  switch (f->node) {
    case EtrFormula::Node::True:
    case EtrFormula::Node::False:
      return;
    case EtrFormula::Node::BoolVar:
      out.bools.insert(f->name);
      return;
    case EtrFormula::Node::PolyAtom:
      for (const auto& v : f->lhs.vars()) out.reals.insert(v);
      for (const auto& v : f->rhs.vars()) out.reals.insert(v);
      return;
    default:
      for (const auto& k : f->kids) collect_vars_into(k, out);
      return;
  }
}

inline EtrVars collect_vars(const EtrPtr& f) {
  EtrVars out;
  collect_vars_into(f, out);
  return out;
}

// --- encoding requests -------------------------------------------------------

enum class ModelKind { Pmc, Pmdp };
enum class EncodingStyle { EquationSystem, SolutionFunction };

struct EncodingRequest {
  ParametricModel model;
  std::vector<std::string> targets;
  RelOp relop = RelOp::Ge;
  ModelKind kind = ModelKind::Pmc;
  StrategyQuantifier quantifier = StrategyQuantifier::Exists;  // pmdp only
  ValueDomain domain = ValueDomain::Gp;                        // Wd or Gp
  EncodingStyle style = EncodingStyle::EquationSystem;
};

namespace etrdetail {

inline void validate_targets(const ParametricModel& m,
                             const std::vector<std::string>& targets) {
  std::set<std::string> declared(m.states.begin(), m.states.end());
  if (targets.empty()) fail(ErrorKind::Semantic, "no target states given");
  for (const auto& t : targets)
    if (!declared.count(t))
      fail(ErrorKind::Semantic, "target state '" + t + "' not declared");
}

// States with no path to a target when every non-zero label counts as an
// edge. At graph-preserving valuations these are exactly the probability-0
// states, independent of the parameter values.
inline std::vector<char> syntactic_prob0(const ParametricModel& m,
                                         const std::vector<std::string>& targets) {
  qdetail::Compact g =
      qdetail::compile(m, targets, [](int, const Row&, const Transition&) {});
  int e = 0;
  for (const auto& row : m.rows)
    for (const auto& t : row.out) {
      if (t.label.is_zero()) g.hide(e);
      ++e;
    }
  qdetail::Work w;
  w.mark.assign(static_cast<std::size_t>(g.n), 0);
  w.queue.clear();
  for (int s = 0; s < g.n; ++s)
    if (g.target[static_cast<std::size_t>(s)]) {
      w.mark[static_cast<std::size_t>(s)] = 1;
      w.queue.push_back(s);
    }
  qdetail::backward_reach(g, w, w.mark, false);
  std::vector<char> prob0(static_cast<std::size_t>(g.n), 0);
  for (int s = 0; s < g.n; ++s)
    prob0[static_cast<std::size_t>(s)] = !w.mark[static_cast<std::size_t>(s)];
  return prob0;
}

inline EtrPtr positivity_atom(const Polynomial& label) {
  return etr_atom(label, AtomOp::Gt, Polynomial::constant(0));
}

// P > 0 /\ q_to /\ r_from > r_to: one positivity-with-rank disjunct.
inline EtrPtr rank_step(const std::string& from, const Polynomial& label,
                        const std::string& to) {
  return etr_and({positivity_atom(label), etr_bool(flag_var(to)),
                  etr_atom(Polynomial::variable(rank_var(from)), AtomOp::Gt,
                           Polynomial::variable(rank_var(to)))});
}

// P > 0 -> not q_to: one conjunct of the avoid-set certificate.
inline EtrPtr avoid_step(const Polynomial& label, const std::string& to) {
  return etr_implies(positivity_atom(label), etr_not(etr_bool(flag_var(to))));
}

inline Polynomial expected_prob(const Row& row) {
  Polynomial sum;
  for (const auto& t : row.out)
    sum += t.label * Polynomial::variable(prob_var(t.to));
  return sum;
}

inline EtrPtr threshold_atom(const std::string& init, RelOp relop) {
  return etr_atom(Polynomial::variable(prob_var(init)), atom_op(relop),
                  Polynomial::constant(rat(1, 2)));
}

}  // namespace etrdetail

// --- domain constraint systems -----------------------------------------------

// Conjunction of 0 <= P <= 1 per distinct non-zero label and row-sum = 1 per
// row; duplicate atoms are emitted once.
inline EtrPtr encode_wd(const ParametricModel& m) {
  std::vector<EtrPtr> out;
  std::set<std::string> seen;
  auto emit = [&](EtrPtr atom) {
    std::string key = atom->lhs.to_string() + "|" + atom->rhs.to_string() + "|" +
                      std::to_string(static_cast<int>(atom->op));
    if (seen.insert(key).second) out.push_back(std::move(atom));
  };
  for (const auto& row : m.rows) {
    Polynomial sum;
    for (const auto& t : row.out) {
      sum += t.label;
      if (t.label.is_zero()) continue;
      emit(etr_atom(Polynomial::constant(0), AtomOp::Le, t.label));
      emit(etr_atom(t.label, AtomOp::Le, Polynomial::constant(1)));
    }
    emit(etr_atom(sum, AtomOp::Eq, Polynomial::constant(1)));
  }
  return etr_and(std::move(out));
}

// As encode_wd, but the lower bound of every non-constant label is strict,
// which pins the valuation to the graph-preserving set.
inline EtrPtr encode_gp(const ParametricModel& m) {
  std::vector<EtrPtr> out;
  std::set<std::string> seen;
  auto emit = [&](EtrPtr atom) {
    std::string key = atom->lhs.to_string() + "|" + atom->rhs.to_string() + "|" +
                      std::to_string(static_cast<int>(atom->op));
    if (seen.insert(key).second) out.push_back(std::move(atom));
  };
  for (const auto& row : m.rows) {
    Polynomial sum;
    for (const auto& t : row.out) {
      sum += t.label;
      if (t.label.is_zero()) continue;
      if (t.label.is_constant())
        emit(etr_atom(Polynomial::constant(0), AtomOp::Le, t.label));
      else
        emit(etr_atom(t.label, AtomOp::Gt, Polynomial::constant(0)));
      emit(etr_atom(t.label, AtomOp::Le, Polynomial::constant(1)));
    }
    emit(etr_atom(sum, AtomOp::Eq, Polynomial::constant(1)));
  }
  return etr_and(std::move(out));
}

inline EtrPtr domain_formula(const ParametricModel& m, ValueDomain domain) {
  switch (domain) {
    case ValueDomain::Wd: return encode_wd(m);
    case ValueDomain::Gp: return encode_gp(m);
    case ValueDomain::Boolean: break;
  }
  fail(ErrorKind::Semantic, "encodings support the wd and gp domains only");
}

// --- chain threshold encodings -----------------------------------------------

// Graph-preserving domain: probability-0 states are graph-determined, so the
// system pins p to 0/1 there and elsewhere equates p with the expected
// successor value. Well-defined domain: positivity is valuation-dependent, so
// Boolean flags q with rank reals r certify it per state. A satisfying
// assignment projects exactly onto the valuations in the domain whose
// reachability probability meets the threshold.
inline EtrPtr encode_pmc(const EncodingRequest& req) {
  const ParametricModel& m = req.model;
  if (req.kind != ModelKind::Pmc || m.mdp)
    fail(ErrorKind::NotPmc, "chain encoding needs a single-action model");
  etrdetail::validate_targets(m, req.targets);
  std::set<std::string> target(req.targets.begin(), req.targets.end());

  std::vector<EtrPtr> parts;
  parts.push_back(etrdetail::threshold_atom(m.init, req.relop));
  parts.push_back(domain_formula(m, req.domain));

  if (req.domain == ValueDomain::Gp) {
    std::vector<char> prob0 = etrdetail::syntactic_prob0(m, req.targets);
    for (std::size_t i = 0; i < m.states.size(); ++i) {
      const std::string& s = m.states[i];
      Polynomial ps = Polynomial::variable(prob_var(s));
      if (target.count(s)) {
        parts.push_back(etr_atom(ps, AtomOp::Eq, Polynomial::constant(1)));
      } else if (prob0[i]) {
        parts.push_back(etr_atom(ps, AtomOp::Eq, Polynomial::constant(0)));
      } else {
        const Row* row = m.rows_of(s).at(0);
        parts.push_back(etr_atom(ps, AtomOp::Eq, etrdetail::expected_prob(*row)));
      }
    }
    return etr_and(std::move(parts));
  }

  for (const auto& s : m.states) {
    Polynomial ps = Polynomial::variable(prob_var(s));
    EtrPtr qs = etr_bool(flag_var(s));
    if (target.count(s)) {
      parts.push_back(qs);
      parts.push_back(etr_atom(ps, AtomOp::Eq, Polynomial::constant(1)));
      continue;
    }
    const Row* row = m.rows_of(s).at(0);
    std::vector<EtrPtr> steps, avoids;
    for (const auto& t : row->out) {
      if (t.label.is_zero()) continue;
      steps.push_back(etrdetail::rank_step(s, t.label, t.to));
      avoids.push_back(etrdetail::avoid_step(t.label, t.to));
    }
    parts.push_back(etr_iff(qs, etr_or(std::move(steps))));
    parts.push_back(etr_implies(etr_not(qs), etr_and(std::move(avoids))));
    parts.push_back(etr_implies(
        etr_not(qs), etr_atom(ps, AtomOp::Eq, Polynomial::constant(0))));
    parts.push_back(etr_implies(
        qs, etr_atom(ps, AtomOp::Eq, etrdetail::expected_prob(*row))));
  }
  return etr_and(std::move(parts));
}

// Threshold test on the closed-form solution function, split on the sign of
// the denominator; mentions parameter variables only.
inline EtrPtr encode_pmc_solution_function(const ParametricModel& m,
                                           const std::vector<std::string>& targets,
                                           RelOp relop) {
  if (m.mdp)
    fail(ErrorKind::NotPmc, "solution-function encoding needs a single-action model");
  etrdetail::validate_targets(m, targets);
  SolutionFunction sf = solution_function(m, targets);
  const Polynomial& f = sf.value.num;
  const Polynomial& g = sf.value.den;
  Polynomial half_g = rat(1, 2) * g;
  AtomOp op = atom_op(relop);
  EtrPtr pos = etr_and({etr_atom(g, AtomOp::Gt, Polynomial::constant(0)),
                        etr_atom(f, op, half_g)});
  EtrPtr neg = etr_and({etr_atom(g, AtomOp::Lt, Polynomial::constant(0)),
                        etr_atom(half_g, op, f)});
  return etr_and({etr_or({pos, neg}), encode_gp(m)});
}

// --- decision-process threshold encodings ------------------------------------

// Four variants keyed on the bound direction (upper: <=, <; lower: >=, >) and
// the strategy quantifier. The positivity flag q_s certifies "every strategy
// reaches with positive probability" when bound and quantifier agree
// (exists+upper, forall+lower) and "some strategy does" otherwise; both
// directions are pinned: ranks certify flags that are set, an action whose
// positive successors are all un-flagged (or all actions, matching the flag's
// meaning) certifies flags that are clear. The p-part selects one action per
// state existentially (with a rank-progress conjunct on the lower bound,
// which rules out inflated fixpoints on chosen cycles) or bounds p against
// every action universally.
inline EtrPtr encode_pmdp(const EncodingRequest& req) {
  const ParametricModel& m = req.model;
  if (req.kind != ModelKind::Pmdp || !m.mdp)
    fail(ErrorKind::NotPmdp, "decision-process encoding needs an action-labelled model");
  etrdetail::validate_targets(m, req.targets);
  std::set<std::string> target(req.targets.begin(), req.targets.end());

  bool upper = (req.relop == RelOp::Le || req.relop == RelOp::Lt);
  bool exists = (req.quantifier == StrategyQuantifier::Exists);
  bool every_strategy_flag = (upper == exists);

  std::vector<EtrPtr> parts;
  parts.push_back(etrdetail::threshold_atom(m.init, req.relop));
  parts.push_back(domain_formula(m, req.domain));

  for (const auto& s : m.states) {
    Polynomial ps = Polynomial::variable(prob_var(s));
    EtrPtr qs = etr_bool(flag_var(s));
    if (target.count(s)) {
      parts.push_back(qs);
      parts.push_back(etr_atom(ps, AtomOp::Eq, Polynomial::constant(1)));
      continue;
    }
    std::vector<const Row*> rows = m.rows_of(s);

    std::vector<EtrPtr> row_steps, row_avoids;
    for (const Row* row : rows) {
      std::vector<EtrPtr> steps, avoids;
      for (const auto& t : row->out) {
        if (t.label.is_zero()) continue;
        steps.push_back(etrdetail::rank_step(s, t.label, t.to));
        avoids.push_back(etrdetail::avoid_step(t.label, t.to));
      }
      row_steps.push_back(etr_or(std::move(steps)));
      row_avoids.push_back(etr_and(std::move(avoids)));
    }
    parts.push_back(etr_iff(qs, every_strategy_flag
                                    ? etr_and(std::move(row_steps))
                                    : etr_or(std::move(row_steps))));
    parts.push_back(etr_implies(etr_not(qs),
                                every_strategy_flag
                                    ? etr_or(std::move(row_avoids))
                                    : etr_and(std::move(row_avoids))));
    parts.push_back(etr_implies(
        etr_not(qs), etr_atom(ps, AtomOp::Eq, Polynomial::constant(0))));

    std::vector<EtrPtr> row_parts;
    for (const Row* row : rows) {
      Polynomial expect = etrdetail::expected_prob(*row);
      if (!exists) {
        row_parts.push_back(etr_atom(ps, upper ? AtomOp::Ge : AtomOp::Le, expect));
        continue;
      }
      EtrPtr eq = etr_atom(ps, AtomOp::Eq, expect);
      if (upper) {
        row_parts.push_back(std::move(eq));
        continue;
      }
      std::vector<EtrPtr> progress;
      for (const auto& t : row->out) {
        if (t.label.is_zero()) continue;
        progress.push_back(etrdetail::rank_step(s, t.label, t.to));
      }
      row_parts.push_back(etr_and({std::move(eq), etr_or(std::move(progress))}));
    }
    parts.push_back(etr_implies(qs, exists ? etr_or(std::move(row_parts))
                                           : etr_and(std::move(row_parts))));
  }
  return etr_and(std::move(parts));
}

// --- strategy-minimality certificate -----------------------------------------

namespace etrdetail {

inline Polynomial capped_mul(const Polynomial& a, const Polynomial& b) {
  try {
    Polynomial out = a * b;
    if (out.term_count() > elimination_term_cap())
      fail(ErrorKind::EliminationBlowup,
           "minimality certificate exceeded " +
               std::to_string(elimination_term_cap()) + " terms");
    return out;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ExponentOverflow)
      fail(ErrorKind::EliminationBlowup,
           "exponent cap exceeded in the minimality certificate");
    throw;
  }
}

}  // namespace etrdetail

// Certifies that the strategy's reachability value is the minimum over all
// strategies, at every valuation satisfying the formula. States from which
// some strategy avoids the targets are made absorbing first; the strategy's
// per-state solution functions h/g then feed the cross-multiplied Bellman
// inequalities h_s * prod g / g_s <= sum P * h_s' * prod g / g_s' per row.
// Every g is normalized to be positive on the graph-preserving set and
// asserted positive, which keeps the cross-multiplication direction valid.
// The result mentions parameter variables only.
inline EtrPtr encode_strategy_minimality(const ParametricModel& m,
                                         const StrategyMD& strategy,
                                         const std::vector<std::string>& targets,
                                         RelOp relop) {
  etrdetail::validate_targets(m, targets);

  // Absorb the avoidable states (graph-preserving topology).
  qdetail::Compact g =
      qdetail::compile(m, targets, [](int, const Row&, const Transition&) {});
  {
    int e = 0;
    for (const auto& row : m.rows)
      for (const auto& t : row.out) {
        if (t.label.is_zero()) g.hide(e);
        ++e;
      }
  }
  qdetail::Work w;
  std::vector<char> zset;
  qdetail::zero_exists_set(g, w, zset, nullptr);

  ParametricModel sunk = m;
  sunk.rows.clear();
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    const std::string& s = m.states[i];
    std::vector<const Row*> rows = m.rows_of(s);
    if (zset[i]) {
      Row loop;
      loop.state = s;
      loop.action = rows.at(0)->action;
      loop.out.push_back({s, Polynomial::constant(1)});
      sunk.rows.push_back(std::move(loop));
      continue;
    }
    for (const Row* r : rows) sunk.rows.push_back(*r);
  }

  // Absorbed and single-action states take their only row; the caller's
  // choice matters exactly at the states that still offer a decision.
  StrategyMD pruned;
  for (const auto& s : sunk.states) {
    std::vector<const Row*> rows = sunk.rows_of(s);
    if (rows.size() == 1) {
      pruned.choice[s] = rows[0]->action;
    } else {
      auto it = strategy.choice.find(s);
      if (it != strategy.choice.end()) pruned.choice[s] = it->second;
    }
  }
  ParametricModel chain = sunk.mdp ? induced_pmc(sunk, pruned) : sunk;

  std::map<std::string, RationalFunction> per =
      per_state_solution_functions(chain, targets);

  // Fix the sign of every denominator at an interior sample point.
  std::size_t n = m.states.size();
  std::vector<Polynomial> h(n), gden(n);
  std::vector<Rational> samples = {rat(1, 2), rat(1, 3), rat(2, 5)};
  for (std::size_t i = 0; i < n; ++i) {
    auto it = per.find(m.states[i]);
    RationalFunction rf = it == per.end() ? RationalFunction() : it->second;
    Polynomial hi = rf.num, gi = rf.den;
    for (const Rational& c : samples) {
      Valuation val;
      for (const auto& p : m.params) val[p] = c;
      Rational at = gi.eval(val);
      if (at == 0) continue;
      if (at < 0) {
        hi = -hi;
        gi = -gi;
      }
      break;
    }
    h[i] = std::move(hi);
    gden[i] = std::move(gi);
  }

  // prod_{s'' != s} g_{s''} via prefix/suffix products.
  std::vector<Polynomial> pre(n + 1, Polynomial::constant(1));
  std::vector<Polynomial> suf(n + 1, Polynomial::constant(1));
  for (std::size_t i = 0; i < n; ++i)
    pre[i + 1] = etrdetail::capped_mul(pre[i], gden[i]);
  for (std::size_t i = n; i-- > 0;)
    suf[i] = etrdetail::capped_mul(suf[i + 1], gden[i]);
  std::vector<Polynomial> excl(n);
  for (std::size_t i = 0; i < n; ++i)
    excl[i] = etrdetail::capped_mul(pre[i], suf[i + 1]);

  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[m.states[i]] = i;

  std::vector<EtrPtr> parts;
  std::size_t init = index.at(m.init);
  parts.push_back(etr_atom(rat(2) * h[init], atom_op(relop), gden[init]));

  for (std::size_t i = 0; i < n; ++i) {
    const std::string& s = m.states[i];
    Polynomial lhs = etrdetail::capped_mul(h[i], excl[i]);
    for (const Row* row : sunk.rows_of(s)) {
      Polynomial rhs;
      for (const auto& t : row->out) {
        std::size_t j = index.at(t.to);
        rhs += etrdetail::capped_mul(t.label, etrdetail::capped_mul(h[j], excl[j]));
      }
      parts.push_back(etr_atom(lhs, AtomOp::Le, rhs));
    }
  }

  std::set<std::string> seen;
  for (std::size_t i = 0; i < n; ++i)
    if (seen.insert(gden[i].to_string()).second)
      parts.push_back(
          etr_atom(gden[i], AtomOp::Gt, Polynomial::constant(0)));

  parts.push_back(encode_gp(m));
  return etr_and(std::move(parts));
}

// --- request dispatcher ------------------------------------------------------

inline EtrPtr encode(const EncodingRequest& req) {
  if (req.style == EncodingStyle::SolutionFunction) {
    if (req.kind != ModelKind::Pmc || req.domain != ValueDomain::Gp)
      fail(ErrorKind::Semantic,
           "solution-function style requires a chain over the graph-preserving domain");
    return encode_pmc_solution_function(req.model, req.targets, req.relop);
  }
  if (req.kind == ModelKind::Pmc) return encode_pmc(req);
  return encode_pmdp(req);
}

// Exact re-verification of a parameter witness, independent of any solver.
inline bool check_witness(const ParametricModel& m,
                          const std::vector<std::string>& targets,
                          StrategyQuantifier quantifier, RelOp relop,
                          const Valuation& val,
                          const Rational& threshold = rat(1, 2)) {
  etrdetail::validate_targets(m, targets);
  ParametricModel scoped = m;
  scoped.targets = targets;
  return compare_at(scoped, val, quantifier, relop, threshold);
}

}  // namespace paramark
