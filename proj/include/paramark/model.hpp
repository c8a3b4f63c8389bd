#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paramark/polynomial.hpp"

namespace paramark {

// pMC rows carry this pseudo-action; pMDP rows carry real action names.
inline const std::string kNoAction = "";

struct Transition {
  std::string to;
  Polynomial label;
};

struct Row {
  std::string state;
  std::string action;
  std::vector<Transition> out;
};

struct TransitionRef {
  std::string state, action, to;
  bool operator==(const TransitionRef&) const = default;
  bool operator<(const TransitionRef& o) const {
    return std::tie(state, action, to) < std::tie(o.state, o.action, o.to);
  }
};

// States, parameters, and rows keep declaration order; every algorithm and
// printer iterates in that order so output is reproducible.
struct ParametricModel {
  bool mdp = false;
  std::vector<std::string> states;
  std::vector<std::string> params;
  std::string init;
  std::vector<std::string> targets;
  std::vector<Row> rows;

  bool has_state(const std::string& s) const {
    return std::find(states.begin(), states.end(), s) != states.end();
  }

  bool has_param(const std::string& p) const {
    return std::find(params.begin(), params.end(), p) != params.end();
  }

  bool is_target(const std::string& s) const {
    return std::find(targets.begin(), targets.end(), s) != targets.end();
  }

  std::vector<const Row*> rows_of(const std::string& s) const {
    std::vector<const Row*> out;
    for (const auto& r : rows)
      if (r.state == s) out.push_back(&r);
    return out;
  }

  const Row* row(const std::string& s, const std::string& a) const {
    for (const auto& r : rows)
      if (r.state == s && r.action == a) return &r;
    return nullptr;
  }

  std::vector<std::string> actions_of(const std::string& s) const {
    std::vector<std::string> out;
    for (const auto& r : rows)
      if (r.state == s) out.push_back(r.action);
    return out;
  }
};

struct CTransition {
  std::string to;
  Rational prob;
};

struct CRow {
  std::string state;
  std::string action;
  std::vector<CTransition> out;
};

struct ConcreteModel {
  bool mdp = false;
  std::vector<std::string> states;
  std::string init;
  std::vector<std::string> targets;
  std::vector<CRow> rows;

  bool is_target(const std::string& s) const {
    return std::find(targets.begin(), targets.end(), s) != targets.end();
  }

  std::vector<const CRow*> rows_of(const std::string& s) const {
    std::vector<const CRow*> out;
    for (const auto& r : rows)
      if (r.state == s) out.push_back(&r);
    return out;
  }

  const CRow* row(const std::string& s, const std::string& a) const {
    for (const auto& r : rows)
      if (r.state == s && r.action == a) return &r;
    return nullptr;
  }
};

struct StrategyMD {
  std::map<std::string, std::string> choice;
};

// --- validate --------------------------------------------------------------

struct Violation {
  std::string code;     // e.g. NoAction, ZeroLabel, DuplicateSuccessor
  std::string where;    // state / state,action / name the code refers to
  std::string message;
};

inline std::vector<Violation> validate(const ParametricModel& m) {
  std::vector<Violation> out;
  auto add = [&](std::string code, std::string where, std::string msg) {
    out.push_back({std::move(code), std::move(where), std::move(msg)});
  };

  if (m.states.empty()) add("NoStates", "", "model has no states");
  {
    std::set<std::string> seen;
    for (const auto& s : m.states)
      if (!seen.insert(s).second) add("DuplicateState", s, "state declared twice");
  }
  {
    std::set<std::string> seen;
    for (const auto& p : m.params)
      if (!seen.insert(p).second) add("DuplicateParameter", p, "parameter declared twice");
  }
  if (!m.has_state(m.init)) add("UnknownInit", m.init, "initial state not declared");
  for (const auto& t : m.targets)
    if (!m.has_state(t)) add("UnknownTarget", t, "target state not declared");

  std::set<std::pair<std::string, std::string>> row_keys;
  for (const auto& r : m.rows) {
    std::string where = r.action.empty() ? r.state : r.state + "," + r.action;
    if (!m.has_state(r.state)) add("UnknownState", r.state, "row for undeclared state");
    if (m.mdp && r.action.empty())
      add("MissingAction", r.state, "action-labelled model has an unlabelled row");
    if (!m.mdp && !r.action.empty())
      add("UnexpectedAction", where, "single-action model has an action-labelled row");
    if (!row_keys.insert({r.state, r.action}).second)
      add("DuplicateRow", where, "duplicate (state, action) row");
    if (r.out.empty()) add("EmptyRow", where, "row has no successors");
    std::set<std::string> succs;
    for (const auto& t : r.out) {
      if (!m.has_state(t.to)) add("UnknownState", t.to, "successor state not declared");
      if (!succs.insert(t.to).second)
        add("DuplicateSuccessor", where + "," + t.to, "successor listed twice");
      if (t.label.is_zero())
        add("ZeroLabel", where + "," + t.to, "zero label means absent transition");
      for (const auto& v : t.label.vars())
        if (!m.has_param(v))
          add("UnknownParameter", v, "label uses undeclared parameter");
    }
  }

  for (const auto& s : m.states)
    if (m.rows_of(s).empty()) add("NoAction", s, "state has no available action");

  return out;
}

// --- is_simple ---------------------------------------------------------------

// Label of the shape x or 1-x; returns the parameter name.
inline std::optional<std::string> simple_param_of(const Polynomial& label,
                                                  bool* complemented = nullptr) {
  auto vs = label.vars();
  if (vs.size() != 1) return std::nullopt;
  const std::string& x = *vs.begin();
  if (label == Polynomial::variable(x)) {
    if (complemented) *complemented = false;
    return x;
  }
  if (label == Polynomial::constant(1) - Polynomial::variable(x)) {
    if (complemented) *complemented = true;
    return x;
  }
  return std::nullopt;
}

inline bool is_simple(const ParametricModel& m) {
  for (const auto& r : m.rows) {
    Polynomial sum;
    for (const auto& t : r.out) {
      if (t.label.is_constant()) {
        if (t.label.constant_value() < 0) return false;
      } else if (!simple_param_of(t.label)) {
        return false;
      }
      sum += t.label;
    }
    if (!(sum == Polynomial::constant(1))) return false;
  }
  return true;
}

// --- classify_valuation ------------------------------------------------------

enum class ValuationClass { NotWellDefined, WellDefined, Boolean, GraphPreserving };

struct ClassifyResult {
  ValuationClass cls = ValuationClass::NotWellDefined;
  bool well_defined = false;
  bool graph_preserving = false;
  bool boolean_val = false;
  std::vector<TransitionRef> vanish;  // declaration order
  std::string reason;                 // set when not well-defined
};

inline ClassifyResult classify_valuation(const ParametricModel& m, const Valuation& val) {
  for (const auto& p : m.params)
    if (!val.count(p))
      fail(ErrorKind::MissingParameter, "valuation misses parameter '" + p + "'");

  ClassifyResult res;
  for (const auto& r : m.rows) {
    Rational sum = 0;
    for (const auto& t : r.out) {
      Rational v = t.label.eval(val);
      if (v < 0) {
        res.reason = "negative probability on " + r.state +
                     (r.action.empty() ? "" : "[" + r.action + "]") + " -> " + t.to;
        return res;
      }
      if (v == 0) res.vanish.push_back({r.state, r.action, t.to});
      sum += v;
    }
    if (sum != 1) {
      res.reason = "row of " + r.state +
                   (r.action.empty() ? "" : "[" + r.action + "]") +
                   " sums to " + rat_str(sum) + ", not 1";
      res.vanish.clear();
      return res;
    }
  }

  res.well_defined = true;
  res.graph_preserving = res.vanish.empty();
  res.boolean_val = true;
  for (const auto& p : m.params) {
    const Rational& v = val.at(p);
    if (v != 0 && v != 1) {
      res.boolean_val = false;
      break;
    }
  }
  res.cls = res.graph_preserving ? ValuationClass::GraphPreserving
            : res.boolean_val    ? ValuationClass::Boolean
                                 : ValuationClass::WellDefined;
  return res;
}

// --- instantiate -------------------------------------------------------------

inline ConcreteModel instantiate(const ParametricModel& m, const Valuation& val) {
  ClassifyResult c = classify_valuation(m, val);
  if (!c.well_defined)
    fail(ErrorKind::NotWellDefined, "valuation is not well-defined: " + c.reason);
  ConcreteModel out;
  out.mdp = m.mdp;
  out.states = m.states;
  out.init = m.init;
  out.targets = m.targets;
  for (const auto& r : m.rows) {
    CRow cr{r.state, r.action, {}};
    for (const auto& t : r.out) {
      Rational v = t.label.eval(val);
      if (v != 0) cr.out.push_back({t.to, v});
    }
    out.rows.push_back(std::move(cr));
  }
  return out;
}

// --- strategies ----------------------------------------------------------------

inline void check_strategy(const ParametricModel& m, const StrategyMD& sigma) {
  for (const auto& s : m.states) {
    auto it = sigma.choice.find(s);
    if (it == sigma.choice.end())
      fail(ErrorKind::InvalidStrategy, "strategy undefined at state '" + s + "'");
    if (!m.row(s, it->second))
      fail(ErrorKind::InvalidStrategy,
           "strategy picks unavailable action '" + it->second + "' at '" + s + "'");
  }
}

inline ParametricModel induced_pmc(const ParametricModel& m, const StrategyMD& sigma) {
  check_strategy(m, sigma);
  ParametricModel out;
  out.mdp = false;
  out.states = m.states;
  out.params = m.params;
  out.init = m.init;
  out.targets = m.targets;
  for (const auto& s : m.states) {
    const Row* r = m.row(s, sigma.choice.at(s));
    out.rows.push_back({s, kNoAction, r->out});
  }
  return out;
}

// Calls fn for every DM strategy in lexicographic order (state declaration
// order; per-state action declaration order). fn returning false stops.
template <typename Fn>
inline void for_each_strategy(const ParametricModel& m, Fn&& fn) {
  std::vector<std::vector<std::string>> acts;
  for (const auto& s : m.states) {
    acts.push_back(m.actions_of(s));
    if (acts.back().empty())
      fail(ErrorKind::Internal, "state '" + s + "' has no actions");
  }
  std::vector<std::size_t> idx(m.states.size(), 0);
  while (true) {
    StrategyMD sigma;
    for (std::size_t i = 0; i < m.states.size(); ++i)
      sigma.choice[m.states[i]] = acts[i][idx[i]];
    if (!fn(sigma)) return;
    // Odometer with the last state stepping fastest keeps the sequence
    // lexicographic in (state, action) declaration order.
    std::size_t i = m.states.size();
    while (i > 0) {
      --i;
      if (++idx[i] < acts[i].size()) break;
      idx[i] = 0;
      if (i == 0) return;
    }
    if (m.states.empty()) return;
  }
}

inline std::vector<StrategyMD> enumerate_strategies(const ParametricModel& m) {
  std::vector<StrategyMD> out;
  for_each_strategy(m, [&](const StrategyMD& s) {
    out.push_back(s);
    return true;
  });
  return out;
}

// --- underlying graph ----------------------------------------------------------

// Edge (s, s') iff some action carries a non-zero label from s to s'.
// Deterministic order: by source then target declaration index.
inline std::vector<std::pair<std::string, std::string>> underlying_graph(
    const ParametricModel& m) {
  std::map<std::string, int> pos;
  for (std::size_t i = 0; i < m.states.size(); ++i) pos[m.states[i]] = static_cast<int>(i);
  std::set<std::pair<int, int>> edges;
  for (const auto& r : m.rows)
    for (const auto& t : r.out)
      if (!t.label.is_zero()) edges.insert({pos.at(r.state), pos.at(t.to)});
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : edges) out.push_back({m.states[a], m.states[b]});
  return out;
}

inline std::vector<std::pair<std::string, std::string>> underlying_graph(
    const ConcreteModel& m) {
  std::map<std::string, int> pos;
  for (std::size_t i = 0; i < m.states.size(); ++i) pos[m.states[i]] = static_cast<int>(i);
  std::set<std::pair<int, int>> edges;
  for (const auto& r : m.rows)
    for (const auto& t : r.out)
      if (t.prob != 0) edges.insert({pos.at(r.state), pos.at(t.to)});
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : edges) out.push_back({m.states[a], m.states[b]});
  return out;
}

}  // namespace paramark
