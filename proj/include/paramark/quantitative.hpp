#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paramark/model.hpp"
#include "paramark/polynomial.hpp"
#include "paramark/qualitative.hpp"

namespace paramark {

// Comparison operators of threshold properties.
enum class RelOp { Lt, Le, Gt, Ge };

enum class Extremum { Min, Max };

inline bool relop_holds(const Rational& lhs, RelOp op, const Rational& rhs) {
  switch (op) {
    case RelOp::Lt: return lhs < rhs;
    case RelOp::Le: return lhs <= rhs;
    case RelOp::Gt: return lhs > rhs;
    case RelOp::Ge: return lhs >= rhs;
  }
  fail(ErrorKind::Internal, "bad relop");
}

inline std::string relop_name(RelOp op) {
  switch (op) {
    case RelOp::Lt: return "lt";
    case RelOp::Le: return "le";
    case RelOp::Gt: return "gt";
    case RelOp::Ge: return "ge";
  }
  fail(ErrorKind::Internal, "bad relop");
}

inline std::string relop_symbol(RelOp op) {
  switch (op) {
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
  }
  fail(ErrorKind::Internal, "bad relop");
}

inline RelOp relop_parse(const std::string& s) {
  if (s == "lt" || s == "<") return RelOp::Lt;
  if (s == "le" || s == "<=") return RelOp::Le;
  if (s == "gt" || s == ">") return RelOp::Gt;
  if (s == "ge" || s == ">=") return RelOp::Ge;
  fail(ErrorKind::Usage, "unknown comparison '" + s + "' (expected lt, le, gt or ge)");
}

// The extremum a strategy quantifier cares about for a given comparison:
// an existential strategy picks the value that makes the comparison easiest,
// a universal one is judged by the value that makes it hardest.
inline Extremum extremum_for(StrategyQuantifier quant, RelOp op) {
  bool upper = (op == RelOp::Gt || op == RelOp::Ge);
  bool exists = (quant == StrategyQuantifier::Exists);
  return (upper == exists) ? Extremum::Max : Extremum::Min;
}

// Reachability value of a pMC as a function of its parameters. Only claimed
// on graph-preserving valuations: there the denominator never vanishes and
// the value lies in [0,1]. Elsewhere evaluate the instantiation instead.
struct SolutionFunction {
  RationalFunction value;
  ValueDomain valid_domain = ValueDomain::Gp;
};

struct ExtremumResult {
  Rational value;                     // extremal value from the initial state
  StrategyMD strategy;                // a DM strategy attaining it
  std::vector<Rational> state_values; // final strategy's values, declaration order
};

// Intermediate rational functions larger than this many terms abort state
// elimination instead of exhausting memory.
inline std::size_t& elimination_term_cap() {
  static std::size_t cap = 20000;
  return cap;
}

namespace quantdetail {

// Compact graph plus one exact probability per edge.
struct NumericModel {
  qdetail::Compact g;
  std::vector<Rational> eprob;
};

inline NumericModel compile_numeric(const ConcreteModel& m,
                                    const std::vector<std::string>& targets) {
  NumericModel nm;
  nm.g = qdetail::compile(m, targets, [&nm](int, const CRow&, const CTransition& t) {
    nm.eprob.push_back(t.prob);
  });
  return nm;
}

// Exact reachability values of the Markov chain picked out by one row per
// state; choice[s] = -1 pins s to probability zero. States that cannot reach
// a target under the chosen rows are 0, targets are 1, and the remaining
// states form a non-singular linear system (no bottom SCC avoids the
// targets among them), solved fraction-free over integers with a rational
// back-substitution.
inline std::vector<Rational> chain_values(const NumericModel& nm, const std::vector<int>& choice) {
  const qdetail::Compact& g = nm.g;
  const int n = g.n;
  auto sz = [](int i) { return static_cast<std::size_t>(i); };

  std::vector<char> canreach(sz(n), 0);
  std::vector<int> queue;
  for (int s = 0; s < n; ++s)
    if (g.target[sz(s)]) {
      canreach[sz(s)] = 1;
      queue.push_back(s);
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    int t = queue[qi];
    for (int pe = g.pred_begin[sz(t)]; pe < g.pred_begin[sz(t) + 1]; ++pe) {
      int e = g.pred_edge[sz(pe)];
      int s = g.edge_from[sz(e)];
      if (canreach[sz(s)]) continue;
      if (g.edge_row[sz(e)] != choice[sz(s)]) continue;
      canreach[sz(s)] = 1;
      queue.push_back(s);
    }
  }

  std::vector<Rational> val(sz(n), Rational(0));
  for (int s = 0; s < n; ++s)
    if (g.target[sz(s)]) val[sz(s)] = 1;

  std::vector<int> unknown;
  std::vector<int> idx(sz(n), -1);
  for (int s = 0; s < n; ++s)
    if (canreach[sz(s)] && !g.target[sz(s)]) {
      idx[sz(s)] = static_cast<int>(unknown.size());
      unknown.push_back(s);
    }
  const int m = static_cast<int>(unknown.size());
  if (m == 0) return val;

  // Row for u: L*p_u - sum L*P(u,t)*p_t = sum over target t of L*P(u,t),
  // L the common denominator of u's row.
  std::vector<std::vector<Integer>> mat(sz(m), std::vector<Integer>(sz(m) + 1, Integer(0)));
  for (int i = 0; i < m; ++i) {
    int u = unknown[sz(i)];
    int r = choice[sz(u)];
    Integer den(1);
    for (int e = g.row_edge_begin[sz(r)]; e < g.row_edge_begin[sz(r) + 1]; ++e)
      den = lcm(den, nm.eprob[sz(e)].get_den());
    mat[sz(i)][sz(i)] = den;
    for (int e = g.row_edge_begin[sz(r)]; e < g.row_edge_begin[sz(r) + 1]; ++e) {
      int t = g.edge_to[sz(e)];
      Integer q = nm.eprob[sz(e)].get_num() * (den / nm.eprob[sz(e)].get_den());
      if (t == u)
        mat[sz(i)][sz(i)] -= q;
      else if (idx[sz(t)] >= 0)
        mat[sz(i)][sz(idx[sz(t)])] -= q;
      else if (g.target[sz(t)])
        mat[sz(i)][sz(m)] += q;
    }
  }

  // Fraction-free elimination: every division by the previous pivot is exact.
  Integer prev(1);
  for (int k = 0; k < m; ++k) {
    int piv = -1;
    for (int r = k; r < m; ++r)
      if (mat[sz(r)][sz(k)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) fail(ErrorKind::Internal, "singular reachability system");
    if (piv != k) std::swap(mat[sz(piv)], mat[sz(k)]);
    for (int r = k + 1; r < m; ++r) {
      for (int c = k + 1; c <= m; ++c)
        mat[sz(r)][sz(c)] =
            (mat[sz(r)][sz(c)] * mat[sz(k)][sz(k)] - mat[sz(r)][sz(k)] * mat[sz(k)][sz(c)]) / prev;
      mat[sz(r)][sz(k)] = 0;
    }
    prev = mat[sz(k)][sz(k)];
  }

  for (int i = m - 1; i >= 0; --i) {
    Rational acc(mat[sz(i)][sz(m)]);
    for (int j = i + 1; j < m; ++j)
      acc -= Rational(mat[sz(i)][sz(j)]) * val[sz(unknown[sz(j)])];
    val[sz(unknown[sz(i)])] = acc / Rational(mat[sz(i)][sz(i)]);
  }
  return val;
}

inline Rational row_q(const NumericModel& nm, int r, const std::vector<Rational>& val) {
  auto sz = [](int i) { return static_cast<std::size_t>(i); };
  Rational q(0);
  for (int e = nm.g.row_edge_begin[sz(r)]; e < nm.g.row_edge_begin[sz(r) + 1]; ++e)
    q += nm.eprob[sz(e)] * val[sz(nm.g.edge_to[sz(e)])];
  return q;
}

// Single row per state, or -1 when the state has none.
inline std::vector<int> single_rows(const NumericModel& nm, const ConcreteModel& m) {
  auto sz = [](int i) { return static_cast<std::size_t>(i); };
  std::vector<int> choice(sz(nm.g.n), -1);
  for (int s = 0; s < nm.g.n; ++s) {
    int lo = nm.g.state_row_begin[sz(s)], hi = nm.g.state_row_begin[sz(s) + 1];
    if (hi - lo > 1)
      fail(ErrorKind::NotPmc,
           "state '" + m.states[sz(s)] + "' has " + std::to_string(hi - lo) +
               " action rows; expected a Markov chain");
    if (hi > lo) choice[sz(s)] = lo;
  }
  return choice;
}

}  // namespace quantdetail

inline std::vector<Rational> mc_reach_exact_values(const ConcreteModel& m,
                                                   const std::vector<std::string>& targets) {
  quantdetail::NumericModel nm = quantdetail::compile_numeric(m, targets);
  return quantdetail::chain_values(nm, quantdetail::single_rows(nm, m));
}

inline Rational mc_reach_exact(const ConcreteModel& m, const std::vector<std::string>& targets) {
  quantdetail::NumericModel nm = quantdetail::compile_numeric(m, targets);
  std::vector<Rational> val = quantdetail::chain_values(nm, quantdetail::single_rows(nm, m));
  return val[static_cast<std::size_t>(nm.g.init)];
}

// Extremal reachability by exhaustive strategy enumeration; the kept strategy
// is the first attaining one in odometer order (last state cycles fastest).
inline ExtremumResult mdp_reach_extremum_enumerated(const ConcreteModel& m,
                                                    const std::vector<std::string>& targets,
                                                    Extremum mode) {
  if (m.states.size() > 12)
    fail(ErrorKind::LimitExceeded, "strategy enumeration is limited to 12 states, model has " +
                                       std::to_string(m.states.size()));
  auto sz = [](int i) { return static_cast<std::size_t>(i); };
  quantdetail::NumericModel nm = quantdetail::compile_numeric(m, targets);
  const qdetail::Compact& g = nm.g;
  const int n = g.n;
  std::vector<int> pick(sz(n), -1);
  for (int s = 0; s < n; ++s)
    if (g.state_row_begin[sz(s)] < g.state_row_begin[sz(s) + 1])
      pick[sz(s)] = g.state_row_begin[sz(s)];

  bool have = false;
  Rational best;
  std::vector<int> best_pick;
  std::vector<Rational> best_val;
  for (;;) {
    std::vector<Rational> val = quantdetail::chain_values(nm, pick);
    Rational v = val[sz(g.init)];
    if (!have || (mode == Extremum::Max ? v > best : v < best)) {
      have = true;
      best = v;
      best_pick = pick;
      best_val = std::move(val);
    }
    int s = n - 1;
    for (; s >= 0; --s) {
      if (pick[sz(s)] < 0) continue;
      if (pick[sz(s)] + 1 < g.state_row_begin[sz(s) + 1]) {
        ++pick[sz(s)];
        break;
      }
      pick[sz(s)] = g.state_row_begin[sz(s)];
    }
    if (s < 0) break;
  }

  ExtremumResult res;
  res.value = best;
  res.state_values = std::move(best_val);
  for (int s = 0; s < n; ++s)
    if (best_pick[sz(s)] >= 0)
      res.strategy.choice[m.states[sz(s)]] = g.row_action[sz(best_pick[sz(s)])];
  return res;
}

// Exact policy iteration over DM strategies. Starts from the lexicographically
// first strategy; each round evaluates the induced chain exactly and switches
// every state to its lexicographically smallest strictly improving row.
// For Min the states from which some strategy avoids the targets are pinned
// to 0 up front with an avoiding row; without that, iteration can stall on a
// non-minimal fixed point whose value cycles through such states.
inline ExtremumResult mdp_reach_extremum_exact(const ConcreteModel& m,
                                               const std::vector<std::string>& targets,
                                               Extremum mode, bool self_check = false) {
  auto sz = [](int i) { return static_cast<std::size_t>(i); };
  quantdetail::NumericModel nm = quantdetail::compile_numeric(m, targets);
  const qdetail::Compact& g = nm.g;
  const int n = g.n;

  std::vector<char> pinned(sz(n), 0);
  std::vector<int> choice(sz(n), -1);
  if (mode == Extremum::Min) {
    qdetail::Work w;
    std::vector<char> zset;
    std::vector<int> zact;
    qdetail::zero_exists_set(g, w, zset, &zact);
    for (int s = 0; s < n; ++s)
      if (zset[sz(s)]) {
        pinned[sz(s)] = 1;
        choice[sz(s)] = zact[sz(s)];
      }
  }
  for (int s = 0; s < n; ++s)
    if (!pinned[sz(s)] && g.state_row_begin[sz(s)] < g.state_row_begin[sz(s) + 1])
      choice[sz(s)] = g.state_row_begin[sz(s)];

  std::vector<Rational> val;
  for (;;) {
    std::vector<int> eval_choice = choice;
    for (int s = 0; s < n; ++s)
      if (pinned[sz(s)]) eval_choice[sz(s)] = -1;
    val = quantdetail::chain_values(nm, eval_choice);
    bool changed = false;
    for (int s = 0; s < n; ++s) {
      if (pinned[sz(s)] || g.target[sz(s)] || choice[sz(s)] < 0) continue;
      for (int r = g.state_row_begin[sz(s)]; r < g.state_row_begin[sz(s) + 1]; ++r) {
        if (r == choice[sz(s)]) continue;
        Rational q = quantdetail::row_q(nm, r, val);
        bool better = mode == Extremum::Max ? q > val[sz(s)] : q < val[sz(s)];
        if (better) {
          choice[sz(s)] = r;
          changed = true;
          break;
        }
      }
    }
    if (!changed) break;
  }

  ExtremumResult res;
  res.value = val[sz(g.init)];
  res.state_values = std::move(val);
  for (int s = 0; s < n; ++s)
    if (choice[sz(s)] >= 0)
      res.strategy.choice[m.states[sz(s)]] = g.row_action[sz(choice[sz(s)])];

  if (self_check && m.states.size() <= 12) {
    ExtremumResult ref = mdp_reach_extremum_enumerated(m, targets, mode);
    if (ref.value != res.value)
      fail(ErrorKind::Internal, "policy iteration disagrees with strategy enumeration: " +
                                    rat_str(res.value) + " vs " + rat_str(ref.value));
  }
  return res;
}

// --- solution functions by state elimination --------------------------------

enum class EliminationOrder { AdaptiveDegree, DeclarationOrder };

namespace quantdetail {

template <typename F>
inline RationalFunction elim_arith(F&& op) {
  try {
    RationalFunction r = op();
    if (r.num.term_count() > elimination_term_cap() ||
        r.den.term_count() > elimination_term_cap())
      fail(ErrorKind::EliminationBlowup,
           "rational function exceeded " + std::to_string(elimination_term_cap()) +
               " terms during state elimination");
    return r;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ExponentOverflow)
      fail(ErrorKind::EliminationBlowup, "exponent cap exceeded during state elimination");
    throw;
  }
}

// Mutable weighted graph for state elimination. zero marks states that cannot
// reach a target with all transitions present; edges into them are dropped so
// their contribution (probability 0) never enters a weight.
struct Elim {
  int n = 0;
  int init = 0;
  std::vector<std::string> names;
  std::vector<char> target, zero;
  std::vector<std::map<int, RationalFunction>> out;
  std::vector<std::set<int>> preds;
};

inline Elim build_elim(const ParametricModel& m, const std::vector<std::string>& targets) {
  if (m.mdp) fail(ErrorKind::NotPmc, "solution functions require a single-action model");
  auto sz = [](int i) { return static_cast<std::size_t>(i); };
  Elim el;
  el.n = static_cast<int>(m.states.size());
  el.names = m.states;
  std::map<std::string, int> pos;
  for (int i = 0; i < el.n; ++i) pos[el.names[sz(i)]] = i;
  auto ii = pos.find(m.init);
  if (ii == pos.end()) fail(ErrorKind::Semantic, "initial state not declared");
  el.init = ii->second;
  el.target.assign(sz(el.n), 0);
  for (const auto& t : targets) {
    auto ti = pos.find(t);
    if (ti == pos.end()) fail(ErrorKind::Semantic, "target state '" + t + "' not declared");
    el.target[sz(ti->second)] = 1;
  }

  std::vector<std::vector<int>> rpred(sz(el.n));
  for (const auto& r : m.rows) {
    int s = pos.at(r.state);
    for (const auto& tr : r.out) rpred[sz(pos.at(tr.to))].push_back(s);
  }
  std::vector<char> canreach(sz(el.n), 0);
  std::vector<int> queue;
  for (int s = 0; s < el.n; ++s)
    if (el.target[sz(s)]) {
      canreach[sz(s)] = 1;
      queue.push_back(s);
    }
  for (std::size_t qi = 0; qi < queue.size(); ++qi)
    for (int s : rpred[sz(queue[qi])])
      if (!canreach[sz(s)]) {
        canreach[sz(s)] = 1;
        queue.push_back(s);
      }
  el.zero.assign(sz(el.n), 0);
  for (int s = 0; s < el.n; ++s) el.zero[sz(s)] = !canreach[sz(s)];

  el.out.assign(sz(el.n), {});
  el.preds.assign(sz(el.n), {});
  for (const auto& r : m.rows) {
    int s = pos.at(r.state);
    if (el.target[sz(s)] || el.zero[sz(s)]) continue;
    for (const auto& tr : r.out) {
      int t = pos.at(tr.to);
      if (el.zero[sz(t)]) continue;
      RationalFunction w = RationalFunction::from_poly(tr.label);
      auto it = el.out[sz(s)].find(t);
      if (it == el.out[sz(s)].end())
        el.out[sz(s)].emplace(t, std::move(w));
      else
        it->second = elim_arith([&] { return it->second + w; });
      el.preds[sz(t)].insert(s);
    }
  }
  return el;
}

struct ElimRecord {
  int state;
  std::vector<std::pair<int, RationalFunction>> row;  // renormalized, self-free
};

inline void eliminate_state(Elim& el, int s, std::vector<ElimRecord>* record) {
  auto sz = [](int i) { return static_cast<std::size_t>(i); };
  auto self = el.out[sz(s)].find(s);
  if (self != el.out[sz(s)].end()) {
    RationalFunction one = RationalFunction::from_rational(rat(1));
    RationalFunction stay = elim_arith([&] { return one - self->second; });
    if (stay.num.is_zero())
      fail(ErrorKind::NotWellDefined,
           "state '" + el.names[sz(s)] + "' has self-loop weight identically 1");
    RationalFunction renorm = elim_arith([&] { return one / stay; });
    el.out[sz(s)].erase(self);
    el.preds[sz(s)].erase(s);
    for (auto& [t, w] : el.out[sz(s)]) {
      (void)t;
      w = elim_arith([&] { return w * renorm; });
    }
  }
  if (record) record->push_back({s, {el.out[sz(s)].begin(), el.out[sz(s)].end()}});
  for (int u : el.preds[sz(s)]) {
    auto fe = el.out[sz(u)].find(s);
    RationalFunction f = std::move(fe->second);
    el.out[sz(u)].erase(fe);
    for (const auto& [t, w] : el.out[sz(s)]) {
      auto it = el.out[sz(u)].find(t);
      if (it == el.out[sz(u)].end()) {
        el.out[sz(u)].emplace(t, elim_arith([&] { return f * w; }));
        el.preds[sz(t)].insert(u);
      } else {
        it->second = elim_arith([&] { return it->second + f * w; });
      }
    }
  }
  for (const auto& [t, w] : el.out[sz(s)]) {
    (void)w;
    el.preds[sz(t)].erase(s);
  }
  el.out[sz(s)].clear();
  el.preds[sz(s)].clear();
}

inline int pick_state(const Elim& el, const std::vector<char>& left, EliminationOrder order) {
  auto sz = [](int i) { return static_cast<std::size_t>(i); };
  int best = -1;
  long long best_score = 0;
  for (int s = 0; s < el.n; ++s) {
    if (!left[sz(s)]) continue;
    if (order == EliminationOrder::DeclarationOrder) return s;
    long long ind = static_cast<long long>(el.preds[sz(s)].size()) -
                    static_cast<long long>(el.preds[sz(s)].count(s));
    long long outd = static_cast<long long>(el.out[sz(s)].size()) -
                     static_cast<long long>(el.out[sz(s)].count(s));
    long long score = ind * outd;
    if (best < 0 || score < best_score) {
      best = s;
      best_score = score;
    }
  }
  return best;
}

struct ElimOutcome {
  Elim el;
  std::vector<ElimRecord> record;
  RationalFunction init_value;
};

inline ElimOutcome run_elimination(const ParametricModel& m,
                                   const std::vector<std::string>& targets,
                                   EliminationOrder order, bool want_record) {
  auto sz = [](int i) { return static_cast<std::size_t>(i); };
  ElimOutcome oc;
  oc.el = build_elim(m, targets);
  Elim& el = oc.el;
  std::vector<char> left(sz(el.n), 0);
  int remaining = 0;
  for (int s = 0; s < el.n; ++s)
    if (s != el.init && !el.target[sz(s)] && !el.zero[sz(s)]) {
      left[sz(s)] = 1;
      ++remaining;
    }
  while (remaining > 0) {
    int s = pick_state(el, left, order);
    left[sz(s)] = 0;
    --remaining;
    eliminate_state(el, s, want_record ? &oc.record : nullptr);
  }

  if (el.target[sz(el.init)]) {
    oc.init_value = RationalFunction::from_rational(rat(1));
    return oc;
  }
  if (el.zero[sz(el.init)]) return oc;  // zero-initialized value

  // Only targets and a possible self-loop remain on the initial state.
  RationalFunction one = RationalFunction::from_rational(rat(1));
  RationalFunction stay = one;
  auto self = el.out[sz(el.init)].find(el.init);
  if (self != el.out[sz(el.init)].end()) {
    stay = elim_arith([&] { return one - self->second; });
    if (stay.num.is_zero())
      fail(ErrorKind::NotWellDefined,
           "state '" + el.names[sz(el.init)] + "' has self-loop weight identically 1");
  }
  RationalFunction total;
  for (const auto& [t, w] : el.out[sz(el.init)])
    if (el.target[sz(t)]) total = elim_arith([&] { return total + w; });
  oc.init_value = elim_arith([&] { return total / stay; });
  return oc;
}

}  // namespace quantdetail

inline SolutionFunction solution_function(
    const ParametricModel& m, const std::vector<std::string>& targets,
    EliminationOrder order = EliminationOrder::AdaptiveDegree) {
  quantdetail::ElimOutcome oc = quantdetail::run_elimination(m, targets, order, false);
  return SolutionFunction{std::move(oc.init_value), ValueDomain::Gp};
}

inline std::map<std::string, RationalFunction> per_state_solution_functions(
    const ParametricModel& m, const std::vector<std::string>& targets,
    EliminationOrder order = EliminationOrder::AdaptiveDegree) {
  auto sz = [](int i) { return static_cast<std::size_t>(i); };
  quantdetail::ElimOutcome oc = quantdetail::run_elimination(m, targets, order, true);
  const quantdetail::Elim& el = oc.el;
  std::vector<RationalFunction> val(sz(el.n));
  for (int s = 0; s < el.n; ++s)
    if (el.target[sz(s)]) val[sz(s)] = RationalFunction::from_rational(rat(1));
  val[sz(el.init)] = oc.init_value;
  // Recorded rows only mention later-eliminated states, the initial state,
  // and targets, so a reverse sweep has every needed value at hand.
  for (auto it = oc.record.rbegin(); it != oc.record.rend(); ++it) {
    RationalFunction acc;
    for (const auto& [t, w] : it->row)
      acc = quantdetail::elim_arith([&] { return acc + w * val[sz(t)]; });
    val[sz(it->state)] = std::move(acc);
  }
  std::map<std::string, RationalFunction> res;
  for (int s = 0; s < el.n; ++s) res[el.names[sz(s)]] = std::move(val[sz(s)]);
  return res;
}

// Evaluate a solution function at a graph-preserving valuation of the model
// it was computed from. The identity with the reachability probability is
// only claimed there; other well-defined valuations must instantiate and
// solve the concrete chain instead.
inline Rational solution_eval(const SolutionFunction& f, const ParametricModel& m,
                              const Valuation& val) {
  ClassifyResult cls = classify_valuation(m, val);
  if (!cls.graph_preserving)
    fail(ErrorKind::InvalidValuation,
         "solution functions are only valid on graph-preserving valuations");
  return f.value.eval(val);
}

// Does the instantiated model satisfy "reach-probability relop threshold"?
inline bool compare_at(const ParametricModel& m, const Valuation& val,
                       StrategyQuantifier quant, RelOp op, const Rational& threshold) {
  ConcreteModel c = instantiate(m, val);
  Rational v;
  if (c.mdp)
    v = mdp_reach_extremum_exact(c, c.targets, extremum_for(quant, op)).value;
  else
    v = mc_reach_exact(c, c.targets);
  return relop_holds(v, op, threshold);
}

}  // namespace paramark
