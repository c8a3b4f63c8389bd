#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "paramark/model.hpp"

namespace paramark {

enum class QualKind { Positive, Unsure, Safety, AlmostSure };
enum class StrategyQuantifier { Exists, Forall };
enum class ValueDomain { Wd, Gp, Boolean };

struct QualProblem {
  QualKind kind = QualKind::Positive;
  StrategyQuantifier quantifier = StrategyQuantifier::Exists;  // ignored for pMCs
  ValueDomain domain = ValueDomain::Wd;
};

struct StateSetReport {
  std::vector<std::string> zero_exists, zero_forall, one_exists, one_forall;
};

struct PartitionClass {
  Valuation representative;
  std::vector<TransitionRef> vanish;
};

struct QualDecision {
  bool answer = false;
  std::optional<Valuation> witness;
  std::optional<StrategyMD> strategy_witness;
};

// Valuation-class enumeration is exponential in the parameter count; the cap
// keeps that blowup explicit and adjustable.
inline std::size_t& qualitative_param_cap() {
  static std::size_t cap = 12;
  return cap;
}

namespace qdetail {

// Integer-indexed model view. Rows are contiguous per state; transitions can
// be hidden per valuation class via a version stamp, so re-instantiating the
// graph for the next class costs only the edges that vanish.
struct Compact {
  int n = 0;
  int init = 0;
  std::vector<char> target;
  std::vector<int> state_row_begin;  // n+1
  std::vector<std::string> row_action;
  std::vector<int> row_edge_begin;  // rows+1
  std::vector<int> edge_to, edge_from, edge_row;
  std::vector<int> pred_begin;  // n+1, incoming edge ids per state
  std::vector<int> pred_edge;
  std::vector<unsigned> stamp;
  unsigned cur = 1;

  int rows() const { return static_cast<int>(row_action.size()); }
  int edges() const { return static_cast<int>(edge_to.size()); }
  bool present(int e) const { return stamp[static_cast<std::size_t>(e)] != cur; }
  void hide(int e) { stamp[static_cast<std::size_t>(e)] = cur; }
  void all_present() {
    if (++cur == 0) {
      std::fill(stamp.begin(), stamp.end(), 0u);
      cur = 1;
    }
  }

  void build_pred_index() {
    pred_begin.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int t : edge_to) ++pred_begin[static_cast<std::size_t>(t) + 1];
    for (int s = 0; s < n; ++s)
      pred_begin[static_cast<std::size_t>(s) + 1] += pred_begin[static_cast<std::size_t>(s)];
    pred_edge.assign(edge_to.size(), 0);
    std::vector<int> fill(pred_begin.begin(), pred_begin.end() - 1);
    for (int e = 0; e < edges(); ++e)
      pred_edge[static_cast<std::size_t>(
          fill[static_cast<std::size_t>(edge_to[static_cast<std::size_t>(e)])]++)] = e;
  }
};

struct Work {
  std::vector<int> queue;
  std::vector<char> mark, zset, wset;
  std::vector<int> row_bad, rows_left, act;
};

template <typename Model, typename PerEdge>
inline Compact compile(const Model& m, const std::vector<std::string>& targets,
                       PerEdge&& per_edge) {
  Compact g;
  g.n = static_cast<int>(m.states.size());
  std::map<std::string, int> pos;
  for (int i = 0; i < g.n; ++i) pos[m.states[static_cast<std::size_t>(i)]] = i;
  auto it = pos.find(m.init);
  if (it == pos.end()) fail(ErrorKind::Internal, "initial state not declared");
  g.init = it->second;
  g.target.assign(static_cast<std::size_t>(g.n), 0);
  for (const auto& t : targets) {
    auto ti = pos.find(t);
    if (ti == pos.end()) fail(ErrorKind::Internal, "target state '" + t + "' not declared");
    g.target[static_cast<std::size_t>(ti->second)] = 1;
  }
  g.state_row_begin.assign(static_cast<std::size_t>(g.n) + 1, 0);
  for (int s = 0; s < g.n; ++s) {
    g.state_row_begin[static_cast<std::size_t>(s)] = g.rows();
    for (const auto* r : m.rows_of(m.states[static_cast<std::size_t>(s)])) {
      int row = g.rows();
      g.row_action.push_back(r->action);
      g.row_edge_begin.push_back(g.edges());
      for (const auto& t : r->out) {
        per_edge(g.edges(), *r, t);
        g.edge_to.push_back(pos.at(t.to));
        g.edge_from.push_back(s);
        g.edge_row.push_back(row);
      }
    }
  }
  g.state_row_begin[static_cast<std::size_t>(g.n)] = g.rows();
  g.row_edge_begin.push_back(g.edges());
  g.stamp.assign(static_cast<std::size_t>(g.edges()), 0);
  g.build_pred_index();
  return g;
}

// --- graph fixpoints (presence given by the stamps) --------------------------

// Some present path init -> target.
inline bool reach_pos(const Compact& g, Work& w) {
  if (g.target[static_cast<std::size_t>(g.init)]) return true;
  w.mark.assign(static_cast<std::size_t>(g.n), 0);
  w.queue.clear();
  w.queue.push_back(g.init);
  w.mark[static_cast<std::size_t>(g.init)] = 1;
  for (std::size_t qi = 0; qi < w.queue.size(); ++qi) {
    int s = w.queue[qi];
    for (int r = g.state_row_begin[static_cast<std::size_t>(s)];
         r < g.state_row_begin[static_cast<std::size_t>(s) + 1]; ++r)
      for (int e = g.row_edge_begin[static_cast<std::size_t>(r)];
           e < g.row_edge_begin[static_cast<std::size_t>(r) + 1]; ++e) {
        if (!g.present(e)) continue;
        int t = g.edge_to[static_cast<std::size_t>(e)];
        if (w.mark[static_cast<std::size_t>(t)]) continue;
        if (g.target[static_cast<std::size_t>(t)]) return true;
        w.mark[static_cast<std::size_t>(t)] = 1;
        w.queue.push_back(t);
      }
  }
  return false;
}

// Backward closure of the pre-marked seeds (queue pre-filled by the caller).
// avoid_targets stops the closure from growing through target states.
inline void backward_reach(const Compact& g, Work& w, std::vector<char>& mark,
                           bool avoid_targets) {
  for (std::size_t qi = 0; qi < w.queue.size(); ++qi) {
    int t = w.queue[qi];
    for (int pe = g.pred_begin[static_cast<std::size_t>(t)];
         pe < g.pred_begin[static_cast<std::size_t>(t) + 1]; ++pe) {
      int e = g.pred_edge[static_cast<std::size_t>(pe)];
      if (!g.present(e)) continue;
      int s = g.edge_from[static_cast<std::size_t>(e)];
      if (mark[static_cast<std::size_t>(s)]) continue;
      if (avoid_targets && g.target[static_cast<std::size_t>(s)]) continue;
      mark[static_cast<std::size_t>(s)] = 1;
      w.queue.push_back(s);
    }
  }
}

// zset[s] = 1 iff some strategy started in s avoids the targets entirely,
// i.e. the reachability probability can be made exactly 0. Computed as the
// complement of the least fixpoint bad = T ∪ {s | every row has a present
// successor in bad}; act (when requested) records a surviving row per state.
inline void zero_exists_set(const Compact& g, Work& w, std::vector<char>& zset,
                            std::vector<int>* act) {
  w.row_bad.assign(static_cast<std::size_t>(g.rows()), 0);
  w.rows_left.assign(static_cast<std::size_t>(g.n), 0);
  for (int s = 0; s < g.n; ++s)
    w.rows_left[static_cast<std::size_t>(s)] =
        g.state_row_begin[static_cast<std::size_t>(s) + 1] -
        g.state_row_begin[static_cast<std::size_t>(s)];
  w.mark.assign(static_cast<std::size_t>(g.n), 0);
  w.queue.clear();
  for (int s = 0; s < g.n; ++s)
    if (g.target[static_cast<std::size_t>(s)]) {
      w.mark[static_cast<std::size_t>(s)] = 1;
      w.queue.push_back(s);
    }
  for (std::size_t qi = 0; qi < w.queue.size(); ++qi) {
    int t = w.queue[qi];
    for (int pe = g.pred_begin[static_cast<std::size_t>(t)];
         pe < g.pred_begin[static_cast<std::size_t>(t) + 1]; ++pe) {
      int e = g.pred_edge[static_cast<std::size_t>(pe)];
      if (!g.present(e)) continue;
      int r = g.edge_row[static_cast<std::size_t>(e)];
      if (w.row_bad[static_cast<std::size_t>(r)]) continue;
      w.row_bad[static_cast<std::size_t>(r)] = 1;
      int s = g.edge_from[static_cast<std::size_t>(e)];
      if (w.mark[static_cast<std::size_t>(s)]) continue;
      if (--w.rows_left[static_cast<std::size_t>(s)] == 0) {
        w.mark[static_cast<std::size_t>(s)] = 1;
        w.queue.push_back(s);
      }
    }
  }
  zset.assign(static_cast<std::size_t>(g.n), 0);
  for (int s = 0; s < g.n; ++s)
    zset[static_cast<std::size_t>(s)] = !w.mark[static_cast<std::size_t>(s)];
  if (act) {
    act->assign(static_cast<std::size_t>(g.n), -1);
    for (int s = 0; s < g.n; ++s) {
      if (!zset[static_cast<std::size_t>(s)]) continue;
      for (int r = g.state_row_begin[static_cast<std::size_t>(s)];
           r < g.state_row_begin[static_cast<std::size_t>(s) + 1]; ++r)
        if (!w.row_bad[static_cast<std::size_t>(r)]) {
          (*act)[static_cast<std::size_t>(s)] = r;
          break;
        }
    }
  }
}

// oneset[s] = 1 iff some strategy reaches the targets with probability 1.
// Nested fixpoint: largest Z with Z = (states that can reach the targets
// while staying inside Z under some action). act records the certified row.
inline void one_exists_set(const Compact& g, Work& w, std::vector<char>& oneset,
                           std::vector<int>* act) {
  std::vector<char>& Z = oneset;
  std::vector<char>& W = w.wset;
  Z.assign(static_cast<std::size_t>(g.n), 1);
  while (true) {
    W.assign(static_cast<std::size_t>(g.n), 0);
    if (act) act->assign(static_cast<std::size_t>(g.n), -1);
    for (int s = 0; s < g.n; ++s)
      if (g.target[static_cast<std::size_t>(s)]) W[static_cast<std::size_t>(s)] = 1;
    bool grew = true;
    while (grew) {
      grew = false;
      for (int s = 0; s < g.n; ++s) {
        if (W[static_cast<std::size_t>(s)]) continue;
        for (int r = g.state_row_begin[static_cast<std::size_t>(s)];
             r < g.state_row_begin[static_cast<std::size_t>(s) + 1]; ++r) {
          bool all_in_z = true, some_in_w = false;
          for (int e = g.row_edge_begin[static_cast<std::size_t>(r)];
               e < g.row_edge_begin[static_cast<std::size_t>(r) + 1]; ++e) {
            if (!g.present(e)) continue;
            int t = g.edge_to[static_cast<std::size_t>(e)];
            all_in_z = all_in_z && Z[static_cast<std::size_t>(t)];
            some_in_w = some_in_w || W[static_cast<std::size_t>(t)];
          }
          if (all_in_z && some_in_w) {
            W[static_cast<std::size_t>(s)] = 1;
            if (act) (*act)[static_cast<std::size_t>(s)] = r;
            grew = true;
            break;
          }
        }
      }
    }
    bool same = std::equal(Z.begin(), Z.end(), W.begin());
    Z.assign(W.begin(), W.end());
    if (same) break;
  }
}

// oneA[s] = 1 iff every strategy reaches the targets with probability 1:
// s must not reach (through non-target states) a state that can avoid them.
inline void one_forall_set(const Compact& g, Work& w, std::vector<char>& one_a) {
  zero_exists_set(g, w, w.zset, nullptr);
  one_a.assign(static_cast<std::size_t>(g.n), 0);
  w.queue.clear();
  for (int s = 0; s < g.n; ++s)
    if (w.zset[static_cast<std::size_t>(s)]) {
      one_a[static_cast<std::size_t>(s)] = 1;
      w.queue.push_back(s);
    }
  backward_reach(g, w, one_a, /*avoid_targets=*/true);
  for (int s = 0; s < g.n; ++s)
    one_a[static_cast<std::size_t>(s)] = !one_a[static_cast<std::size_t>(s)];
}

// Single-action shortcut: Pr_init = 1 iff init cannot reach, through
// non-target states, a state with no path to the targets.
inline bool pmc_one_init(const Compact& g, Work& w) {
  w.mark.assign(static_cast<std::size_t>(g.n), 0);
  w.queue.clear();
  for (int s = 0; s < g.n; ++s)
    if (g.target[static_cast<std::size_t>(s)]) {
      w.mark[static_cast<std::size_t>(s)] = 1;
      w.queue.push_back(s);
    }
  backward_reach(g, w, w.mark, false);  // mark = can reach targets
  w.wset.assign(static_cast<std::size_t>(g.n), 0);
  w.queue.clear();
  for (int s = 0; s < g.n; ++s)
    if (!w.mark[static_cast<std::size_t>(s)]) {
      w.wset[static_cast<std::size_t>(s)] = 1;
      w.queue.push_back(s);
    }
  backward_reach(g, w, w.wset, true);
  return !w.wset[static_cast<std::size_t>(g.init)];
}

// --- the subdivided parameter structure of a simple model ---------------------

struct LabelInfo {
  enum Kind { Const, Var, OneMinusVar } kind = Const;
  int param = -1;
};

struct DimOption {
  std::vector<int> vanish;                       // hidden edge ids
  std::vector<std::pair<int, Rational>> assign;  // parameter index -> value
  bool boolean = false;                          // assigns only 0/1 values
};

// One enumeration dimension: either a coin parameter (options 0, 1/2, 1) or a
// branching row labelled by otherwise-unused bare parameters (options are the
// non-empty support subsets, singletons first).
struct Dim {
  std::vector<DimOption> options;
  int interior = 0;  // index of the full-support option
};

struct SimpleView {
  Compact g;
  std::vector<LabelInfo> labels;  // per edge
  std::vector<Dim> dims;
  std::vector<int> unused_params;
};

// Accepts the simple fragment (labels x, 1-x, or nonnegative constants with
// rows summing syntactically to 1) plus rows whose labels are distinct bare
// parameters used nowhere else; such a row ranges over a full probability
// simplex, which the subset options cover class-exactly.
inline SimpleView analyze(const ParametricModel& m) {
  SimpleView v;
  std::map<std::string, int> pidx;
  for (std::size_t i = 0; i < m.params.size(); ++i)
    pidx[m.params[i]] = static_cast<int>(i);

  v.g = compile(m, m.targets, [&](int, const Row& r, const Transition& t) {
    LabelInfo li;
    if (t.label.is_constant()) {
      if (t.label.constant_value() < 0)
        fail(ErrorKind::NotSimple, "negative constant label on row of " + r.state);
      li.kind = LabelInfo::Const;
    } else {
      bool complemented = false;
      auto p = simple_param_of(t.label, &complemented);
      if (!p)
        fail(ErrorKind::NotSimple,
             "label '" + t.label.to_string() + "' is not x, 1-x, or a constant");
      li.kind = complemented ? LabelInfo::OneMinusVar : LabelInfo::Var;
      li.param = pidx.at(*p);
    }
    v.labels.push_back(li);
    return true;
  });

  int np = static_cast<int>(m.params.size());
  std::vector<int> occurrences(static_cast<std::size_t>(np), 0);
  for (const auto& li : v.labels)
    if (li.param >= 0) ++occurrences[static_cast<std::size_t>(li.param)];

  // Classify rows; collect coin parameters and branching rows.
  std::vector<char> is_coin(static_cast<std::size_t>(np), 0);
  std::vector<std::pair<int, std::vector<int>>> choice_rows;  // row -> edge ids
  {
    // Walk rows exactly as compile() does (grouped per state) so edge ids line up.
    std::size_t edge = 0;
    for (const auto& sname : m.states)
      for (const Row* rp : m.rows_of(sname)) {
        const Row& r = *rp;
        Polynomial sum;
        for (const auto& t : r.out) sum += t.label;
        std::vector<int> row_edges;
        for (std::size_t j = 0; j < r.out.size(); ++j)
          row_edges.push_back(static_cast<int>(edge + j));
        if (sum == Polynomial::constant(1)) {
          for (int e : row_edges) {
            const LabelInfo& li = v.labels[static_cast<std::size_t>(e)];
            if (li.param >= 0) is_coin[static_cast<std::size_t>(li.param)] = 1;
          }
        } else {
          std::set<int> distinct;
          for (int e : row_edges) {
            const LabelInfo& li = v.labels[static_cast<std::size_t>(e)];
            if (li.kind != LabelInfo::Var || !distinct.insert(li.param).second ||
                occurrences[static_cast<std::size_t>(li.param)] != 1)
              fail(ErrorKind::NotSimple,
                   "row of " + r.state +
                       (r.action.empty() ? "" : " [" + r.action + "]") +
                       " does not sum to 1");
          }
          choice_rows.push_back({-1, row_edges});
        }
        edge += r.out.size();
      }
  }
  // A parameter may serve as a coin or label one branching row, not both.
  for (const auto& [row, edges] : choice_rows) {
    (void)row;
    for (int e : edges)
      if (is_coin[static_cast<std::size_t>(v.labels[static_cast<std::size_t>(e)].param)])
        fail(ErrorKind::NotSimple, "parameter '" +
                                       m.params[static_cast<std::size_t>(
                                           v.labels[static_cast<std::size_t>(e)].param)] +
                                       "' used both as a coin and in a branching row");
  }

  // Coin dimensions in parameter declaration order: values 0, 1/2, 1.
  for (int p = 0; p < np; ++p) {
    if (!is_coin[static_cast<std::size_t>(p)]) continue;
    Dim d;
    DimOption zero, half, one;
    for (int e = 0; e < v.g.edges(); ++e) {
      const LabelInfo& li = v.labels[static_cast<std::size_t>(e)];
      if (li.param != p) continue;
      (li.kind == LabelInfo::Var ? zero : one).vanish.push_back(e);
    }
    zero.assign = {{p, rat(0)}};
    zero.boolean = true;
    half.assign = {{p, rat(1, 2)}};
    one.assign = {{p, rat(1)}};
    one.boolean = true;
    d.options = {std::move(zero), std::move(half), std::move(one)};
    d.interior = 1;
    v.dims.push_back(std::move(d));
  }

  // Branching-row dimensions: non-empty support subsets ordered by size then
  // position, so Boolean (one-hot) options come first.
  for (const auto& [row, edges] : choice_rows) {
    (void)row;
    int dcount = static_cast<int>(edges.size());
    Dim d;
    std::vector<unsigned> masks;
    for (unsigned mask = 1; mask < (1u << dcount); ++mask) masks.push_back(mask);
    std::stable_sort(masks.begin(), masks.end(), [](unsigned a, unsigned b) {
      return __builtin_popcount(a) < __builtin_popcount(b);
    });
    for (unsigned mask : masks) {
      DimOption o;
      int sz = __builtin_popcount(mask);
      o.boolean = sz == 1;
      for (int j = 0; j < dcount; ++j) {
        int e = edges[static_cast<std::size_t>(j)];
        int p = v.labels[static_cast<std::size_t>(e)].param;
        if (mask & (1u << j)) {
          o.assign.push_back({p, rat(1, sz)});
        } else {
          o.assign.push_back({p, rat(0)});
          o.vanish.push_back(e);
        }
      }
      d.options.push_back(std::move(o));
    }
    d.interior = static_cast<int>(d.options.size()) - 1;  // the full-support subset
    v.dims.push_back(std::move(d));
  }

  for (int p = 0; p < np; ++p)
    if (occurrences[static_cast<std::size_t>(p)] == 0) v.unused_params.push_back(p);
  return v;
}

// Enumerates option-index combinations (last dimension fastest); allowed[d]
// lists the permitted option indices per dimension. visit returning false
// stops the scan; the return value says whether the scan ran to completion.
template <typename Visit>
inline bool product_scan(const std::vector<std::vector<int>>& allowed, Visit&& visit) {
  std::size_t nd = allowed.size();
  for (const auto& a : allowed)
    if (a.empty()) return true;
  std::vector<std::size_t> idx(nd, 0);
  while (true) {
    std::vector<int> combo(nd);
    for (std::size_t d = 0; d < nd; ++d) combo[d] = allowed[d][idx[d]];
    if (!visit(combo)) return false;
    std::size_t d = nd;
    while (d > 0) {
      --d;
      if (++idx[d] < allowed[d].size()) break;
      idx[d] = 0;
      if (d == 0) return true;
    }
    if (nd == 0) return true;
  }
}

inline void apply_combo(SimpleView& v, const std::vector<int>& combo) {
  v.g.all_present();
  for (std::size_t d = 0; d < v.dims.size(); ++d)
    for (int e : v.dims[d].options[static_cast<std::size_t>(combo[d])].vanish)
      v.g.hide(e);
}

inline Valuation combo_valuation(const ParametricModel& m, const SimpleView& v,
                                 const std::vector<int>& combo,
                                 const Rational& unused_value) {
  Valuation val;
  for (std::size_t d = 0; d < v.dims.size(); ++d)
    for (const auto& [p, value] :
         v.dims[d].options[static_cast<std::size_t>(combo[d])].assign)
      val[m.params[static_cast<std::size_t>(p)]] = value;
  for (int p : v.unused_params) val[m.params[static_cast<std::size_t>(p)]] = unused_value;
  return val;
}

}  // namespace qdetail

// --- qualitative state sets ----------------------------------------------------

inline StateSetReport qualitative_states(const ConcreteModel& m,
                                         const std::vector<std::string>& targets) {
  qdetail::Compact g =
      qdetail::compile(m, targets, [](int, const CRow&, const CTransition&) {});
  qdetail::Work w;
  std::vector<char> ze, oe, oa;
  qdetail::zero_exists_set(g, w, ze, nullptr);
  qdetail::one_exists_set(g, w, oe, nullptr);
  qdetail::one_forall_set(g, w, oa);
  // zero_forall: no path at all to the targets.
  std::vector<char> reach(static_cast<std::size_t>(g.n), 0);
  w.queue.clear();
  for (int s = 0; s < g.n; ++s)
    if (g.target[static_cast<std::size_t>(s)]) {
      reach[static_cast<std::size_t>(s)] = 1;
      w.queue.push_back(s);
    }
  qdetail::backward_reach(g, w, reach, false);

  StateSetReport out;
  for (int s = 0; s < g.n; ++s) {
    const std::string& name = m.states[static_cast<std::size_t>(s)];
    if (ze[static_cast<std::size_t>(s)]) out.zero_exists.push_back(name);
    if (!reach[static_cast<std::size_t>(s)]) out.zero_forall.push_back(name);
    if (oe[static_cast<std::size_t>(s)]) out.one_exists.push_back(name);
    if (oa[static_cast<std::size_t>(s)]) out.one_forall.push_back(name);
  }
  return out;
}

// --- graph-consistent partition --------------------------------------------------

inline std::vector<PartitionClass> graph_consistent_partition(const ParametricModel& m) {
  if (m.params.size() > qualitative_param_cap())
    fail(ErrorKind::LimitExceeded,
         "class enumeration over " + std::to_string(m.params.size()) +
             " parameters exceeds the cap of " +
             std::to_string(qualitative_param_cap()));
  qdetail::SimpleView v = qdetail::analyze(m);

  std::vector<std::vector<int>> allowed(v.dims.size());
  for (std::size_t d = 0; d < v.dims.size(); ++d)
    for (std::size_t o = 0; o < v.dims[d].options.size(); ++o)
      allowed[d].push_back(static_cast<int>(o));

  std::vector<PartitionClass> out;
  std::set<std::vector<int>> seen;
  qdetail::product_scan(allowed, [&](const std::vector<int>& combo) {
    std::vector<int> key;
    for (std::size_t d = 0; d < v.dims.size(); ++d)
      for (int e : v.dims[d].options[static_cast<std::size_t>(combo[d])].vanish)
        key.push_back(e);
    std::sort(key.begin(), key.end());
    if (!seen.insert(key).second) return true;
    PartitionClass c;
    c.representative = qdetail::combo_valuation(m, v, combo, rat(1, 2));
    for (int e : key) {
      int row = v.g.edge_row[static_cast<std::size_t>(e)];
      c.vanish.push_back(
          {m.states[static_cast<std::size_t>(v.g.edge_from[static_cast<std::size_t>(e)])],
           v.g.row_action[static_cast<std::size_t>(row)],
           m.states[static_cast<std::size_t>(v.g.edge_to[static_cast<std::size_t>(e)])]});
    }
    out.push_back(std::move(c));
    return true;
  });
  return out;
}

// --- the decision procedure --------------------------------------------------------

namespace qdetail {

// Answers "does the initial state satisfy the kind under the quantifier" on
// the currently stamped graph.
inline bool init_satisfies(const ParametricModel& m, SimpleView& v, Work& w,
                           QualKind kind, StrategyQuantifier quant) {
  Compact& g = v.g;
  std::size_t init = static_cast<std::size_t>(g.init);
  if (!m.mdp) {
    switch (kind) {
      case QualKind::Positive: return reach_pos(g, w);
      case QualKind::Safety: return !reach_pos(g, w);
      case QualKind::AlmostSure: return pmc_one_init(g, w);
      case QualKind::Unsure: return !pmc_one_init(g, w);
    }
  }
  bool exists = quant == StrategyQuantifier::Exists;
  switch (kind) {
    case QualKind::Positive:
      if (exists) return reach_pos(g, w);
      zero_exists_set(g, w, w.zset, nullptr);
      return !w.zset[init];
    case QualKind::Safety:
      if (!exists) return !reach_pos(g, w);
      zero_exists_set(g, w, w.zset, nullptr);
      return w.zset[init];
    case QualKind::AlmostSure: {
      std::vector<char> one;
      if (exists) one_exists_set(g, w, one, nullptr);
      else one_forall_set(g, w, one);
      return one[init];
    }
    case QualKind::Unsure: {
      std::vector<char> one;
      if (exists) one_forall_set(g, w, one);
      else one_exists_set(g, w, one, nullptr);
      return !one[init];
    }
  }
  fail(ErrorKind::Internal, "unhandled qualitative kind");
}

// Builds a strategy certifying the existential answer on the stamped graph.
inline StrategyMD extract_strategy(const ParametricModel& m, SimpleView& v, Work& w,
                                   QualKind kind) {
  Compact& g = v.g;
  std::vector<int> choice(static_cast<std::size_t>(g.n), -1);

  auto record_paths_to = [&](const std::vector<char>& seeds, bool avoid_targets) {
    // Backward pass from the seeds; for each newly reached state remember the
    // row whose edge steps one hop closer.
    w.mark = seeds;
    w.queue.clear();
    for (int s = 0; s < g.n; ++s)
      if (seeds[static_cast<std::size_t>(s)]) w.queue.push_back(s);
    for (std::size_t qi = 0; qi < w.queue.size(); ++qi) {
      int t = w.queue[qi];
      for (int pe = g.pred_begin[static_cast<std::size_t>(t)];
           pe < g.pred_begin[static_cast<std::size_t>(t) + 1]; ++pe) {
        int e = g.pred_edge[static_cast<std::size_t>(pe)];
        if (!g.present(e)) continue;
        int s = g.edge_from[static_cast<std::size_t>(e)];
        if (w.mark[static_cast<std::size_t>(s)]) continue;
        if (avoid_targets && g.target[static_cast<std::size_t>(s)]) continue;
        w.mark[static_cast<std::size_t>(s)] = 1;
        choice[static_cast<std::size_t>(s)] = g.edge_row[static_cast<std::size_t>(e)];
        w.queue.push_back(s);
      }
    }
  };

  switch (kind) {
    case QualKind::Positive: {
      std::vector<char> seeds(g.target.begin(), g.target.end());
      record_paths_to(seeds, false);
      break;
    }
    case QualKind::Safety:
      zero_exists_set(g, w, w.zset, &w.act);
      choice = w.act;
      break;
    case QualKind::AlmostSure:
      one_exists_set(g, w, w.zset, &w.act);
      choice = w.act;
      break;
    case QualKind::Unsure: {
      // Step toward a state that can avoid the targets, then keep avoiding.
      zero_exists_set(g, w, w.zset, &w.act);
      std::vector<char> seeds = w.zset;
      std::vector<int> inside = w.act;
      record_paths_to(seeds, true);
      for (int s = 0; s < g.n; ++s)
        if (seeds[static_cast<std::size_t>(s)])
          choice[static_cast<std::size_t>(s)] = inside[static_cast<std::size_t>(s)];
      break;
    }
  }

  StrategyMD sigma;
  for (int s = 0; s < g.n; ++s) {
    int r = choice[static_cast<std::size_t>(s)];
    if (r < 0) r = g.state_row_begin[static_cast<std::size_t>(s)];
    sigma.choice[m.states[static_cast<std::size_t>(s)]] =
        g.row_action[static_cast<std::size_t>(r)];
  }
  return sigma;
}

}  // namespace qdetail

inline QualDecision decide_qualitative(const ParametricModel& m, const QualProblem& pr) {
  qdetail::SimpleView v = qdetail::analyze(m);
  qdetail::Work w;
  QualDecision out;

  auto check_combo = [&](const std::vector<int>& combo) {
    qdetail::apply_combo(v, combo);
    return qdetail::init_satisfies(m, v, w, pr.kind, pr.quantifier);
  };
  auto finish_true = [&](const std::vector<int>& combo, const Rational& unused_value) {
    out.answer = true;
    out.witness = qdetail::combo_valuation(m, v, combo, unused_value);
    if (m.mdp && pr.quantifier == StrategyQuantifier::Exists) {
      qdetail::apply_combo(v, combo);
      out.strategy_witness = qdetail::extract_strategy(m, v, w, pr.kind);
    }
  };

  std::vector<int> interior;
  for (const auto& d : v.dims) interior.push_back(d.interior);

  // On the graph-preserving domain the graph is fixed, so one interior point
  // decides. The same shortcut answers Positive over the well-defined domain:
  // extra transitions never hurt positive reachability, so the full graph is
  // the best case, and it is itself realized by a well-defined valuation.
  if (pr.domain == ValueDomain::Gp ||
      (pr.domain == ValueDomain::Wd && pr.kind == QualKind::Positive)) {
    if (check_combo(interior)) finish_true(interior, rat(1, 2));
    return out;
  }

  if (m.params.size() > qualitative_param_cap())
    fail(ErrorKind::LimitExceeded,
         "class enumeration over " + std::to_string(m.params.size()) +
             " parameters exceeds the cap of " +
             std::to_string(qualitative_param_cap()));

  std::vector<std::vector<int>> boolean_opts(v.dims.size()), all_opts(v.dims.size());
  for (std::size_t d = 0; d < v.dims.size(); ++d)
    for (std::size_t o = 0; o < v.dims[d].options.size(); ++o) {
      all_opts[d].push_back(static_cast<int>(o));
      if (v.dims[d].options[o].boolean) boolean_opts[d].push_back(static_cast<int>(o));
    }

  Rational unused = pr.domain == ValueDomain::Boolean ? rat(0) : rat(1, 2);
  auto scan = [&](const std::vector<std::vector<int>>& opts, bool skip_boolean) {
    return qdetail::product_scan(opts, [&](const std::vector<int>& combo) {
      if (skip_boolean) {
        bool all_boolean = true;
        for (std::size_t d = 0; d < combo.size(); ++d)
          all_boolean =
              all_boolean &&
              v.dims[d].options[static_cast<std::size_t>(combo[d])].boolean;
        if (all_boolean) return true;  // already covered by the Boolean pass
      }
      if (!check_combo(combo)) return true;
      finish_true(combo, unused);
      return false;
    });
  };

  // Boolean-valued classes first: they carry the witnesses for the reduction
  // gadgets, so satisfiable instances exit after a tiny prefix of the scan.
  if (!scan(boolean_opts, false)) return out;
  if (pr.domain == ValueDomain::Wd) scan(all_opts, true);
  return out;
}

}  // namespace paramark
