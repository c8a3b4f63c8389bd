#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "paramark/errors.hpp"
#include "paramark/model.hpp"
#include "paramark/model_io.hpp"
#include "paramark/polynomial.hpp"
#include "paramark/quantitative.hpp"
#include "paramark/rational.hpp"

// Constructive model transformations: threshold normalization, the
// graph-preservation gadget, rewriting polynomials as non-negative
// combinations, polynomial-valued chains, 3SAT gadgets, inequality systems as
// decision processes, and the coin-flip elimination of nondeterminism.

namespace paramark {

namespace reddetail {

inline std::string fresh_state(const ParametricModel& m, std::string base) {
  while (m.has_state(base)) base += "_";
  return base;
}

inline std::string fresh_param(const ParametricModel& m, std::string base) {
  while (m.has_param(base)) base += "_";
  return base;
}

}  // namespace reddetail

// --- threshold normalization ---------------------------------------------------

// Prepends a fresh initial state so that the reachability value becomes
// 1/2*p + 1/2*(1-lambda). Any comparison against 1/2 in the result holds
// exactly when the same comparison against lambda holds in the input; the
// relop argument documents the query being normalized but does not change
// the construction.
inline ParametricModel normalize_threshold(const ParametricModel& m,
                                           const Rational& lambda, RelOp) {
  if (!(lambda > 0 && lambda < 1))
    fail(ErrorKind::ThresholdOutOfRange,
         "threshold " + rat_str(lambda) + " is not strictly between 0 and 1");
  if (m.targets.empty())
    fail(ErrorKind::Semantic, "threshold normalization needs a target state");

  ParametricModel out = m;
  std::string ninit = reddetail::fresh_state(out, "norm_init");
  out.states.push_back(ninit);
  std::string feed = reddetail::fresh_state(out, "norm_feed");
  out.states.push_back(feed);
  std::string sink = reddetail::fresh_state(out, "norm_sink");
  out.states.push_back(sink);

  std::string act = m.mdp ? "tau" : kNoAction;
  out.rows.push_back({ninit,
                      act,
                      {{m.init, Polynomial::constant(rat(1, 2))},
                       {feed, Polynomial::constant((1 - lambda) / 2)},
                       {sink, Polynomial::constant(lambda / 2)}}});
  out.rows.push_back({feed, act, {{m.targets[0], Polynomial::constant(1)}}});
  out.rows.push_back({sink, act, {{sink, Polynomial::constant(1)}}});
  out.init = ninit;
  return out;
}

// --- graph-preservation gadget ---------------------------------------------------

// Prepends per parameter x a two-state chain (s_x loops with x and exits with
// 1-x; s_x' loops with 1-x and exits with x). On graph-preserving valuations
// every chain passes with probability 1, so values are unchanged; once some
// parameter hits 0 or 1 one of the two loops becomes inescapable and the
// reachability value drops to 0.
inline ParametricModel gp_gadget(const ParametricModel& m) {
  if (m.mdp)
    fail(ErrorKind::NotPmc, "the graph-preservation gadget needs a single-action model");
  if (!is_simple(m))
    fail(ErrorKind::NotSimple, "the graph-preservation gadget needs a simple model");
  if (m.params.empty()) return m;

  ParametricModel out = m;
  std::vector<std::pair<std::string, std::string>> gates;
  for (const auto& x : m.params) {
    std::string sx = reddetail::fresh_state(out, "s_" + x);
    out.states.push_back(sx);
    std::string sxp = reddetail::fresh_state(out, "s_" + x + "'");
    out.states.push_back(sxp);
    gates.push_back({sx, sxp});
  }
  for (std::size_t i = 0; i < m.params.size(); ++i) {
    Polynomial x = Polynomial::variable(m.params[i]);
    Polynomial omx = Polynomial::constant(1) - x;
    const std::string& next = i + 1 < gates.size() ? gates[i + 1].first : m.init;
    out.rows.push_back(
        {gates[i].first, kNoAction, {{gates[i].first, x}, {gates[i].second, omx}}});
    out.rows.push_back(
        {gates[i].second, kNoAction, {{gates[i].second, omx}, {next, x}}});
  }
  out.init = gates[0].first;
  return out;
}

// --- non-negative combinations ---------------------------------------------------

// One summand a * prod x^e * prod (1-x)^e'. The weight is strictly positive.
struct CombTerm {
  Rational a;
  std::map<std::string, unsigned long> e;   // exponents of bare variables
  std::map<std::string, unsigned long> ep;  // exponents of complements
};

// f written as sum of positively weighted products of variables and their
// complements, plus a non-positive constant b.
struct NonNegCombination {
  std::vector<CombTerm> terms;
  Rational b = 0;
};

inline Polynomial combination_polynomial(const NonNegCombination& c) {
  Polynomial out = Polynomial::constant(c.b);
  for (const auto& t : c.terms) {
    Polynomial prod = Polynomial::constant(t.a);
    for (const auto& [v, k] : t.e) prod *= Polynomial::variable(v).pow(k);
    for (const auto& [v, k] : t.ep)
      prod *= (Polynomial::constant(1) - Polynomial::variable(v)).pow(k);
    out += prod;
  }
  return out;
}

// Rewrites an arbitrary polynomial as a NonNegCombination, expanding each
// negative term -a*z_1*...*z_d (factors listed with multiplicity in variable
// order) through the telescoping identity
//   -z_1*...*z_d = -1 + sum_i (1-z_i)*z_{i+1}*...*z_d.
// A positive residual constant c cannot live in b, so it is pulled inside as
// c*x + c*(1-x) over the first variable; a constant positive input becomes the
// pure-constant combination instead. The result is verified to re-expand to
// the input exactly.
inline NonNegCombination rewrite_nonneg_combination(const Polynomial& f) {
  NonNegCombination out;
  Rational residual = 0;

  auto push_term = [&](const Rational& a, std::map<std::string, unsigned long> e,
                       std::map<std::string, unsigned long> ep) {
    for (auto& t : out.terms)
      if (t.e == e && t.ep == ep) {
        t.a += a;
        return;
      }
    out.terms.push_back({a, std::move(e), std::move(ep)});
  };

  // Descending monomial order, so the expansion of the highest-degree term
  // leads the combination.
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [mono, coeff] = *it;
    if (mono.exps.empty()) {
      residual += coeff;
      continue;
    }
    if (coeff > 0) {
      push_term(coeff, mono.exps, {});
      continue;
    }
    std::vector<std::string> z;
    for (const auto& [v, k] : mono.exps)
      for (unsigned long r = 0; r < k; ++r) z.push_back(v);
    Rational a = -coeff;
    residual += coeff;  // the -1 of the identity, scaled by a
    for (std::size_t i = 0; i < z.size(); ++i) {
      std::map<std::string, unsigned long> e, ep;
      ep[z[i]] += 1;
      for (std::size_t j = i + 1; j < z.size(); ++j) e[z[j]] += 1;
      push_term(a, std::move(e), std::move(ep));
    }
  }

  if (residual > 0) {
    std::set<std::string> vs = f.vars();
    if (vs.empty()) {
      push_term(residual, {}, {});
    } else {
      const std::string& x = *vs.begin();
      push_term(residual, {{x, 1}}, {});
      push_term(residual, {}, {{x, 1}});
    }
  } else {
    out.b = residual;
  }

  if (!(combination_polynomial(out) == f))
    fail(ErrorKind::Internal, "combination does not re-expand to its input");
  return out;
}

// --- polynomial-valued chains ---------------------------------------------------

struct PolyPmcResult {
  ParametricModel pmc;
  Rational A = 0;  // upward shift, >= -b
  Rational B = 1;  // rescaling, > sum a_i + (b + A)
  std::vector<std::string> targets;
};

namespace reddetail {

// Chain order inside one summand: complemented factors first, then bare ones,
// each in variable order with multiplicity.
inline std::vector<std::pair<std::string, bool>> chain_factors(const CombTerm& t) {
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& [v, k] : t.ep)
    for (unsigned long r = 0; r < k; ++r) out.push_back({v, true});
  for (const auto& [v, k] : t.e)
    for (unsigned long r = 0; r < k; ++r) out.push_back({v, false});
  return out;
}

// Builds the branch-and-chain module realizing (f + A)/B as the probability
// of reaching the goal state: one chain per summand entered with probability
// a_i/B, multiplying its factors edge by edge; the shifted constant goes to
// the goal directly and the unused mass to the sink.
inline PolyPmcResult poly_pmc_build(const Polynomial& f, const NonNegCombination& comb,
                                    const Rational& A, const Rational& B,
                                    const std::string& prefix) {
  Rational bshift = comb.b + A;
  Rational suma = 0;
  for (const auto& t : comb.terms) suma += t.a;
  if (bshift < 0 || !(B > suma + bshift))
    fail(ErrorKind::Internal, "chain scaling constants out of range");

  PolyPmcResult res;
  res.A = A;
  res.B = B;
  ParametricModel& m = res.pmc;
  m.mdp = false;
  for (const auto& v : f.vars()) m.params.push_back(v);

  std::string init = prefix + "init", goal = prefix + "goal", sink = prefix + "sink";
  m.states = {init};
  m.init = init;

  Row top{init, kNoAction, {}};
  std::vector<Row> chain_rows;
  Rational to_goal = bshift;
  for (std::size_t i = 0; i < comb.terms.size(); ++i) {
    auto factors = chain_factors(comb.terms[i]);
    if (factors.empty()) {
      to_goal += comb.terms[i].a;
      continue;
    }
    std::vector<std::string> links;
    for (std::size_t j = 0; j < factors.size(); ++j) {
      links.push_back(prefix + "t" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
      m.states.push_back(links.back());
    }
    top.out.push_back({links[0], Polynomial::constant(comb.terms[i].a / B)});
    for (std::size_t j = 0; j < factors.size(); ++j) {
      Polynomial x = Polynomial::variable(factors[j].first);
      Polynomial lab = factors[j].second ? Polynomial::constant(1) - x : x;
      const std::string& next = j + 1 < links.size() ? links[j + 1] : goal;
      chain_rows.push_back({links[j], kNoAction,
                            {{next, lab}, {sink, Polynomial::constant(1) - lab}}});
    }
  }
  if (to_goal != 0) top.out.push_back({goal, Polynomial::constant(to_goal / B)});
  top.out.push_back({sink, Polynomial::constant((B - suma - bshift) / B)});

  m.states.push_back(goal);
  m.states.push_back(sink);
  m.rows.push_back(std::move(top));
  for (auto& r : chain_rows) m.rows.push_back(std::move(r));
  m.rows.push_back({goal, kNoAction, {{goal, Polynomial::constant(1)}}});
  m.rows.push_back({sink, kNoAction, {{sink, Polynomial::constant(1)}}});
  m.targets = {goal};
  res.targets = {goal};
  return res;
}

}  // namespace reddetail

// Realizes any polynomial f as a simple pMC whose reachability value is
// (f + A)/B with A = -b and B = sum a_i + 1.
inline PolyPmcResult poly_to_pmc(const Polynomial& f) {
  NonNegCombination comb = rewrite_nonneg_combination(f);
  Rational A = -comb.b;
  Rational suma = 0;
  for (const auto& t : comb.terms) suma += t.a;
  Rational B = suma + (comb.b + A) + 1;
  return reddetail::poly_pmc_build(f, comb, A, B, "");
}

// --- 3SAT gadgets ---------------------------------------------------------------

enum class SatVariant { Positive, AlmostSure, Unsure };

struct GadgetModel {
  ParametricModel model;
  std::vector<std::string> targets;
};

namespace reddetail {

inline void check_cnf(const Cnf3& cnf) {
  for (const auto& cl : cnf.clauses)
    for (int lit : cl)
      if (lit == 0 || lit > cnf.num_vars || -lit > cnf.num_vars)
        fail(ErrorKind::Semantic,
             "literal " + std::to_string(lit) + " outside the declared variables");
}

}  // namespace reddetail

// Encodes a 3-CNF with m clauses and k variables as a simple pMC.
//
// Positive: a chain of clause states c_i branching with weights y_{i,j} into
// literal states that pass to c_{i+1} with the literal's truth value (x~ for a
// positive literal, 1-x~ for a negated one) and fall to bot otherwise; the
// formula is satisfiable iff some Boolean valuation reaches c_{m+1} with
// positive probability.
//
// AlmostSure: a variable-gadget chain v_0..v_k that leaks to bot unless every
// x~ is Boolean, feeding a uniform fan over the clause states; each clause
// state re-enters the gadget of one of its literals. The target T is reached
// almost surely iff the chosen valuation encodes a satisfying assignment.
//
// Unsure: the Positive chain with c_{m+1} looping back to c_1 and target bot;
// the bot probability is 0 on valuations encoding satisfying assignments and
// 1 elsewhere, so it is sometimes-but-not-always 1 iff the formula is
// satisfiable.
inline GadgetModel sat3_to_pmc(const Cnf3& cnf, SatVariant variant) {
  reddetail::check_cnf(cnf);
  std::size_t m = cnf.clauses.size();
  int k = cnf.num_vars;

  ParametricModel M;
  M.mdp = false;
  for (int i = 1; i <= k; ++i) M.params.push_back("xt" + std::to_string(i));

  auto lit_label = [&](int lit) {
    Polynomial x = Polynomial::variable("xt" + std::to_string(lit > 0 ? lit : -lit));
    return lit > 0 ? x : Polynomial::constant(1) - x;
  };
  Polynomial one = Polynomial::constant(1);

  if (variant == SatVariant::Positive || variant == SatVariant::Unsure) {
    for (std::size_t i = 1; i <= m; ++i)
      for (int j = 1; j <= 3; ++j)
        M.params.push_back("y" + std::to_string(i) + "_" + std::to_string(j));

    auto cname = [](std::size_t i) { return "c" + std::to_string(i); };
    for (std::size_t i = 1; i <= m; ++i) {
      M.states.push_back(cname(i));
      for (int j = 1; j <= 3; ++j)
        M.states.push_back("l" + std::to_string(i) + "_" + std::to_string(j));
    }
    M.states.push_back(cname(m + 1));
    M.states.push_back("bot");
    M.init = cname(1);

    for (std::size_t i = 1; i <= m; ++i) {
      Row branch{cname(i), kNoAction, {}};
      for (int j = 1; j <= 3; ++j) {
        std::string l = "l" + std::to_string(i) + "_" + std::to_string(j);
        branch.out.push_back(
            {l, Polynomial::variable("y" + std::to_string(i) + "_" + std::to_string(j))});
      }
      M.rows.push_back(std::move(branch));
      for (int j = 1; j <= 3; ++j) {
        std::string l = "l" + std::to_string(i) + "_" + std::to_string(j);
        Polynomial pass = lit_label(cnf.clauses[i - 1][static_cast<std::size_t>(j - 1)]);
        M.rows.push_back(
            {l, kNoAction, {{cname(i + 1), pass}, {"bot", one - pass}}});
      }
    }
    if (variant == SatVariant::Positive) {
      M.rows.push_back({cname(m + 1), kNoAction, {{cname(m + 1), one}}});
      M.targets = {cname(m + 1)};
    } else {
      M.rows.push_back({cname(m + 1), kNoAction, {{cname(1), one}}});
      M.targets = {"bot"};
    }
    M.rows.push_back({"bot", kNoAction, {{"bot", one}}});
    return {M, M.targets};
  }

  // AlmostSure.
  auto vname = [](int i) { return "v" + std::to_string(i); };
  M.states.push_back(vname(0));
  for (int i = 1; i <= k; ++i) {
    M.states.push_back("x" + std::to_string(i));
    M.states.push_back("nx" + std::to_string(i));
    M.states.push_back(vname(i));
  }
  for (std::size_t j = 1; j <= m; ++j) M.states.push_back("c" + std::to_string(j));
  M.states.push_back("T");
  M.states.push_back("bot");
  M.init = vname(0);

  for (int i = 1; i <= k; ++i) {
    Polynomial x = Polynomial::variable("xt" + std::to_string(i));
    std::string xs = "x" + std::to_string(i), nxs = "nx" + std::to_string(i);
    M.rows.push_back({vname(i - 1), kNoAction, {{xs, x}, {nxs, one - x}}});
    M.rows.push_back({xs, kNoAction, {{vname(i), x}, {"bot", one - x}}});
    M.rows.push_back({nxs, kNoAction, {{vname(i), one - x}, {"bot", x}}});
  }

  Row fan{vname(k), kNoAction, {}};
  Polynomial share = Polynomial::constant(rat(1, static_cast<long>(m) + 1));
  for (std::size_t j = 1; j <= m; ++j) fan.out.push_back({"c" + std::to_string(j), share});
  fan.out.push_back({"T", share});
  M.rows.push_back(std::move(fan));

  // Duplicate literals inside one clause collapse to a single edge; only the
  // first slot's branching parameter exists, and well-definedness makes the
  // remaining ones sum to 1 over the surviving edges.
  for (std::size_t j = 1; j <= m; ++j) {
    Row branch{"c" + std::to_string(j), kNoAction, {}};
    std::set<std::string> used;
    for (int r = 1; r <= 3; ++r) {
      int lit = cnf.clauses[j - 1][static_cast<std::size_t>(r - 1)];
      std::string succ =
          (lit > 0 ? "x" : "nx") + std::to_string(lit > 0 ? lit : -lit);
      if (!used.insert(succ).second) continue;
      std::string y = "y" + std::to_string(j) + "_" + std::to_string(r);
      M.params.push_back(y);
      branch.out.push_back({succ, Polynomial::variable(y)});
    }
    M.rows.push_back(std::move(branch));
  }

  M.rows.push_back({"T", kNoAction, {{"T", one}}});
  M.rows.push_back({"bot", kNoAction, {{"bot", one}}});
  M.targets = {"T"};
  return {M, M.targets};
}

// --- inequality systems as decision processes -------------------------------------

// Encodes "is there a valuation making every f_i strictly negative" as a
// universal threshold query: a fresh initial state chooses which polynomial to
// inspect, and each choice enters a chain whose value is (f_i + A_i)/(2 A_i),
// which is below 1/2 exactly when f_i is negative. All strategies stay below
// 1/2 at a valuation iff every polynomial is negative there.
inline GadgetModel bcon4ineq_to_pmdp(const PolySystem& system) {
  ParametricModel M;
  M.mdp = true;
  M.params = system.variables;
  M.states = {"sel"};
  M.init = "sel";

  std::set<std::string> declared(system.variables.begin(), system.variables.end());
  for (std::size_t i = 0; i < system.polys.size(); ++i) {
    const Polynomial& f = system.polys[i];
    for (const auto& v : f.vars())
      if (!declared.count(v))
        fail(ErrorKind::Semantic, "polynomial mentions undeclared variable '" + v + "'");

    NonNegCombination comb = rewrite_nonneg_combination(f);
    Rational suma = 0;
    for (const auto& t : comb.terms) suma += t.a;
    Rational shift = -comb.b, reach = suma + comb.b;
    Rational A = (shift > reach ? shift : reach) + 1;
    PolyPmcResult sub = reddetail::poly_pmc_build(
        f, comb, A, 2 * A, "f" + std::to_string(i + 1) + "_");

    M.rows.push_back({"sel", "a" + std::to_string(i + 1),
                      {{sub.pmc.init, Polynomial::constant(1)}}});
    for (const auto& s : sub.pmc.states) M.states.push_back(s);
    for (auto& r : sub.pmc.rows) M.rows.push_back({r.state, "a", std::move(r.out)});
    M.targets.push_back(sub.targets[0]);
  }
  return {M, M.targets};
}

// --- nondeterminism as coin flips --------------------------------------------------

// Replaces every k-way action choice by a depth-balanced binary tree of fresh
// coin parameters; each leaf carries one original row verbatim. Existential
// threshold satisfaction over the decision process coincides with threshold
// satisfaction of the chain over the enlarged well-defined valuation set:
// corner coin values recover exactly the deterministic strategies, and mixed
// values interpolate between them, so non-strict thresholds transfer in both
// directions. For strict thresholds the transfer is sound on the
// graph-preserving interior, where values move continuously with the coins.
inline ParametricModel pmdp_exists_to_pmc(const ParametricModel& m) {
  if (!m.mdp)
    fail(ErrorKind::NotPmdp,
         "the coin-flip reduction needs an action-labelled model");
  if (!is_simple(m))
    fail(ErrorKind::NotSimple, "the coin-flip reduction needs a simple model");

  ParametricModel out;
  out.mdp = false;
  out.params = m.params;
  out.states = m.states;
  out.init = m.init;
  out.targets = m.targets;

  for (const auto& s : m.states) {
    std::vector<const Row*> rows = m.rows_of(s);
    if (rows.size() <= 1) {
      if (!rows.empty()) out.rows.push_back({s, kNoAction, rows[0]->out});
      continue;
    }

    std::vector<std::string> leaves;
    for (const Row* r : rows) {
      leaves.push_back(reddetail::fresh_state(out, "ch_" + s + "_" + r->action));
      out.states.push_back(leaves.back());
    }

    int internals = 0, coins = 0;
    auto next_coin = [&]() {
      ++coins;
      std::string base =
          coins == 1 ? "z_" + s : "z_" + s + "_" + std::to_string(coins);
      std::string name = reddetail::fresh_param(out, base);
      out.params.push_back(name);
      return name;
    };

    // Left subtree takes the first ceil(n/2) rows; rows are emitted in
    // pre-order so the printed model reads top-down.
    auto build = [&](auto&& self, std::size_t lo, std::size_t hi) -> std::string {
      if (hi - lo == 1) {
        out.rows.push_back({leaves[lo], kNoAction, rows[lo]->out});
        return leaves[lo];
      }
      std::string node;
      if (lo == 0 && hi == rows.size()) {
        node = s;
      } else {
        ++internals;
        node = reddetail::fresh_state(out, "ch_" + s + "_n" + std::to_string(internals));
        out.states.push_back(node);
      }
      Polynomial y = Polynomial::variable(next_coin());
      std::size_t mid = lo + (hi - lo + 1) / 2;
      std::size_t at = out.rows.size();
      std::string left = self(self, lo, mid);
      std::string right = self(self, mid, hi);
      out.rows.insert(out.rows.begin() + static_cast<std::ptrdiff_t>(at),
                      {node, kNoAction, {{left, y}, {right, Polynomial::constant(1) - y}}});
      return node;
    };
    build(build, 0, rows.size());
  }
  return out;
}

}  // namespace paramark
