#include "doctest.h"
#include "helpers.hpp"
#include "paramark/model_io.hpp"
#include "paramark/quantitative.hpp"

#include <random>

using namespace paramark;

namespace {

template <typename Fn>
void expect_error(ErrorKind kind, const std::string& substr, Fn&& fn) {
  try {
    fn();
    FAIL_CHECK("expected an error mentioning '" << substr << "'");
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
    CHECK_MESSAGE(std::string(e.what()).find(substr) != std::string::npos, e.what());
  }
}

Valuation vxy(const Rational& x, const Rational& y) {
  return Valuation{{"x", x}, {"y", y}};
}

RationalFunction rf(const std::string& text) {
  return RationalFunction::from_poly(poly_parse(text));
}

}  // namespace

TEST_CASE("exact chain values on the two-coin die") {
  ParametricModel die = testutil::load_model("ky_die.pmc");

  ConcreteModel biased = instantiate(die, vxy(rat(2, 5), rat(7, 10)));
  CHECK(mc_reach_exact(biased, {"d2"}) == rat(1, 10));

  ConcreteModel fair = instantiate(die, vxy(rat(1, 2), rat(1, 2)));
  CHECK(mc_reach_exact(fair, {"d2"}) == rat(1, 6));
  for (const char* face : {"d1", "d2", "d3", "d4", "d5", "d6"})
    CHECK(mc_reach_exact(fair, {face}) == rat(1, 6));

  // Per-state vector: targets are 1, states that cannot reach them are 0.
  std::vector<Rational> vals = mc_reach_exact_values(fair, {"d2"});
  CHECK(vals[8] == 1);   // d2
  CHECK(vals[7] == 0);   // d1
  CHECK(vals[4] == rat(1, 2));  // s4 -> d2 with 1-x
  CHECK(vals[0] == rat(1, 6));

  // init in targets is trivially 1.
  CHECK(mc_reach_exact(fair, {"s0"}) == 1);
}

TEST_CASE("chain solver refuses multi-action models") {
  ParametricModel m = testutil::load_model("tiny.pmdp");
  ConcreteModel c = instantiate(m, vxy(rat(1, 2), rat(1, 2)));
  expect_error(ErrorKind::NotPmc, "s0", [&] { mc_reach_exact(c, c.targets); });
}

TEST_CASE("extremal values and strategies on the tiny decision model") {
  ParametricModel m = testutil::load_model("tiny.pmdp");
  ConcreteModel c = instantiate(m, vxy(rat(1, 2), rat(1, 2)));

  ExtremumResult mx = mdp_reach_extremum_exact(c, c.targets, Extremum::Max, true);
  CHECK(mx.value == rat(3, 4));
  CHECK(mx.strategy.choice.at("s0") == "alpha");
  CHECK(mx.state_values[0] == rat(3, 4));
  CHECK(mx.state_values[1] == rat(1, 2));

  ExtremumResult mn = mdp_reach_extremum_exact(c, c.targets, Extremum::Min, true);
  CHECK(mn.value == rat(1, 2));
  CHECK(mn.strategy.choice.at("s0") == "beta");

  ExtremumResult en = mdp_reach_extremum_enumerated(c, c.targets, Extremum::Max);
  CHECK(en.value == rat(3, 4));
  CHECK(en.strategy.choice.at("s0") == "alpha");

  // The strategies themselves attain the reported values.
  for (const auto& [res, want] :
       {std::pair<const ExtremumResult&, Rational>{mx, rat(3, 4)}, {mn, rat(1, 2)}}) {
    ConcreteModel ind = instantiate(induced_pmc(m, res.strategy), vxy(rat(1, 2), rat(1, 2)));
    CHECK(mc_reach_exact(ind, ind.targets) == want);
  }
}

TEST_CASE("single-action input gives identical extrema") {
  ParametricModel m = testutil::load_model("tiny.pmc");
  ConcreteModel c = instantiate(m, vxy(rat(1, 3), rat(2, 3)));
  Rational direct = mc_reach_exact(c, c.targets);
  CHECK(mdp_reach_extremum_exact(c, c.targets, Extremum::Min, true).value == direct);
  CHECK(mdp_reach_extremum_exact(c, c.targets, Extremum::Max, true).value == direct);
}

TEST_CASE("minimization pins avoidable states before iterating") {
  // Choosing b forever cycles s0 -> s1 -> s0 and never reaches t, so the
  // minimum is 0. Iteration without the pinning stalls at 1: from the
  // all-a strategy both states evaluate to 1 and no single switch looks
  // like a strict improvement.
  ParametricModel m = parse_model(
      "@type pmdp\n"
      "@states s0 s1 t\n"
      "@init s0\n"
      "@targets t\n"
      "s0 [a] -> t : 1\n"
      "s0 [b] -> s1 : 1\n"
      "s1 [a] -> s0 : 1\n"
      "t [a] -> t : 1\n");
  ConcreteModel c = instantiate(m, {});
  ExtremumResult mn = mdp_reach_extremum_exact(c, c.targets, Extremum::Min, true);
  CHECK(mn.value == 0);
  CHECK(mn.strategy.choice.at("s0") == "b");
  ExtremumResult mx = mdp_reach_extremum_exact(c, c.targets, Extremum::Max, true);
  CHECK(mx.value == 1);
  CHECK(mx.strategy.choice.at("s0") == "a");
}

TEST_CASE("strategy enumeration is capped") {
  ParametricModel die = testutil::load_model("ky_die.pmc");
  ConcreteModel c = instantiate(die, vxy(rat(1, 2), rat(1, 2)));
  expect_error(ErrorKind::LimitExceeded, "12 states",
               [&] { mdp_reach_extremum_enumerated(c, {"d2"}, Extremum::Max); });
  // Policy iteration itself has no such cap.
  CHECK(mdp_reach_extremum_exact(c, {"d2"}, Extremum::Max).value == rat(1, 6));
}

TEST_CASE("solution functions of the worked models") {
  SolutionFunction tiny = solution_function(testutil::load_model("tiny.pmc"), {"s2"});
  CHECK(tiny.valid_domain == ValueDomain::Gp);
  CHECK(rf_equal(tiny.value, rf("x*y + 1 - x")));

  SolutionFunction branch = solution_function(testutil::load_model("poly_simple.pmc"),
                                              {"b3", "c2"});
  CHECK(rf_equal(branch.value, rf("1/2*x^2 + 1/3*y")));

  SolutionFunction mixed = solution_function(
      testutil::load_model("poly_mixed.pmc"), {"a4", "b3", "c2", "d2"});
  CHECK(rf_equal(mixed.value,
                 RationalFunction(poly_parse("-2*x^2*y + y + 2"), poly_parse("8"))));

  SolutionFunction die = solution_function(testutil::load_model("ky_die.pmc"), {"d2"});
  CHECK(rf_equal(die.value,
                 RationalFunction(poly_parse("x*(1-y)*(1-x)"), poly_parse("1 - x*y"))));
}

TEST_CASE("per-state solution functions") {
  ParametricModel tiny = testutil::load_model("tiny.pmc");
  auto per = per_state_solution_functions(tiny, {"s2"});
  CHECK(rf_equal(per.at("s0"), rf("x*y + 1 - x")));
  CHECK(rf_equal(per.at("s1"), rf("y")));
  CHECK(rf_equal(per.at("s2"), rf("1")));
  CHECK(rf_equal(per.at("s3"), rf("0")));

  ParametricModel die = testutil::load_model("ky_die.pmc");
  auto dper = per_state_solution_functions(die, {"d2"});
  CHECK(rf_equal(dper.at("d2"), rf("1")));
  CHECK(rf_equal(dper.at("d1"), rf("0")));
  CHECK(rf_equal(dper.at("d5"), rf("0")));
  CHECK(rf_equal(dper.at("s4"), rf("1 - x")));
  CHECK(rf_equal(dper.at("s1"),
                 RationalFunction(poly_parse("(1-y)*(1-x)"), poly_parse("1 - x*y"))));
}

TEST_CASE("solution function matches the exact chain value on random models") {
  std::mt19937 rng(4711);
  std::uniform_int_distribution<int> num(1, 5);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    ParametricModel m = testutil::random_simple_model(rng, 8, 3, false);
    CAPTURE(i);
    SolutionFunction f = solution_function(m, m.targets);
    for (int j = 0; j < 10; ++j) {
      Valuation val;
      for (const auto& p : m.params) val[p] = rat(num(rng), 6);
      Rational direct = mc_reach_exact(instantiate(m, val), m.targets);
      Rational viaf = solution_eval(f, m, val);
      CHECK(viaf == direct);
      CHECK(viaf >= 0);
      CHECK(viaf <= 1);
      ++checked;
    }
  }
  CHECK(checked == 2000);
}

TEST_CASE("per-state functions agree with the chain vector") {
  std::mt19937 rng(271828);
  for (int i = 0; i < 30; ++i) {
    ParametricModel m = testutil::random_simple_model(rng, 7, 2, false);
    CAPTURE(i);
    auto per = per_state_solution_functions(m, m.targets);
    SolutionFunction f = solution_function(m, m.targets);
    CHECK(rf_equal(per.at(m.init), f.value));
    Valuation val = testutil::const_valuation(m, rat(1, 3));
    std::vector<Rational> direct = mc_reach_exact_values(instantiate(m, val), m.targets);
    for (std::size_t s = 0; s < m.states.size(); ++s)
      CHECK(per.at(m.states[s]).eval(val) == direct[s]);
  }
}

TEST_CASE("elimination order does not change the function") {
  for (const char* name : {"tiny.pmc", "ky_die.pmc", "poly_simple.pmc", "poly_mixed.pmc"}) {
    ParametricModel m = testutil::load_model(name);
    CAPTURE(name);
    CHECK(rf_equal(solution_function(m, m.targets, EliminationOrder::AdaptiveDegree).value,
                   solution_function(m, m.targets, EliminationOrder::DeclarationOrder).value));
  }
  std::mt19937 rng(99);
  for (int i = 0; i < 30; ++i) {
    ParametricModel m = testutil::random_simple_model(rng, 8, 3, false);
    CAPTURE(i);
    CHECK(rf_equal(solution_function(m, m.targets, EliminationOrder::AdaptiveDegree).value,
                   solution_function(m, m.targets, EliminationOrder::DeclarationOrder).value));
  }
}

TEST_CASE("elimination aborts at the term cap") {
  std::size_t saved = elimination_term_cap();
  elimination_term_cap() = 1;
  expect_error(ErrorKind::EliminationBlowup, "state elimination",
               [] { solution_function(testutil::load_model("ky_die.pmc"), {"d2"}); });
  elimination_term_cap() = saved;
}

TEST_CASE("solution evaluation is refused off the graph-preserving set") {
  ParametricModel m = testutil::load_model("tiny.pmc");
  SolutionFunction f = solution_function(m, {"s2"});
  CHECK(solution_eval(f, m, vxy(rat(1, 2), rat(1, 2))) == rat(3, 4));
  // x = 0 is well-defined but lets the s0 -> s1 transition vanish.
  expect_error(ErrorKind::InvalidValuation, "graph-preserving",
               [&] { solution_eval(f, m, vxy(rat(0), rat(1, 2))); });
}

TEST_CASE("policy iteration agrees with strategy enumeration") {
  std::mt19937 rng(1234);
  for (int i = 0; i < 60; ++i) {
    ParametricModel m = testutil::random_simple_model(rng, 6, 2, true);
    Valuation val = testutil::const_valuation(m, rat(1, 3));
    ConcreteModel c = instantiate(m, val);
    CAPTURE(i);
    for (Extremum mode : {Extremum::Min, Extremum::Max}) {
      ExtremumResult pi = mdp_reach_extremum_exact(c, c.targets, mode);
      ExtremumResult en = mdp_reach_extremum_enumerated(c, c.targets, mode);
      CHECK(pi.value == en.value);
      // Both reported strategies attain the value they claim.
      for (const StrategyMD& sigma : {pi.strategy, en.strategy}) {
        ConcreteModel ind = instantiate(induced_pmc(m, sigma), val);
        CHECK(mc_reach_exact(ind, ind.targets) == pi.value);
      }
    }
    ExtremumResult mn = mdp_reach_extremum_exact(c, c.targets, Extremum::Min);
    ExtremumResult mx = mdp_reach_extremum_exact(c, c.targets, Extremum::Max);
    CHECK(mn.value <= mx.value);
  }
}

TEST_CASE("qualitative state sets match exact extremal values") {
  std::mt19937 rng(5150);
  for (int i = 0; i < 25; ++i) {
    ParametricModel m = testutil::random_simple_model(rng, 6, 2, true);
    Valuation val = testutil::const_valuation(m, rat(1, 3));
    ConcreteModel c = instantiate(m, val);
    CAPTURE(i);

    // Per-state extrema over every DM strategy, by brute force.
    std::vector<Rational> lo, hi;
    bool first = true;
    for (const StrategyMD& sigma : enumerate_strategies(m)) {
      ConcreteModel ind = instantiate(induced_pmc(m, sigma), val);
      std::vector<Rational> v = mc_reach_exact_values(ind, ind.targets);
      if (first) {
        lo = v;
        hi = v;
        first = false;
      } else {
        for (std::size_t s = 0; s < v.size(); ++s) {
          lo[s] = std::min(lo[s], v[s]);
          hi[s] = std::max(hi[s], v[s]);
        }
      }
    }

    StateSetReport rep = qualitative_states(c, c.targets);
    auto in = [](const std::vector<std::string>& xs, const std::string& s) {
      return std::find(xs.begin(), xs.end(), s) != xs.end();
    };
    for (std::size_t s = 0; s < m.states.size(); ++s) {
      const std::string& name = m.states[s];
      CAPTURE(name);
      CHECK(in(rep.zero_exists, name) == (lo[s] == 0));
      CHECK(in(rep.zero_forall, name) == (hi[s] == 0));
      CHECK(in(rep.one_exists, name) == (hi[s] == 1));
      CHECK(in(rep.one_forall, name) == (lo[s] == 1));
    }

    CHECK(mdp_reach_extremum_exact(c, c.targets, Extremum::Min).value ==
          lo[static_cast<std::size_t>(
              std::find(m.states.begin(), m.states.end(), m.init) - m.states.begin())]);
  }
}

TEST_CASE("same-class valuations agree on zero and one probabilities") {
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> pick3(0, 2);
  for (int i = 0; i < 20; ++i) {
    ParametricModel m = testutil::random_simple_model(rng, 5, 2, i % 2 == 1);
    CAPTURE(i);
    Valuation v1, v2;
    for (const auto& p : m.params) {
      int c = pick3(rng);
      v1[p] = c == 0 ? rat(0) : c == 1 ? rat(1, 2) : rat(1);
      v2[p] = c == 1 ? rat(1, 3) : v1[p];
    }
    for (const StrategyMD& sigma : enumerate_strategies(m)) {
      ParametricModel ind = induced_pmc(m, sigma);
      std::vector<Rational> a = mc_reach_exact_values(instantiate(ind, v1), m.targets);
      std::vector<Rational> b = mc_reach_exact_values(instantiate(ind, v2), m.targets);
      REQUIRE(a.size() == b.size());
      for (std::size_t s = 0; s < a.size(); ++s) {
        CHECK((a[s] == 0) == (b[s] == 0));
        CHECK((a[s] == 1) == (b[s] == 1));
      }
    }
  }
}

TEST_CASE("threshold comparisons") {
  ParametricModel die = testutil::load_model("ky_die.pmc");
  CHECK_FALSE(compare_at(die, vxy(rat(2, 5), rat(7, 10)), StrategyQuantifier::Exists,
                         RelOp::Gt, rat(3, 20)));
  CHECK(compare_at(die, vxy(rat(1, 2), rat(1, 2)), StrategyQuantifier::Exists, RelOp::Gt,
                   rat(3, 20)));

  // Exact boundary behaviour at the tiny model's value 3/4.
  ParametricModel tiny = testutil::load_model("tiny.pmc");
  Valuation half = vxy(rat(1, 2), rat(1, 2));
  CHECK(compare_at(tiny, half, StrategyQuantifier::Exists, RelOp::Ge, rat(3, 4)));
  CHECK(compare_at(tiny, half, StrategyQuantifier::Exists, RelOp::Le, rat(3, 4)));
  CHECK_FALSE(compare_at(tiny, half, StrategyQuantifier::Exists, RelOp::Gt, rat(3, 4)));
  CHECK_FALSE(compare_at(tiny, half, StrategyQuantifier::Exists, RelOp::Lt, rat(3, 4)));

  // Quantifiers pick the favorable respectively adverse extremum: the tiny
  // decision model ranges over [1/2, 3/4] at this valuation.
  ParametricModel mdp = testutil::load_model("tiny.pmdp");
  CHECK(compare_at(mdp, half, StrategyQuantifier::Exists, RelOp::Gt, rat(7, 10)));
  CHECK_FALSE(compare_at(mdp, half, StrategyQuantifier::Forall, RelOp::Gt, rat(7, 10)));
  CHECK(compare_at(mdp, half, StrategyQuantifier::Exists, RelOp::Le, rat(1, 2)));
  CHECK_FALSE(compare_at(mdp, half, StrategyQuantifier::Forall, RelOp::Le, rat(1, 2)));
  CHECK(compare_at(mdp, half, StrategyQuantifier::Forall, RelOp::Ge, rat(1, 2)));

  // Threshold 0 with >= holds everywhere.
  std::mt19937 rng(8080);
  for (int i = 0; i < 20; ++i) {
    ParametricModel m = testutil::random_simple_model(rng, 5, 2, i % 2 == 1);
    Valuation v = testutil::const_valuation(m, rat(2, 5));
    CHECK(compare_at(m, v, StrategyQuantifier::Exists, RelOp::Ge, rat(0)));
    CHECK(compare_at(m, v, StrategyQuantifier::Forall, RelOp::Ge, rat(0)));
  }

  expect_error(ErrorKind::NotWellDefined, "", [&] {
    compare_at(testutil::load_model("unrealizable.pmc"), half, StrategyQuantifier::Exists,
               RelOp::Ge, rat(1, 2));
  });
}

TEST_CASE("relop helpers") {
  CHECK(relop_parse("lt") == RelOp::Lt);
  CHECK(relop_parse("<=") == RelOp::Le);
  CHECK(relop_name(RelOp::Ge) == "ge");
  CHECK(relop_symbol(RelOp::Gt) == ">");
  CHECK(relop_holds(rat(1, 3), RelOp::Lt, rat(1, 2)));
  CHECK_FALSE(relop_holds(rat(1, 2), RelOp::Lt, rat(1, 2)));
  CHECK(relop_holds(rat(1, 2), RelOp::Le, rat(1, 2)));
  expect_error(ErrorKind::Usage, "eq", [] { relop_parse("eq"); });

  using SQ = StrategyQuantifier;
  CHECK(extremum_for(SQ::Exists, RelOp::Gt) == Extremum::Max);
  CHECK(extremum_for(SQ::Exists, RelOp::Ge) == Extremum::Max);
  CHECK(extremum_for(SQ::Exists, RelOp::Lt) == Extremum::Min);
  CHECK(extremum_for(SQ::Forall, RelOp::Gt) == Extremum::Min);
  CHECK(extremum_for(SQ::Forall, RelOp::Le) == Extremum::Max);
}
