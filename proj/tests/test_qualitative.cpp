#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "paramark/qualitative.hpp"

using namespace paramark;
using testutil::load_model;

namespace {

bool contains(const std::vector<std::string>& set, const std::string& s) {
  return std::find(set.begin(), set.end(), s) != set.end();
}

bool expected_answer(const StateSetReport& rep, const std::string& init, QualKind k,
                     StrategyQuantifier q) {
  bool ex = q == StrategyQuantifier::Exists;
  switch (k) {
    case QualKind::Positive:
      return ex ? !contains(rep.zero_forall, init) : !contains(rep.zero_exists, init);
    case QualKind::Safety:
      return ex ? contains(rep.zero_exists, init) : contains(rep.zero_forall, init);
    case QualKind::AlmostSure:
      return ex ? contains(rep.one_exists, init) : contains(rep.one_forall, init);
    case QualKind::Unsure:
      return ex ? !contains(rep.one_forall, init) : !contains(rep.one_exists, init);
  }
  return false;
}

std::vector<TransitionRef> sorted(std::vector<TransitionRef> v) {
  std::sort(v.begin(), v.end());
  return v;
}

const QualKind kKinds[] = {QualKind::Positive, QualKind::Unsure, QualKind::Safety,
                           QualKind::AlmostSure};
const StrategyQuantifier kQuants[] = {StrategyQuantifier::Exists,
                                      StrategyQuantifier::Forall};

}  // namespace

TEST_CASE("state sets of the one-parameter demo MDP across its graph classes") {
  auto m = load_model("qual_demo.pmdp");

  SUBCASE("interior valuation") {
    auto rep = qualitative_states(instantiate(m, {{"x", rat(1, 2)}}), m.targets);
    CHECK(rep.zero_exists == std::vector<std::string>{"s2", "s4", "s7"});
    CHECK(rep.zero_forall == std::vector<std::string>{"s2"});
    CHECK(rep.one_exists == std::vector<std::string>{"s3", "s4", "s6", "s7"});
    CHECK(rep.one_forall == std::vector<std::string>{"s3", "s6"});
  }

  SUBCASE("x = 0") {
    auto rep = qualitative_states(instantiate(m, {{"x", rat(0)}}), m.targets);
    CHECK(rep.zero_exists == std::vector<std::string>{"s0", "s2", "s4", "s7"});
    CHECK(rep.zero_forall == std::vector<std::string>{"s2"});
    CHECK(rep.one_exists == std::vector<std::string>{"s3", "s4", "s6", "s7"});
  }

  SUBCASE("x = 1") {
    auto rep = qualitative_states(instantiate(m, {{"x", rat(1)}}), m.targets);
    CHECK(rep.zero_exists == std::vector<std::string>{"s2", "s4", "s6", "s7"});
    CHECK(rep.zero_forall == rep.zero_exists);
    CHECK(rep.one_exists == std::vector<std::string>{"s0", "s1", "s3"});
  }
}

TEST_CASE("state sets on trivial and single-action models") {
  SUBCASE("initial state inside the targets") {
    ParametricModel m;
    m.states = {"s0"};
    m.init = "s0";
    m.targets = {"s0"};
    m.rows.push_back({"s0", kNoAction, {{"s0", Polynomial::constant(1)}}});
    auto rep = qualitative_states(instantiate(m, {}), m.targets);
    CHECK(contains(rep.one_exists, "s0"));
    CHECK(contains(rep.one_forall, "s0"));
    CHECK(rep.zero_exists.empty());
    CHECK(rep.zero_forall.empty());
  }

  SUBCASE("exists and forall variants coincide on chains") {
    auto m = load_model("tiny.pmc");
    for (auto x : {rat(0), rat(1, 2), rat(1)}) {
      auto rep = qualitative_states(instantiate(m, {{"x", x}, {"y", rat(1, 2)}}), m.targets);
      CHECK(rep.zero_exists == rep.zero_forall);
      CHECK(rep.one_exists == rep.one_forall);
    }
  }
}

TEST_CASE("graph-consistent partition on the shipped models") {
  SUBCASE("two mixed coins give all nine classes") {
    auto classes = graph_consistent_partition(load_model("ky_die.pmc"));
    CHECK(classes.size() == 9);
    std::set<std::vector<TransitionRef>> vanish_sets;
    for (const auto& c : classes) vanish_sets.insert(sorted(c.vanish));
    CHECK(vanish_sets.size() == 9);  // pairwise distinct
    for (const auto& c : classes) {
      CHECK(c.representative.size() == 2);
      for (const auto& [p, val] : c.representative)
        CHECK((val == 0 || val == rat(1, 2) || val == 1));
    }
  }

  SUBCASE("single coin gives three classes") {
    auto classes = graph_consistent_partition(load_model("qual_demo.pmdp"));
    REQUIRE(classes.size() == 3);
    CHECK(classes[0].representative.at("x") == 0);
    CHECK(classes[1].representative.at("x") == rat(1, 2));
    CHECK(classes[2].representative.at("x") == 1);
    CHECK(classes[1].vanish.empty());
  }

  SUBCASE("parameter-free model gives one class") {
    ParametricModel m;
    m.states = {"s0", "s1"};
    m.init = "s0";
    m.targets = {"s1"};
    m.rows.push_back({"s0", kNoAction,
                      {{"s0", Polynomial::constant(rat(1, 2))},
                       {"s1", Polynomial::constant(rat(1, 2))}}});
    m.rows.push_back({"s1", kNoAction, {{"s1", Polynomial::constant(1)}}});
    auto classes = graph_consistent_partition(m);
    REQUIRE(classes.size() == 1);
    CHECK(classes[0].vanish.empty());
    CHECK(classes[0].representative.empty());
  }

  SUBCASE("a second in-class sample reproduces the vanish set") {
    for (const char* name : {"ky_die.pmc", "tiny.pmc", "tiny.pmdp"}) {
      auto m = load_model(name);
      for (const auto& c : graph_consistent_partition(m)) {
        Valuation second = c.representative;
        for (auto& [p, val] : second)
          if (val == rat(1, 2)) val = rat(1, 3);
        auto r = classify_valuation(m, second);
        REQUIRE(r.well_defined);
        CHECK(sorted(r.vanish) == sorted(c.vanish));
      }
    }
  }

  SUBCASE("class count is bounded by 3^params") {
    std::mt19937 rng(23);
    for (int i = 0; i < 40; ++i) {
      auto m = testutil::random_simple_model(rng, 6, 3, i % 2 == 1);
      auto classes = graph_consistent_partition(m);
      std::size_t bound = 1;
      for (std::size_t p = 0; p < m.params.size(); ++p) bound *= 3;
      CHECK(classes.size() <= bound);
      std::set<std::vector<TransitionRef>> vs;
      for (const auto& c : classes) vs.insert(sorted(c.vanish));
      CHECK(vs.size() == classes.size());
    }
  }
}

TEST_CASE("branching rows over otherwise-unused parameters are accepted") {
  auto m = parse_model(
      "@type pmc\n"
      "@params y1 y2\n"
      "@states s0 s1 s2\n"
      "@init s0\n"
      "@targets s1\n"
      "s0 -> s1 : y1\n"
      "s0 -> s2 : y2\n"
      "s1 -> s1 : 1\n"
      "s2 -> s2 : 1\n");
  CHECK_FALSE(is_simple(m));  // the row does not sum to 1 syntactically

  auto classes = graph_consistent_partition(m);
  CHECK(classes.size() == 3);  // supports {y1}, {y2}, {y1,y2}

  auto pos = decide_qualitative(m, {QualKind::Positive, StrategyQuantifier::Exists,
                                    ValueDomain::Boolean});
  REQUIRE(pos.answer);
  CHECK(pos.witness->at("y1") == 1);
  CHECK(pos.witness->at("y2") == 0);

  auto safe = decide_qualitative(m, {QualKind::Safety, StrategyQuantifier::Exists,
                                     ValueDomain::Wd});
  REQUIRE(safe.answer);
  CHECK(safe.witness->at("y1") == 0);
  CHECK(safe.witness->at("y2") == 1);

  auto almost = decide_qualitative(m, {QualKind::AlmostSure, StrategyQuantifier::Exists,
                                       ValueDomain::Gp});
  CHECK_FALSE(almost.answer);
}

TEST_CASE("models outside the simple fragment are rejected") {
  CHECK_THROWS_AS(
      decide_qualitative(load_model("unrealizable.pmc"), {QualKind::Positive}), Error);
  // Parameters shared between branching rows fall outside the fragment.
  CHECK_THROWS_AS(decide_qualitative(load_model("rps.pmdp"), {QualKind::Positive}),
                  Error);
  try {
    graph_consistent_partition(load_model("rps.pmdp"));
    FAIL("expected NotSimple");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSimple);
  }
}

TEST_CASE("the class-enumeration cap is enforced and adjustable") {
  auto m = load_model("tiny.pmc");  // 2 parameters
  std::size_t saved = qualitative_param_cap();
  qualitative_param_cap() = 1;
  CHECK_THROWS_AS(graph_consistent_partition(m), Error);
  CHECK_THROWS_AS(
      decide_qualitative(m, {QualKind::Unsure, StrategyQuantifier::Exists, ValueDomain::Wd}),
      Error);
  // The graph-preserving domain and the positive shortcut need one class only.
  CHECK_NOTHROW(decide_qualitative(
      m, {QualKind::Unsure, StrategyQuantifier::Exists, ValueDomain::Gp}));
  CHECK_NOTHROW(decide_qualitative(
      m, {QualKind::Positive, StrategyQuantifier::Exists, ValueDomain::Wd}));
  qualitative_param_cap() = saved;
  CHECK_NOTHROW(graph_consistent_partition(m));
}

TEST_CASE("decisions on the demo MDP match the hand-computed sets") {
  auto m = load_model("qual_demo.pmdp");
  auto decide = [&](QualKind k, StrategyQuantifier q, ValueDomain d) {
    return decide_qualitative(m, {k, q, d});
  };
  using SQ = StrategyQuantifier;

  CHECK(decide(QualKind::Positive, SQ::Exists, ValueDomain::Gp).answer);
  CHECK(decide(QualKind::Unsure, SQ::Exists, ValueDomain::Gp).answer);
  CHECK_FALSE(decide(QualKind::Safety, SQ::Exists, ValueDomain::Gp).answer);
  CHECK_FALSE(decide(QualKind::AlmostSure, SQ::Exists, ValueDomain::Gp).answer);

  // Only x = 0 lets the initial state avoid the target entirely.
  auto safety = decide(QualKind::Safety, SQ::Exists, ValueDomain::Wd);
  REQUIRE(safety.answer);
  CHECK(safety.witness->at("x") == 0);
  REQUIRE(safety.strategy_witness.has_value());
  CHECK(safety.strategy_witness->choice.at("s0") == "a");  // a goes straight to s2

  // Only x = 1 turns the initial state almost-sure.
  auto almost = decide(QualKind::AlmostSure, SQ::Exists, ValueDomain::Wd);
  REQUIRE(almost.answer);
  CHECK(almost.witness->at("x") == 1);

  CHECK_FALSE(decide(QualKind::Safety, SQ::Forall, ValueDomain::Wd).answer);
  CHECK_FALSE(decide(QualKind::AlmostSure, SQ::Forall, ValueDomain::Wd).answer);

  auto unsure = decide(QualKind::Unsure, SQ::Forall, ValueDomain::Wd);
  REQUIRE(unsure.answer);
  CHECK(unsure.witness->at("x") == 0);
}

TEST_CASE("fixpoint sets agree with strategy enumeration on small MDPs") {
  std::mt19937 rng(31);
  for (int i = 0; i < 25; ++i) {
    auto m = testutil::random_simple_model(rng, 5, 2, true);
    auto val = testutil::const_valuation(m, rat(1, 3));
    auto rep = qualitative_states(instantiate(m, val), m.targets);

    StateSetReport brute;
    for (const auto& s : m.states) {
      bool ze = false, zf = true, oe = false, of = true;
      for (const auto& sigma : enumerate_strategies(m)) {
        auto chain = qualitative_states(instantiate(induced_pmc(m, sigma), val), m.targets);
        bool z = contains(chain.zero_exists, s);
        bool o = contains(chain.one_exists, s);
        ze = ze || z;
        zf = zf && z;
        oe = oe || o;
        of = of && o;
      }
      if (ze) brute.zero_exists.push_back(s);
      if (zf) brute.zero_forall.push_back(s);
      if (oe) brute.one_exists.push_back(s);
      if (of) brute.one_forall.push_back(s);
    }
    CHECK(rep.zero_exists == brute.zero_exists);
    CHECK(rep.zero_forall == brute.zero_forall);
    CHECK(rep.one_exists == brute.one_exists);
    CHECK(rep.one_forall == brute.one_forall);
  }
}

TEST_CASE("graph-preserving answers are invariant across interior points") {
  std::mt19937 rng(37);
  for (int i = 0; i < 30; ++i) {
    auto m = testutil::random_simple_model(rng, 6, 3, i % 2 == 1);
    for (QualKind k : kKinds)
      for (StrategyQuantifier q : kQuants) {
        bool got = decide_qualitative(m, {k, q, ValueDomain::Gp}).answer;
        for (auto point : {rat(1, 3), rat(3, 4)}) {
          auto rep = qualitative_states(
              instantiate(m, testutil::const_valuation(m, point)), m.targets);
          CHECK(got == expected_answer(rep, m.init, k, q));
        }
      }
  }
}

TEST_CASE("witnesses returned by the decision procedure are valid") {
  std::mt19937 rng(41);
  int verified = 0;
  for (int i = 0; i < 40; ++i) {
    auto m = testutil::random_simple_model(rng, 6, 2, i % 2 == 1);
    for (QualKind k : kKinds)
      for (StrategyQuantifier q : kQuants)
        for (ValueDomain d : {ValueDomain::Wd, ValueDomain::Gp, ValueDomain::Boolean}) {
          auto dec = decide_qualitative(m, {k, q, d});
          if (!dec.answer) continue;
          REQUIRE(dec.witness.has_value());
          auto cls = classify_valuation(m, *dec.witness);
          REQUIRE(cls.well_defined);
          if (d == ValueDomain::Gp) REQUIRE(cls.graph_preserving);
          if (d == ValueDomain::Boolean) REQUIRE(cls.boolean_val);
          auto rep = qualitative_states(instantiate(m, *dec.witness), m.targets);
          REQUIRE(expected_answer(rep, m.init, k, q));
          ++verified;

          if (m.mdp && q == StrategyQuantifier::Exists) {
            REQUIRE(dec.strategy_witness.has_value());
            auto chain = qualitative_states(
                instantiate(induced_pmc(m, *dec.strategy_witness), *dec.witness),
                m.targets);
            bool ok = false;
            switch (k) {
              case QualKind::Positive: ok = !contains(chain.zero_exists, m.init); break;
              case QualKind::Safety: ok = contains(chain.zero_exists, m.init); break;
              case QualKind::AlmostSure: ok = contains(chain.one_exists, m.init); break;
              case QualKind::Unsure: ok = !contains(chain.one_exists, m.init); break;
            }
            REQUIRE(ok);
          }
        }
  }
  CHECK(verified > 200);  // the sweep exercises plenty of true answers
}
