#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "paramark/model.hpp"
#include "paramark/model_io.hpp"

namespace testutil {

using namespace paramark;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), ("cannot open " + path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string repo_path(const std::string& rel) {
  return std::string(PARAMARK_SOURCE_DIR) + "/" + rel;
}

inline ParametricModel load_model(const std::string& name) {
  return parse_model(read_file(repo_path("models/" + name)));
}

// Random simple models: every row is either a coin row {x, 1-x} or a
// constant row over an exact random simplex point.
inline ParametricModel random_simple_model(std::mt19937& rng, int max_states,
                                           int max_params, bool mdp,
                                           int max_actions = 2) {
  std::uniform_int_distribution<int> nstates(2, max_states);
  std::uniform_int_distribution<int> nparams(1, max_params);
  ParametricModel m;
  m.mdp = mdp;
  int ns = nstates(rng);
  int np = nparams(rng);
  for (int i = 0; i < ns; ++i) m.states.push_back("s" + std::to_string(i));
  for (int i = 0; i < np; ++i) m.params.push_back("p" + std::to_string(i));
  m.init = "s0";
  // At least one target, drawn uniformly.
  std::uniform_int_distribution<int> anystate(0, ns - 1);
  m.targets.push_back(m.states[static_cast<std::size_t>(anystate(rng))]);

  std::uniform_int_distribution<int> nacts(1, max_actions);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> weight(1, 4);
  for (int i = 0; i < ns; ++i) {
    int acts = mdp ? nacts(rng) : 1;
    for (int a = 0; a < acts; ++a) {
      Row r;
      r.state = m.states[static_cast<std::size_t>(i)];
      r.action = mdp ? "a" + std::to_string(a) : kNoAction;
      if (coin(rng)) {
        int x = std::uniform_int_distribution<int>(0, np - 1)(rng);
        int to1 = anystate(rng);
        int to2 = anystate(rng);
        while (to2 == to1) to2 = anystate(rng);
        r.out.push_back({m.states[static_cast<std::size_t>(to1)],
                         Polynomial::variable(m.params[static_cast<std::size_t>(x)])});
        r.out.push_back({m.states[static_cast<std::size_t>(to2)],
                         Polynomial::constant(1) -
                             Polynomial::variable(m.params[static_cast<std::size_t>(x)])});
      } else {
        int k = std::uniform_int_distribution<int>(1, 3)(rng);
        std::vector<int> succs;
        std::vector<long> w;
        long total = 0;
        for (int j = 0; j < k; ++j) {
          int t = anystate(rng);
          bool dup = false;
          for (int s : succs) dup = dup || s == t;
          if (dup) continue;
          succs.push_back(t);
          w.push_back(weight(rng));
          total += w.back();
        }
        for (std::size_t j = 0; j < succs.size(); ++j)
          r.out.push_back({m.states[static_cast<std::size_t>(succs[j])],
                           Polynomial::constant(rat(w[j], total))});
      }
      m.rows.push_back(std::move(r));
    }
  }
  return m;
}

inline Valuation const_valuation(const ParametricModel& m, const Rational& v) {
  Valuation val;
  for (const auto& p : m.params) val[p] = v;
  return val;
}

}  // namespace testutil
