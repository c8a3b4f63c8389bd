#pragma once

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paramark/model.hpp"

namespace paramark {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

inline std::string strip_comment(const std::string& line) {
  std::size_t h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  char c = s[0];
  if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) return false;
  for (char k : s.substr(1))
    if (!(std::isalnum(static_cast<unsigned char>(k)) || k == '_' || k == '\''))
      return false;
  return true;
}

[[noreturn]] inline void syntax_at(int line, const std::string& msg) {
  fail(ErrorKind::Syntax, "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] inline void semantic_at(int line, const std::string& msg) {
  fail(ErrorKind::Semantic, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace detail

// --- model format -----------------------------------------------------------
//
//   @type pmc|pmdp
//   @params x y            (optional)
//   @states s0 s1
//   @init s0
//   @targets s1            (optional)
//   s0 -> s1 : x           (pmc row)
//   s0 [alpha] -> s1 : x   (pmdp row)
//
// '#' starts a comment. Directives must precede the transitions they govern;
// each directive may appear once.

inline ParametricModel parse_model(const std::string& text) {
  using namespace detail;
  ParametricModel m;
  bool saw_type = false, saw_states = false, saw_params = false, saw_init = false,
       saw_targets = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  // (state, action) -> index into m.rows
  std::map<std::pair<std::string, std::string>, std::size_t> row_at;

  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;

    if (line[0] == '@') {
      auto toks = split_ws(line);
      const std::string& dir = toks[0];
      if (dir == "@type") {
        if (saw_type) syntax_at(lineno, "duplicate @type");
        if (toks.size() != 2 || (toks[1] != "pmc" && toks[1] != "pmdp"))
          syntax_at(lineno, "@type needs exactly one of: pmc, pmdp");
        m.mdp = toks[1] == "pmdp";
        saw_type = true;
      } else if (dir == "@params") {
        if (saw_params) syntax_at(lineno, "duplicate @params");
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (!is_identifier(toks[i]))
            syntax_at(lineno, "bad parameter name '" + toks[i] + "'");
          m.params.push_back(toks[i]);
        }
        saw_params = true;
      } else if (dir == "@states") {
        if (saw_states) syntax_at(lineno, "duplicate @states");
        if (toks.size() < 2) syntax_at(lineno, "@states needs at least one state");
        for (std::size_t i = 1; i < toks.size(); ++i) {
          if (!is_identifier(toks[i]))
            syntax_at(lineno, "bad state name '" + toks[i] + "'");
          m.states.push_back(toks[i]);
        }
        saw_states = true;
      } else if (dir == "@init") {
        if (saw_init) syntax_at(lineno, "duplicate @init");
        if (toks.size() != 2) syntax_at(lineno, "@init needs exactly one state");
        m.init = toks[1];
        saw_init = true;
      } else if (dir == "@targets") {
        if (saw_targets) syntax_at(lineno, "duplicate @targets");
        for (std::size_t i = 1; i < toks.size(); ++i) m.targets.push_back(toks[i]);
        saw_targets = true;
      } else {
        syntax_at(lineno, "unknown directive '" + dir + "'");
      }
      continue;
    }

    // Transition line.
    if (!saw_type) syntax_at(lineno, "transition before @type");
    if (!saw_states) syntax_at(lineno, "transition before @states");

    std::size_t arrow = line.find("->");
    if (arrow == std::string::npos) syntax_at(lineno, "expected '->'");
    std::size_t colon = line.find(':', arrow);
    if (colon == std::string::npos) syntax_at(lineno, "expected ':' after successor");

    std::string head = trim(line.substr(0, arrow));
    std::string succ = trim(line.substr(arrow + 2, colon - arrow - 2));
    std::string poly_text = trim(line.substr(colon + 1));

    std::string state = head, action = kNoAction;
    std::size_t lb = head.find('[');
    if (lb != std::string::npos) {
      std::size_t rb = head.find(']', lb);
      if (rb == std::string::npos) syntax_at(lineno, "unterminated '['");
      state = trim(head.substr(0, lb));
      action = trim(head.substr(lb + 1, rb - lb - 1));
      if (trim(head.substr(rb + 1)) != "") syntax_at(lineno, "text after ']'");
      if (!is_identifier(action)) syntax_at(lineno, "bad action name '" + action + "'");
    }
    if (!is_identifier(state)) syntax_at(lineno, "bad state name '" + state + "'");
    if (!is_identifier(succ)) syntax_at(lineno, "bad state name '" + succ + "'");
    if (m.mdp && action == kNoAction)
      syntax_at(lineno, "pmdp transition needs an [action]");
    if (!m.mdp && action != kNoAction)
      syntax_at(lineno, "pmc transition cannot carry an [action]");
    if (!m.has_state(state)) semantic_at(lineno, "undeclared state '" + state + "'");
    if (!m.has_state(succ)) semantic_at(lineno, "undeclared state '" + succ + "'");
    if (poly_text.empty()) syntax_at(lineno, "missing transition label");

    Polynomial label;
    try {
      label = poly_parse(poly_text);
    } catch (const Error& e) {
      syntax_at(lineno, e.what());
    }
    for (const auto& v : label.vars())
      if (!m.has_param(v)) semantic_at(lineno, "undeclared parameter '" + v + "'");
    if (label.is_zero()) semantic_at(lineno, "zero label (omit absent transitions)");

    auto key = std::make_pair(state, action);
    auto it = row_at.find(key);
    if (it == row_at.end()) {
      row_at.emplace(key, m.rows.size());
      m.rows.push_back({state, action, {{succ, label}}});
    } else {
      Row& r = m.rows[it->second];
      for (const auto& t : r.out)
        if (t.to == succ)
          semantic_at(lineno, "duplicate transition to '" + succ + "'");
      r.out.push_back({succ, label});
    }
  }

  if (!saw_type) fail(ErrorKind::Syntax, "missing @type");
  if (!saw_states) fail(ErrorKind::Syntax, "missing @states");
  if (!saw_init) fail(ErrorKind::Syntax, "missing @init");

  auto violations = validate(m);
  if (!violations.empty()) {
    std::string msg = "invalid model:";
    int shown = 0;
    for (const auto& v : violations) {
      if (shown++ == 3) {
        msg += " ...";
        break;
      }
      msg += " [" + v.code + " at " + v.where + ": " + v.message + "]";
    }
    fail(ErrorKind::Semantic, msg);
  }
  return m;
}

inline std::string print_model(const ParametricModel& m) {
  std::string out = "@type ";
  out += m.mdp ? "pmdp" : "pmc";
  out += "\n";
  if (!m.params.empty()) {
    out += "@params";
    for (const auto& p : m.params) out += " " + p;
    out += "\n";
  }
  out += "@states";
  for (const auto& s : m.states) out += " " + s;
  out += "\n@init " + m.init + "\n";
  if (!m.targets.empty()) {
    out += "@targets";
    for (const auto& t : m.targets) out += " " + t;
    out += "\n";
  }
  for (const auto& r : m.rows)
    for (const auto& t : r.out) {
      out += r.state;
      if (!r.action.empty()) out += " [" + r.action + "]";
      out += " -> " + t.to + " : " + t.label.to_string() + "\n";
    }
  return out;
}

// --- DIMACS CNF ---------------------------------------------------------------

struct Cnf3 {
  int num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

// Standard `p cnf V C` format; 'c' lines are comments. Clauses with fewer
// than three literals are padded by repeating the last literal; more than
// three is an error (NotThreeCnf).
inline Cnf3 parse_dimacs(const std::string& text) {
  Cnf3 out;
  std::istringstream in(text);
  std::string line;
  bool saw_header = false;
  int declared_clauses = 0;
  std::vector<int> current;
  int lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == 'c') continue;
    if (t[0] == 'p') {
      if (saw_header) detail::syntax_at(lineno, "duplicate header");
      auto toks = detail::split_ws(t);
      if (toks.size() != 4 || toks[1] != "cnf")
        detail::syntax_at(lineno, "expected 'p cnf V C'");
      try {
        out.num_vars = std::stoi(toks[2]);
        declared_clauses = std::stoi(toks[3]);
      } catch (const std::exception&) {
        detail::syntax_at(lineno, "bad header numbers");
      }
      if (out.num_vars < 1 || declared_clauses < 0)
        detail::syntax_at(lineno, "bad header numbers");
      saw_header = true;
      continue;
    }
    if (!saw_header) detail::syntax_at(lineno, "clause before header");
    std::istringstream nums(t);
    int lit;
    while (nums >> lit) {
      if (lit == 0) {
        if (current.empty()) detail::syntax_at(lineno, "empty clause");
        if (current.size() > 3)
          fail(ErrorKind::NotThreeCnf,
               "line " + std::to_string(lineno) + ": clause has " +
                   std::to_string(current.size()) + " literals");
        while (current.size() < 3) current.push_back(current.back());
        out.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
      } else {
        if (lit > out.num_vars || lit < -out.num_vars)
          detail::syntax_at(lineno, "literal out of range");
        current.push_back(lit);
      }
    }
    if (!nums.eof()) detail::syntax_at(lineno, "bad token in clause");
  }
  if (!saw_header) fail(ErrorKind::Syntax, "missing 'p cnf' header");
  if (!current.empty()) fail(ErrorKind::Syntax, "unterminated clause at end of input");
  if (static_cast<int>(out.clauses.size()) != declared_clauses)
    fail(ErrorKind::Syntax, "header declares " + std::to_string(declared_clauses) +
                                " clauses, found " + std::to_string(out.clauses.size()));
  return out;
}

// --- polynomial systems ---------------------------------------------------------

struct PolySystem {
  std::vector<std::string> variables;
  std::vector<Polynomial> polys;
};

// `@vars x y` header, then one polynomial per line. An empty list is a
// vacuously satisfiable conjunction. degree_bound (when given) rejects
// polynomials of higher total degree.
inline PolySystem parse_poly_system(const std::string& text,
                                    std::optional<unsigned long> degree_bound = {}) {
  using namespace detail;
  PolySystem out;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  bool saw_vars = false;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (!saw_vars) {
      auto toks = split_ws(line);
      if (toks.empty() || toks[0] != "@vars")
        syntax_at(lineno, "expected '@vars' header");
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!is_identifier(toks[i]))
          syntax_at(lineno, "bad variable name '" + toks[i] + "'");
        for (const auto& seen : out.variables)
          if (seen == toks[i]) syntax_at(lineno, "duplicate variable '" + toks[i] + "'");
        out.variables.push_back(toks[i]);
      }
      saw_vars = true;
      continue;
    }
    Polynomial p;
    try {
      p = poly_parse(line);
    } catch (const Error& e) {
      syntax_at(lineno, e.what());
    }
    for (const auto& v : p.vars()) {
      bool known = false;
      for (const auto& d : out.variables) known = known || d == v;
      if (!known) semantic_at(lineno, "undeclared variable '" + v + "'");
    }
    if (degree_bound && p.total_degree() > *degree_bound)
      fail(ErrorKind::DegreeExceeded,
           "line " + std::to_string(lineno) + ": total degree " +
               std::to_string(p.total_degree()) + " exceeds bound " +
               std::to_string(*degree_bound));
    out.polys.push_back(std::move(p));
  }
  if (!saw_vars) fail(ErrorKind::Syntax, "missing '@vars' header");
  return out;
}

}  // namespace paramark
