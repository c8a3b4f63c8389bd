#pragma once

// SMT-LIB 2.6 serialization of encoder formulas, solver-output parsing, and
// synchronous solver subprocess execution under a wall-clock timeout.

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <stdlib.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <cstddef>
#include <ctime>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "paramark/errors.hpp"
#include "paramark/etr.hpp"

namespace paramark {

// --- serialization -----------------------------------------------------------

namespace smtdetail {

inline std::string smt_rational(const Rational& r) {
  Integer num = r.get_num(), den = r.get_den();
  bool neg = num < 0;
  if (neg) num = -num;
  std::string core = den == 1
                         ? num.get_str()
                         : "(/ " + num.get_str() + " " + den.get_str() + ")";
  return neg ? "(- " + core + ")" : core;
}

inline std::string smt_poly(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::string> monos;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    if (c != 1 || m.exps.empty()) factors.push_back(smt_rational(c));
    for (const auto& [v, e] : m.exps)
      for (unsigned long i = 0; i < e; ++i) factors.push_back(v);
    if (factors.size() == 1) {
      monos.push_back(factors.front());
      continue;
    }
    std::string s = "(*";
    for (const auto& f : factors) s += " " + f;
    monos.push_back(s + ")");
  }
  if (monos.size() == 1) return monos.front();
  std::string s = "(+";
  for (const auto& t : monos) s += " " + t;
  return s + ")";
}

inline const char* smt_op(AtomOp op) {
  switch (op) {
    case AtomOp::Lt: return "<";
    case AtomOp::Le: return "<=";
    case AtomOp::Eq: return "=";
    case AtomOp::Ge: return ">=";
    case AtomOp::Gt: return ">";
  }
  fail(ErrorKind::Internal, "bad atom op");
}

inline std::string smt_formula(const EtrPtr& f) {
  switch (f->node) {
    case EtrFormula::Node::True: return "true";
    case EtrFormula::Node::False: return "false";
    case EtrFormula::Node::BoolVar: return f->name;
    case EtrFormula::Node::PolyAtom:
      return std::string("(") + smt_op(f->op) + " " + smt_poly(f->lhs) + " " +
             smt_poly(f->rhs) + ")";
    case EtrFormula::Node::Not:
      return "(not " + smt_formula(f->kids.at(0)) + ")";
    case EtrFormula::Node::Implies:
      return "(=> " + smt_formula(f->kids.at(0)) + " " +
             smt_formula(f->kids.at(1)) + ")";
    case EtrFormula::Node::Iff:
      return "(= " + smt_formula(f->kids.at(0)) + " " +
             smt_formula(f->kids.at(1)) + ")";
    case EtrFormula::Node::And:
    case EtrFormula::Node::Or: {
      std::string s = f->node == EtrFormula::Node::And ? "(and" : "(or";
      for (const auto& k : f->kids) s += " " + smt_formula(k);
      return s + ")";
    }
  }
  fail(ErrorKind::Internal, "bad formula node");
}

}  // namespace smtdetail

// Byte-deterministic QF_NRA script. Declarations are sorted by name; a
// top-level conjunction becomes one assert per conjunct. Raw extra asserts
// (caller-supplied region constraints) are spliced in before (check-sat).
inline std::string to_smt_script(const EtrPtr& formula,
                                 const std::vector<std::string>& extra_asserts = {}) {
  EtrVars vars = collect_vars(formula);
  std::string out = "(set-logic QF_NRA)\n";
  for (const auto& v : vars.reals) out += "(declare-const " + v + " Real)\n";
  for (const auto& v : vars.bools) out += "(declare-const " + v + " Bool)\n";
  std::vector<EtrPtr> conjuncts;
  if (formula->node == EtrFormula::Node::And)
    conjuncts = formula->kids;
  else
    conjuncts.push_back(formula);
  for (const auto& c : conjuncts)
    out += "(assert " + smtdetail::smt_formula(c) + ")\n";
  for (const auto& raw : extra_asserts) out += raw + "\n";
  out += "(check-sat)\n(get-model)\n";
  return out;
}

// --- solver model parsing ----------------------------------------------------

enum class SolverStatus { Sat, Unsat, Unknown, SolverError };

struct SolverVerdict {
  SolverStatus status = SolverStatus::SolverError;
  std::optional<Valuation> witness;  // rational parameter values only
  std::string raw_model;
  bool witness_irrational = false;  // Sat, but some value was not rational
};

namespace smtdetail {

inline std::vector<std::string> lex_sexpr(const std::string& text) {
  std::vector<std::string> toks;
  std::size_t i = 0, n = text.size();
  while (i < n) {
    char c = text[i];
    if (c == ';') {
      while (i < n && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '(' || c == ')') {
      toks.emplace_back(1, c);
      ++i;
    } else {
      std::size_t j = i;
      while (j < n && !std::isspace(static_cast<unsigned char>(text[j])) &&
             text[j] != '(' && text[j] != ')' && text[j] != ';')
        ++j;
      toks.push_back(text.substr(i, j - i));
      i = j;
    }
  }
  return toks;
}

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

// Integer, decimal, (- v), or (/ a b) values parse to a rational; any other
// balanced expression (root objects and friends) parses to "present but not
// rational". Structural damage raises UnparseableModel.
inline std::pair<std::optional<Rational>, std::size_t> parse_value(
    const std::vector<std::string>& toks, std::size_t i) {
  auto bad = [&]() {
    fail(ErrorKind::UnparseableModel, "malformed value in solver model");
  };
  if (i >= toks.size()) bad();
  const std::string& t = toks[i];
  if (t != "(") {
    if (t == ")") bad();
    if (all_digits(t)) return {rat_parse(t), i + 1};
    auto dot = t.find('.');
    if (dot != std::string::npos) {
      std::string whole = t.substr(0, dot), frac = t.substr(dot + 1);
      if (all_digits(whole) && (frac.empty() || all_digits(frac))) {
        Rational r = rat_parse(whole.empty() ? "0" : whole);
        if (!frac.empty()) {
          Rational scale = 1;
          for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
          r += rat_parse(frac) / scale;
        }
        return {r, i + 1};
      }
    }
    return {std::nullopt, i + 1};  // symbol: not rational
  }
  if (i + 1 >= toks.size()) bad();
  const std::string& head = toks[i + 1];
  if (head == "-" || head == "/") {
    auto [a, j] = parse_value(toks, i + 2);
    if (head == "-") {
      if (j >= toks.size() || toks[j] != ")") bad();
      if (!a) return {std::nullopt, j + 1};
      return {-*a, j + 1};
    }
    auto [b, k] = parse_value(toks, j);
    if (k >= toks.size() || toks[k] != ")") bad();
    if (!a || !b || *b == 0) return {std::nullopt, k + 1};
    return {*a / *b, k + 1};
  }
  // Unknown compound value: skip the balanced expression.
  std::size_t depth = 1, j = i + 1;
  while (j < toks.size() && depth > 0) {
    if (toks[j] == "(") ++depth;
    if (toks[j] == ")") --depth;
    ++j;
  }
  if (depth != 0) bad();
  return {std::nullopt, j};
}

}  // namespace smtdetail

// Reads the sat/unsat/unknown verdict and, when sat, the define-fun values.
// With a non-empty `params` list the witness is restricted to those names and
// requires every one of them; otherwise every Real-typed constant counts.
// The witness is dropped (and flagged) if any required value is irrational.
inline SolverVerdict parse_solver_model(const std::string& text,
                                        const std::vector<std::string>& params = {}) {
  SolverVerdict v;
  v.raw_model = text;

  std::vector<std::string> toks = smtdetail::lex_sexpr(text);
  for (const auto& t : toks) {
    if (t == "sat") {
      v.status = SolverStatus::Sat;
      break;
    }
    if (t == "unsat") {
      v.status = SolverStatus::Unsat;
      break;
    }
    if (t == "unknown") {
      v.status = SolverStatus::Unknown;
      break;
    }
  }
  if (v.status != SolverStatus::Sat) return v;

  Valuation reals;
  bool irrational = false;
  auto bad = [&]() {
    fail(ErrorKind::UnparseableModel, "malformed define-fun in solver model");
  };
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i] != "(" || toks[i + 1] != "define-fun") continue;
    std::size_t j = i + 2;
    if (j >= toks.size()) bad();
    std::string name = toks[j++];
    if (j >= toks.size() || toks[j] != "(") bad();
    if (j + 1 < toks.size() && toks[j + 1] != ")") {
      // Defined function with arguments: skip the whole form.
      std::size_t depth = 1, k = i + 1;
      while (k < toks.size() && depth > 0) {
        if (toks[k] == "(") ++depth;
        if (toks[k] == ")") --depth;
        ++k;
      }
      if (depth != 0) bad();
      i = k - 1;
      continue;
    }
    j += 2;  // past "(" ")"
    if (j >= toks.size()) bad();
    std::string type = toks[j++];
    auto [value, next] = smtdetail::parse_value(toks, j);
    if (next >= toks.size() || toks[next] != ")") bad();
    i = next;
    if (type != "Real") continue;
    if (value)
      reals[name] = *value;
    else
      irrational = true;
  }

  if (params.empty()) {
    if (irrational) {
      v.witness_irrational = true;
    } else if (!reals.empty()) {
      v.witness = std::move(reals);
    }
    return v;
  }
  Valuation filtered;
  bool complete = true;
  for (const auto& p : params) {
    auto it = reals.find(p);
    if (it == reals.end()) {
      complete = false;
      continue;
    }
    filtered[p] = it->second;
  }
  v.witness_irrational = irrational;
  if (complete && !irrational && !filtered.empty()) v.witness = std::move(filtered);
  return v;
}

// --- solver subprocess -------------------------------------------------------

struct SolverRun {
  int exit_code = -1;
  std::string output;
  bool timed_out = false;
};

// Writes the script to a temporary file, executes `solver_path <file>`
// synchronously, and captures stdout+stderr. On deadline expiry the solver
// is killed and timed_out is set. A missing executable surfaces as
// SolverUnavailable.
inline SolverRun run_solver(const std::string& solver_path,
                            const std::string& script, double timeout_sec) {
  char path[] = "/tmp/paramark-XXXXXX.smt2";
  int sfd = mkstemps(path, 5);
  if (sfd < 0) fail(ErrorKind::Internal, "cannot create temporary script file");
  {
    std::size_t off = 0;
    while (off < script.size()) {
      ssize_t wr = write(sfd, script.data() + off, script.size() - off);
      if (wr <= 0) {
        close(sfd);
        unlink(path);
        fail(ErrorKind::Internal, "cannot write temporary script file");
      }
      off += static_cast<std::size_t>(wr);
    }
    close(sfd);
  }

  int pipefd[2];
  if (pipe(pipefd) != 0) {
    unlink(path);
    fail(ErrorKind::Internal, "cannot create pipe");
  }
  pid_t pid = fork();
  if (pid < 0) {
    close(pipefd[0]);
    close(pipefd[1]);
    unlink(path);
    fail(ErrorKind::Internal, "cannot fork solver process");
  }
  if (pid == 0) {
    dup2(pipefd[1], 1);
    dup2(pipefd[1], 2);
    close(pipefd[0]);
    close(pipefd[1]);
    execlp(solver_path.c_str(), solver_path.c_str(), path,
           static_cast<char*>(nullptr));
    _exit(127);
  }
  close(pipefd[1]);

  SolverRun run;
  struct timespec start;
  clock_gettime(CLOCK_MONOTONIC, &start);
  auto elapsed = [&]() {
    struct timespec now;
    clock_gettime(CLOCK_MONOTONIC, &now);
    return static_cast<double>(now.tv_sec - start.tv_sec) +
           static_cast<double>(now.tv_nsec - start.tv_nsec) * 1e-9;
  };
  char buf[4096];
  bool open = true;
  while (open) {
    double left = timeout_sec - elapsed();
    if (left <= 0) {
      kill(pid, SIGKILL);
      run.timed_out = true;
      break;
    }
    struct pollfd pfd{pipefd[0], POLLIN, 0};
    int pr = poll(&pfd, 1, static_cast<int>(left * 1000) + 1);
    if (pr <= 0) continue;
    ssize_t rd = read(pipefd[0], buf, sizeof buf);
    if (rd <= 0)
      open = false;
    else
      run.output.append(buf, static_cast<std::size_t>(rd));
  }
  close(pipefd[0]);
  int status = 0;
  waitpid(pid, &status, 0);
  unlink(path);
  if (WIFEXITED(status)) run.exit_code = WEXITSTATUS(status);

  if (run.exit_code == 127 && run.output.empty())
    fail(ErrorKind::SolverUnavailable,
         "cannot execute solver '" + solver_path + "'");
  return run;
}

// One query end to end: serialize, run, parse. Timeouts raise SolverFailed
// so the caller can report "no verdict" rather than invent one.
inline SolverVerdict solve(const std::string& solver_path, const EtrPtr& formula,
                           double timeout_sec,
                           const std::vector<std::string>& params,
                           const std::vector<std::string>& extra_asserts = {}) {
  std::string script = to_smt_script(formula, extra_asserts);
  SolverRun run = run_solver(solver_path, script, timeout_sec);
  if (run.timed_out)
    fail(ErrorKind::SolverFailed, "solver timed out");
  return parse_solver_model(run.output, params);
}

}  // namespace paramark
