#pragma once

#include <stdexcept>
#include <string>

namespace paramark {

enum class ErrorKind {
  Syntax,             // malformed text input (position-carrying message)
  Semantic,           // well-formed text, inconsistent content
  MissingParameter,   // valuation does not cover a parameter
  MissingVariable,    // solver model does not assign a variable
  NotWellDefined,     // valuation outside the well-defined set
  NotSimple,          // model outside the accepted simple fragment
  NotPmc,             // operation needs a single-action model
  NotPmdp,            // operation needs an action-labelled model
  InvalidStrategy,    // strategy map inconsistent with the model
  InvalidValuation,   // valuation inconsistent with the request
  DegreeExceeded,     // polynomial system above the degree bound
  NotThreeCnf,        // clause with more than three literals
  ThresholdOutOfRange,// threshold not strictly between 0 and 1
  ExponentOverflow,   // exponent above the configured polynomial cap
  EliminationBlowup,  // elimination intermediate above the size caps
  LimitExceeded,      // enumeration above the configured parameter cap
  SolverUnavailable,  // no solver configured or spawn failed
  SolverFailed,       // solver ran but produced no usable verdict
  UnparseableModel,   // solver model text could not be parsed
  Usage,              // bad CLI invocation
  Internal,           // broken internal invariant
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace paramark
