#include "framewalk/error.hpp"

namespace framewalk {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Format: return "format";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::Rank: return "rank";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::SingularJacobian: return "singular-jacobian";
    case ErrorKind::StepTooLarge: return "step-too-large";
  }
  return "unknown";
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Rank:
      return 3;
    case ErrorKind::NonConvergence:
    case ErrorKind::SingularJacobian:
    case ErrorKind::StepTooLarge:
      return 4;
    default:
      return 2;
  }
}

Error::Error(ErrorKind kind, std::string message) : kind_(kind), message_(std::move(message)) {}

void Error::add_context(const std::string& context) { message_ = context + ": " + message_; }

}  // namespace framewalk
