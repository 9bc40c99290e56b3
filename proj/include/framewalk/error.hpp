#pragma once

#include <stdexcept>
#include <string>

namespace framewalk {

enum class ErrorKind {
  Dimension,
  Parameter,
  Format,
  DegenerateInput,
  Rank,
  NonConvergence,
  SingularJacobian,
  StepTooLarge,
};

const char* to_string(ErrorKind kind);

// Process exit status for a failure of the given kind:
// 2 input/parameter, 3 rank, 4 numerical non-convergence.
int exit_code(ErrorKind kind);

class Error : public std::exception {
 public:
  Error(ErrorKind kind, std::string message);

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const char* what() const noexcept override { return message_.c_str(); }

  // Prefixes the message with "<context>: ". Used when rethrowing from an outer loop.
  void add_context(const std::string& context);

 private:
  ErrorKind kind_;
  std::string message_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(std::string message) : Error(ErrorKind::Dimension, std::move(message)) {}
};

class ParameterError : public Error {
 public:
  explicit ParameterError(std::string message) : Error(ErrorKind::Parameter, std::move(message)) {}
};

class FormatError : public Error {
 public:
  explicit FormatError(std::string message) : Error(ErrorKind::Format, std::move(message)) {}
};

class DegenerateInputError : public Error {
 public:
  explicit DegenerateInputError(std::string message)
      : Error(ErrorKind::DegenerateInput, std::move(message)) {}
};

// Raised by orthonormalization (index of the dependent vector) and by PCA
// (largest admissible dimension).
class RankError : public Error {
 public:
  RankError(std::string message, long index) : Error(ErrorKind::Rank, std::move(message)), index_(index) {}
  [[nodiscard]] long index() const noexcept { return index_; }

 private:
  long index_;
};

class NonConvergenceError : public Error {
 public:
  NonConvergenceError(std::string message, double residual)
      : Error(ErrorKind::NonConvergence, std::move(message)), residual_(residual) {}
  [[nodiscard]] double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class SingularJacobianError : public Error {
 public:
  explicit SingularJacobianError(std::string message)
      : Error(ErrorKind::SingularJacobian, std::move(message)) {}
};

class StepTooLargeError : public Error {
 public:
  StepTooLargeError(std::string message, double condition)
      : Error(ErrorKind::StepTooLarge, std::move(message)), condition_(condition) {}
  [[nodiscard]] double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace framewalk
