#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fcv {

enum class ErrorKind {
  Domain,            // grid / argument outside an operator's domain
  Order,             // fractional order outside ]0,1[ where required
  Parse,             // Lagrangian DSL syntax error
  ExpressionDomain,  // log of non-positive, sqrt of negative, division by zero
  Constraint,        // boundary conditions or weak-variation constraint violated
  Hypothesis,        // a lemma's hypothesis does not hold for the input
  Divergence,        // non-finite objective during iteration
  Format,            // malformed CSV / JSON input
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, std::string expected, std::string found);

  /// Zero-based character offset; equals the input length at end of input.
  std::size_t position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  std::size_t position_;
  std::string expected_;
  std::string found_;
};

}  // namespace fcv
