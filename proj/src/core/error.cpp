#include "core/error.hpp"

namespace fcv {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Domain:
      return "domain error";
    case ErrorKind::Order:
      return "order error";
    case ErrorKind::Parse:
      return "parse error";
    case ErrorKind::ExpressionDomain:
      return "expression domain error";
    case ErrorKind::Constraint:
      return "constraint error";
    case ErrorKind::Hypothesis:
      return "hypothesis error";
    case ErrorKind::Divergence:
      return "divergence error";
    case ErrorKind::Format:
      return "format error";
  }
  return "error";
}

namespace {

std::string describe(std::size_t position, const std::string& expected,
                     const std::string& found) {
  return "at offset " + std::to_string(position) + ": expected " + expected +
         ", found " + found;
}

}  // namespace

ParseError::ParseError(std::size_t position, std::string expected,
                       std::string found)
    : Error(ErrorKind::Parse, describe(position, expected, found)),
      position_(position),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

}  // namespace fcv
