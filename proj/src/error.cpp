#include "gtd/error.hpp"

#include <cstdio>

namespace gtd {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SingularConformalFactor: return "SingularConformalFactor";
    case ErrorKind::DegenerateMetric: return "DegenerateMetric";
    case ErrorKind::AllPointsDegenerate: return "AllPointsDegenerate";
    case ErrorKind::NegativeRadicand: return "NegativeRadicand";
    case ErrorKind::InvalidMixing: return "InvalidMixing";
    case ErrorKind::SingularDenominator: return "SingularDenominator";
    case ErrorKind::NegativeDiscriminant: return "NegativeDiscriminant";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::InvalidFamily: return "InvalidFamily";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

std::string with_location(const std::string& message,
                          const std::optional<Point2>& where) {
  if (!where) return message;
  char buf[96];
  std::snprintf(buf, sizeof buf, " at (q1=%.17g, q2=%.17g)", where->q1,
                where->q2);
  return message + buf;
}

std::string syntax_message(std::size_t offset,
                           const std::vector<std::string>& expected,
                           const std::string& found) {
  std::string msg = "at offset " + std::to_string(offset) + ": found '" +
                    found + "', expected one of {";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) msg += ", ";
    msg += expected[i];
  }
  return msg + "}";
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<Point2> where)
    : std::runtime_error(with_location(message, where)),
      kind_(kind),
      where_(where) {}

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         const std::string& found)
    : Error(ErrorKind::SyntaxError, syntax_message(offset, expected, found)),
      offset_(offset),
      expected_(std::move(expected)) {}

}  // namespace gtd
