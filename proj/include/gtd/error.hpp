#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gtd {

struct Point2 {
  double q1 = 0.0;
  double q2 = 0.0;
};

enum class ErrorKind {
  SyntaxError,
  UnknownIdentifier,
  DomainError,
  SingularConformalFactor,
  DegenerateMetric,
  AllPointsDegenerate,
  NegativeRadicand,
  InvalidMixing,
  SingularDenominator,
  NegativeDiscriminant,
  ConstraintViolated,
  InvalidFamily,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. Carries a machine-readable kind and,
/// for pointwise failures, the offending grid location.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<Point2> where = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  const std::optional<Point2>& where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::optional<Point2> where_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected,
              const std::string& found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

}  // namespace gtd
