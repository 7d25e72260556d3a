#pragma once

#include <stdexcept>
#include <string>

namespace preserver {

struct ZeroPolynomialError : std::invalid_argument {
  explicit ZeroPolynomialError(const std::string& what) : std::invalid_argument(what) {}
};

struct ConstantPolynomialError : std::invalid_argument {
  explicit ConstantPolynomialError(const std::string& what) : std::invalid_argument(what) {}
};

struct NoConvergenceError : std::runtime_error {
  explicit NoConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

struct NotHyperbolicError : std::invalid_argument {
  explicit NotHyperbolicError(const std::string& what) : std::invalid_argument(what) {}
};

struct NotStableError : std::invalid_argument {
  explicit NotStableError(const std::string& what) : std::invalid_argument(what) {}
};

struct DegenerateMapError : std::invalid_argument {
  explicit DegenerateMapError(const std::string& what) : std::invalid_argument(what) {}
};

struct DegreeExceededError : std::invalid_argument {
  explicit DegreeExceededError(const std::string& what) : std::invalid_argument(what) {}
};

struct DimensionMismatchError : std::invalid_argument {
  explicit DimensionMismatchError(const std::string& what) : std::invalid_argument(what) {}
};

struct NotRealOperatorError : std::invalid_argument {
  explicit NotRealOperatorError(const std::string& what) : std::invalid_argument(what) {}
};

struct UnboundedDomainRequiredError : std::invalid_argument {
  explicit UnboundedDomainRequiredError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace preserver
