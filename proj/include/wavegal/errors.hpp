#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wavegal {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Invalid input data (bad coefficients, non-SPD tensor, negative dt, ...).
class ValidationError : public Error {
public:
  using Error::Error;
};

// Point outside the computational domain.
class DomainError : public Error {
public:
  using Error::Error;
};

// Vector/matrix size mismatch.
class DimensionError : public Error {
public:
  using Error::Error;
};

// Basis construction failure (refinement eigenproblem degenerate, ...).
class ConstructionError : public Error {
public:
  using Error::Error;
};

// Requested discretization exceeds the memory budget.
class ResourceError : public Error {
public:
  using Error::Error;
};

// Active sets derived from different full index sets.
class StructuralError : public Error {
public:
  using Error::Error;
};

// Iterative solver failed to converge; carries the residual history.
class ConvergenceError : public Error {
public:
  ConvergenceError(const std::string& msg, std::vector<double> residuals)
      : Error(msg), residual_history(std::move(residuals)) {}
  std::vector<double> residual_history;
};

// Matrix not SPD where PCG requires it.
class MatrixError : public Error {
public:
  using Error::Error;
};

// Reference (oracle) solver failure.
class OracleError : public Error {
public:
  using Error::Error;
};

// Reference grid too coarse for the requested error norm.
class ResolutionError : public Error {
public:
  using Error::Error;
};

// Configuration file problems; carries the offending line/key when known.
class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& msg, int line = -1, std::string key = {})
      : Error(msg), line_number(line), key(std::move(key)) {}
  int line_number;
  std::string key;
};

// Filesystem / output problems.
class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace wavegal
