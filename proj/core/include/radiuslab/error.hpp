#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radiuslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  DimensionError(const std::string& context, std::size_t lhs, std::size_t rhs);

  std::size_t lhs() const noexcept { return lhs_; }
  std::size_t rhs() const noexcept { return rhs_; }

 private:
  std::size_t lhs_;
  std::size_t rhs_;
};

class InvalidMatrixError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  NotHermitianError(double deviation, double threshold);

  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

/// Spectrum or argument outside the domain of a scalar function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver exhausted its sweep budget.
class ConvergenceError : public Error {
 public:
  ConvergenceError(int sweeps, double off_diagonal);

  int sweeps() const noexcept { return sweeps_; }
  double off_diagonal() const noexcept { return off_diagonal_; }

 private:
  int sweeps_;
  double off_diagonal_;
};

/// Order-doubling check of a quadrature rule failed.
class QuadratureError : public Error {
 public:
  QuadratureError(double coarse, double fine);

  double coarse() const noexcept { return coarse_; }
  double fine() const noexcept { return fine_; }

 private:
  double coarse_;
  double fine_;
};

/// A function or map lacks a property (convexity, unitality, ...) an
/// operation requires.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message);

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace radiuslab
