#include "radiuslab/error.hpp"

#include <sstream>

namespace radiuslab {

namespace {

std::string format_dimension(const std::string& context, std::size_t lhs,
                             std::size_t rhs) {
  std::ostringstream os;
  os << context << ": dimension mismatch (" << lhs << " vs " << rhs << ")";
  return os.str();
}

std::string format_double(const char* prefix, double a, const char* mid,
                          double b) {
  std::ostringstream os;
  os.precision(17);
  os << prefix << a << mid << b;
  return os.str();
}

}  // namespace

DimensionError::DimensionError(const std::string& context, std::size_t lhs,
                               std::size_t rhs)
    : Error(format_dimension(context, lhs, rhs)), lhs_(lhs), rhs_(rhs) {}

NotHermitianError::NotHermitianError(double deviation, double threshold)
    : Error(format_double("matrix is not Hermitian: relative deviation ",
                          deviation, " exceeds ", threshold)),
      deviation_(deviation) {}

ConvergenceError::ConvergenceError(int sweeps, double off_diagonal)
    : Error(format_double("Jacobi eigensolver did not converge: sweeps ",
                          sweeps, ", remaining off-diagonal mass ",
                          off_diagonal)),
      sweeps_(sweeps),
      off_diagonal_(off_diagonal) {}

QuadratureError::QuadratureError(double coarse, double fine)
    : Error(format_double("quadrature order doubling disagrees: coarse ",
                          coarse, ", fine ", fine)),
      coarse_(coarse),
      fine_(fine) {}

ConfigError::ConfigError(std::string field, const std::string& message)
    : Error(field + ": " + message), field_(std::move(field)) {}

}  // namespace radiuslab
