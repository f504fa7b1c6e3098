#pragma once

#include <functional>
#include <vector>

#include "radiuslab/matrix.hpp"
#include "radiuslab/scalar_function.hpp"

namespace radiuslab {

inline constexpr int kJacobiMaxSweeps = 60;
inline constexpr double kJacobiTolerance = 1e-13;
/// Eigenvalues in [-kSpectralClamp·‖H‖, 0) are clamped to 0 before applying a
/// function whose domain is [0, ∞).
inline constexpr double kSpectralClamp = 1e-10;

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix vectors;            // column k pairs with eigenvalues[k]
  double residual = 0.0;            // ‖H − VΛV*‖_F / max(1, ‖H‖_F)
  int sweeps = 0;

  Vector column(std::size_t k) const;
};

/// Cyclic Jacobi with complex rotations. Sweeps until the off-diagonal
/// Frobenius mass is <= 1e-13·‖H‖_F; throws ConvergenceError after
/// `max_sweeps`. Eigenvector phases are normalized so the first component
/// of magnitude > 1e-10 is real positive.
EigenDecomposition eig_hermitian(const HermitianMatrix& h,
                                 int max_sweeps = kJacobiMaxSweeps);

/// ‖V*V − I‖_F.
double orthonormality_error(const ComplexMatrix& v);

/// V f(Λ) V*, with the [0, ∞) clamp policy applied when `nonneg_domain`.
HermitianMatrix apply_function(const HermitianMatrix& h,
                               const std::function<double(double)>& f,
                               bool nonneg_domain);
HermitianMatrix apply_function(const HermitianMatrix& h,
                               const ScalarFunction& f);
HermitianMatrix apply_function(const EigenDecomposition& eig,
                               const ScalarFunction& f);

/// (A*A)^{1/2}.
HermitianMatrix abs_operator(const ComplexMatrix& a);

/// √λ_max(A*A).
double operator_norm(const ComplexMatrix& a);
/// max |λ| for Hermitian input.
double operator_norm(const HermitianMatrix& h);

struct SpectrumBounds {
  double min;
  double max;
};

SpectrumBounds lambda_extremes(const HermitianMatrix& h);

/// λ_max alone; same solver.
double lambda_max(const HermitianMatrix& h);

/// Throws DomainError when λ_min(H) < −1e-10·‖H‖.
void require_psd(const HermitianMatrix& h, const char* what);

}  // namespace radiuslab
