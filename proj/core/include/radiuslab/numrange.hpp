#pragma once

#include <array>
#include <span>

#include "radiuslab/matrix.hpp"

namespace radiuslab {

inline constexpr int kDefaultRadiusGrid = 256;
inline constexpr int kDefaultSweepDirections = 720;

struct RadiusResult {
  double value = 0.0;       // w(A)
  double theta_star = 0.0;  // maximizer of λ_max(Re(e^{iθ}A)), in [0, 2π)
  int grid_points = 0;
  double apriori_error = 0.0;  // ‖A‖·π/grid_points, before refinement
  double bracket_width = 0.0;  // golden-section bracket at termination
  double norm = 0.0;           // ‖A‖, used for the a-priori bound
};

/// w(A) = max_θ λ_max((e^{iθ}A + e^{-iθ}A*)/2), evaluated on a uniform θ grid
/// and polished by golden-section search around the best cell down to a
/// 1e-12 bracket. The grid maximum is within ‖A‖·π/grid_n of w(A) since the
/// objective is ‖A‖-Lipschitz in θ.
RadiusResult numerical_radius(const ComplexMatrix& a,
                              int grid_n = kDefaultRadiusGrid);

/// λ_max(Re(e^{iθ}A)).
double support_value(const ComplexMatrix& a, double theta);

/// ⟨Mx, x⟩ for unit x.
Complex rayleigh(const ComplexMatrix& m, std::span<const Complex> x);

/// Real bivariate objective ψ(a, b) on [0, ∞)² maximized over the joint
/// numerical range {(⟨Px,x⟩, ⟨Qx,x⟩) : ‖x‖ = 1}.
class JointObjective {
 public:
  virtual ~JointObjective() = default;

  virtual double value(double a, double b) const = 0;
  virtual std::array<double, 2> gradient(double a, double b) const = 0;
  /// A bound that dominates value(⟨Px,x⟩, ⟨Qx,x⟩) for every unit x.
  virtual double upper_bound(const HermitianMatrix& p,
                             const HermitianMatrix& q) const = 0;
  virtual bool convex() const = 0;
  virtual bool nondecreasing() const = 0;
};

struct SupSweepResult {
  double lower = 0.0;  // attained at `witness`; a guaranteed lower bound
  double upper = 0.0;  // min of JointObjective::upper_bound and the support-polygon bound
  Vector witness;
  int directions = 0;
  double witness_a = 0.0;  // ⟨P w, w⟩
  double witness_b = 0.0;  // ⟨Q w, w⟩
  int ascent_steps = 0;
};

/// Maximizes a convex, coordinatewise nondecreasing ψ over the joint numerical
/// range of PSD P and Q.
///
/// The joint range is convex and a convex objective peaks at an extreme
/// point; extreme points are supported by top eigenvectors of
/// cos φ·P + sin φ·Q. Candidates are those eigenvectors for φ on a uniform
/// grid (every vector within 1e-10 of λ_max when the top is degenerate), plus
/// the eigenvectors of P and Q. The best candidate is polished by projected
/// gradient ascent on the unit sphere (step halving, at most 200 steps).
/// `upper` is the smaller of psi.upper_bound and ψ's maximum over the vertices
/// of the outer polygon formed by the sampled support lines.
SupSweepResult sup_convex_over_joint_range(
    const HermitianMatrix& p, const HermitianMatrix& q,
    const JointObjective& psi, int directions = kDefaultSweepDirections);

}  // namespace radiuslab
