#pragma once

#include <vector>

#include "radiuslab/matrix.hpp"
#include "radiuslab/numrange.hpp"
#include "radiuslab/scalar_function.hpp"

namespace radiuslab {

inline constexpr int kDefaultQuadratureOrder = 32;
inline constexpr int kDefaultGradedLevels = 10;
/// Relative agreement required between a rule and its doubled-order twin.
inline constexpr double kQuadratureAgreement = 1e-10;

/// Positive-weight rule on [0, 1]. `order` is the Gauss–Legendre order of
/// each panel, so the rule integrates t^k exactly for k <= 2·order − 1.
struct QuadratureRule {
  std::vector<double> nodes;  // ascending, in (0, 1)
  std::vector<double> weights;
  int order = 0;
  int panels = 1;

  static QuadratureRule gauss_legendre(int order);

  /// Composite Gauss–Legendre on panels halving toward both endpoints:
  /// [0, 2^-L], [2^-L, 2^-L+1], ..., [1/4, 1/2] and the mirror image.
  /// Resolves integrands like t^r with non-integer r at the endpoints.
  static QuadratureRule graded(int order, int levels = kDefaultGradedLevels);

  template <class F>
  double integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
    return sum;
  }
};

struct HermiteHadamardTriple {
  double mid;       // f((a+b)/2)
  double integral;  // ∫₀¹ f(ta + (1−t)b) dt
  double endavg;    // (f(a) + f(b))/2

  /// mid <= integral <= endavg within tol·max(1, endavg).
  bool holds(double tol = 1e-12) const;
};

/// f(t) with the [-1e-12, 0) clamp.
double eval_scalar(const ScalarFunction& f, double t);

/// Scalar Hermite–Hadamard triple. Polynomial members use the closed form
/// Σ_k c_k Σ_j a^j b^(k−j) / (k+1); the rest use the graded rule.
HermiteHadamardTriple hh_scalar(const ScalarFunction& f, double a, double b);

/// ∫₀¹ f(tX + (1−t)Y) dt for PSD X, Y.
///
/// Polynomial members are integrated in closed form through the
/// noncommutative binomial expansion: the sum of all words with j copies of X
/// and k−j copies of Y, weighted by j!(k−j)!/(k+1)!. For f = t² this is
/// (X² + Y²)/3 + (XY + YX)/6.
///
/// Other members use Gauss–Legendre of `order` and 2·order; if the two disagree
/// beyond 1e-10 relative the graded composite rule is tried the same way, and
/// a second disagreement raises QuadratureError.
HermitianMatrix matrix_segment_integral(const ScalarFunction& f,
                                        const HermitianMatrix& x,
                                        const HermitianMatrix& y,
                                        int order = kDefaultQuadratureOrder);

/// Same integral evaluated node by node with an explicit rule; no closed forms
/// and no order check. Used as the independent route in tests.
HermitianMatrix matrix_segment_quadrature(const ScalarFunction& f,
                                          const HermitianMatrix& x,
                                          const HermitianMatrix& y,
                                          const QuadratureRule& rule);

/// ψ(a, b) = ∫₀¹ f(ta + (1−t)b) dt for convex increasing f. ψ is jointly
/// convex, nondecreasing in each argument and symmetric.
class SegmentObjective final : public JointObjective {
 public:
  explicit SegmentObjective(ScalarFunction f);

  double value(double a, double b) const override;
  std::array<double, 2> gradient(double a, double b) const override;
  /// ∫₀¹ f(λ_max(tP + (1−t)Q)) dt with the same rule the objective uses, so
  /// it dominates value(⟨Px,x⟩, ⟨Qx,x⟩) node by node.
  double upper_bound(const HermitianMatrix& p,
                     const HermitianMatrix& q) const override;
  bool convex() const override { return f_.convex(); }
  bool nondecreasing() const override { return f_.increasing(); }

  const ScalarFunction& function() const noexcept { return f_; }
  const QuadratureRule& rule() const noexcept { return rule_; }

 private:
  ScalarFunction f_;
  std::vector<double> poly_;  // empty unless f is a polynomial
  QuadratureRule rule_;
};

SegmentObjective psi_from_function(const ScalarFunction& f);

}  // namespace radiuslab
