#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "radiuslab/numrange.hpp"
#include "radiuslab/quadrature.hpp"
#include "radiuslab/random.hpp"
#include "radiuslab/spectral.hpp"

using namespace radiuslab;

namespace {

// ψ(a, b) = a: convex, nondecreasing, and its sup is λ_max(P).
class FirstArgument final : public JointObjective {
 public:
  double value(double a, double) const override { return a; }
  std::array<double, 2> gradient(double, double) const override { return {1.0, 0.0}; }
  double upper_bound(const HermitianMatrix& p, const HermitianMatrix&) const override {
    return lambda_max(p);
  }
  bool convex() const override { return true; }
  bool nondecreasing() const override { return true; }
};

class Concave final : public JointObjective {
 public:
  double value(double a, double) const override { return std::sqrt(a); }
  std::array<double, 2> gradient(double, double) const override { return {0.0, 0.0}; }
  double upper_bound(const HermitianMatrix&, const HermitianMatrix&) const override {
    return 0.0;
  }
  bool convex() const override { return false; }
  bool nondecreasing() const override { return true; }
};

}  // namespace

TEST(NumericalRadius, Examples) {
  EXPECT_NEAR(numerical_radius(oracle::j2()).value, 0.5, 1e-10);
  const double d[] = {-3.0, 2.0};
  EXPECT_NEAR(numerical_radius(ComplexMatrix::diagonal(d)).value, 3.0, 1e-12);
  const auto j3 = jordan_block(3);
  const double brute = oracle::brute_radius(j3, 65536);
  EXPECT_NEAR(brute, std::cos(std::numbers::pi / 4.0), 1e-12);
  EXPECT_NEAR(numerical_radius(j3).value, brute, 1e-8);
}

TEST(NumericalRadius, ReportsCertificate) {
  const auto r = numerical_radius(oracle::j2(), 64);
  EXPECT_EQ(r.grid_points, 64);
  EXPECT_NEAR(r.apriori_error, std::numbers::pi / 64.0, 1e-15);
  EXPECT_LE(r.bracket_width, 1e-12);
  EXPECT_GE(r.theta_star, 0.0);
  EXPECT_LT(r.theta_star, 2.0 * std::numbers::pi);
  EXPECT_THROW(numerical_radius(oracle::j2(), 8), PreconditionError);
}

TEST(NumericalRadius, AgreesWithBruteForceOnSmallMatrices) {
  RngStream rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto a = gen_random(Ensemble::Ginibre, n, rng);
    const double brute = oracle::brute_radius(a, 8192);
    const double w = numerical_radius(a).value;
    // Brute force is a lower bound within ‖A‖·π/8192 of the truth.
    EXPECT_GE(w, brute - 1e-12);
    EXPECT_LE(w, brute + operator_norm(a) * std::numbers::pi / 8192.0);
  }
}

TEST(NumericalRadius, EquivalenceSandwich) {
  RngStream rng(32);
  for (int trial = 0; trial < 500; ++trial) {
    const auto a = gen_random(Ensemble::Ginibre, 2 + trial % 7, rng);
    const auto r = numerical_radius(a);
    const double tol = 1e-9 * std::max(1.0, r.norm);
    EXPECT_GE(r.value, 0.5 * r.norm - tol);
    EXPECT_LE(r.value, r.norm + tol);
  }
}

TEST(NumericalRadius, AdjointAndPhaseInvariance) {
  RngStream rng(33);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = gen_random(Ensemble::Ginibre, 2 + trial % 5, rng);
    const double w = numerical_radius(a).value;
    const Complex phase = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
    EXPECT_NEAR(numerical_radius(a.adjoint()).value, w, 1e-9 * w);
    EXPECT_NEAR(numerical_radius(phase * a).value, w, 1e-9 * w);
  }
}

TEST(NumericalRadius, NormalMatricesAttainTheNorm) {
  RngStream rng(34);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const auto u = haar_unitary(n, rng);
    std::vector<Complex> z(n);
    double zmax = 0.0;
    for (auto& v : z) {
      v = rng.complex_normal();
      zmax = std::max(zmax, std::abs(v));
    }
    const auto a = u * ComplexMatrix::diagonal(z) * u.adjoint();
    EXPECT_NEAR(numerical_radius(a).value, zmax, 1e-8 * zmax);
    EXPECT_NEAR(operator_norm(a), zmax, 1e-8 * zmax);
  }
}

TEST(NumericalRadius, GridDoublingIsMonotone) {
  RngStream rng(35);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = gen_random(Ensemble::Ginibre, 4, rng);
    EXPECT_GE(numerical_radius(a, 512).value, numerical_radius(a, 256).value - 1e-10);
  }
}

TEST(Rayleigh, Examples) {
  const Vector e2 = basis_vector(2, 1);
  EXPECT_EQ(rayleigh(ComplexMatrix::identity(2), e2), Complex(1.0));
  EXPECT_EQ(rayleigh(oracle::j2(), e2), Complex(0.0));
  const double s = 1.0 / std::sqrt(2.0);
  const Vector x{s, s};
  EXPECT_NEAR(std::abs(rayleigh(oracle::j2(), x) - 0.5), 0.0, 1e-15);
  const Vector bad{1.0, 1.0};
  EXPECT_THROW(rayleigh(oracle::j2(), bad), PreconditionError);
}

TEST(SupSweep, Examples) {
  const SegmentObjective square(ScalarFunction::power(2.0));
  const auto id = HermitianMatrix::identity(2);
  auto s = sup_convex_over_joint_range(id, id, square);
  EXPECT_NEAR(s.lower, 1.0, 1e-14);
  EXPECT_NEAR(s.upper, 1.0, 1e-14);

  const double d10[] = {1.0, 0.0};
  const double d01[] = {0.0, 1.0};
  s = sup_convex_over_joint_range(HermitianMatrix::diagonal(d10), HermitianMatrix::diagonal(d01),
                                  square);
  EXPECT_NEAR(s.lower, 1.0 / 3.0, 1e-14);
  EXPECT_GE(s.upper, s.lower);

  RngStream rng(36);
  const HermitianMatrix p(gen_random(Ensemble::Psd, 5, rng));
  const HermitianMatrix q(gen_random(Ensemble::Psd, 5, rng));
  s = sup_convex_over_joint_range(p, q, FirstArgument{});
  EXPECT_NEAR(s.lower, lambda_max(p), 1e-12);
}

TEST(SupSweep, RejectsBadObjectiveOrIndefiniteInput) {
  const auto id = HermitianMatrix::identity(2);
  EXPECT_THROW(sup_convex_over_joint_range(id, id, Concave{}), PreconditionError);
  const double d[] = {-1.0, 1.0};
  const SegmentObjective square(ScalarFunction::power(2.0));
  EXPECT_THROW(sup_convex_over_joint_range(HermitianMatrix::diagonal(d), id, square),
               DomainError);
}

TEST(SupSweep, WitnessReproducesLowerAndBracketIsOrdered) {
  RngStream rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const HermitianMatrix p(gen_random(Ensemble::Psd, n, rng));
    const HermitianMatrix q(gen_random(Ensemble::Psd, n, rng));
    const SegmentObjective psi(ScalarFunction::power(trial % 2 ? 1.5 : 2.0));
    const auto s = sup_convex_over_joint_range(p, q, psi);
    const double a = rayleigh(p.matrix(), s.witness).real();
    const double b = rayleigh(q.matrix(), s.witness).real();
    EXPECT_NEAR(psi.value(a, b), s.lower, 1e-12 * std::max(1.0, s.lower));
    EXPECT_LE(s.lower, s.upper + 1e-9 * std::max(1.0, s.upper));
    const auto finer = sup_convex_over_joint_range(p, q, psi, 1440);
    EXPECT_GE(finer.lower, s.lower - 1e-10);
  }
}

TEST(SupSweep, CommutingPairMatchesVertexMaximum) {
  // Commuting P, Q: the joint range is the polygon spanned by (p_i, q_i), and
  // a convex objective peaks at a vertex.
  RngStream rng(38);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const auto u = haar_unitary(n, rng);
    std::vector<double> pd(n), qd(n);
    for (std::size_t i = 0; i < n; ++i) {
      pd[i] = 2.0 * rng.uniform();
      qd[i] = 2.0 * rng.uniform();
    }
    const auto conj = [&](const std::vector<double>& d) {
      return HermitianMatrix::symmetrize(u * ComplexMatrix::diagonal(d) * u.adjoint());
    };
    const double r = 1.0 + rng.uniform();
    double exact = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      exact = std::max(exact, oracle::power_segment(r, pd[i], qd[i]));
    const SegmentObjective psi(ScalarFunction::power(r));
    const auto s = sup_convex_over_joint_range(conj(pd), conj(qd), psi);
    EXPECT_NEAR(s.lower, exact, 1e-8);
    EXPECT_GE(s.upper, exact - 1e-8);
  }
}
