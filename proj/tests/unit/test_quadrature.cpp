#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "radiuslab/quadrature.hpp"
#include "radiuslab/random.hpp"
#include "radiuslab/spectral.hpp"

using namespace radiuslab;

TEST(ScalarFunction, EvalExamples) {
  EXPECT_EQ(eval_scalar(ScalarFunction::power(2.0), 3.0), 9.0);
  EXPECT_NEAR(eval_scalar(ScalarFunction::power(1.5), 4.0), 8.0, 1e-14);
  EXPECT_EQ(eval_scalar(ScalarFunction::exp_minus_one(), 0.0), 0.0);
  EXPECT_EQ(eval_scalar(ScalarFunction::power(2.0), -1e-13), 0.0);
  EXPECT_THROW(eval_scalar(ScalarFunction::power(2.0), -1e-6), DomainError);
}

TEST(ScalarFunction, Flags) {
  EXPECT_TRUE(ScalarFunction::power(1.0).operator_convex());
  EXPECT_TRUE(ScalarFunction::power(2.0).operator_convex());
  EXPECT_FALSE(ScalarFunction::power(2.5).operator_convex());
  EXPECT_FALSE(ScalarFunction::exp_minus_one().operator_convex());
  EXPECT_TRUE(ScalarFunction::affine(1.0, 2.0).operator_convex());
  EXPECT_FALSE(ScalarFunction::polynomial({0.0, 0.0, 0.0, 1.0}).operator_convex());
  EXPECT_THROW(ScalarFunction::power(0.5), PreconditionError);
  EXPECT_THROW(ScalarFunction::polynomial({1.0, -1.0}), PreconditionError);
  EXPECT_THROW(ScalarFunction::affine(-1.0, 1.0), PreconditionError);
}

TEST(ScalarFunction, ParseAndJsonRoundTrip) {
  for (const char* text : {"power:1.5", "affine:1,2", "exp_minus_one", "poly:0,1,3"}) {
    const auto f = parse_function(text);
    EXPECT_EQ(function_from_json(function_to_json(f)), f) << text;
  }
  EXPECT_EQ(parse_function(R"({"kind":"power","r":1.5})"), ScalarFunction::power(1.5));
  EXPECT_THROW(parse_function("cosine"), ConfigError);
  EXPECT_THROW(parse_function("power:abc"), ConfigError);
}

TEST(Quadrature, WeightsSumAndExactness) {
  for (int order : {1, 2, 5, 16, 32, 64}) {
    const auto rule = QuadratureRule::gauss_legendre(order);
    EXPECT_NEAR(std::accumulate(rule.weights.begin(), rule.weights.end(), 0.0), 1.0, 1e-14);
    for (int k = 0; k <= 2 * order - 1; ++k) {
      const double got = rule.integrate([&](double t) { return std::pow(t, k); });
      EXPECT_NEAR(got, 1.0 / (k + 1), 1e-14) << "order " << order << " k " << k;
    }
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      EXPECT_GT(rule.nodes[i], 0.0);
      EXPECT_LT(rule.nodes[i], 1.0);
      EXPECT_GT(rule.weights[i], 0.0);
    }
  }
}

TEST(Quadrature, GradedRuleResolvesEndpointSingularity) {
  const auto graded = QuadratureRule::graded(32);
  EXPECT_EQ(graded.panels, 21);
  EXPECT_NEAR(std::accumulate(graded.weights.begin(), graded.weights.end(), 0.0), 1.0, 1e-14);
  const double got = graded.integrate([](double t) { return std::pow(t, 0.5); });
  EXPECT_NEAR(got, 2.0 / 3.0, 1e-12);
}

TEST(HermiteHadamard, Examples) {
  const auto t = hh_scalar(ScalarFunction::power(2.0), 0.0, 1.0);
  EXPECT_EQ(t.mid, 0.25);
  EXPECT_EQ(t.integral, 1.0 / 3.0);
  EXPECT_EQ(t.endavg, 0.5);

  const auto lin = hh_scalar(ScalarFunction::power(1.0), 0.7, 2.3);
  EXPECT_NEAR(lin.mid, 1.5, 1e-15);
  EXPECT_NEAR(lin.integral, 1.5, 1e-15);
  EXPECT_NEAR(lin.endavg, 1.5, 1e-15);

  const auto flat = hh_scalar(ScalarFunction::power(2.0), 1.7, 1.7);
  EXPECT_NEAR(flat.mid, 1.7 * 1.7, 1e-15);
  EXPECT_NEAR(flat.integral, 1.7 * 1.7, 1e-14);
  EXPECT_NEAR(flat.endavg, 1.7 * 1.7, 1e-15);
}

TEST(HermiteHadamard, NonPolynomialMatchesClosedForm) {
  RngStream rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const double r = 1.0 + 3.0 * rng.uniform();
    const double a = 5.0 * rng.uniform();
    const double b = 5.0 * rng.uniform();
    const auto t = hh_scalar(ScalarFunction::power(r), a, b);
    EXPECT_NEAR(t.integral, oracle::power_segment(r, a, b), 1e-12 * std::max(1.0, t.endavg));
    EXPECT_TRUE(t.holds());
  }
}

TEST(SegmentIntegral, Examples) {
  const double d01[] = {0.0, 1.0};
  const double d10[] = {1.0, 0.0};
  const auto x = HermitianMatrix::diagonal(d01);
  const auto y = HermitianMatrix::diagonal(d10);
  const auto m = matrix_segment_integral(ScalarFunction::power(2.0), x, y);
  const double third[] = {1.0 / 3.0, 1.0 / 3.0};
  EXPECT_LE(oracle::max_abs_diff(m.matrix(), ComplexMatrix::diagonal(third)), 1e-15);

  RngStream rng(42);
  const HermitianMatrix p(gen_random(Ensemble::Psd, 4, rng));
  const HermitianMatrix q(gen_random(Ensemble::Psd, 4, rng));
  const auto lin = matrix_segment_integral(ScalarFunction::power(1.0), p, q);
  EXPECT_LE(oracle::max_abs_diff(lin.matrix(), Complex(0.5) * (p.matrix() + q.matrix())), 1e-15);

  for (const auto& f : {ScalarFunction::power(1.5), ScalarFunction::exp_minus_one()}) {
    const auto same = matrix_segment_integral(f, p, p);
    EXPECT_LE(oracle::max_abs_diff(same.matrix(), apply_function(p, f).matrix()), 1e-12);
  }
}

TEST(SegmentIntegral, SquareMatchesNoncommutativeClosedForm) {
  RngStream rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 6;
    const HermitianMatrix x(gen_random(Ensemble::Psd, n, rng));
    const HermitianMatrix y(gen_random(Ensemble::Psd, n, rng));
    const auto& xm = x.matrix();
    const auto& ym = y.matrix();
    const auto closed = Complex(1.0 / 3.0) * (xm * xm + ym * ym) +
                        Complex(1.0 / 6.0) * (xm * ym + ym * xm);
    const auto got = matrix_segment_integral(ScalarFunction::power(2.0), x, y);
    EXPECT_LE((got.matrix() - closed).frobenius_norm(),
              1e-12 * std::max(1.0, closed.frobenius_norm()));
    // The quadrature route agrees with the closed form.
    const auto quad = matrix_segment_quadrature(ScalarFunction::power(2.0), x, y,
                                                QuadratureRule::gauss_legendre(8));
    EXPECT_LE((quad.matrix() - closed).frobenius_norm(),
              1e-12 * std::max(1.0, closed.frobenius_norm()));
  }
}

TEST(SegmentIntegral, CommutingCaseIsEntrywiseScalar) {
  RngStream rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + trial % 5;
    std::vector<double> xd(n), yd(n);
    for (std::size_t i = 0; i < n; ++i) {
      xd[i] = 3.0 * rng.uniform();
      yd[i] = 3.0 * rng.uniform();
    }
    const double r = 1.0 + 2.0 * rng.uniform();
    const auto m = matrix_segment_integral(ScalarFunction::power(r), HermitianMatrix::diagonal(xd),
                                           HermitianMatrix::diagonal(yd));
    for (std::size_t i = 0; i < n; ++i)
      EXPECT_NEAR(m(i, i).real(), oracle::power_segment(r, xd[i], yd[i]), 1e-12);
  }
}

TEST(SegmentIntegral, SingularEndpointUsesGradedFallback) {
  // |A| and |A*| of J₂ are complementary projections; t^1.5 is singular at
  // both ends of the segment.
  const double d01[] = {0.0, 1.0};
  const double d10[] = {1.0, 0.0};
  const auto m = matrix_segment_integral(ScalarFunction::power(1.5), HermitianMatrix::diagonal(d01),
                                         HermitianMatrix::diagonal(d10));
  EXPECT_NEAR(m(0, 0).real(), 1.0 / 2.5, 1e-12);
  EXPECT_NEAR(m(1, 1).real(), 1.0 / 2.5, 1e-12);
}

TEST(SegmentIntegral, OperatorHermiteHadamardForOperatorConvexPowers) {
  RngStream rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const HermitianMatrix x(gen_random(Ensemble::Psd, n, rng));
    const HermitianMatrix y(gen_random(Ensemble::Psd, n, rng));
    const auto f = ScalarFunction::power(1.0 + rng.uniform());
    const auto integral = matrix_segment_integral(f, x, y);
    const auto endavg = hermitian_combination(0.5, apply_function(x, f), 0.5, apply_function(y, f));
    const double scale = std::max(1.0, operator_norm(endavg));
    EXPECT_GE(lambda_extremes(hermitian_combination(1.0, endavg, -1.0, integral)).min, -1e-9 * scale);
  }
}

TEST(SegmentIntegral, RejectsIndefiniteInput) {
  const double d[] = {-1.0, 1.0};
  EXPECT_THROW(matrix_segment_integral(ScalarFunction::power(2.0), HermitianMatrix::diagonal(d),
                                       HermitianMatrix::identity(2)),
               DomainError);
}

TEST(Psi, ExamplesAndSymmetry) {
  const auto square = psi_from_function(ScalarFunction::power(2.0));
  EXPECT_EQ(square.value(1.0, 0.0), 1.0 / 3.0);
  const auto lin = psi_from_function(ScalarFunction::power(1.0));
  RngStream rng(46);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = 4.0 * rng.uniform();
    const double b = 4.0 * rng.uniform();
    EXPECT_NEAR(square.value(a, b), (a * a + a * b + b * b) / 3.0, 1e-13 * (1.0 + a * a + b * b));
    EXPECT_NEAR(lin.value(a, b), 0.5 * (a + b), 1e-14);
    for (const auto& f : {ScalarFunction::power(1.5), ScalarFunction::exp_minus_one()}) {
      const auto psi = psi_from_function(f);
      EXPECT_NEAR(psi.value(a, b), psi.value(b, a), 1e-13 * std::max(1.0, psi.value(a, b)));
      EXPECT_NEAR(psi.value(a, a), f(a), 1e-12 * std::max(1.0, f(a)));
    }
  }
}

TEST(Psi, GradientMatchesFiniteDifferences) {
  for (const auto& f : {ScalarFunction::power(2.0), ScalarFunction::power(1.5),
                        ScalarFunction::exp_minus_one(), ScalarFunction::polynomial({1.0, 0.0, 2.0, 1.0})}) {
    const auto psi = psi_from_function(f);
    const double a = 0.8, b = 1.9, h = 1e-6;
    const auto g = psi.gradient(a, b);
    EXPECT_NEAR(g[0], (psi.value(a + h, b) - psi.value(a - h, b)) / (2 * h), 1e-6) << f.name();
    EXPECT_NEAR(g[1], (psi.value(a, b + h) - psi.value(a, b - h)) / (2 * h), 1e-6) << f.name();
  }
}
