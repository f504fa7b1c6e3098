#include "radiuslab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "radiuslab/spectral.hpp"

namespace radiuslab {

namespace {

// Nodes and weights of the order-n rule on [-1, 1] by Newton iteration on
// P_n, seeded with the usual cosine approximation.
void legendre_nodes(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      dp = n * (z * p1 - p2) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) <= 1e-16) break;
    }
    // Recompute the derivative at the converged node for the weight.
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    dp = n * (z * p1 - p2) / (z * z - 1.0);
    const double weight = 2.0 / ((1.0 - z * z) * dp * dp);
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = weight;
    w[n - 1 - i] = weight;
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
}

void append_panel(QuadratureRule& rule, const std::vector<double>& x,
                  const std::vector<double>& w, double lo, double hi) {
  const double half = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes.push_back(lo + half * (1.0 + x[i]));
    rule.weights.push_back(half * w[i]);
  }
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Σ_j a^j b^(k−j) for j = 0..k.
double power_sum(int k, double a, double b) {
  double sum = 0.0;
  double aj = 1.0;
  for (int j = 0; j <= k; ++j) {
    sum += aj * std::pow(b, k - j);
    aj *= a;
  }
  return sum;
}

// ∂/∂a of power_sum.
double power_sum_da(int k, double a, double b) {
  double sum = 0.0;
  double aj = 1.0;  // a^(j−1)
  for (int j = 1; j <= k; ++j) {
    sum += j * aj * std::pow(b, k - j);
    aj *= a;
  }
  return sum;
}

double poly_segment(const std::vector<double>& c, double a, double b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0.0) continue;
    const int deg = static_cast<int>(k);
    sum += c[k] * power_sum(deg, a, b) / (deg + 1);
  }
  return sum;
}

HermitianMatrix poly_matrix_segment(const std::vector<double>& c,
                                    const HermitianMatrix& x,
                                    const HermitianMatrix& y) {
  const std::size_t n = x.size();
  const ComplexMatrix& xm = x.matrix();
  const ComplexMatrix& ym = y.matrix();
  // words[j]: sum of all words of the current length with j letters X.
  std::vector<ComplexMatrix> words{ComplexMatrix::identity(n)};
  ComplexMatrix total = c[0] * ComplexMatrix::identity(n);
  for (std::size_t k = 1; k < c.size(); ++k) {
    std::vector<ComplexMatrix> next(k + 1, ComplexMatrix(n));
    for (std::size_t j = 0; j < k; ++j) {
      next[j] += words[j] * ym;
      next[j + 1] += words[j] * xm;
    }
    words = std::move(next);
    if (c[k] == 0.0) continue;
    const int deg = static_cast<int>(k);
    for (int j = 0; j <= deg; ++j) {
      const double weight = 1.0 / ((deg + 1) * binomial(deg, j));
      total += (c[k] * weight) * words[j];
    }
  }
  // Exact result is Hermitian (word reversal is the adjoint); the product
  // order leaves only roundoff asymmetry.
  return HermitianMatrix::symmetrize(total);
}

bool agrees(const ComplexMatrix& coarse, const ComplexMatrix& fine) {
  const double diff = (coarse - fine).frobenius_norm();
  return diff <= kQuadratureAgreement *
                     std::max(fine.frobenius_norm(),
                              std::numeric_limits<double>::min());
}

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre(int order) {
  if (order < 1) throw PreconditionError("quadrature order must be >= 1");
  std::vector<double> x, w;
  legendre_nodes(order, x, w);
  QuadratureRule rule;
  rule.order = order;
  rule.panels = 1;
  append_panel(rule, x, w, 0.0, 1.0);
  return rule;
}

QuadratureRule QuadratureRule::graded(int order, int levels) {
  if (order < 1) throw PreconditionError("quadrature order must be >= 1");
  if (levels < 1) throw PreconditionError("graded rule needs levels >= 1");
  std::vector<double> x, w;
  legendre_nodes(order, x, w);
  std::vector<double> breaks{0.0};
  // Geometric grading toward both ends, ratio 8.
  for (int j = levels; j >= 1; --j) breaks.push_back(std::ldexp(1.0, -3 * j));
  for (int j = 1; j <= levels; ++j) breaks.push_back(1.0 - std::ldexp(1.0, -3 * j));
  breaks.push_back(1.0);
  QuadratureRule rule;
  rule.order = order;
  rule.panels = static_cast<int>(breaks.size()) - 1;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    append_panel(rule, x, w, breaks[i], breaks[i + 1]);
  return rule;
}

bool HermiteHadamardTriple::holds(double tol) const {
  const double slack = tol * std::max(1.0, endavg);
  return mid <= integral + slack && integral <= endavg + slack;
}

double eval_scalar(const ScalarFunction& f, double t) { return f(t); }

HermiteHadamardTriple hh_scalar(const ScalarFunction& f, double a, double b) {
  if (!f.convex())
    throw PreconditionError("hh_scalar requires a convex function");
  a = std::max(0.0, a);
  b = std::max(0.0, b);
  HermiteHadamardTriple out{};
  out.mid = f(0.5 * (a + b));
  out.endavg = 0.5 * (f(a) + f(b));
  const auto coeffs = f.polynomial_coefficients();
  if (!coeffs.empty()) {
    out.integral = poly_segment(coeffs, a, b);
  } else {
    static const QuadratureRule rule =
        QuadratureRule::graded(kDefaultQuadratureOrder);
    out.integral =
        rule.integrate([&](double t) { return f(t * a + (1.0 - t) * b); });
  }
  return out;
}

HermitianMatrix matrix_segment_quadrature(const ScalarFunction& f,
                                          const HermitianMatrix& x,
                                          const HermitianMatrix& y,
                                          const QuadratureRule& rule) {
  if (x.size() != y.size())
    throw DimensionError("matrix_segment_integral", x.size(), y.size());
  ComplexMatrix sum(x.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double t = rule.nodes[i];
    const auto node = apply_function(hermitian_combination(t, x, 1.0 - t, y), f);
    sum += rule.weights[i] * node.matrix();
  }
  return HermitianMatrix(std::move(sum));
}

HermitianMatrix matrix_segment_integral(const ScalarFunction& f,
                                        const HermitianMatrix& x,
                                        const HermitianMatrix& y, int order) {
  if (x.size() != y.size())
    throw DimensionError("matrix_segment_integral", x.size(), y.size());
  require_psd(x, "X");
  require_psd(y, "Y");

  const auto coeffs = f.polynomial_coefficients();
  if (!coeffs.empty()) return poly_matrix_segment(coeffs, x, y);

  auto attempt = [&](const QuadratureRule& coarse_rule,
                     const QuadratureRule& fine_rule, bool last) {
    auto coarse = matrix_segment_quadrature(f, x, y, coarse_rule);
    auto fine = matrix_segment_quadrature(f, x, y, fine_rule);
    if (agrees(coarse.matrix(), fine.matrix())) return std::optional(fine);
    if (last)
      throw QuadratureError(coarse.matrix().frobenius_norm(),
                            fine.matrix().frobenius_norm());
    return std::optional<HermitianMatrix>{};
  };
  if (auto plain = attempt(QuadratureRule::gauss_legendre(order),
                           QuadratureRule::gauss_legendre(2 * order), false))
    return *plain;
  return *attempt(QuadratureRule::graded(order), QuadratureRule::graded(2 * order),
                  true);
}

SegmentObjective::SegmentObjective(ScalarFunction f)
    : f_(std::move(f)), poly_(f_.polynomial_coefficients()) {
  if (!f_.convex() || !f_.increasing())
    throw PreconditionError(
        "segment objective requires a convex increasing function");
  if (!poly_.empty()) {
    const int degree = static_cast<int>(poly_.size()) - 1;
    rule_ = QuadratureRule::gauss_legendre(
        std::max(kDefaultQuadratureOrder, degree / 2 + 1));
  } else {
    rule_ = QuadratureRule::graded(kDefaultQuadratureOrder);
  }
}

double SegmentObjective::value(double a, double b) const {
  if (!poly_.empty()) return poly_segment(poly_, a, b);
  return rule_.integrate([&](double t) { return f_(t * a + (1.0 - t) * b); });
}

std::array<double, 2> SegmentObjective::gradient(double a, double b) const {
  if (!poly_.empty()) {
    double ga = 0.0;
    double gb = 0.0;
    for (std::size_t k = 1; k < poly_.size(); ++k) {
      if (poly_[k] == 0.0) continue;
      const int deg = static_cast<int>(k);
      ga += poly_[k] * power_sum_da(deg, a, b) / (deg + 1);
      gb += poly_[k] * power_sum_da(deg, b, a) / (deg + 1);
    }
    return {ga, gb};
  }
  const double ga = rule_.integrate(
      [&](double t) { return t * f_.derivative(t * a + (1.0 - t) * b); });
  const double gb = rule_.integrate([&](double t) {
    return (1.0 - t) * f_.derivative(t * a + (1.0 - t) * b);
  });
  return {ga, gb};
}

double SegmentObjective::upper_bound(const HermitianMatrix& p,
                                     const HermitianMatrix& q) const {
  return rule_.integrate([&](double t) {
    const double top = lambda_max(hermitian_combination(t, p, 1.0 - t, q));
    return f_(std::max(0.0, top));
  });
}

SegmentObjective psi_from_function(const ScalarFunction& f) {
  return SegmentObjective(f);
}

}  // namespace radiuslab
