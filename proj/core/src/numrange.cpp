#include "radiuslab/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "radiuslab/spectral.hpp"

namespace radiuslab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kGoldenBracket = 1e-12;
constexpr int kAscentIterations = 200;
constexpr int kMaxHalvings = 60;
constexpr double kDegenerateTop = 1e-10;

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

double quadratic_form(const HermitianMatrix& h, std::span<const Complex> x) {
  return inner(matvec(h.matrix(), x), x).real();
}

struct Evaluated {
  double value;
  double a;
  double b;
};

// P and Q are PSD within the shared clamp, so tiny negative forms are roundoff.
Evaluated evaluate(const JointObjective& psi, const HermitianMatrix& p,
                   const HermitianMatrix& q, std::span<const Complex> x) {
  const double a = std::max(0.0, quadratic_form(p, x));
  const double b = std::max(0.0, quadratic_form(q, x));
  return {psi.value(a, b), a, b};
}

}  // namespace

double support_value(const ComplexMatrix& a, double theta) {
  const Complex rot = std::polar(1.0, theta);
  return lambda_max(HermitianMatrix::symmetrize(rot * a));
}

RadiusResult numerical_radius(const ComplexMatrix& a, int grid_n) {
  if (grid_n < 16) throw PreconditionError("numerical_radius: grid_n >= 16");
  RadiusResult out;
  out.grid_points = grid_n;
  out.norm = operator_norm(a);
  out.apriori_error = out.norm * std::numbers::pi / grid_n;

  const double step = kTwoPi / grid_n;
  int best_k = 0;
  double best = -std::numeric_limits<double>::infinity();
  for (int k = 0; k < grid_n; ++k) {
    const double v = support_value(a, step * k);
    if (v > best) {
      best = v;
      best_k = k;
    }
  }
  double best_theta = step * best_k;

  // Golden-section polish of the best cell. Keeps the best value seen, so
  // the result never falls below the grid maximum.
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - step;
  double hi = best_theta + step;
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = support_value(a, c);
  double fd = support_value(a, d);
  auto consider = [&](double theta, double v) {
    if (v > best) {
      best = v;
      best_theta = theta;
    }
  };
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < 200 && hi - lo > kGoldenBracket; ++it) {
    if (fc >= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = support_value(a, c);
      consider(c, fc);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = support_value(a, d);
      consider(d, fd);
    }
  }
  out.bracket_width = hi - lo;
  out.value = std::max(0.0, best);
  out.theta_star = wrap_angle(best_theta);
  return out;
}

Complex rayleigh(const ComplexMatrix& m, std::span<const Complex> x) {
  require_unit(x, "rayleigh: x");
  return inner(matvec(m, x), x);
}

SupSweepResult sup_convex_over_joint_range(const HermitianMatrix& p,
                                           const HermitianMatrix& q,
                                           const JointObjective& psi,
                                           int directions) {
  if (!psi.convex() || !psi.nondecreasing())
    throw PreconditionError(
        "sup_convex_over_joint_range: objective must be convex and "
        "nondecreasing in each argument");
  if (p.size() != q.size())
    throw DimensionError("sup_convex_over_joint_range", p.size(), q.size());
  if (directions < 1)
    throw PreconditionError("sup_convex_over_joint_range: directions >= 1");
  require_psd(p, "P");
  require_psd(q, "Q");

  const std::size_t n = p.size();
  Vector best_x;
  Evaluated best{-std::numeric_limits<double>::infinity(), 0.0, 0.0};
  auto consider = [&](Vector x) {
    const auto e = evaluate(psi, p, q, x);
    if (e.value > best.value) {
      best = e;
      best_x = std::move(x);
    }
  };

  std::vector<double> support(directions);
  for (int k = 0; k < directions; ++k) {
    const double phi = kTwoPi * k / directions;
    const auto pencil =
        hermitian_combination(std::cos(phi), p, std::sin(phi), q);
    const auto eig = eig_hermitian(pencil);
    const double top = eig.eigenvalues.back();
    support[k] = top;
    const double cutoff = top - kDegenerateTop * std::max(1.0, std::abs(top));
    for (std::size_t j = n; j-- > 0;) {
      if (eig.eigenvalues[j] < cutoff) break;
      consider(eig.column(j));
    }
  }
  for (const auto* h : {&p, &q}) {
    const auto eig = eig_hermitian(*h);
    for (std::size_t j = 0; j < n; ++j) consider(eig.column(j));
  }

  // Projected gradient ascent on the unit sphere; only improving steps are
  // accepted, so the value is monotone.
  int steps = 0;
  double step = 0.5;
  for (int it = 0; it < kAscentIterations; ++it) {
    const auto [ga, gb] = psi.gradient(best.a, best.b);
    const auto px = matvec(p.matrix(), best_x);
    const auto qx = matvec(q.matrix(), best_x);
    Vector grad(n);
    for (std::size_t i = 0; i < n; ++i) grad[i] = 2.0 * (ga * px[i] + gb * qx[i]);
    const Complex radial = inner(grad, best_x);
    for (std::size_t i = 0; i < n; ++i) grad[i] -= radial.real() * best_x[i];
    const double gnorm = norm(grad);
    if (!(gnorm > 1e-15 * std::max(1.0, std::abs(radial)))) break;

    bool improved = false;
    for (int h = 0; h < kMaxHalvings; ++h, step *= 0.5) {
      Vector trial(n);
      for (std::size_t i = 0; i < n; ++i)
        trial[i] = best_x[i] + (step / gnorm) * grad[i];
      trial = normalized(trial);
      const auto e = evaluate(psi, p, q, trial);
      if (e.value > best.value) {
        best = e;
        best_x = std::move(trial);
        improved = true;
        break;
      }
    }
    if (!improved) break;
    ++steps;
    step = std::min(1.0, 2.0 * step);
  }

  SupSweepResult out;
  out.lower = best.value;
  out.upper = psi.upper_bound(p, q);
  if (directions >= 4) {
    // The joint range lies inside the polygon cut out by the support lines
    // a·cos φ_k + b·sin φ_k ≤ support[k]; a convex ψ peaks at one of its
    // vertices, the meeting points of consecutive lines.
    const double gap = std::sin(kTwoPi / directions);
    double polygon = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < directions; ++k) {
      const int k1 = (k + 1) % directions;
      const double c0 = std::cos(kTwoPi * k / directions);
      const double s0 = std::sin(kTwoPi * k / directions);
      const double c1 = std::cos(kTwoPi * k1 / directions);
      const double s1 = std::sin(kTwoPi * k1 / directions);
      const double a = (support[k] * s1 - support[k1] * s0) / gap;
      const double b = (c0 * support[k1] - c1 * support[k]) / gap;
      polygon = std::max(polygon, psi.value(std::max(0.0, a), std::max(0.0, b)));
    }
    out.upper = std::min(out.upper, polygon);
  }
  // `lower` is attained by a unit vector, so the true sup is at least lower.
  out.upper = std::max(out.upper, out.lower);
  out.witness = std::move(best_x);
  out.directions = directions;
  out.witness_a = best.a;
  out.witness_b = best.b;
  out.ascent_steps = steps;
  return out;
}

}  // namespace radiuslab
