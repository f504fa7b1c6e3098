#include "radiuslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "radiuslab/matrix_io.hpp"

namespace radiuslab {

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += 2.0 * std::norm(a(i, j));
  return std::sqrt(sum);
}

struct JacobiOutput {
  std::vector<double> eigenvalues;  // unsorted, diagonal order
  ComplexMatrix vectors;
  int sweeps;
};

// Rotates the (p, q) pair to zero. U = diag(1, conj(e))·[[c, s], [-s, c]]
// where e = a_pq/|a_pq|. Column entries are rotated and mirrored into the
// rows, so the working matrix stays exactly Hermitian.
void rotate(ComplexMatrix& a, ComplexMatrix* v, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * mag);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) /
        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex u_pp = c;
  const Complex u_pq = s;
  const Complex u_qp = -s * std::conj(phase);
  const Complex u_qq = c * std::conj(phase);

  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    const Complex new_kp = akp * u_pp + akq * u_qp;
    const Complex new_kq = akp * u_pq + akq * u_qq;
    a(k, p) = new_kp;
    a(p, k) = std::conj(new_kp);
    a(k, q) = new_kq;
    a(q, k) = std::conj(new_kq);
  }
  a(p, p) = app - t * mag;
  a(q, q) = aqq + t * mag;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  if (v != nullptr) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex vkp = (*v)(k, p);
      const Complex vkq = (*v)(k, q);
      (*v)(k, p) = vkp * u_pp + vkq * u_qp;
      (*v)(k, q) = vkp * u_pq + vkq * u_qq;
    }
  }
}

JacobiOutput jacobi(const HermitianMatrix& h, bool want_vectors,
                    int max_sweeps) {
  const std::size_t n = h.size();
  ComplexMatrix a = h.matrix();
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix(1);
  const double threshold = kJacobiTolerance * h.matrix().frobenius_norm();

  int sweeps = 0;
  for (;;) {
    const double off = off_diagonal_mass(a);
    if (off <= threshold) break;
    if (sweeps >= max_sweeps) throw ConvergenceError(sweeps, off);
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        rotate(a, want_vectors ? &v : nullptr, p, q);
    ++sweeps;
  }

  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = a(i, i).real();
  return {std::move(lambda), std::move(v), sweeps};
}

HermitianMatrix spectral_sum(const ComplexMatrix& v,
                             std::span<const double> weights) {
  const std::size_t n = v.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (weights[k] == 0.0) continue;
        sum += weights[k] * (v(i, k) * std::conj(v(j, k)));
      }
      if (i == j) {
        out(i, i) = sum.real();
      } else {
        out(i, j) = sum;
        out(j, i) = std::conj(sum);
      }
    }
  }
  return HermitianMatrix(std::move(out));
}

}  // namespace

Vector EigenDecomposition::column(std::size_t k) const {
  const std::size_t n = vectors.size();
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = vectors(i, k);
  return out;
}

EigenDecomposition eig_hermitian(const HermitianMatrix& h, int max_sweeps) {
  const std::size_t n = h.size();
  auto raw = jacobi(h, true, max_sweeps);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return raw.eigenvalues[x] < raw.eigenvalues[y];
  });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n), 0.0,
                         raw.sweeps};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.eigenvalues[k] = raw.eigenvalues[src];
    Complex phase = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex z = raw.vectors(i, src);
      if (std::abs(z) > 1e-10) {
        phase = std::conj(z) / std::abs(z);
        break;
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      out.vectors(i, k) = raw.vectors(i, src) * phase;
  }

  const auto rebuilt = spectral_sum(out.vectors, out.eigenvalues);
  out.residual = (h.matrix() - rebuilt.matrix()).frobenius_norm() /
                 std::max(1.0, h.matrix().frobenius_norm());
  return out;
}

double orthonormality_error(const ComplexMatrix& v) {
  return (gram(v).matrix() - ComplexMatrix::identity(v.size()))
      .frobenius_norm();
}

HermitianMatrix apply_function(const EigenDecomposition& eig,
                               const ScalarFunction& f) {
  const auto& lambda = eig.eigenvalues;
  double scale = 0.0;
  for (double l : lambda) scale = std::max(scale, std::abs(l));
  std::vector<double> values(lambda.size());
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    double l = lambda[k];
    if (l < 0.0) {
      if (l < -kSpectralClamp * scale)
        throw DomainError("eigenvalue " + format_double(l) +
                          " outside the domain [0, inf) of " + f.name());
      l = 0.0;
    }
    values[k] = f(l);
  }
  return spectral_sum(eig.vectors, values);
}

HermitianMatrix apply_function(const HermitianMatrix& h,
                               const ScalarFunction& f) {
  return apply_function(eig_hermitian(h), f);
}

HermitianMatrix apply_function(const HermitianMatrix& h,
                               const std::function<double(double)>& f,
                               bool nonneg_domain) {
  const auto eig = eig_hermitian(h);
  double scale = 0.0;
  for (double l : eig.eigenvalues) scale = std::max(scale, std::abs(l));
  std::vector<double> values(eig.eigenvalues.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    double l = eig.eigenvalues[k];
    if (nonneg_domain && l < 0.0) {
      if (l < -kSpectralClamp * scale)
        throw DomainError("eigenvalue " + format_double(l) +
                          " outside the domain [0, inf)");
      l = 0.0;
    }
    values[k] = f(l);
  }
  return spectral_sum(eig.vectors, values);
}

HermitianMatrix abs_operator(const ComplexMatrix& a) {
  return apply_function(
      gram(a), [](double t) { return std::sqrt(t); }, true);
}

double lambda_max(const HermitianMatrix& h) {
  const auto raw = jacobi(h, false, kJacobiMaxSweeps);
  return *std::max_element(raw.eigenvalues.begin(), raw.eigenvalues.end());
}

SpectrumBounds lambda_extremes(const HermitianMatrix& h) {
  const auto raw = jacobi(h, false, kJacobiMaxSweeps);
  const auto [lo, hi] =
      std::minmax_element(raw.eigenvalues.begin(), raw.eigenvalues.end());
  return {*lo, *hi};
}

void require_psd(const HermitianMatrix& h, const char* what) {
  const auto [lo, hi] = lambda_extremes(h);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  if (lo < -kSpectralClamp * scale)
    throw DomainError(std::string(what) +
                      " is not positive semidefinite: lambda_min = " +
                      format_double(lo));
}

double operator_norm(const ComplexMatrix& a) {
  return std::sqrt(std::max(0.0, lambda_max(gram(a))));
}

double operator_norm(const HermitianMatrix& h) {
  const auto [lo, hi] = lambda_extremes(h);
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace radiuslab
