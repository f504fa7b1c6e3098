#include "radiuslab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace radiuslab {

namespace {

void require_dimension(std::size_t n) {
  if (n == 0) throw InvalidMatrixError("matrix dimension must be at least 1");
}

void require_same(const char* context, std::size_t a, std::size_t b) {
  if (a != b) throw DimensionError(context, a, b);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), entries_(n * n) {
  require_dimension(n);
}

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), entries_(std::move(entries)) {
  require_dimension(n);
  if (entries_.size() != n * n) {
    throw DimensionError("matrix entries (expected n*n)", n * n,
                         entries_.size());
  }
  for (const auto& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidMatrixError("matrix entries must be finite");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t n = rows.size();
  std::vector<Complex> entries;
  entries.reserve(n * n);
  for (const auto& row : rows) {
    require_same("from_rows: row length", n, row.size());
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(n, std::move(entries));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < n_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::frobenius_norm() const {
  // Scaled accumulation keeps tiny and huge entries from under/overflowing.
  double scale = 0.0;
  for (const auto& z : entries_)
    scale = std::max({scale, std::abs(z.real()), std::abs(z.imag())});
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& z : entries_) {
    const double re = z.real() / scale;
    const double im = z.imag() / scale;
    sum += re * re + im * im;
  }
  return scale * std::sqrt(sum);
}

bool ComplexMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const Complex& z) { return z == Complex{}; });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  require_same("matrix sum", n_, other.n_);
  for (std::size_t k = 0; k < entries_.size(); ++k)
    entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  require_same("matrix difference", n_, other.n_);
  for (std::size_t k = 0; k < entries_.size(); ++k)
    entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
  for (auto& z : entries_) z *= scalar;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs += rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) {
  lhs -= rhs;
  return lhs;
}

ComplexMatrix operator-(ComplexMatrix m) {
  m *= -1.0;
  return m;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  const std::size_t n = lhs.size();
  require_same("matrix product", n, rhs.size());
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex a = lhs(i, k);
      if (a == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += a * rhs(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, ComplexMatrix m) {
  m *= scalar;
  return m;
}

ComplexMatrix operator*(ComplexMatrix m, Complex scalar) {
  m *= scalar;
  return m;
}

ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) throw InvalidMatrixError("direct_sum of no blocks");
  std::size_t total = 0;
  for (const auto& b : blocks) total += b.size();
  ComplexMatrix out(total);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j)
        out(offset + i, offset + j) = b(i, j);
    offset += b.size();
  }
  return out;
}

double HermitianMatrix::deviation(const ComplexMatrix& m) {
  const double diff = (m - m.adjoint()).frobenius_norm();
  return diff / std::max(1.0, m.frobenius_norm());
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  const double dev = deviation(m_);
  if (!(dev <= kHermitianTolerance))
    throw NotHermitianError(dev, kHermitianTolerance);
}

HermitianMatrix HermitianMatrix::symmetrize(const ComplexMatrix& m) {
  const std::size_t n = m.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex v = 0.5 * (m(i, j) + std::conj(m(j, i)));
      out(i, j) = v;
      out(j, i) = std::conj(v);
    }
  }
  return HermitianMatrix(std::move(out), Trusted{});
}

HermitianMatrix HermitianMatrix::identity(std::size_t n) {
  return HermitianMatrix(ComplexMatrix::identity(n), Trusted{});
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> values) {
  return HermitianMatrix(ComplexMatrix::diagonal(values), Trusted{});
}

HermitianMatrix gram(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += std::conj(a(k, i)) * a(k, j);
      if (i == j) {
        out(i, i) = sum.real();
      } else {
        out(i, j) = sum;
        out(j, i) = std::conj(sum);
      }
    }
  }
  return HermitianMatrix(std::move(out), HermitianMatrix::Trusted{});
}

HermitianMatrix cogram(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < n; ++k) sum += a(i, k) * std::conj(a(j, k));
      if (i == j) {
        out(i, i) = sum.real();
      } else {
        out(i, j) = sum;
        out(j, i) = std::conj(sum);
      }
    }
  }
  return HermitianMatrix(std::move(out), HermitianMatrix::Trusted{});
}

HermitianMatrix hermitian_combination(double alpha, const HermitianMatrix& x,
                                      double beta, const HermitianMatrix& y) {
  require_same("hermitian_combination", x.size(), y.size());
  const std::size_t n = x.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = alpha * x(i, j) + beta * y(i, j);
  return HermitianMatrix(std::move(out));
}

CartesianParts cartesian_decomposition(const ComplexMatrix& a) {
  const std::size_t n = a.size();
  ComplexMatrix re(n);
  ComplexMatrix im(n);
  const Complex minus_half_i{0.0, -0.5};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Complex aij = a(i, j);
      const Complex aji_conj = std::conj(a(j, i));
      re(i, j) = 0.5 * (aij + aji_conj);
      im(i, j) = minus_half_i * (aij - aji_conj);
    }
  }
  return {HermitianMatrix(std::move(re)), HermitianMatrix(std::move(im))};
}

Vector matvec(const ComplexMatrix& m, std::span<const Complex> x) {
  require_same("matrix-vector product", m.size(), x.size());
  const std::size_t n = m.size();
  Vector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    Complex sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) sum += m(i, j) * x[j];
    out[i] = sum;
  }
  return out;
}

Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
  require_same("inner product", x.size(), y.size());
  Complex sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * std::conj(y[i]);
  return sum;
}

double norm(std::span<const Complex> x) {
  double sum = 0.0;
  for (const auto& z : x) sum += std::norm(z);
  return std::sqrt(sum);
}

Vector normalized(std::span<const Complex> x) {
  const double len = norm(x);
  if (!(len > 0.0)) throw InvalidMatrixError("cannot normalize a zero vector");
  Vector out(x.begin(), x.end());
  for (auto& z : out) z /= len;
  return out;
}

Vector basis_vector(std::size_t n, std::size_t k) {
  Vector e(n);
  e.at(k) = 1.0;
  return e;
}

void require_unit(std::span<const Complex> x, const char* what) {
  const double len = norm(x);
  if (!(std::abs(len - 1.0) <= 1e-12)) {
    throw PreconditionError(std::string(what) + " must be a unit vector");
  }
}

}  // namespace radiuslab
