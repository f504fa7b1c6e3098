#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "radiuslab/error.hpp"

namespace radiuslab {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

/// Dense square complex matrix, row-major, dimension carried explicitly.
class ComplexMatrix {
 public:
  /// Zero matrix of dimension n (n >= 1).
  explicit ComplexMatrix(std::size_t n);
  /// Takes ownership of n*n row-major entries; rejects non-finite values.
  ComplexMatrix(std::size_t n, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t size() const noexcept { return n_; }

  Complex operator()(std::size_t i, std::size_t j) const {
    return entries_[i * n_ + j];
  }
  Complex& operator()(std::size_t i, std::size_t j) {
    return entries_[i * n_ + j];
  }

  std::span<const Complex> entries() const noexcept { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool is_zero() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scalar);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix m);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(Complex scalar, ComplexMatrix m);
ComplexMatrix operator*(ComplexMatrix m, Complex scalar);

/// Block-diagonal matrix diag(blocks[0], blocks[1], ...).
ComplexMatrix direct_sum(std::span<const ComplexMatrix> blocks);

/// Hermitian-ness check shared by every module: relative Frobenius deviation.
inline constexpr double kHermitianTolerance = 1e-12;

/// A matrix verified Hermitian on construction. Inputs failing the check are
/// rejected, never repaired; `symmetrize` is the explicit opt-in.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(ComplexMatrix m);

  /// (M + M*)/2, for callers that document why roundoff repair is sound.
  static HermitianMatrix symmetrize(const ComplexMatrix& m);
  static HermitianMatrix identity(std::size_t n);
  static HermitianMatrix diagonal(std::span<const double> values);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t size() const noexcept { return m_.size(); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  /// ‖H − H*‖_F / max(1, ‖H‖_F).
  static double deviation(const ComplexMatrix& m);

 private:
  struct Trusted {};
  HermitianMatrix(ComplexMatrix m, Trusted) : m_(std::move(m)) {}

  ComplexMatrix m_;

  friend HermitianMatrix gram(const ComplexMatrix& a);
  friend HermitianMatrix cogram(const ComplexMatrix& a);
};

/// A*A, computed on the upper triangle and mirrored so it is exactly Hermitian.
HermitianMatrix gram(const ComplexMatrix& a);
/// AA*, as above.
HermitianMatrix cogram(const ComplexMatrix& a);
/// alpha·X + beta·Y for real scalars.
HermitianMatrix hermitian_combination(double alpha, const HermitianMatrix& x,
                                      double beta, const HermitianMatrix& y);

struct CartesianParts {
  HermitianMatrix real;  // (A + A*)/2
  HermitianMatrix imag;  // (A − A*)/(2i)
};

CartesianParts cartesian_decomposition(const ComplexMatrix& a);

Vector matvec(const ComplexMatrix& m, std::span<const Complex> x);
/// ⟨x, y⟩ = Σ x_i conj(y_i), linear in the first argument.
Complex inner(std::span<const Complex> x, std::span<const Complex> y);
double norm(std::span<const Complex> x);
Vector normalized(std::span<const Complex> x);
Vector basis_vector(std::size_t n, std::size_t k);

/// Throws PreconditionError unless | ‖x‖ − 1 | <= 1e-12.
void require_unit(std::span<const Complex> x, const char* what);

}  // namespace radiuslab
