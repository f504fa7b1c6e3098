#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace radiuslab {

/// Arguments in [-kScalarClampTolerance, 0) are treated as 0.
inline constexpr double kScalarClampTolerance = 1e-12;

/// Catalogued scalar function f : [0, ∞) → [0, ∞) with declared shape flags.
///
/// Members:
///   power(r)        t^r, r >= 1; operator convex iff r <= 2
///   affine(α, β)    α + βt with α, β >= 0
///   exp_minus_one   e^t − 1; convex but not operator convex
///   polynomial(c)   Σ c_k t^k, c_k >= 0; operator convex iff degree <= 2
class ScalarFunction {
 public:
  struct Power {
    double r;
  };
  struct Affine {
    double alpha;
    double beta;
  };
  struct ExpMinusOne {};
  struct Polynomial {
    std::vector<double> coeffs;  // c_0, c_1, ...
  };
  using Kind = std::variant<Power, Affine, ExpMinusOne, Polynomial>;

  static ScalarFunction power(double r);
  static ScalarFunction affine(double alpha, double beta);
  static ScalarFunction exp_minus_one();
  static ScalarFunction polynomial(std::vector<double> coeffs);

  const Kind& kind() const noexcept { return kind_; }

  bool increasing() const noexcept { return true; }
  bool convex() const noexcept { return true; }
  bool operator_convex() const noexcept;

  /// Coefficients c_0..c_d when f is a polynomial (including integer powers
  /// and affine members); empty otherwise.
  std::vector<double> polynomial_coefficients() const;
  bool is_polynomial() const { return !polynomial_coefficients().empty(); }

  /// f(t); t in [-1e-12, 0) is clamped to 0, anything lower is a DomainError.
  double operator()(double t) const;
  double derivative(double t) const;

  std::string name() const;

  friend bool operator==(const ScalarFunction& a, const ScalarFunction& b);

 private:
  explicit ScalarFunction(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// {"kind":"power","r":1.5}, {"kind":"affine","alpha":0,"beta":1},
/// {"kind":"exp_minus_one"}, {"kind":"polynomial","coeffs":[0,1,1]}.
nlohmann::json function_to_json(const ScalarFunction& f);
ScalarFunction function_from_json(const nlohmann::json& j);

/// Short CLI form: "power:2", "affine:0,1", "exp_minus_one", "poly:0,1,1".
/// A leading '{' is parsed as JSON instead.
ScalarFunction parse_function(std::string_view text);

}  // namespace radiuslab
