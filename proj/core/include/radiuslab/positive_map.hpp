#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "radiuslab/matrix.hpp"
#include "radiuslab/scalar_function.hpp"

namespace radiuslab {

/// Dense rows×cols matrix, used only for compression and congruence
/// operators (everything else in the library is square).
struct RectMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Complex> data;  // row-major

  Complex operator()(std::size_t i, std::size_t j) const {
    return data[i * cols + j];
  }
  static RectMatrix from_square(const ComplexMatrix& m);
};

/// Unital positive linear map Φ : M_in → M_out, stored declaratively and
/// applied structurally. Unitality is verified when a map is built.
class PositiveMap {
 public:
  struct Identity {
    std::size_t n;
  };
  struct Pinch {
    std::vector<std::size_t> blocks;
  };
  /// X ↦ V*XV with V*V = I (V is in×out).
  struct Compress {
    RectMatrix v;
  };
  /// X ↦ (tr X / n)·I.
  struct TraceState {
    std::size_t n;
  };
  struct Transpose {
    std::size_t n;
  };
  /// X ↦ U*XU.
  struct UnitaryConj {
    ComplexMatrix u;
  };
  struct Mixture {
    std::vector<PositiveMap> maps;
    std::vector<double> weights;
  };
  /// One summand of a direct-sum family acting on its diagonal block:
  /// either weight·Φ_i(X_ii) for a unital Φ_i, or P_i* X_ii P_i.
  struct Summand {
    std::shared_ptr<const PositiveMap> map;  // null for a congruence term
    double weight = 1.0;
    std::optional<RectMatrix> contraction;

    static Summand weighted(PositiveMap map, double weight);
    static Summand congruence(RectMatrix p);
    std::size_t input_dim() const;
    std::size_t output_dim() const;
  };
  /// X ↦ Σ_i Φ_i(X_ii) over the block-diagonal of the input. The family must
  /// satisfy Σ_i Φ_i(I) = I.
  struct DirectSum {
    std::vector<Summand> terms;
  };

  using Variant = std::variant<Identity, Pinch, Compress, TraceState, Transpose,
                               UnitaryConj, Mixture, DirectSum>;

  static PositiveMap identity(std::size_t n);
  static PositiveMap pinch(std::vector<std::size_t> blocks);
  static PositiveMap compress(RectMatrix v);
  static PositiveMap trace_state(std::size_t n);
  static PositiveMap transpose(std::size_t n);
  static PositiveMap unitary_conj(ComplexMatrix u);
  static PositiveMap mixture(std::vector<PositiveMap> maps,
                             std::vector<double> weights);
  static PositiveMap direct_sum(std::vector<Summand> terms);

  const Variant& variant() const noexcept { return v_; }
  std::size_t input_dim() const noexcept { return in_; }
  std::size_t output_dim() const noexcept { return out_; }
  std::string name() const;

  ComplexMatrix apply(const ComplexMatrix& x) const;
  /// Positive maps preserve Hermiticity; any asymmetry in the structural
  /// product is roundoff and is removed.
  HermitianMatrix apply(const HermitianMatrix& x) const;

 private:
  PositiveMap(Variant v, std::size_t in, std::size_t out);
  void verify_unital() const;

  Variant v_;
  std::size_t in_;
  std::size_t out_;
};

/// λ_min(Φ(f(H)) − f(Φ(H))) for operator convex f and PSD H.
double choi_davis_margin(const PositiveMap& phi, const ScalarFunction& f,
                         const HermitianMatrix& h);
/// λ_min(Φ(H²) − Φ(H)²) for any Hermitian H.
double kadison_margin(const PositiveMap& phi, const HermitianMatrix& h);
/// ⟨Φ(f(H))x, x⟩ − f(⟨Φ(H)x, x⟩) for convex f, PSD H, unit x.
double jensen_inner_margin(const PositiveMap& phi, const ScalarFunction& f,
                           const HermitianMatrix& h,
                           std::span<const Complex> x);
/// √(⟨|A|x,x⟩⟨|A*|y,y⟩) − |⟨Ax, y⟩| for unit x, y.
double mixed_schwarz_margin(const ComplexMatrix& a, std::span<const Complex> x,
                            std::span<const Complex> y);

/// {"variant":"pinch","blocks":[2,2]}, {"variant":"compress","V":<matrix>},
/// {"variant":"mixture","maps":[...],"weights":[...]}, ... `n` supplies the
/// dimension for variants that do not carry one.
nlohmann::json map_to_json(const PositiveMap& phi);
PositiveMap map_from_json(const nlohmann::json& j, std::size_t n);

/// JSON text, or a short name: identity, transpose, trace_state,
/// pinch:2,2, ...
PositiveMap parse_map(const std::string& text, std::size_t n);

}  // namespace radiuslab
