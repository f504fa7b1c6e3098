#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "radiuslab/matrix.hpp"
#include "radiuslab/numrange.hpp"
#include "radiuslab/positive_map.hpp"
#include "radiuslab/scalar_function.hpp"

namespace radiuslab {

enum class ChainId {
  Equiv,
  Kittaneh,
  ThmMain,
  CorPowerR,
  ThmPhiSup,
  PropPhiOpconvex,
  MultiOp,
  MultiOpNormal,
  TwoOpSup,
  TwoOpOpconvex,
};

inline constexpr ChainId kAllChains[] = {
    ChainId::Equiv,          ChainId::Kittaneh,        ChainId::ThmMain,
    ChainId::CorPowerR,      ChainId::ThmPhiSup,       ChainId::PropPhiOpconvex,
    ChainId::MultiOp,        ChainId::MultiOpNormal,   ChainId::TwoOpSup,
    ChainId::TwoOpOpconvex,
};

std::string_view chain_name(ChainId id);
/// Accepts the canonical upper-case name ("THM_MAIN") or lower case.
ChainId parse_chain_id(std::string_view name);

struct SupBracket {
  double lower;
  double upper;
};

struct ChainOptions {
  double tol_scale = 1e-9;
  int radius_grid = kDefaultRadiusGrid;
  int sweep_directions = kDefaultSweepDirections;
};

/// Terms run left to right as the inequality is written. When the middle term
/// is a sup it is reported as the attained lower bound, and the margins are
/// taken on the sound side: [upper − left, right − lower].
struct ChainResult {
  ChainId id;
  std::vector<double> terms;
  std::vector<double> margins;
  std::vector<double> tightness;  // term_i / term_{i+1}, 0/0 = 1
  bool holds = false;
  std::optional<SupBracket> sup;
  bool sufficient = false;  // left <= lower + tol; same as holds without a sup
  double tol = 0.0;

  double min_margin() const;
};

ChainResult chain_equiv(const ComplexMatrix& a, const ChainOptions& opt = {});
ChainResult chain_kittaneh(const ComplexMatrix& a, const ChainOptions& opt = {});
ChainResult chain_thm_main(const ComplexMatrix& a, const ScalarFunction& f,
                           const ChainOptions& opt = {});
ChainResult chain_power_r(const ComplexMatrix& a, double r,
                          const ChainOptions& opt = {});
ChainResult chain_thm_phi_sup(const ComplexMatrix& a, const ScalarFunction& f,
                              const PositiveMap& phi,
                              const ChainOptions& opt = {});
ChainResult chain_prop_phi_opconvex(const ComplexMatrix& a,
                                    const ScalarFunction& f,
                                    const PositiveMap& phi,
                                    const ChainOptions& opt = {});

/// One operator of a direct-sum family with its map summand (a weighted unital
/// map or a congruence by a contraction P_i).
struct MultiOpItem {
  ComplexMatrix a;
  PositiveMap::Summand term;
};

/// The family must satisfy Σ Φ_i(I) = I; the residual is reported otherwise.
ChainResult chain_multi_op(const std::vector<MultiOpItem>& items,
                           const ScalarFunction& f,
                           const ChainOptions& opt = {});
/// Normal A_i: the left term becomes f(‖Σ Φ_i(A_i)‖²).
ChainResult chain_multi_op_normal(const std::vector<MultiOpItem>& items,
                                  const ScalarFunction& f,
                                  const ChainOptions& opt = {});

ChainResult chain_two_op_sup(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ScalarFunction& f,
                             const ChainOptions& opt = {});
ChainResult chain_two_op_opconvex(const ComplexMatrix& a,
                                  const ComplexMatrix& b,
                                  const ScalarFunction& f,
                                  const ChainOptions& opt = {});

nlohmann::json chain_to_json(const ChainResult& r);

/// ‖AA* − A*A‖_F <= 1e-10·‖A‖²_F.
bool is_normal(const ComplexMatrix& a, double rel_tol = 1e-10);

}  // namespace radiuslab
