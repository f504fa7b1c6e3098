#include "radiuslab/chains.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>

#include "radiuslab/matrix_io.hpp"
#include "radiuslab/quadrature.hpp"
#include "radiuslab/spectral.hpp"

namespace radiuslab {

namespace {

constexpr std::string_view kNames[] = {
    "EQUIV",     "KITTANEH", "THM_MAIN",        "COR_POWER_R", "THM_PHI_SUP",
    "PROP_PHI_OPCONVEX", "MULTI_OP", "MULTI_OP_NORMAL", "TWO_OP_SUP",
    "TWO_OP_OPCONVEX",
};

double largest(const std::vector<double>& v) {
  double m = 1.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

double ratio(double num, double den) {
  if (num == 0.0 && den == 0.0) return 1.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

ChainResult finish(ChainId id, std::vector<double> terms, const ChainOptions& opt) {
  ChainResult r;
  r.id = id;
  r.terms = std::move(terms);
  r.tol = opt.tol_scale * largest(r.terms);
  for (std::size_t i = 0; i + 1 < r.terms.size(); ++i) {
    r.margins.push_back(r.terms[i + 1] - r.terms[i]);
    r.tightness.push_back(ratio(r.terms[i], r.terms[i + 1]));
  }
  r.holds = r.min_margin() >= -r.tol;
  r.sufficient = r.holds;
  return r;
}

// Sound-side margins for a chain whose middle term is a sup.
ChainResult finish_sup(ChainId id, double left, const SupSweepResult& s,
                       double right, const ChainOptions& opt) {
  ChainResult r;
  r.id = id;
  r.terms = {left, s.lower, right};
  r.sup = SupBracket{s.lower, s.upper};
  r.tol = opt.tol_scale * std::max(largest(r.terms), s.upper);
  r.margins = {s.upper - left, right - s.lower};
  r.tightness = {ratio(left, s.lower), ratio(s.lower, right)};
  r.holds = r.min_margin() >= -r.tol;
  r.sufficient = r.holds && left <= s.lower + r.tol;
  return r;
}

void require_operator_convex(const ScalarFunction& f, std::string_view chain) {
  if (!f.increasing() || !f.operator_convex())
    throw PreconditionError(std::string(chain) +
                            " needs an increasing operator convex function, got " +
                            f.name());
}

void require_convex_increasing(const ScalarFunction& f, std::string_view chain) {
  if (!f.increasing() || !f.convex())
    throw PreconditionError(std::string(chain) +
                            " needs an increasing convex function, got " + f.name());
}

double half_norm_of_sum(const HermitianMatrix& x, const HermitianMatrix& y) {
  return 0.5 * operator_norm(hermitian_combination(1.0, x, 1.0, y));
}

// Right term shared by the Φ chains: ½‖Φ(f(|A|²) + f(|A*|²))‖.
double phi_right(const PositiveMap& phi, const ScalarFunction& f,
                 const HermitianMatrix& p2, const HermitianMatrix& q2) {
  const auto sum = hermitian_combination(1.0, apply_function(p2, f), 1.0,
                                         apply_function(q2, f));
  return 0.5 * operator_norm(phi.apply(sum));
}

ChainResult phi_sup_with_left(ChainId id, double left_arg_sq,
                              const ComplexMatrix& a, const ScalarFunction& f,
                              const PositiveMap& phi, const ChainOptions& opt) {
  const auto abs_sq = gram(a);
  const auto abs_star_sq = cogram(a);
  const auto p = phi.apply(abs_sq);
  const auto q = phi.apply(abs_star_sq);
  const SegmentObjective psi(f);
  const auto sweep = sup_convex_over_joint_range(p, q, psi, opt.sweep_directions);
  const double left = f(left_arg_sq);
  const double right = phi_right(phi, f, abs_sq, abs_star_sq);
  return finish_sup(id, left, sweep, right, opt);
}

struct Assembled {
  ComplexMatrix a;
  PositiveMap phi;
};

Assembled assemble(const std::vector<MultiOpItem>& items) {
  if (items.empty()) throw PreconditionError("multi-operator chain needs items");
  std::vector<ComplexMatrix> blocks;
  std::vector<PositiveMap::Summand> terms;
  for (const auto& item : items) {
    if (item.a.size() != item.term.input_dim())
      throw DimensionError("multi-operator item", item.term.input_dim(),
                           item.a.size());
    blocks.push_back(item.a);
    terms.push_back(item.term);
  }
  return {direct_sum(blocks), PositiveMap::direct_sum(std::move(terms))};
}

}  // namespace

std::string_view chain_name(ChainId id) {
  return kNames[static_cast<std::size_t>(id)];
}

ChainId parse_chain_id(std::string_view name) {
  std::string upper(name);
  for (auto& c : upper)
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (auto id : kAllChains)
    if (chain_name(id) == upper) return id;
  throw ConfigError("chains", "unknown chain id \"" + std::string(name) + "\"");
}

double ChainResult::min_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (double x : margins) m = std::min(m, x);
  return m;
}

bool is_normal(const ComplexMatrix& a, double rel_tol) {
  const double fro = a.frobenius_norm();
  const double comm = (cogram(a).matrix() - gram(a).matrix()).frobenius_norm();
  return comm <= rel_tol * fro * fro;
}

ChainResult chain_equiv(const ComplexMatrix& a, const ChainOptions& opt) {
  const auto w = numerical_radius(a, opt.radius_grid);
  return finish(ChainId::Equiv, {0.5 * w.norm, w.value, w.norm}, opt);
}

ChainResult chain_kittaneh(const ComplexMatrix& a, const ChainOptions& opt) {
  const double w = numerical_radius(a, opt.radius_grid).value;
  return finish(ChainId::Kittaneh, {w * w, half_norm_of_sum(gram(a), cogram(a))},
                opt);
}

ChainResult chain_thm_main(const ComplexMatrix& a, const ScalarFunction& f,
                           const ChainOptions& opt) {
  require_operator_convex(f, "THM_MAIN");
  const auto abs_a = abs_operator(a);
  const auto abs_a_star = abs_operator(a.adjoint());
  const double w = numerical_radius(a, opt.radius_grid).value;
  const double middle =
      operator_norm(matrix_segment_integral(f, abs_a, abs_a_star));
  const double right =
      half_norm_of_sum(apply_function(abs_a, f), apply_function(abs_a_star, f));
  return finish(ChainId::ThmMain, {f(w), middle, right}, opt);
}

ChainResult chain_power_r(const ComplexMatrix& a, double r,
                          const ChainOptions& opt) {
  if (!(r >= 1.0 && r <= 2.0))
    throw PreconditionError("COR_POWER_R needs 1 <= r <= 2, got " + format_double(r));
  auto out = chain_thm_main(a, ScalarFunction::power(r), opt);
  out.id = ChainId::CorPowerR;
  return out;
}

ChainResult chain_thm_phi_sup(const ComplexMatrix& a, const ScalarFunction& f,
                              const PositiveMap& phi, const ChainOptions& opt) {
  require_convex_increasing(f, "THM_PHI_SUP");
  if (phi.input_dim() != a.size())
    throw DimensionError("THM_PHI_SUP map", phi.input_dim(), a.size());
  const double w = numerical_radius(phi.apply(a), opt.radius_grid).value;
  return phi_sup_with_left(ChainId::ThmPhiSup, w * w, a, f, phi, opt);
}

ChainResult chain_prop_phi_opconvex(const ComplexMatrix& a,
                                    const ScalarFunction& f,
                                    const PositiveMap& phi,
                                    const ChainOptions& opt) {
  require_operator_convex(f, "PROP_PHI_OPCONVEX");
  if (phi.input_dim() != a.size())
    throw DimensionError("PROP_PHI_OPCONVEX map", phi.input_dim(), a.size());
  const auto abs_sq = gram(a);
  const auto abs_star_sq = cogram(a);
  const double w = numerical_radius(phi.apply(a), opt.radius_grid).value;
  const double middle = operator_norm(
      phi.apply(matrix_segment_integral(f, abs_sq, abs_star_sq)));
  const double right = phi_right(phi, f, abs_sq, abs_star_sq);
  return finish(ChainId::PropPhiOpconvex, {f(w * w), middle, right}, opt);
}

ChainResult chain_multi_op(const std::vector<MultiOpItem>& items,
                           const ScalarFunction& f, const ChainOptions& opt) {
  const auto [a, phi] = assemble(items);
  auto out = chain_thm_phi_sup(a, f, phi, opt);
  out.id = ChainId::MultiOp;
  return out;
}

ChainResult chain_multi_op_normal(const std::vector<MultiOpItem>& items,
                                  const ScalarFunction& f,
                                  const ChainOptions& opt) {
  require_convex_increasing(f, "MULTI_OP_NORMAL");
  for (std::size_t i = 0; i < items.size(); ++i)
    if (!is_normal(items[i].a))
      throw PreconditionError("MULTI_OP_NORMAL: operator " + std::to_string(i) +
                              " is not normal");
  const auto [a, phi] = assemble(items);
  const double nrm = operator_norm(phi.apply(a));
  return phi_sup_with_left(ChainId::MultiOpNormal, nrm * nrm, a, f, phi, opt);
}

ChainResult chain_two_op_sup(const ComplexMatrix& a, const ComplexMatrix& b,
                             const ScalarFunction& f, const ChainOptions& opt) {
  require_convex_increasing(f, "TWO_OP_SUP");
  if (a.size() != b.size()) throw DimensionError("TWO_OP_SUP", a.size(), b.size());
  const auto abs_a_sq = gram(a);
  const auto abs_b_sq = gram(b);
  const double w = numerical_radius(b.adjoint() * a, opt.radius_grid).value;
  const SegmentObjective psi(f);
  const auto sweep =
      sup_convex_over_joint_range(abs_a_sq, abs_b_sq, psi, opt.sweep_directions);
  const double right =
      half_norm_of_sum(apply_function(abs_a_sq, f), apply_function(abs_b_sq, f));
  return finish_sup(ChainId::TwoOpSup, f(w), sweep, right, opt);
}

ChainResult chain_two_op_opconvex(const ComplexMatrix& a,
                                  const ComplexMatrix& b,
                                  const ScalarFunction& f,
                                  const ChainOptions& opt) {
  require_operator_convex(f, "TWO_OP_OPCONVEX");
  if (a.size() != b.size())
    throw DimensionError("TWO_OP_OPCONVEX", a.size(), b.size());
  const auto abs_a_sq = gram(a);
  const auto abs_b_sq = gram(b);
  const double w = numerical_radius(b.adjoint() * a, opt.radius_grid).value;
  const double middle =
      operator_norm(matrix_segment_integral(f, abs_a_sq, abs_b_sq));
  const double right =
      half_norm_of_sum(apply_function(abs_a_sq, f), apply_function(abs_b_sq, f));
  return finish(ChainId::TwoOpOpconvex, {f(w), middle, right}, opt);
}

nlohmann::json chain_to_json(const ChainResult& r) {
  nlohmann::json j{
      {"chain_id", chain_name(r.id)},
      {"terms", r.terms},
      {"margins", r.margins},
      {"tightness", r.tightness},
      {"holds", r.holds},
      {"sufficient", r.sufficient},
      {"tol", r.tol},
  };
  if (r.sup) j["sup_bracket"] = {{"lower", r.sup->lower}, {"upper", r.sup->upper}};
  return j;
}

}  // namespace radiuslab
