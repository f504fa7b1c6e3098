// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "radiuslab/chains.hpp"
#include "radiuslab/experiment.hpp"
#include "radiuslab/matrix_io.hpp"
#include "radiuslab/numrange.hpp"
#include "radiuslab/quadrature.hpp"
#include "radiuslab/random.hpp"
#include "radiuslab/spectral.hpp"
#include "radiuslab/tightness.hpp"

using namespace radiuslab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v) { return format_double(v); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentConfig ginibre_sweep(ChainId id, std::uint64_t seed) {
  ExperimentConfig c;
  c.chains = {id};
  c.dims = {2, 3, 4, 5, 6, 7, 8};
  c.samples = 500;
  c.seed = seed;
  c.ensembles = {Ensemble::Ginibre};
  return c;
}

Vector random_unit(std::size_t n, RngStream& rng) {
  Vector x(n);
  for (auto& z : x) z = rng.complex_normal();
  return normalized(x);
}

// 1. w²(A) <= ½‖|A|²+|A*|²‖ on 500 Ginibre samples per n in 2..8.
Outcome kittaneh() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = run_suite(ginibre_sweep(ChainId::Kittaneh, 101));
  const double wall = seconds_since(t0);
  o.require(rep.violations == 0, std::to_string(rep.violations) + " violations");
  o.require(wall < 60.0, "runtime " + fmt(wall) + "s");
  const auto j2 = chain_kittaneh(oracle::j2());
  o.require(std::abs(j2.terms[0] - 0.25) <= 1e-10 && std::abs(j2.terms[1] - 0.5) <= 1e-10,
            "J2 terms " + fmt(j2.terms[0]) + ", " + fmt(j2.terms[1]));
  o.detail = o.detail.empty() ? std::to_string(rep.records.size()) + " samples, 0 violations, " +
                                    std::to_string(wall).substr(0, 5) + "s; J2 = (0.25, 0.5)"
                              : o.detail;
  return o;
}

// 2. THM_MAIN with power(r), r in {1, 1.5, 2}; J₂ closed form for r = 2.
Outcome main_theorem() {
  Outcome o;
  std::size_t total = 0;
  for (double r : {1.0, 1.5, 2.0}) {
    auto c = ginibre_sweep(ChainId::ThmMain, 202);
    c.function = ScalarFunction::power(r);
    const auto rep = run_suite(c);
    total += rep.records.size();
    o.require(rep.violations == 0, "r=" + fmt(r) + ": " + std::to_string(rep.violations) + " violations");
  }
  const auto res = chain_thm_main(oracle::j2(), ScalarFunction::power(2.0));
  o.require(std::abs(res.terms[0] - 0.25) <= 1e-12 && std::abs(res.terms[1] - 1.0 / 3.0) <= 1e-12 &&
                std::abs(res.terms[2] - 0.5) <= 1e-12,
            "J2 terms off");
  // Middle term against (X²+Y²)/3 + (XY+YX)/6 with X = |A|, Y = |A*|.
  const double dx[] = {0.0, 1.0};
  const double dy[] = {1.0, 0.0};
  const auto x = ComplexMatrix::diagonal(dx);
  const auto y = ComplexMatrix::diagonal(dy);
  const auto closed = Complex(1.0 / 3.0) * (x * x + y * y) + Complex(1.0 / 6.0) * (x * y + y * x);
  const auto got = matrix_segment_integral(ScalarFunction::power(2.0), abs_operator(oracle::j2()),
                                           abs_operator(oracle::j2().adjoint()));
  const double rel = (got.matrix() - closed).frobenius_norm() / closed.frobenius_norm();
  o.require(rel <= 1e-12, "closed-form mismatch " + fmt(rel));
  if (o.pass)
    o.detail = std::to_string(total) + " samples over r in {1, 1.5, 2}, 0 violations; J2 = (0.25, 1/3, 0.5)";
  return o;
}

// 3. Mean refinement (right − middle)/right > 0 on Ginibre, 0 on normal.
Outcome refinement() {
  Outcome o;
  ExperimentConfig c;
  c.chains = {ChainId::ThmMain};
  c.dims = {4};
  c.samples = 500;
  c.seed = 303;
  c.ensembles = {Ensemble::Ginibre};
  std::vector<ChainResult> ginibre;
  for (const auto& rec : run_suite(c).records)
    if (rec.result) ginibre.push_back(*rec.result);
  o.require(ginibre.size() == 500, "missing Ginibre results");
  const double g = *tightness_report(ginibre).refinement_mean;
  o.require(g > 0.0, "Ginibre refinement " + fmt(g));

  const ChainResult j2[] = {chain_thm_main(oracle::j2(), ScalarFunction::power(2.0))};
  const double j = *tightness_report(j2).refinement_mean;
  o.require(std::abs(j - 1.0 / 3.0) <= 1e-15, "J2 refinement " + fmt(j));

  c.ensembles = {Ensemble::Normal};
  std::vector<ChainResult> normal;
  for (const auto& rec : run_suite(c).records)
    if (rec.result) normal.push_back(*rec.result);
  const double nr = *tightness_report(normal).refinement_mean;
  o.require(std::abs(nr) <= 1e-9, "normal refinement " + fmt(nr));
  if (o.pass)
    o.detail = "Ginibre mean " + fmt(g).substr(0, 8) + " > 0; J2 = 1/3; normal " + fmt(nr);
  return o;
}

// 4. w(J₂), w(J₃) against a dense grid, equivalence sandwich everywhere.
Outcome radius_engine() {
  Outcome o;
  const double w2 = numerical_radius(oracle::j2()).value;
  o.require(std::abs(w2 - 0.5) <= 1e-10, "w(J2) = " + fmt(w2));
  const auto j3 = jordan_block(3);
  const double brute = oracle::brute_radius(j3, 65536);
  const double w3 = numerical_radius(j3).value;
  o.require(std::abs(w3 - brute) <= 1e-8, "w(J3) vs grid: " + fmt(w3) + " vs " + fmt(brute));
  o.require(std::abs(w3 - std::cos(std::numbers::pi / 4)) <= 1e-8, "w(J3) vs cos(pi/4)");

  ExperimentConfig c;
  c.chains = {ChainId::Equiv};
  c.dims = {2, 3, 4, 5, 6, 7, 8};
  c.samples = 20;
  c.seed = 404;
  c.ensembles = {Ensemble::Ginibre,  Ensemble::Hermitian,       Ensemble::Psd,          Ensemble::Normal,
                 Ensemble::Unitary, Ensemble::NilpotentJordan, Ensemble::ShiftedJordan};
  const auto rep = run_suite(c);
  o.require(rep.violations == 0, std::to_string(rep.violations) + " sandwich violations");
  if (o.pass)
    o.detail = "w(J2) = " + fmt(w2) + ", w(J3) = " + fmt(w3) + "; sandwich holds on " +
               std::to_string(rep.records.size()) + " samples (all ensembles)";
  return o;
}

// 5. Positive-map chains over the whole catalog; brackets and commuting oracle.
Outcome positive_map_chains() {
  Outcome o;
  std::size_t violations = 0, insufficient = 0, disordered = 0;
  const std::size_t per_chain = 200;
  for (std::size_t i = 0; i < per_chain; ++i) {
    RngStream rng(derive_seed(505, 0, 0, i));
    const std::size_t n = 2 + i % 4;
    const auto ensemble = i % 3 == 0 ? Ensemble::NilpotentJordan : Ensemble::Ginibre;
    const auto a = gen_random(ensemble, n, rng);
    const auto phi = random_map_variant(i % kMapVariants, n, rng);
    const auto f = ScalarFunction::power(1.0 + (i % 5) * 0.25);
    const auto sup = chain_thm_phi_sup(a, f, phi);
    const auto opc = chain_prop_phi_opconvex(a, f, phi);
    violations += !sup.holds + !opc.holds;
    insufficient += !sup.sufficient;
    disordered += sup.sup->lower > sup.sup->upper + sup.tol;
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.require(disordered == 0, std::to_string(disordered) + " brackets with lower > upper");

  std::size_t misses = 0;
  for (int trial = 0; trial < 100; ++trial) {
    RngStream rng(derive_seed(505, 1, 0, trial));
    const std::size_t n = 2 + trial % 6;
    const auto u = haar_unitary(n, rng);
    std::vector<double> pd(n), qd(n);
    for (std::size_t i = 0; i < n; ++i) {
      pd[i] = 2.0 * rng.uniform();
      qd[i] = 2.0 * rng.uniform();
    }
    auto conj = [&](const std::vector<double>& d) {
      return HermitianMatrix::symmetrize(u * ComplexMatrix::diagonal(d) * u.adjoint());
    };
    const double r = 1.0 + rng.uniform();
    double exact = 0.0;
    for (std::size_t i = 0; i < n; ++i) exact = std::max(exact, oracle::power_segment(r, pd[i], qd[i]));
    const auto s = sup_convex_over_joint_range(conj(pd), conj(qd), SegmentObjective(ScalarFunction::power(r)));
    if (!(s.lower <= exact + 1e-8 && exact <= s.upper + 1e-8 && s.lower >= exact - 1e-8)) ++misses;
  }
  o.require(misses == 0, std::to_string(misses) + " commuting brackets miss the exact maximum");
  if (o.pass)
    o.detail = std::to_string(2 * per_chain) + " evaluations over " + std::to_string(kMapVariants) +
               " map variants, 0 violations, lower <= upper always; commuting oracle contained in 100/100 (" +
               std::to_string(insufficient) + " sup samples not closed by the lower bound)";
  return o;
}

// 6. Lemma margins on random draws plus the hand-computed instances.
Outcome lemma_suite() {
  Outcome o;
  std::size_t bad = 0;
  for (int i = 0; i < 500; ++i) {
    RngStream rng(derive_seed(606, 0, 0, i));
    const std::size_t n = 2 + i % 5;
    const auto phi = random_map(n, rng);
    const auto a = gen_random(Ensemble::Ginibre, n, rng);
    const double na = operator_norm(a);
    bad += mixed_schwarz_margin(a, random_unit(n, rng), random_unit(n, rng)) < -1e-10 * std::max(1.0, na);

    const HermitianMatrix psd(gen_random(Ensemble::Psd, n, rng));
    const double np = operator_norm(psd);
    const auto g = i % 2 ? ScalarFunction::exp_minus_one() : ScalarFunction::power(1.0 + 2.0 * rng.uniform());
    bad += jensen_inner_margin(phi, g, psd, random_unit(phi.output_dim(), rng)) < -1e-10 * std::max(1.0, g(np));

    const auto f = ScalarFunction::power(1.0 + rng.uniform());
    bad += choi_davis_margin(phi, f, psd) < -1e-10 * std::max(1.0, f(np));

    const HermitianMatrix h(gen_random(Ensemble::Hermitian, n, rng));
    const double nh = operator_norm(h);
    bad += kadison_margin(phi, h) < -1e-10 * std::max(1.0, nh * nh);
  }
  o.require(bad == 0, std::to_string(bad) + " negative margins");

  const auto sq = ScalarFunction::power(2.0);
  const double d01[] = {0.0, 1.0};
  const auto h01 = HermitianMatrix::diagonal(d01);
  const double s = 1.0 / std::sqrt(2.0);
  const Vector plus{s, s};
  o.require(std::abs(mixed_schwarz_margin(oracle::j2(), basis_vector(2, 1), basis_vector(2, 0))) <= 1e-15,
            "mixed Schwarz J2 instance");
  o.require(std::abs(choi_davis_margin(PositiveMap::trace_state(2), sq, h01) - 0.25) <= 1e-15,
            "Choi-Davis trace-state instance");
  const HermitianMatrix ones(ComplexMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}));
  o.require(std::abs(choi_davis_margin(PositiveMap::pinch({1, 1}), sq, ones) - 1.0) <= 1e-14,
            "Choi-Davis pinch instance");
  o.require(std::abs(kadison_margin(PositiveMap::trace_state(2), h01) - 0.25) <= 1e-15, "Kadison instance");
  o.require(std::abs(jensen_inner_margin(PositiveMap::identity(2), sq, h01, plus) - 0.25) <= 1e-15,
            "Jensen instance");
  o.require(choi_davis_margin(PositiveMap::identity(2), sq, ones) == 0.0, "Choi-Davis identity instance");
  if (o.pass) o.detail = "4 x 500 random margins >= -1e-10 scale; hand instances reproduced";
  return o;
}

// 7. Scalar Hermite–Hadamard over 10⁴ random (f, a, b).
Outcome hermite_hadamard() {
  Outcome o;
  RngStream rng(707);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    ScalarFunction f = ScalarFunction::power(1.0);
    switch (rng.below(4)) {
      case 0: f = ScalarFunction::power(1.0 + 3.0 * rng.uniform()); break;
      case 1: f = ScalarFunction::affine(rng.uniform(), 3.0 * rng.uniform()); break;
      case 2: f = ScalarFunction::exp_minus_one(); break;
      default: f = ScalarFunction::polynomial({rng.uniform(), rng.uniform(), rng.uniform(), rng.uniform()});
    }
    const double a = 4.0 * rng.uniform();
    const double b = 4.0 * rng.uniform();
    bad += !hh_scalar(f, a, b).holds(1e-12);
  }
  o.require(bad == 0, std::to_string(bad) + " violations");
  const auto t = hh_scalar(ScalarFunction::power(2.0), 0.0, 1.0);
  o.require(t.mid == 0.25 && t.integral == 1.0 / 3.0 && t.endavg == 0.5,
            "triple (" + fmt(t.mid) + ", " + fmt(t.integral) + ", " + fmt(t.endavg) + ")");
  if (o.pass) o.detail = "10000 draws, 0 violations; (0.25, 1/3, 0.5) exact";
  return o;
}

// 8. Eigensolver residuals and characteristic-polynomial agreement.
Outcome eigensolver() {
  Outcome o;
  RngStream rng(808);
  double worst_res = 0.0, worst_orth = 0.0, worst_root = 0.0;
  for (std::size_t n = 1; n <= 16; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      const HermitianMatrix h(gen_random(Ensemble::Hermitian, n, rng));
      const auto e = eig_hermitian(h);
      worst_res = std::max(worst_res, e.residual);
      worst_orth = std::max(worst_orth, orthonormality_error(e.vectors));
    }
  }
  for (int trial = 0; trial < 500; ++trial) {
    const HermitianMatrix h2(gen_random(Ensemble::Hermitian, 2, rng));
    const auto r2 = oracle::hermitian2_eigs(h2.matrix());
    const auto e2 = eig_hermitian(h2).eigenvalues;
    for (int k = 0; k < 2; ++k) worst_root = std::max(worst_root, std::abs(e2[k] - r2[k]));
    const HermitianMatrix h3(gen_random(Ensemble::Hermitian, 3, rng));
    const auto r3 = oracle::hermitian3_eigs(h3.matrix());
    const auto e3 = eig_hermitian(h3).eigenvalues;
    for (int k = 0; k < 3; ++k) worst_root = std::max(worst_root, std::abs(e3[k] - r3[k]));
  }
  o.require(worst_res <= 1e-10, "residual " + fmt(worst_res));
  o.require(worst_orth <= 1e-10, "orthonormality " + fmt(worst_orth));
  o.require(worst_root <= 1e-12, "root error " + fmt(worst_root));
  if (o.pass)
    o.detail = "max residual " + fmt(worst_res) + ", max orthonormality " + fmt(worst_orth) +
               ", max root error " + fmt(worst_root);
  return o;
}

// 9. Standard verify profile: identical CSV across runs and thread counts.
Outcome determinism() {
  Outcome o;
  auto c = standard_profile();
  c.threads = 1;
  const auto first = run_suite(c);
  c.threads = 4;
  const auto second = run_suite(c);
  const auto a = csv_text(first);
  const auto b = csv_text(second);
  o.require(a == b, "CSV differs between 1 and 4 threads");
  o.require(first.violations == 0, std::to_string(first.violations) + " violations in standard profile");
  if (o.pass)
    o.detail = std::to_string(first.records.size()) + " rows byte-identical (1 vs " +
               std::to_string(second.threads) + " threads), 0 violations";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 Kittaneh chain", kittaneh},
      {"2 Main theorem chain", main_theorem},
      {"3 Refinement evidence", refinement},
      {"4 Numerical radius engine", radius_engine},
      {"5 Positive-map chains", positive_map_chains},
      {"6 Lemma suite", lemma_suite},
      {"7 Scalar Hermite-Hadamard", hermite_hadamard},
      {"8 Eigensolver quality", eigensolver},
      {"9 Determinism", determinism},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
