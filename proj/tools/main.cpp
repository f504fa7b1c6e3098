// radiuslab: command-line front end.
//
// Exit status: 0 success, 1 violations found by verify, 2 usage or
// configuration error, 3 any other failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radiuslab/chains.hpp"
#include "radiuslab/experiment.hpp"
#include "radiuslab/matrix_io.hpp"
#include "radiuslab/numrange.hpp"
#include "radiuslab/quadrature.hpp"
#include "radiuslab/tightness.hpp"

using namespace radiuslab;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

struct VerifyArgs {
  std::string config;
  std::optional<std::string> chains;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> dims;
  std::optional<std::size_t> samples;
  std::optional<std::string> ensemble;
  std::optional<std::string> function;
  std::optional<double> r;
  std::optional<std::string> map;
  std::optional<double> tol_scale;
  std::optional<std::size_t> threads;
  std::string out_csv;
  std::string out_json;
};

ExperimentConfig build_config(const VerifyArgs& a) {
  ExperimentConfig c = standard_profile();
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw ConfigError("config", "cannot read " + a.config);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError("config", e.what());
    }
    // Fields absent from the file keep the standard profile's values.
    const auto base = config_to_json(c);
    auto merged = base;
    merged.update(j);
    if (j.contains("ensemble")) merged.erase("ensembles");
    c = config_from_json(merged);
  }
  if (a.chains) {
    c.chains.clear();
    for (const auto& s : split_list(*a.chains)) c.chains.push_back(parse_chain_id(s));
  }
  if (a.seed) c.seed = *a.seed;
  if (a.dims) {
    c.dims.clear();
    for (const auto& s : split_list(*a.dims)) {
      try {
        c.dims.push_back(std::stoul(s));
      } catch (const std::exception&) {
        throw ConfigError("dims", "bad dimension \"" + s + "\"");
      }
    }
  }
  if (a.samples) c.samples = *a.samples;
  if (a.ensemble) {
    c.ensembles.clear();
    for (const auto& s : split_list(*a.ensemble)) c.ensembles.push_back(parse_ensemble(s));
  }
  if (a.function) c.function = parse_function(*a.function);
  if (a.r) c.r = *a.r;
  if (a.map) c.map = *a.map;
  if (a.tol_scale) c.tol_scale = *a.tol_scale;
  if (a.threads) c.threads = *a.threads;
  if (!a.out_csv.empty()) c.out_csv = a.out_csv;
  if (!a.out_json.empty()) c.out_json = a.out_json;
  return c;
}

int run_verify(const VerifyArgs& args) {
  const auto config = build_config(args);
  config.validate();
  const auto report = run_suite(config);
  std::printf("samples %zu  violations %zu  threads %zu  wall %.3fs\n",
              report.records.size(), report.violations, report.threads,
              report.wall_seconds);
  const auto summary = summary_json(config, report);
  for (const auto& t : summary.at("tightness")) {
    std::printf("  %-18s n=%-5zu violations=%zu",
                t.at("chain_id").get<std::string>().c_str(),
                t.at("samples").get<std::size_t>(),
                t.at("violations").get<std::size_t>());
    if (t.contains("refinement_mean"))
      std::printf("  refinement=%s",
                  format_double(t.at("refinement_mean").get<double>()).c_str());
    std::printf("\n");
  }
  for (const auto& v : summary.at("violations"))
    std::printf("VIOLATION %s\n", v.dump().c_str());
  return report.violations > 0 ? kExitViolations : 0;
}

int run_radius(const std::string& path, int grid) {
  const auto a = read_matrix_file(path);
  const auto r = numerical_radius(a, grid);
  std::printf("w %s\n", format_double(r.value).c_str());
  std::printf("norm %s\n", format_double(r.norm).c_str());
  std::printf("theta_star %s\n", format_double(r.theta_star).c_str());
  std::printf("grid_points %d\n", r.grid_points);
  std::printf("apriori_error %s\n", format_double(r.apriori_error).c_str());
  std::printf("bracket_width %s\n", format_double(r.bracket_width).c_str());
  return 0;
}

struct ChainArgs {
  std::string id;
  std::string matrix;
  std::string b_matrix;
  std::string function = "power:2";
  std::string map = "identity";
  double r = 1.5;
  double tol_scale = 1e-9;
};

int run_chain(const ChainArgs& a) {
  const auto id = parse_chain_id(a.id);
  const auto m = read_matrix_file(a.matrix);
  const auto f = parse_function(a.function);
  const ChainOptions opt{.tol_scale = a.tol_scale};
  auto second = [&] {
    if (a.b_matrix.empty())
      throw ConfigError("b", std::string(chain_name(id)) + " needs --b <matrix.json>");
    return read_matrix_file(a.b_matrix);
  };
  // A single-item family with P = I reduces the multi-operator chains to m.
  auto single_item = [&] {
    return std::vector<MultiOpItem>{
        {m, PositiveMap::Summand::congruence(RectMatrix::from_square(
                ComplexMatrix::identity(m.size())))}};
  };
  ChainResult result;
  switch (id) {
    case ChainId::Equiv: result = chain_equiv(m, opt); break;
    case ChainId::Kittaneh: result = chain_kittaneh(m, opt); break;
    case ChainId::ThmMain: result = chain_thm_main(m, f, opt); break;
    case ChainId::CorPowerR: result = chain_power_r(m, a.r, opt); break;
    case ChainId::ThmPhiSup:
      result = chain_thm_phi_sup(m, f, parse_map(a.map, m.size()), opt);
      break;
    case ChainId::PropPhiOpconvex:
      result = chain_prop_phi_opconvex(m, f, parse_map(a.map, m.size()), opt);
      break;
    case ChainId::MultiOp: result = chain_multi_op(single_item(), f, opt); break;
    case ChainId::MultiOpNormal:
      result = chain_multi_op_normal(single_item(), f, opt);
      break;
    case ChainId::TwoOpSup: result = chain_two_op_sup(m, second(), f, opt); break;
    case ChainId::TwoOpOpconvex:
      result = chain_two_op_opconvex(m, second(), f, opt);
      break;
  }
  std::cout << chain_to_json(result).dump(2) << '\n';
  return 0;
}

int run_hh(const std::string& function, double a, double b) {
  const auto t = hh_scalar(parse_function(function), a, b);
  std::printf("mid %s\n", format_double(t.mid).c_str());
  std::printf("integral %s\n", format_double(t.integral).c_str());
  std::printf("endavg %s\n", format_double(t.endavg).c_str());
  std::printf("holds %s\n", t.holds() ? "true" : "false");
  return 0;
}

int run_tightness(const std::string& path) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& group : read_results_csv(path))
    out.push_back(tightness_to_json(tightness_report(group)));
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical-radius inequality laboratory"};
  app.require_subcommand(1);

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Property-test inequality chains over random ensembles");
  v->add_option("--config", verify.config, "ExperimentConfig JSON file")->check(CLI::ExistingFile);
  v->add_option("--chains", verify.chains, "Comma-separated chain ids");
  v->add_option("--seed", verify.seed, "Root seed");
  v->add_option("--dims", verify.dims, "Comma-separated dimensions");
  v->add_option("--samples", verify.samples, "Samples per (chain, dim, ensemble)");
  v->add_option("--ensemble", verify.ensemble, "Comma-separated ensembles");
  v->add_option("--function", verify.function, "power:R, affine:A,B, exp_minus_one, poly:C0,C1,...");
  v->add_option("--r", verify.r, "Exponent for COR_POWER_R");
  v->add_option("--map", verify.map, "Map short name, JSON, or random");
  v->add_option("--tol-scale", verify.tol_scale, "Relative tolerance scale");
  v->add_option("--threads", verify.threads, "Worker threads");
  v->add_option("--out-csv", verify.out_csv, "CSV output path");
  v->add_option("--out-json", verify.out_json, "JSON summary path");

  std::string radius_path;
  int grid = kDefaultRadiusGrid;
  auto* rad = app.add_subcommand("radius", "Numerical radius of a matrix file");
  rad->add_option("matrix", radius_path, "Matrix JSON")->required()->check(CLI::ExistingFile);
  rad->add_option("--grid", grid, "Angle grid size (>= 16)");

  ChainArgs chain;
  auto* ch = app.add_subcommand("chain", "Evaluate one chain on a matrix file");
  ch->add_option("id", chain.id, "Chain id")->required();
  ch->add_option("matrix", chain.matrix, "Matrix JSON")->required()->check(CLI::ExistingFile);
  ch->add_option("--b", chain.b_matrix, "Second operator for two-operator chains")
      ->check(CLI::ExistingFile);
  ch->add_option("--function", chain.function, "Scalar function");
  ch->add_option("--map", chain.map, "Positive map");
  ch->add_option("--r", chain.r, "Exponent for COR_POWER_R");
  ch->add_option("--tol-scale", chain.tol_scale, "Relative tolerance scale");

  std::string hh_function = "power:2";
  double hh_a = 0.0;
  double hh_b = 1.0;
  auto* hh = app.add_subcommand("hh-demo", "Scalar Hermite-Hadamard triple");
  hh->add_option("--function", hh_function, "Scalar function");
  hh->add_option("--a", hh_a, "Left endpoint (>= 0)");
  hh->add_option("--b", hh_b, "Right endpoint (>= 0)");

  std::string csv_path;
  auto* ti = app.add_subcommand("tightness", "Recompute tightness summary from a results CSV");
  ti->add_option("results", csv_path, "CSV written by verify")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (*v) return run_verify(verify);
    if (*rad) return run_radius(radius_path, grid);
    if (*ch) return run_chain(chain);
    if (*hh) return run_hh(hh_function, hh_a, hh_b);
    if (*ti) return run_tightness(csv_path);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
