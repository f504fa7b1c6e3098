#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "radiuslab/chains.hpp"
#include "radiuslab/random.hpp"
#include "radiuslab/scalar_function.hpp"

namespace radiuslab {

struct ExperimentConfig {
  std::vector<ChainId> chains;
  std::vector<std::size_t> dims;
  std::size_t samples = 1;  // per (chain, dim, ensemble)
  std::uint64_t seed = 1;
  std::vector<Ensemble> ensembles{Ensemble::Ginibre};
  ScalarFunction function = ScalarFunction::power(2.0);
  double r = 1.5;  // exponent for COR_POWER_R
  std::string map = "random";  // short name, JSON text, or "random"
  double tol_scale = 1e-9;
  std::size_t threads = 0;  // 0: RADIUSLAB_THREADS, else hardware
  std::string out_csv;
  std::string out_json;

  /// Throws ConfigError naming the offending field.
  void validate() const;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);

/// Every chain, adversarial ensembles included, small dims.
ExperimentConfig standard_profile(std::uint64_t seed = 20261016);

struct SampleRecord {
  std::size_t id = 0;
  ChainId chain = ChainId::Equiv;
  std::size_t n = 0;
  Ensemble ensemble = Ensemble::Ginibre;
  std::uint64_t seed = 0;
  std::optional<ChainResult> result;  // empty when evaluation threw
  std::string error;
  nlohmann::json inputs;  // kept only for violations and errors

  bool violated() const { return !result || !result->holds; }
};

/// Evaluates one sample. The inputs JSON (matrices, map, function) is filled
/// when `keep_inputs` is set.
SampleRecord evaluate_sample(const ExperimentConfig& c, ChainId chain,
                             std::size_t n, Ensemble e, std::size_t index,
                             bool keep_inputs);

struct SuiteReport {
  std::vector<SampleRecord> records;  // ordered by (chain, dim, ensemble, index)
  std::size_t violations = 0;
  double wall_seconds = 0.0;
  std::size_t threads = 1;
};

SuiteReport run_suite(const ExperimentConfig& c);

/// Thread count after config and RADIUSLAB_THREADS are applied.
std::size_t resolve_threads(const ExperimentConfig& c);

inline constexpr const char* kCsvHeader =
    "id,chain_id,n,ensemble,seed,term0,term1,term2,margin0,margin1,holds,tol,"
    "sup_lower,sup_upper,sufficient";

std::string csv_text(const SuiteReport& r);
nlohmann::json summary_json(const ExperimentConfig& c, const SuiteReport& r);

/// Chain results back from a CSV written by csv_text, grouped by chain.
std::vector<std::vector<ChainResult>> read_results_csv(
    const std::filesystem::path& path);
std::vector<std::vector<ChainResult>> parse_results_csv(const std::string& text);

}  // namespace radiuslab
