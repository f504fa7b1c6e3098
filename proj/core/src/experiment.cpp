#include "radiuslab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "radiuslab/matrix_io.hpp"
#include "radiuslab/tightness.hpp"

namespace radiuslab {

namespace {

constexpr std::size_t kMinDim = 2;
constexpr std::size_t kMaxDim = 64;

bool needs_operator_convex(ChainId id) {
  return id == ChainId::ThmMain || id == ChainId::PropPhiOpconvex ||
         id == ChainId::TwoOpOpconvex;
}

nlohmann::json rect_json(const RectMatrix& r) {
  nlohmann::json data = nlohmann::json::array();
  for (const auto& z : r.data) data.push_back({z.real(), z.imag()});
  return {{"rows", r.rows}, {"cols", r.cols}, {"data", std::move(data)}};
}

PositiveMap draw_map(const ExperimentConfig& c, std::size_t n, RngStream& rng) {
  if (c.map == "random") return random_map(n, rng);
  return parse_map(c.map, n);
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ConfigError("csv", "bad number \"" + s + "\"");
  return v;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (chains.empty()) throw ConfigError("chains", "at least one chain is required");
  if (dims.empty()) throw ConfigError("dims", "at least one dimension is required");
  for (auto n : dims)
    if (n < kMinDim || n > kMaxDim)
      throw ConfigError("dims", "dimension " + std::to_string(n) +
                                    " outside [2, 64]");
  if (samples < 1) throw ConfigError("samples", "must be >= 1");
  if (ensembles.empty()) throw ConfigError("ensemble", "at least one ensemble is required");
  if (!(tol_scale > 0.0)) throw ConfigError("tol_scale", "must be > 0");
  if (!(r >= 1.0 && r <= 2.0)) throw ConfigError("r", "must lie in [1, 2]");
  for (auto id : chains)
    if (needs_operator_convex(id) && !function.operator_convex())
      throw ConfigError("function", std::string(chain_name(id)) +
                                        " needs an operator convex function, got " +
                                        function.name());
  if (map != "random") {
    for (auto n : dims) {
      try {
        parse_map(map, n);
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        throw ConfigError("map", e.what());
      }
    }
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config", "expected a JSON object");
  ExperimentConfig c;
  try {
    if (j.contains("chains")) {
      c.chains.clear();
      for (const auto& s : j.at("chains")) c.chains.push_back(parse_chain_id(s.get<std::string>()));
    }
    if (j.contains("dims")) c.dims = j.at("dims").get<std::vector<std::size_t>>();
    if (j.contains("samples")) {
      const auto s = j.at("samples").get<long long>();
      if (s < 1) throw ConfigError("samples", "must be >= 1");
      c.samples = static_cast<std::size_t>(s);
    }
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    for (const char* key : {"ensemble", "ensembles"}) {
      if (!j.contains(key)) continue;
      const auto& e = j.at(key);
      c.ensembles.clear();
      if (e.is_string()) {
        c.ensembles.push_back(parse_ensemble(e.get<std::string>()));
      } else {
        for (const auto& s : e) c.ensembles.push_back(parse_ensemble(s.get<std::string>()));
      }
    }
    if (j.contains("function")) {
      const auto& f = j.at("function");
      c.function = f.is_string() ? parse_function(f.get<std::string>()) : function_from_json(f);
    }
    if (j.contains("r")) c.r = j.at("r").get<double>();
    if (j.contains("map")) {
      const auto& m = j.at("map");
      c.map = m.is_string() ? m.get<std::string>() : m.dump();
    }
    if (j.contains("tol_scale")) c.tol_scale = j.at("tol_scale").get<double>();
    if (j.contains("threads")) c.threads = j.at("threads").get<std::size_t>();
    if (j.contains("out_csv")) c.out_csv = j.at("out_csv").get<std::string>();
    if (j.contains("out_json")) c.out_json = j.at("out_json").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config", e.what());
  }
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json chains = nlohmann::json::array();
  for (auto id : c.chains) chains.push_back(chain_name(id));
  nlohmann::json ensembles = nlohmann::json::array();
  for (auto e : c.ensembles) ensembles.push_back(ensemble_name(e));
  return {{"chains", chains},
          {"dims", c.dims},
          {"samples", c.samples},
          {"seed", c.seed},
          {"ensembles", ensembles},
          {"function", function_to_json(c.function)},
          {"r", c.r},
          {"map", c.map},
          {"tol_scale", c.tol_scale}};
}

ExperimentConfig standard_profile(std::uint64_t seed) {
  ExperimentConfig c;
  c.chains.assign(std::begin(kAllChains), std::end(kAllChains));
  c.dims = {2, 3, 4};
  c.samples = 8;
  c.seed = seed;
  c.ensembles = {Ensemble::Ginibre, Ensemble::NilpotentJordan, Ensemble::Unitary,
                 Ensemble::Normal, Ensemble::ShiftedJordan};
  c.function = ScalarFunction::power(1.5);
  c.r = 1.5;
  c.map = "random";
  return c;
}

SampleRecord evaluate_sample(const ExperimentConfig& c, ChainId chain,
                             std::size_t n, Ensemble e, std::size_t index,
                             bool keep_inputs) {
  SampleRecord rec;
  rec.chain = chain;
  rec.n = n;
  rec.ensemble = e;
  const auto ensemble_slot = static_cast<std::uint64_t>(e);
  rec.seed = derive_seed(c.seed, static_cast<std::uint64_t>(chain), n,
                         ensemble_slot * c.samples + index);
  RngStream rng(rec.seed);
  const ChainOptions opt{.tol_scale = c.tol_scale};
  const auto& f = c.function;

  nlohmann::json inputs{{"function", function_to_json(f)}};
  try {
    switch (chain) {
      case ChainId::Equiv:
      case ChainId::Kittaneh:
      case ChainId::ThmMain:
      case ChainId::CorPowerR: {
        const auto a = gen_random(e, n, rng);
        if (keep_inputs) inputs["A"] = matrix_to_json(a);
        if (chain == ChainId::Equiv) rec.result = chain_equiv(a, opt);
        if (chain == ChainId::Kittaneh) rec.result = chain_kittaneh(a, opt);
        if (chain == ChainId::ThmMain) rec.result = chain_thm_main(a, f, opt);
        if (chain == ChainId::CorPowerR) {
          inputs["r"] = c.r;
          rec.result = chain_power_r(a, c.r, opt);
        }
        break;
      }
      case ChainId::ThmPhiSup:
      case ChainId::PropPhiOpconvex: {
        const auto a = gen_random(e, n, rng);
        if (keep_inputs) inputs["A"] = matrix_to_json(a);
        const auto phi = draw_map(c, n, rng);
        if (keep_inputs) inputs["map"] = map_to_json(phi);
        rec.result = chain == ChainId::ThmPhiSup
                         ? chain_thm_phi_sup(a, f, phi, opt)
                         : chain_prop_phi_opconvex(a, f, phi, opt);
        break;
      }
      case ChainId::MultiOp:
      case ChainId::MultiOpNormal: {
        const Ensemble source = chain == ChainId::MultiOpNormal ? Ensemble::Normal : e;
        const auto a1 = gen_random(source, n, rng);
        const auto a2 = gen_random(source, n, rng);
        const auto p = partition_contractions(2, n, rng);
        std::vector<MultiOpItem> items{
            {a1, PositiveMap::Summand::congruence(p[0])},
            {a2, PositiveMap::Summand::congruence(p[1])},
        };
        if (keep_inputs) {
          inputs["items"] = {{{"A", matrix_to_json(a1)}, {"P", rect_json(p[0])}},
                             {{"A", matrix_to_json(a2)}, {"P", rect_json(p[1])}}};
        }
        rec.result = chain == ChainId::MultiOp ? chain_multi_op(items, f, opt)
                                               : chain_multi_op_normal(items, f, opt);
        break;
      }
      case ChainId::TwoOpSup:
      case ChainId::TwoOpOpconvex: {
        const auto a = gen_random(e, n, rng);
        const auto b = gen_random(e, n, rng);
        if (keep_inputs) {
          inputs["A"] = matrix_to_json(a);
          inputs["B"] = matrix_to_json(b);
        }
        rec.result = chain == ChainId::TwoOpSup ? chain_two_op_sup(a, b, f, opt)
                                                : chain_two_op_opconvex(a, b, f, opt);
        break;
      }
    }
  } catch (const std::exception& ex) {
    rec.result.reset();
    rec.error = ex.what();
  }
  if (keep_inputs) rec.inputs = std::move(inputs);
  return rec;
}

std::size_t resolve_threads(const ExperimentConfig& c) {
  std::size_t t = c.threads;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("RADIUSLAB_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) t = std::min(t, static_cast<std::size_t>(cap));
  }
  return std::max<std::size_t>(t, 1);
}

SuiteReport run_suite(const ExperimentConfig& c) {
  c.validate();
  const auto start = std::chrono::steady_clock::now();

  struct Task {
    ChainId chain;
    std::size_t n;
    Ensemble e;
    std::size_t index;
  };
  std::vector<Task> tasks;
  for (auto chain : c.chains)
    for (auto n : c.dims)
      for (auto e : c.ensembles)
        for (std::size_t i = 0; i < c.samples; ++i) tasks.push_back({chain, n, e, i});

  SuiteReport report;
  report.records.resize(tasks.size());
  report.threads = std::min(resolve_threads(c), std::max<std::size_t>(tasks.size(), 1));

  // Workers claim task indices and write into their own slot, so the record
  // order never depends on scheduling.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      const auto& t = tasks[k];
      auto rec = evaluate_sample(c, t.chain, t.n, t.e, t.index, false);
      if (rec.violated()) rec = evaluate_sample(c, t.chain, t.n, t.e, t.index, true);
      rec.id = k;
      report.records[k] = std::move(rec);
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < report.threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (const auto& rec : report.records)
    if (rec.violated()) ++report.violations;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (!c.out_csv.empty()) {
    std::ofstream out(c.out_csv, std::ios::binary);
    if (!out) throw Error("cannot write " + c.out_csv);
    out << csv_text(report);
  }
  if (!c.out_json.empty()) {
    std::ofstream out(c.out_json, std::ios::binary);
    if (!out) throw Error("cannot write " + c.out_json);
    out << summary_json(c, report).dump(2) << '\n';
  }
  return report;
}

std::string csv_text(const SuiteReport& r) {
  std::string out = std::string(kCsvHeader) + "\n";
  auto num = [](double v) { return format_double(v); };
  for (const auto& rec : r.records) {
    std::vector<std::string> f{std::to_string(rec.id), std::string(chain_name(rec.chain)),
                               std::to_string(rec.n), std::string(ensemble_name(rec.ensemble)),
                               std::to_string(rec.seed)};
    const ChainResult* res = rec.result ? &*rec.result : nullptr;
    for (std::size_t k = 0; k < 3; ++k)
      f.push_back(res && k < res->terms.size() ? num(res->terms[k]) : "");
    for (std::size_t k = 0; k < 2; ++k)
      f.push_back(res && k < res->margins.size() ? num(res->margins[k]) : "");
    f.push_back(res && res->holds ? "true" : "false");
    f.push_back(res ? num(res->tol) : "");
    f.push_back(res && res->sup ? num(res->sup->lower) : "");
    f.push_back(res && res->sup ? num(res->sup->upper) : "");
    f.push_back(res && res->sufficient ? "true" : "false");
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (k) out += ',';
      out += f[k];
    }
    out += '\n';
  }
  return out;
}

nlohmann::json summary_json(const ExperimentConfig& c, const SuiteReport& r) {
  nlohmann::json violations = nlohmann::json::array();
  std::map<ChainId, std::vector<ChainResult>> by_chain;
  for (const auto& rec : r.records) {
    if (rec.result) by_chain[rec.chain].push_back(*rec.result);
    if (!rec.violated()) continue;
    nlohmann::json v{{"id", rec.id},
                     {"chain_id", chain_name(rec.chain)},
                     {"n", rec.n},
                     {"ensemble", ensemble_name(rec.ensemble)},
                     {"seed", rec.seed},
                     {"inputs", rec.inputs}};
    if (rec.result) v["result"] = chain_to_json(*rec.result);
    if (!rec.error.empty()) v["error"] = rec.error;
    violations.push_back(std::move(v));
  }
  nlohmann::json tightness = nlohmann::json::array();
  for (const auto& [id, results] : by_chain)
    tightness.push_back(tightness_to_json(tightness_report(results)));
  return {{"config", config_to_json(c)},
          {"rng", {{"algorithm", kRngAlgorithm}, {"version", kRngVersion}, {"root_seed", c.seed}}},
          {"samples", r.records.size()},
          {"violation_count", r.violations},
          {"violations", violations},
          {"tightness", tightness},
          {"threads", r.threads},
          {"wall_time_seconds", r.wall_seconds},
          {"timestamp", timestamp_utc()}};
}

std::vector<std::vector<ChainResult>> parse_results_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ConfigError("csv", "missing or unexpected header");
  std::map<ChainId, std::vector<ChainResult>> by_chain;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() != 15) throw ConfigError("csv", "expected 15 fields: " + line);
    ChainResult r;
    r.id = parse_chain_id(f[1]);
    for (std::size_t k = 5; k < 8; ++k)
      if (!f[k].empty()) r.terms.push_back(parse_number(f[k]));
    if (r.terms.empty()) continue;  // evaluation error, nothing to summarize
    for (std::size_t k = 8; k < 10; ++k)
      if (!f[k].empty()) r.margins.push_back(parse_number(f[k]));
    for (std::size_t k = 0; k + 1 < r.terms.size(); ++k) {
      const double a = r.terms[k];
      const double b = r.terms[k + 1];
      r.tightness.push_back(a == 0.0 && b == 0.0 ? 1.0 : a / b);
    }
    r.holds = f[10] == "true";
    r.tol = parse_number(f[11]);
    if (!f[12].empty()) r.sup = SupBracket{parse_number(f[12]), parse_number(f[13])};
    r.sufficient = f[14] == "true";
    by_chain[r.id].push_back(std::move(r));
  }
  std::vector<std::vector<ChainResult>> out;
  for (auto& [id, v] : by_chain) out.push_back(std::move(v));
  return out;
}

std::vector<std::vector<ChainResult>> read_results_csv(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("csv", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_results_csv(ss.str());
}

}  // namespace radiuslab
