#include "radiuslab/tightness.hpp"

#include <algorithm>
#include <cmath>

namespace radiuslab {

namespace {

double quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

nlohmann::json stats_json(const SampleStats& s) {
  return {{"count", s.count}, {"mean", s.mean},     {"min", s.min},
          {"q05", s.q05},     {"q25", s.q25},       {"median", s.median},
          {"q75", s.q75},     {"q95", s.q95},       {"max", s.max}};
}

}  // namespace

SampleStats sample_stats(std::vector<double> values) {
  std::erase_if(values, [](double v) { return !std::isfinite(v); });
  SampleStats s;
  s.count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  s.min = values.front();
  s.max = values.back();
  s.q05 = quantile(values, 0.05);
  s.q25 = quantile(values, 0.25);
  s.median = quantile(values, 0.5);
  s.q75 = quantile(values, 0.75);
  s.q95 = quantile(values, 0.95);
  return s;
}

TightnessReport tightness_report(std::span<const ChainResult> results) {
  if (results.empty()) throw PreconditionError("tightness_report of no results");
  TightnessReport out;
  out.id = results.front().id;
  out.samples = results.size();
  const std::size_t pairs = results.front().margins.size();
  for (const auto& r : results) {
    if (r.id != out.id)
      throw PreconditionError("tightness_report mixes " +
                              std::string(chain_name(out.id)) + " and " +
                              std::string(chain_name(r.id)));
    if (r.margins.size() != pairs || r.tightness.size() != pairs)
      throw PreconditionError("tightness_report: inconsistent term counts");
    if (!r.holds) ++out.violations;
  }
  for (std::size_t k = 0; k < pairs; ++k) {
    std::vector<double> margins, ratios;
    for (const auto& r : results) {
      margins.push_back(r.margins[k]);
      ratios.push_back(r.tightness[k]);
    }
    out.pairs.push_back({sample_stats(std::move(margins)), sample_stats(std::move(ratios))});
  }
  if (out.id == ChainId::ThmMain || out.id == ChainId::CorPowerR) {
    double sum = 0.0;
    for (const auto& r : results) {
      const double right = r.terms[2];
      sum += right == 0.0 ? 0.0 : (right - r.terms[1]) / right;
    }
    out.refinement_mean = sum / static_cast<double>(results.size());
  }
  return out;
}

nlohmann::json tightness_to_json(const TightnessReport& r) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"margin", stats_json(p.margin)}, {"ratio", stats_json(p.ratio)}});
  nlohmann::json j{{"chain_id", chain_name(r.id)},
                   {"samples", r.samples},
                   {"violations", r.violations},
                   {"pairs", pairs}};
  if (r.refinement_mean) j["refinement_mean"] = *r.refinement_mean;
  return j;
}

}  // namespace radiuslab
