#include "radiuslab/scalar_function.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "radiuslab/error.hpp"
#include "radiuslab/matrix_io.hpp"

namespace radiuslab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_finite_nonneg(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0)
    throw PreconditionError(std::string(what) + " must be finite and >= 0");
}

double clamp_argument(double t) {
  if (std::isnan(t) || t < -kScalarClampTolerance)
    throw DomainError("scalar function argument " + format_double(t) +
                      " lies outside [0, inf)");
  return t < 0.0 ? 0.0 : t;
}

double horner(const std::vector<double>& c, double t) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
  return acc;
}

bool is_integer(double r) { return r == std::floor(r); }

}  // namespace

ScalarFunction ScalarFunction::power(double r) {
  if (!std::isfinite(r) || r < 1.0)
    throw PreconditionError("power(r) requires r >= 1");
  return ScalarFunction(Power{r});
}

ScalarFunction ScalarFunction::affine(double alpha, double beta) {
  require_finite_nonneg(alpha, "affine alpha");
  require_finite_nonneg(beta, "affine beta");
  return ScalarFunction(Affine{alpha, beta});
}

ScalarFunction ScalarFunction::exp_minus_one() {
  return ScalarFunction(ExpMinusOne{});
}

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs) {
  if (coeffs.empty())
    throw PreconditionError("polynomial needs at least one coefficient");
  for (double c : coeffs) require_finite_nonneg(c, "polynomial coefficient");
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  return ScalarFunction(Polynomial{std::move(coeffs)});
}

bool ScalarFunction::operator_convex() const noexcept {
  return std::visit(
      overloaded{
          [](const Power& p) { return p.r <= 2.0; },
          [](const Affine&) { return true; },
          [](const ExpMinusOne&) { return false; },
          [](const Polynomial& p) { return p.coeffs.size() <= 3; },
      },
      kind_);
}

std::vector<double> ScalarFunction::polynomial_coefficients() const {
  return std::visit(
      overloaded{
          [](const Power& p) -> std::vector<double> {
            if (!is_integer(p.r)) return {};
            std::vector<double> c(static_cast<std::size_t>(p.r) + 1, 0.0);
            c.back() = 1.0;
            return c;
          },
          [](const Affine& a) -> std::vector<double> {
            return {a.alpha, a.beta};
          },
          [](const ExpMinusOne&) -> std::vector<double> { return {}; },
          [](const Polynomial& p) -> std::vector<double> { return p.coeffs; },
      },
      kind_);
}

double ScalarFunction::operator()(double t) const {
  t = clamp_argument(t);
  return std::visit(
      overloaded{
          [t](const Power& p) {
            if (p.r == 1.0) return t;
            if (p.r == 2.0) return t * t;
            return std::pow(t, p.r);
          },
          [t](const Affine& a) { return a.alpha + a.beta * t; },
          [t](const ExpMinusOne&) { return std::expm1(t); },
          [t](const Polynomial& p) { return horner(p.coeffs, t); },
      },
      kind_);
}

double ScalarFunction::derivative(double t) const {
  t = clamp_argument(t);
  return std::visit(
      overloaded{
          [t](const Power& p) {
            if (p.r == 1.0) return 1.0;
            return p.r * std::pow(t, p.r - 1.0);
          },
          [](const Affine& a) { return a.beta; },
          [t](const ExpMinusOne&) { return std::exp(t); },
          [t](const Polynomial& p) {
            double acc = 0.0;
            for (std::size_t k = p.coeffs.size(); k-- > 1;)
              acc = acc * t + static_cast<double>(k) * p.coeffs[k];
            return acc;
          },
      },
      kind_);
}

std::string ScalarFunction::name() const {
  return std::visit(
      overloaded{
          [](const Power& p) { return "power:" + format_double(p.r); },
          [](const Affine& a) {
            return "affine:" + format_double(a.alpha) + "," +
                   format_double(a.beta);
          },
          [](const ExpMinusOne&) { return std::string("exp_minus_one"); },
          [](const Polynomial& p) {
            std::string s = "poly:";
            for (std::size_t k = 0; k < p.coeffs.size(); ++k) {
              if (k) s += ',';
              s += format_double(p.coeffs[k]);
            }
            return s;
          },
      },
      kind_);
}

bool operator==(const ScalarFunction& a, const ScalarFunction& b) {
  return function_to_json(a) == function_to_json(b);
}

nlohmann::json function_to_json(const ScalarFunction& f) {
  return std::visit(
      overloaded{
          [](const ScalarFunction::Power& p) -> nlohmann::json {
            return {{"kind", "power"}, {"r", p.r}};
          },
          [](const ScalarFunction::Affine& a) -> nlohmann::json {
            return {{"kind", "affine"}, {"alpha", a.alpha}, {"beta", a.beta}};
          },
          [](const ScalarFunction::ExpMinusOne&) -> nlohmann::json {
            return {{"kind", "exp_minus_one"}};
          },
          [](const ScalarFunction::Polynomial& p) -> nlohmann::json {
            return {{"kind", "polynomial"}, {"coeffs", p.coeffs}};
          },
      },
      f.kind());
}

ScalarFunction function_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError("function", "expected an object with a \"kind\" string");
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "power") return ScalarFunction::power(j.at("r").get<double>());
    if (kind == "affine")
      return ScalarFunction::affine(j.value("alpha", 0.0),
                                    j.value("beta", 1.0));
    if (kind == "exp_minus_one") return ScalarFunction::exp_minus_one();
    if (kind == "polynomial")
      return ScalarFunction::polynomial(
          j.at("coeffs").get<std::vector<double>>());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("function", e.what());
  } catch (const PreconditionError& e) {
    throw ConfigError("function", e.what());
  }
  throw ConfigError("function", "unknown kind \"" + kind + "\"");
}

namespace {

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto token = text.substr(
        pos, comma == std::string_view::npos ? std::string_view::npos
                                             : comma - pos);
    double value = 0.0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
      throw ConfigError("function",
                        "cannot parse number \"" + std::string(token) + "\"");
    out.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

ScalarFunction parse_function(std::string_view text) {
  if (!text.empty() && text.front() == '{') {
    try {
      return function_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("function", e.what());
    }
  }
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  const auto tail =
      colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  try {
    if (head == "exp_minus_one" && tail.empty())
      return ScalarFunction::exp_minus_one();
    if (head == "power") {
      const auto v = parse_number_list(tail);
      if (v.size() == 1) return ScalarFunction::power(v[0]);
    } else if (head == "affine") {
      const auto v = parse_number_list(tail);
      if (v.size() == 2) return ScalarFunction::affine(v[0], v[1]);
    } else if (head == "poly" || head == "polynomial") {
      return ScalarFunction::polynomial(parse_number_list(tail));
    }
  } catch (const PreconditionError& e) {
    throw ConfigError("function", e.what());
  }
  throw ConfigError("function",
                    "unrecognized function \"" + std::string(text) + "\"");
}

}  // namespace radiuslab
