#include "radiuslab/positive_map.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "radiuslab/matrix_io.hpp"
#include "radiuslab/spectral.hpp"

namespace radiuslab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kUnitalTolerance = 1e-12;
constexpr double kWeightTolerance = 1e-14;

// P* X P for X s×s and P s×m.
ComplexMatrix congruence(const ComplexMatrix& x, const RectMatrix& p) {
  const std::size_t s = p.rows;
  const std::size_t m = p.cols;
  if (x.size() != s) throw DimensionError("congruence", x.size(), s);
  std::vector<Complex> xp(s * m);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k) {
      const Complex xik = x(i, k);
      if (xik == Complex{}) continue;
      for (std::size_t j = 0; j < m; ++j) xp[i * m + j] += xik * p(k, j);
    }
  ComplexMatrix out(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t i = 0; i < s; ++i) {
      const Complex pia = std::conj(p(i, a));
      if (pia == Complex{}) continue;
      for (std::size_t b = 0; b < m; ++b) out(a, b) += pia * xp[i * m + b];
    }
  return out;
}

ComplexMatrix block(const ComplexMatrix& x, std::size_t offset, std::size_t size) {
  ComplexMatrix out(size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) out(i, j) = x(offset + i, offset + j);
  return out;
}

RectMatrix rect_from_json(const nlohmann::json& j) {
  if (j.contains("n")) return RectMatrix::from_square(matrix_from_json(j));
  if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw ConfigError("map", "operator needs {n, data} or {rows, cols, data}");
  RectMatrix r;
  r.rows = j.at("rows").get<std::size_t>();
  r.cols = j.at("cols").get<std::size_t>();
  const auto& data = j.at("data");
  if (r.rows == 0 || r.cols == 0 || data.size() != r.rows * r.cols)
    throw ConfigError("map", "operator data must have rows*cols entries");
  for (const auto& z : data) {
    const Complex c{z.at(0).get<double>(), z.at(1).get<double>()};
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw ConfigError("map", "operator entries must be finite");
    r.data.push_back(c);
  }
  return r;
}

nlohmann::json rect_to_json(const RectMatrix& r) {
  nlohmann::json data = nlohmann::json::array();
  for (const auto& z : r.data) data.push_back({z.real(), z.imag()});
  return {{"rows", r.rows}, {"cols", r.cols}, {"data", std::move(data)}};
}

}  // namespace

RectMatrix RectMatrix::from_square(const ComplexMatrix& m) {
  const auto e = m.entries();
  return {m.size(), m.size(), std::vector<Complex>(e.begin(), e.end())};
}

PositiveMap::Summand PositiveMap::Summand::weighted(PositiveMap map,
                                                    double weight) {
  if (!(weight >= 0.0) || !std::isfinite(weight))
    throw PreconditionError("direct-sum weight must be finite and >= 0");
  Summand s;
  s.map = std::make_shared<const PositiveMap>(std::move(map));
  s.weight = weight;
  return s;
}

PositiveMap::Summand PositiveMap::Summand::congruence(RectMatrix p) {
  if (p.rows == 0 || p.cols == 0 || p.data.size() != p.rows * p.cols)
    throw PreconditionError("congruence operator has inconsistent shape");
  Summand s;
  s.contraction = std::move(p);
  return s;
}

std::size_t PositiveMap::Summand::input_dim() const {
  return map ? map->input_dim() : contraction->rows;
}

std::size_t PositiveMap::Summand::output_dim() const {
  return map ? map->output_dim() : contraction->cols;
}

PositiveMap::PositiveMap(Variant v, std::size_t in, std::size_t out)
    : v_(std::move(v)), in_(in), out_(out) {
  if (in_ == 0 || out_ == 0)
    throw PreconditionError("positive map dimensions must be >= 1");
}

void PositiveMap::verify_unital() const {
  const auto image = apply(ComplexMatrix::identity(in_));
  const double dev = (image - ComplexMatrix::identity(out_)).frobenius_norm();
  if (!(dev <= kUnitalTolerance * std::sqrt(static_cast<double>(out_))))
    throw PreconditionError(name() + " is not unital: ‖Φ(I) − I‖_F = " +
                            format_double(dev));
}

PositiveMap PositiveMap::identity(std::size_t n) {
  return PositiveMap(Identity{n}, n, n);
}

PositiveMap PositiveMap::pinch(std::vector<std::size_t> blocks) {
  if (blocks.empty()) throw PreconditionError("pinch needs at least one block");
  for (auto b : blocks)
    if (b == 0) throw PreconditionError("pinch block sizes must be >= 1");
  const auto n = std::accumulate(blocks.begin(), blocks.end(), std::size_t{0});
  return PositiveMap(Pinch{std::move(blocks)}, n, n);
}

PositiveMap PositiveMap::compress(RectMatrix v) {
  if (v.rows == 0 || v.cols == 0 || v.data.size() != v.rows * v.cols)
    throw PreconditionError("compress: V has inconsistent shape");
  if (v.cols > v.rows)
    throw PreconditionError("compress: V must have at most as many columns as rows");
  const auto in = v.rows;
  const auto out = v.cols;
  PositiveMap map(Compress{std::move(v)}, in, out);
  map.verify_unital();  // V*V = I
  return map;
}

PositiveMap PositiveMap::trace_state(std::size_t n) {
  return PositiveMap(TraceState{n}, n, n);
}

PositiveMap PositiveMap::transpose(std::size_t n) {
  return PositiveMap(Transpose{n}, n, n);
}

PositiveMap PositiveMap::unitary_conj(ComplexMatrix u) {
  const auto n = u.size();
  PositiveMap map(UnitaryConj{std::move(u)}, n, n);
  map.verify_unital();
  return map;
}

PositiveMap PositiveMap::mixture(std::vector<PositiveMap> maps,
                                 std::vector<double> weights) {
  if (maps.empty() || maps.size() != weights.size())
    throw PreconditionError("mixture needs one weight per component map");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw PreconditionError("mixture weights must be finite and >= 0");
    total += w;
  }
  if (!(std::abs(total - 1.0) <= kWeightTolerance))
    throw PreconditionError("mixture weights must sum to 1, got " +
                            format_double(total));
  const auto in = maps.front().input_dim();
  const auto out = maps.front().output_dim();
  for (const auto& m : maps) {
    if (m.input_dim() != in) throw DimensionError("mixture input", in, m.input_dim());
    if (m.output_dim() != out)
      throw DimensionError("mixture output", out, m.output_dim());
  }
  return PositiveMap(Mixture{std::move(maps), std::move(weights)}, in, out);
}

PositiveMap PositiveMap::direct_sum(std::vector<Summand> terms) {
  if (terms.empty()) throw PreconditionError("direct_sum needs terms");
  std::size_t in = 0;
  const auto out = terms.front().output_dim();
  for (const auto& t : terms) {
    if (!t.map && !t.contraction)
      throw PreconditionError("direct_sum term has neither map nor operator");
    if (t.output_dim() != out)
      throw DimensionError("direct_sum output", out, t.output_dim());
    in += t.input_dim();
  }
  PositiveMap map(DirectSum{std::move(terms)}, in, out);
  map.verify_unital();  // Σ Φ_i(I) = I
  return map;
}

ComplexMatrix PositiveMap::apply(const ComplexMatrix& x) const {
  if (x.size() != in_) throw DimensionError("apply_map", in_, x.size());
  return std::visit(
      overloaded{
          [&](const Identity&) { return x; },
          [&](const Pinch& p) {
            ComplexMatrix out(in_);
            std::size_t offset = 0;
            for (auto b : p.blocks) {
              for (std::size_t i = 0; i < b; ++i)
                for (std::size_t j = 0; j < b; ++j)
                  out(offset + i, offset + j) = x(offset + i, offset + j);
              offset += b;
            }
            return out;
          },
          [&](const Compress& c) { return congruence(x, c.v); },
          [&](const TraceState& t) {
            const Complex scale = x.trace() / static_cast<double>(t.n);
            return scale * ComplexMatrix::identity(t.n);
          },
          [&](const Transpose&) { return x.transpose(); },
          [&](const UnitaryConj& u) {
            return u.u.adjoint() * (x * u.u);
          },
          [&](const Mixture& m) {
            ComplexMatrix out(out_);
            for (std::size_t k = 0; k < m.maps.size(); ++k)
              out += m.weights[k] * m.maps[k].apply(x);
            return out;
          },
          [&](const DirectSum& d) {
            ComplexMatrix out(out_);
            std::size_t offset = 0;
            for (const auto& t : d.terms) {
              const auto size = t.input_dim();
              const auto sub = block(x, offset, size);
              if (t.map)
                out += t.weight * t.map->apply(sub);
              else
                out += congruence(sub, *t.contraction);
              offset += size;
            }
            return out;
          },
      },
      v_);
}

HermitianMatrix PositiveMap::apply(const HermitianMatrix& x) const {
  return HermitianMatrix::symmetrize(apply(x.matrix()));
}

std::string PositiveMap::name() const {
  return std::visit(
      overloaded{
          [](const Identity&) { return std::string("identity"); },
          [](const Pinch& p) {
            std::string s = "pinch:";
            for (std::size_t k = 0; k < p.blocks.size(); ++k) {
              if (k) s += ',';
              s += std::to_string(p.blocks[k]);
            }
            return s;
          },
          [](const Compress& c) {
            return "compress:" + std::to_string(c.v.rows) + "x" +
                   std::to_string(c.v.cols);
          },
          [](const TraceState&) { return std::string("trace_state"); },
          [](const Transpose&) { return std::string("transpose"); },
          [](const UnitaryConj&) { return std::string("unitary_conj"); },
          [](const Mixture& m) {
            return "mixture:" + std::to_string(m.maps.size());
          },
          [](const DirectSum& d) {
            return "direct_sum:" + std::to_string(d.terms.size());
          },
      },
      v_);
}

double choi_davis_margin(const PositiveMap& phi, const ScalarFunction& f,
                         const HermitianMatrix& h) {
  if (!f.operator_convex())
    throw PreconditionError("choi_davis_margin requires an operator convex f, got " +
                            f.name());
  const auto lhs = phi.apply(apply_function(h, f));
  const auto rhs = apply_function(phi.apply(h), f);
  return lambda_extremes(hermitian_combination(1.0, lhs, -1.0, rhs)).min;
}

double kadison_margin(const PositiveMap& phi, const HermitianMatrix& h) {
  const auto image_of_square = phi.apply(gram(h.matrix()));
  const auto square_of_image = gram(phi.apply(h).matrix());
  return lambda_extremes(
             hermitian_combination(1.0, image_of_square, -1.0, square_of_image))
      .min;
}

double jensen_inner_margin(const PositiveMap& phi, const ScalarFunction& f,
                           const HermitianMatrix& h,
                           std::span<const Complex> x) {
  if (!f.convex())
    throw PreconditionError("jensen_inner_margin requires a convex f");
  require_unit(x, "jensen_inner_margin: x");
  const auto fh = phi.apply(apply_function(h, f));
  const auto ph = phi.apply(h);
  const double outer = inner(matvec(fh.matrix(), x), x).real();
  const double arg = inner(matvec(ph.matrix(), x), x).real();
  return outer - f(std::max(0.0, arg));
}

double mixed_schwarz_margin(const ComplexMatrix& a, std::span<const Complex> x,
                            std::span<const Complex> y) {
  require_unit(x, "mixed_schwarz_margin: x");
  require_unit(y, "mixed_schwarz_margin: y");
  const auto abs_a = abs_operator(a);
  const auto abs_a_star = abs_operator(a.adjoint());
  const double qx = std::max(0.0, inner(matvec(abs_a.matrix(), x), x).real());
  const double qy =
      std::max(0.0, inner(matvec(abs_a_star.matrix(), y), y).real());
  return std::sqrt(qx * qy) - std::abs(inner(matvec(a, x), y));
}

nlohmann::json map_to_json(const PositiveMap& phi) {
  return std::visit(
      overloaded{
          [&](const PositiveMap::Identity& m) -> nlohmann::json {
            return {{"variant", "identity"}, {"n", m.n}};
          },
          [](const PositiveMap::Pinch& p) -> nlohmann::json {
            return {{"variant", "pinch"}, {"blocks", p.blocks}};
          },
          [](const PositiveMap::Compress& c) -> nlohmann::json {
            return {{"variant", "compress"}, {"V", rect_to_json(c.v)}};
          },
          [](const PositiveMap::TraceState& t) -> nlohmann::json {
            return {{"variant", "trace_state"}, {"n", t.n}};
          },
          [](const PositiveMap::Transpose& t) -> nlohmann::json {
            return {{"variant", "transpose"}, {"n", t.n}};
          },
          [](const PositiveMap::UnitaryConj& u) -> nlohmann::json {
            return {{"variant", "unitary_conj"}, {"U", matrix_to_json(u.u)}};
          },
          [](const PositiveMap::Mixture& m) -> nlohmann::json {
            nlohmann::json maps = nlohmann::json::array();
            for (const auto& c : m.maps) maps.push_back(map_to_json(c));
            return {{"variant", "mixture"}, {"maps", maps}, {"weights", m.weights}};
          },
          [](const PositiveMap::DirectSum& d) -> nlohmann::json {
            nlohmann::json terms = nlohmann::json::array();
            for (const auto& t : d.terms) {
              if (t.map)
                terms.push_back({{"map", map_to_json(*t.map)}, {"weight", t.weight}});
              else
                terms.push_back({{"contraction", rect_to_json(*t.contraction)}});
            }
            return {{"variant", "direct_sum"}, {"terms", terms}};
          },
      },
      phi.variant());
}

PositiveMap map_from_json(const nlohmann::json& j, std::size_t n) {
  if (!j.is_object() || !j.contains("variant") || !j.at("variant").is_string())
    throw ConfigError("map", "expected an object with a \"variant\" string");
  const auto variant = j.at("variant").get<std::string>();
  try {
    const std::size_t dim = j.value("n", n);
    if (variant == "identity") return PositiveMap::identity(dim);
    if (variant == "trace_state") return PositiveMap::trace_state(dim);
    if (variant == "transpose") return PositiveMap::transpose(dim);
    if (variant == "pinch") {
      if (j.contains("blocks"))
        return PositiveMap::pinch(j.at("blocks").get<std::vector<std::size_t>>());
      return PositiveMap::pinch(std::vector<std::size_t>(dim, 1));
    }
    if (variant == "compress") return PositiveMap::compress(rect_from_json(j.at("V")));
    if (variant == "unitary_conj")
      return PositiveMap::unitary_conj(matrix_from_json(j.at("U")));
    if (variant == "mixture") {
      std::vector<PositiveMap> maps;
      for (const auto& m : j.at("maps")) maps.push_back(map_from_json(m, dim));
      return PositiveMap::mixture(std::move(maps),
                                  j.at("weights").get<std::vector<double>>());
    }
    if (variant == "direct_sum") {
      std::vector<PositiveMap::Summand> terms;
      for (const auto& t : j.at("terms")) {
        if (t.contains("contraction")) {
          terms.push_back(
              PositiveMap::Summand::congruence(rect_from_json(t.at("contraction"))));
        } else {
          const std::size_t block = t.value("block", dim);
          terms.push_back(PositiveMap::Summand::weighted(
              map_from_json(t.at("map"), block), t.value("weight", 1.0)));
        }
      }
      return PositiveMap::direct_sum(std::move(terms));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("map", e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("map", e.what());
  }
  throw ConfigError("map", "unknown variant \"" + variant + "\"");
}

PositiveMap parse_map(const std::string& text, std::size_t n) {
  if (!text.empty() && text.front() == '{') {
    try {
      return map_from_json(nlohmann::json::parse(text), n);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError("map", e.what());
    }
  }
  const auto colon = text.find(':');
  const auto head = text.substr(0, colon);
  if (colon == std::string::npos) {
    if (head == "identity") return PositiveMap::identity(n);
    if (head == "transpose") return PositiveMap::transpose(n);
    if (head == "trace_state") return PositiveMap::trace_state(n);
    if (head == "pinch") return PositiveMap::pinch(std::vector<std::size_t>(n, 1));
  } else if (head == "pinch") {
    std::vector<std::size_t> blocks;
    std::istringstream in(text.substr(colon + 1));
    std::string token;
    while (std::getline(in, token, ',')) {
      try {
        blocks.push_back(std::stoul(token));
      } catch (const std::exception&) {
        throw ConfigError("map", "bad pinch block \"" + token + "\"");
      }
    }
    try {
      return PositiveMap::pinch(std::move(blocks));
    } catch (const Error& e) {
      throw ConfigError("map", e.what());
    }
  }
  throw ConfigError("map", "unrecognized map \"" + text + "\"");
}

}  // namespace radiuslab
