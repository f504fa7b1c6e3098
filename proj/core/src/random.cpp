#include "radiuslab/random.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace radiuslab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::string_view kEnsembleNames[] = {
    "ginibre", "hermitian", "psd", "normal", "unitary", "nilpotent_jordan",
    "shifted_jordan",
};

ComplexMatrix ginibre(std::size_t n, RngStream& rng) {
  ComplexMatrix g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
  return g;
}

// Orthonormalizes the columns of m in place by modified Gram–Schmidt.
void gram_schmidt(ComplexMatrix& m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex proj = 0.0;
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(m(i, j)) * m(i, k);
      for (std::size_t i = 0; i < n; ++i) m(i, k) -= proj * m(i, j);
    }
    double nrm = 0.0;
    for (std::size_t i = 0; i < n; ++i) nrm += std::norm(m(i, k));
    nrm = std::sqrt(nrm);
    for (std::size_t i = 0; i < n; ++i) m(i, k) /= nrm;
  }
}

RectMatrix leading_columns(const ComplexMatrix& u, std::size_t rows,
                           std::size_t row0, std::size_t cols) {
  RectMatrix r{rows, cols, {}};
  r.data.reserve(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) r.data.push_back(u(row0 + i, j));
  return r;
}

std::vector<double> convex_weights(std::size_t k, RngStream& rng) {
  std::vector<double> w(k);
  double sum = 0.0;
  for (auto& x : w) {
    x = 0.05 + rng.uniform();
    sum += x;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < k; ++i) {
    w[i] /= sum;
    acc += w[i];
  }
  w[k - 1] = 1.0 - acc;
  return w;
}

std::vector<std::size_t> random_blocks(std::size_t n, RngStream& rng) {
  std::vector<std::size_t> blocks;
  std::size_t run = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (rng.uniform() < 0.5) {
      blocks.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  blocks.push_back(run);
  return blocks;
}

// Square n → n maps used as mixture and direct-sum components.
PositiveMap random_square_map(std::size_t n, RngStream& rng) {
  switch (rng.below(5)) {
    case 0: return PositiveMap::identity(n);
    case 1: return PositiveMap::pinch(random_blocks(n, rng));
    case 2: return PositiveMap::trace_state(n);
    case 3: return PositiveMap::transpose(n);
    default: return PositiveMap::unitary_conj(haar_unitary(n, rng));
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t chain,
                          std::uint64_t dim, std::uint64_t index) {
  std::uint64_t h = splitmix64(root);
  h = splitmix64(h ^ chain);
  h = splitmix64(h ^ dim);
  return splitmix64(h ^ index);
}

double RngStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Complex RngStream::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::size_t RngStream::below(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

std::string_view ensemble_name(Ensemble e) {
  return kEnsembleNames[static_cast<std::size_t>(e)];
}

Ensemble parse_ensemble(std::string_view name) {
  for (std::size_t k = 0; k < std::size(kEnsembleNames); ++k)
    if (kEnsembleNames[k] == name) return static_cast<Ensemble>(k);
  throw ConfigError("ensemble", "unknown ensemble \"" + std::string(name) + "\"");
}

ComplexMatrix haar_unitary(std::size_t n, RngStream& rng) {
  auto u = ginibre(n, rng);
  gram_schmidt(u);
  gram_schmidt(u);  // second pass restores orthogonality lost to roundoff
  return u;
}

ComplexMatrix jordan_block(std::size_t n, Complex shift) {
  ComplexMatrix j(n);
  for (std::size_t i = 0; i < n; ++i) {
    j(i, i) = shift;
    if (i + 1 < n) j(i, i + 1) = 1.0;
  }
  return j;
}

ComplexMatrix gen_random(Ensemble e, std::size_t n, RngStream& rng) {
  switch (e) {
    case Ensemble::Ginibre:
      return ginibre(n, rng);
    case Ensemble::Hermitian:
      return HermitianMatrix::symmetrize(ginibre(n, rng)).matrix();
    case Ensemble::Psd: {
      auto g = gram(ginibre(n, rng)).matrix();
      g *= 1.0 / static_cast<double>(n);
      return g;
    }
    case Ensemble::Normal: {
      const auto u = haar_unitary(n, rng);
      std::vector<Complex> z(n);
      for (auto& v : z) v = rng.complex_normal();
      return u * ComplexMatrix::diagonal(z) * u.adjoint();
    }
    case Ensemble::Unitary:
      return haar_unitary(n, rng);
    case Ensemble::NilpotentJordan:
      return jordan_block(n);
    case Ensemble::ShiftedJordan:
      return jordan_block(n, rng.complex_normal());
  }
  throw PreconditionError("gen_random: unknown ensemble");
}

PositiveMap random_map(std::size_t n, RngStream& rng) {
  return random_map_variant(rng.below(kMapVariants), n, rng);
}

PositiveMap random_map_variant(std::size_t variant, std::size_t n, RngStream& rng) {
  switch (variant % kMapVariants) {
    case 0: return PositiveMap::identity(n);
    case 1: return PositiveMap::pinch(random_blocks(n, rng));
    case 2: {
      const std::size_t k = 1 + rng.below(n);
      return PositiveMap::compress(leading_columns(haar_unitary(n, rng), n, 0, k));
    }
    case 3: return PositiveMap::trace_state(n);
    case 4: return PositiveMap::transpose(n);
    case 5: return PositiveMap::unitary_conj(haar_unitary(n, rng));
    case 6: {
      std::vector<PositiveMap> maps;
      maps.push_back(random_square_map(n, rng));
      maps.push_back(random_square_map(n, rng));
      return PositiveMap::mixture(std::move(maps), convex_weights(2, rng));
    }
    default: {
      // Equal blocks of size n/k, each carrying a weighted unital map.
      std::vector<std::size_t> divisors;
      for (std::size_t k = 2; k <= n; ++k)
        if (n % k == 0) divisors.push_back(k);
      if (divisors.empty()) return PositiveMap::identity(n);
      const std::size_t k = divisors[rng.below(divisors.size())];
      const std::size_t b = n / k;
      const auto w = convex_weights(k, rng);
      std::vector<PositiveMap::Summand> terms;
      for (std::size_t i = 0; i < k; ++i)
        terms.push_back(PositiveMap::Summand::weighted(random_square_map(b, rng), w[i]));
      return PositiveMap::direct_sum(std::move(terms));
    }
  }
}

std::vector<RectMatrix> partition_contractions(std::size_t k, std::size_t n,
                                               RngStream& rng) {
  if (k == 0 || n == 0)
    throw PreconditionError("partition_contractions needs k, n >= 1");
  const auto u = haar_unitary(k * n, rng);
  std::vector<RectMatrix> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(leading_columns(u, n, i * n, n));
  return out;
}

}  // namespace radiuslab
