#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "radiuslab/matrix.hpp"
#include "radiuslab/positive_map.hpp"

namespace radiuslab {

/// Identity of the sample stream, recorded in every report.
inline constexpr std::string_view kRngAlgorithm =
    "splitmix64-derive/mt19937_64/box-muller";
inline constexpr int kRngVersion = 1;

/// Per-sample seed: splitmix64 folded over (root, chain, dim, index). Order of
/// evaluation never changes which sample a (chain, dim, index) sees.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t chain,
                          std::uint64_t dim, std::uint64_t index);

/// Gaussian draws use a hand-rolled Box–Muller so the stream is identical
/// across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();  // [0, 1), 53 bits
  double normal();
  Complex complex_normal();  // (N + iN)/√2, unit variance
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

enum class Ensemble {
  Ginibre,
  Hermitian,
  Psd,
  Normal,
  Unitary,
  NilpotentJordan,
  ShiftedJordan,
};

std::string_view ensemble_name(Ensemble e);
Ensemble parse_ensemble(std::string_view name);

ComplexMatrix gen_random(Ensemble e, std::size_t n, RngStream& rng);
/// Haar unitary: Gram–Schmidt (applied twice) on a Ginibre matrix, with the
/// triangular factor's diagonal positive.
ComplexMatrix haar_unitary(std::size_t n, RngStream& rng);
ComplexMatrix jordan_block(std::size_t n, Complex shift = 0.0);

inline constexpr std::size_t kMapVariants = 8;

/// Uniform draw over the map catalog, acting on n×n inputs.
PositiveMap random_map(std::size_t n, RngStream& rng);
/// Random parameters for one catalog entry, in declaration order: identity,
/// pinch, compress, trace_state, transpose, unitary_conj, mixture, direct_sum.
PositiveMap random_map_variant(std::size_t variant, std::size_t n, RngStream& rng);
/// k contractions P_i (n×n) with Σ P_i*P_i = I, cut from the first n columns
/// of a kn×kn Haar unitary.
std::vector<RectMatrix> partition_contractions(std::size_t k, std::size_t n,
                                               RngStream& rng);

}  // namespace radiuslab
