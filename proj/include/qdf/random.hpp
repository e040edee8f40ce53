#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qdf/operator.hpp"

namespace qdf {

/// Seedable random stream with deterministic per-task derivation, so that
/// parallel sweep tasks draw from independent, reproducible streams.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(mix(seed)), seed_(seed) {}

  /// Independent stream for a sub-task; mixing is splitmix64-style.
  RandomStream derive(std::uint64_t task_index) const {
    return RandomStream(seed_ ^ mix(task_index + 0x632be59bd9b4e019ULL));
  }

  double gaussian() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t integer() { return engine_(); }
  std::mt19937_64& engine() { return engine_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
  std::uint64_t seed_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

Vector random_gaussian_vector(int dim, RandomStream& rng);

/// Haar-distributed pure state on the given factor structure.
DensityMatrix random_pure_haar(const std::vector<int>& dims, RandomStream& rng);

/// Hilbert-Schmidt-style mixed state G G^dagger / tr.
DensityMatrix random_mixed_hs(const std::vector<int>& dims, RandomStream& rng);

/// Pure state drawn inside the bosonic subspace of d^n and embedded.
PureState random_symmetric_pure(int d, int n, RandomStream& rng);

enum class StateKind { PureHaar, MixedHS, SymmetricPure };

DensityMatrix random_state(StateKind kind, const std::vector<int>& dims,
                           std::uint64_t seed);

}  // namespace qdf
