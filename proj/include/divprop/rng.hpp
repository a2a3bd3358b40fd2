// rng.hpp: seeded randomness for sampling and property checks

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "divprop/types.hpp"

namespace divprop {

// Deterministic per-stream seed derivation (splitmix64 over base ^ stream) so
// sampled batteries stay reproducible however the samples are ordered.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double a, double b) { return a + (b - a) * unit_(engine_); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

Matrix random_complex_matrix(Rng& rng, int rows, int cols);
Matrix random_hermitian(Rng& rng, int n, bool traceless = false);
Matrix random_rank_deficient(Rng& rng, int n, int rank);
Vector haar_state(Rng& rng, int d);
Matrix random_unitary(Rng& rng, int d);
Matrix random_density(Rng& rng, int d);

// Kraus operators of a random channel, drawn from a Haar isometry.
std::vector<Matrix> random_kraus_channel(Rng& rng, int d, int kraus_count);

}  // namespace divprop
