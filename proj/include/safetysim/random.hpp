#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace safetysim {

/// Seeded random stream. One instance per replication; every sampler in the
/// library draws from an explicitly passed Rng so runs are reproducible.
///
/// All samplers are exact (no normal approximations). The bitstream is only
/// reproducible within one standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();

  /// Poisson(mean). A mean of zero returns 0 without consuming the stream.
  std::uint64_t poisson(double mean);

  std::uint64_t binomial(std::uint64_t trials, double p);

  /// Gamma(shape, 1).
  double gamma(double shape);

  /// Index drawn with probability proportional to `weights` (inversion on a
  /// single uniform). Weights need not be normalized but must not all be 0.
  std::size_t categorical(std::span<const double> weights);

  /// Multinomial(trials, probs) via sequential conditional binomials.
  std::vector<std::uint64_t> multinomial(std::uint64_t trials,
                                         std::span<const double> probs);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace safetysim
