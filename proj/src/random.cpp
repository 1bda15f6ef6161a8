#include "safetysim/random.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace safetysim {

double Rng::uniform() {
  return std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
}

std::uint64_t Rng::poisson(double mean) {
  if (mean <= 0.0) return 0;
  return std::poisson_distribution<std::uint64_t>(mean)(engine_);
}

std::uint64_t Rng::binomial(std::uint64_t trials, double p) {
  if (trials == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return trials;
  return std::binomial_distribution<std::uint64_t>(trials, p)(engine_);
}

double Rng::gamma(double shape) {
  return std::gamma_distribution<double>(shape, 1.0)(engine_);
}

std::size_t Rng::categorical(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) {
    throw std::domain_error("categorical: weights have no mass");
  }
  const double target = uniform() * total;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (target < cumulative) return i;
  }
  // Rounding in the running sum can leave target just above it.
  return last_positive;
}

std::vector<std::uint64_t> Rng::multinomial(std::uint64_t trials,
                                            std::span<const double> probs) {
  std::vector<std::uint64_t> counts(probs.size(), 0);
  if (trials == 0) return counts;

  // Suffix sums are exactly zero past the last positive entry, so no trial
  // can land on a trailing zero-probability category.
  std::vector<double> tail(probs.size() + 1, 0.0);
  for (std::size_t i = probs.size(); i-- > 0;) {
    tail[i] = tail[i + 1] + std::max(probs[i], 0.0);
  }
  if (!(tail[0] > 0.0)) {
    throw std::domain_error("multinomial: probabilities have no mass");
  }

  std::uint64_t remaining = trials;
  for (std::size_t i = 0; i < probs.size() && remaining > 0; ++i) {
    if (probs[i] <= 0.0) continue;
    if (tail[i + 1] <= 0.0) {
      counts[i] = remaining;
      break;
    }
    const double p = std::clamp(probs[i] / tail[i], 0.0, 1.0);
    counts[i] = binomial(remaining, p);
    remaining -= counts[i];
  }
  return counts;
}

}  // namespace safetysim
