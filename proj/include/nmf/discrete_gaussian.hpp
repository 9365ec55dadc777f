#pragma once

#include <cstdint>

#include "nmf/rng.hpp"

namespace nmf {

// Exact sampler for the discrete Gaussian N_Z(0, sigma^2): integer support,
// P(X = x) proportional to exp(-x^2 / (2 sigma^2)). Rejection from a
// discrete Laplace with all Bernoulli events evaluated in exact rational
// arithmetic, so no draw ever touches a floating-point rounding step.
// sigma^2 is taken as the exact dyadic rational the double argument denotes.
class DiscreteGaussianSampler {
 public:
  explicit DiscreteGaussianSampler(double variance);  // requires variance > 0

  // One exact draw. Thread-safe: all state is const after construction.
  std::int64_t sample(Rng& rng) const;
  std::int64_t operator()(Rng& rng) const { return sample(rng); }

  double variance_parameter() const { return variance_; }
  std::uint64_t laplace_scale() const { return t_; }  // floor(sigma) + 1

 private:
  double variance_;
  std::uint64_t num_;  // sigma^2 = num_/den_, reduced
  std::uint64_t den_;
  std::uint64_t t_;
  bool fast_;  // parameters small enough for the 128-bit integer path
};

// Single draw from the discrete Laplace with integer scale t >= 1:
// P(X = x) proportional to exp(-|x|/t). Exact.
std::int64_t sample_discrete_laplace(std::uint64_t t, Rng& rng);

// Convenience wrapper matching the operation signature: one exact draw
// with a per-call sampler. Prefer constructing a sampler once per
// distinct variance in hot loops.
std::int64_t sample_discrete_gaussian(double variance, Rng& rng);

}  // namespace nmf
