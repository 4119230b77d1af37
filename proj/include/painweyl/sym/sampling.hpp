#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>

#include "painweyl/sym/rational_function.hpp"

namespace painweyl::sym {

using Point = std::array<Rational, kNumVars>;

/// Uniform random rationals num/den with |num| <= bound, 1 <= den <= bound.
class RationalSampler {
 public:
  explicit RationalSampler(std::uint64_t seed, long bound = 10000) : rng_(seed), bound_(bound) {}

  Rational next();
  /// Every registry slot filled with a fresh random rational.
  Point point();

 private:
  std::mt19937_64 rng_;
  long bound_;
};

/// Random small polynomials and rational functions over q1, p1, t, eta, a2.
class ExpressionSampler {
 public:
  explicit ExpressionSampler(std::uint64_t seed) : rng_(seed) {}

  Polynomial polynomial(int max_terms = 4, int max_exp = 2);
  /// Never zero.
  RationalFunction rational_function();

 private:
  std::mt19937_64 rng_;
};

/// Outcome of a randomized identity test.
struct ProbabilisticCheck {
  bool holds = true;
  int points_tested = 0;
  int retries = 0;
  /// Human-readable description of the first refuting point, if any.
  std::string witness;
};

/// Evaluates `residual` at `points` random points; each point is first
/// passed through `prepare` (to impose constraints such as a normalization).
/// A point where `residual` throws PoleError is redrawn.
ProbabilisticCheck check_at_random_points(
    const std::function<Rational(const Point&)>& residual, RationalSampler& sampler, int points,
    const std::function<void(Point&)>& prepare = {});

}  // namespace painweyl::sym
