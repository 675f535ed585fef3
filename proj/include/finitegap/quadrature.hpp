#pragma once
// Gauss-Legendre rules (Newton iteration on the Legendre recurrence, cached
// per order) plus small numeric utilities: compensated dot products for the
// high-precision recurrence path and a deterministic uniform sampler used by
// the randomized property checks.

#include <cstdint>
#include <vector>

namespace finitegap {

struct GaussRule {
  std::vector<double> x;  // nodes
  std::vector<double> w;  // weights
};

// Rule on [-1, 1]; results are cached and the reference stays valid.
const GaussRule& gauss_legendre(int n);

// Rule mapped to [0, pi] (theta variable for band substitutions).
GaussRule theta_rule(int n);

// Compensated (error-free transformation) dot product; roughly double-double
// accuracy.  Used when plain double inner products stall the orthogonality
// residual of the discretized recurrence.
double compensated_dot(const double* a, const double* b, std::size_t n);

// Kahan-compensated sum.
double compensated_sum(const std::vector<double>& v);

// Deterministic xorshift-based uniform sampler.  Stable across platforms so
// seeded property checks reproduce bit-identically.
class UniformSampler {
 public:
  explicit UniformSampler(std::uint64_t seed) : state_(seed ? seed : 1u) {}
  // uniform in [0, 1)
  double next();
  // uniform in [a, b)
  double next(double a, double b) { return a + (b - a) * next(); }

 private:
  std::uint64_t state_;
};

}  // namespace finitegap
