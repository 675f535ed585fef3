#include "finitegap/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "finitegap/errors.hpp"

namespace finitegap {

namespace {

GaussRule compute_gauss_legendre(int n) {
  GaussRule rule;
  rule.x.resize(static_cast<std::size_t>(n));
  rule.w.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.x[static_cast<std::size_t>(i)] = -z;
    rule.x[static_cast<std::size_t>(n - 1 - i)] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[static_cast<std::size_t>(i)] = w;
    rule.w[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw ValidationError("gauss_legendre: order must be >= 1");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, compute_gauss_legendre(n)).first;
  }
  return it->second;
}

GaussRule theta_rule(int n) {
  const GaussRule& base = gauss_legendre(n);
  GaussRule out;
  out.x.resize(base.x.size());
  out.w.resize(base.w.size());
  for (std::size_t i = 0; i < base.x.size(); ++i) {
    out.x[i] = 0.5 * M_PI * (base.x[i] + 1.0);
    out.w[i] = 0.5 * M_PI * base.w[i];
  }
  return out;
}

namespace {

// Error-free transformations (two_sum / two_prod with fma).
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double t = s - a;
  e = (a - (s - t)) + (b - t);
}

inline void two_prod(double a, double b, double& p, double& e) {
  p = a * b;
  e = std::fma(a, b, -p);
}

}  // namespace

double compensated_dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0, c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double p, pe;
    two_prod(a[i], b[i], p, pe);
    double t, te;
    two_sum(s, p, t, te);
    s = t;
    c += te + pe;
  }
  return s + c;
}

double compensated_sum(const std::vector<double>& v) {
  double s = 0.0, c = 0.0;
  for (double x : v) {
    double t, e;
    two_sum(s, x, t, e);
    s = t;
    c += e;
  }
  return s + c;
}

double UniformSampler::next() {
  // xorshift64*; top 53 bits to a double in [0,1).
  std::uint64_t x = state_;
  x ^= x >> 12;
  x ^= x << 25;
  x ^= x >> 27;
  state_ = x;
  const std::uint64_t r = x * 0x2545F4914F6CDD1DULL;
  return static_cast<double>(r >> 11) * 0x1.0p-53;
}

}  // namespace finitegap
