#pragma once
// Shared internals of the potential-theory translation units (not installed).

#include <cmath>
#include <complex>
#include <vector>

#include "finitegap/interval_set.hpp"

namespace finitegap::detail {

inline std::vector<double> all_endpoints(const IntervalSet& set) {
  std::vector<double> e;
  for (const Band& b : set.bands()) {
    e.push_back(b.left);
    e.push_back(b.right);
  }
  return e;
}

// Chebyshev values T_0..T_n at s via the three-term recurrence.
inline void cheb_values(double s, int n, std::vector<double>& out) {
  out.resize(static_cast<std::size_t>(n) + 1);
  out[0] = 1.0;
  if (n >= 1) out[1] = s;
  for (int j = 2; j <= n; ++j) {
    out[static_cast<std::size_t>(j)] =
        2.0 * s * out[static_cast<std::size_t>(j - 1)] -
        out[static_cast<std::size_t>(j - 2)];
  }
}

inline double scaled_var(const IntervalSet& set, double x) {
  return (2.0 * x - (set.left() + set.right())) / (set.right() - set.left());
}

// Clenshaw evaluation of a Chebyshev expansion in the bounding-interval
// variable; works for real and complex arguments.
template <typename Scalar>
Scalar cheb_eval(const IntervalSet& set, const std::vector<double>& coeff,
                 Scalar z) {
  const Scalar s = (2.0 * z - (set.left() + set.right())) /
                   (set.right() - set.left());
  Scalar b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeff.size(); k-- > 1;) {
    const Scalar b0 = 2.0 * s * b1 - b2 + coeff[k];
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + (coeff.empty() ? Scalar(0.0) : Scalar(coeff[0]));
}

// Clenshaw evaluation of a Chebyshev expansion in the local variable of a
// single band [m - h, m + h].
inline double cheb_eval_band(const std::vector<double>& coeff, double m,
                             double h, double x) {
  const double s = (x - m) / h;
  double b1 = 0.0, b2 = 0.0;
  for (std::size_t k = coeff.size(); k-- > 1;) {
    const double b0 = 2.0 * s * b1 - b2 + coeff[k];
    b2 = b1;
    b1 = b0;
  }
  return s * b1 - b2 + (coeff.empty() ? 0.0 : coeff[0]);
}

// prod over endpoints not belonging to the given band / gap of |x - e|^(1/2),
// computed through logs to stay safe for many close endpoints.
inline double sqrt_prod_excluding(const std::vector<double>& endpoints,
                                  double skip_a, double skip_b, double x) {
  double logsum = 0.0;
  for (double e : endpoints) {
    if (e == skip_a || e == skip_b) continue;
    logsum += std::log(std::abs(x - e));
  }
  return std::exp(0.5 * logsum);
}

}  // namespace finitegap::detail
