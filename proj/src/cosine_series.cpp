#include "finitegap/cosine_series.hpp"

#include <cmath>
#include <limits>

#include "finitegap/errors.hpp"

namespace finitegap {

using cplx = std::complex<double>;

CosineSeries CosineSeries::fit(const std::function<double(double)>& f, int K) {
  if (K < 2) throw ValidationError("cosine fit: need at least 2 samples");
  const std::size_t n = static_cast<std::size_t>(K);
  std::vector<double> samples(n);
  std::vector<double> thetas(n);
  for (std::size_t j = 0; j < n; ++j) {
    thetas[j] = M_PI * (static_cast<double>(j) + 0.5) / K;
    samples[j] = f(thetas[j]);
  }
  CosineSeries out;
  out.a.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    // cos(k theta_j) by angle-addition recurrence.
    const double c1 = std::cos(thetas[j]);
    const double s1 = std::sin(thetas[j]);
    double ck = 1.0, sk = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      out.a[k] += samples[j] * ck;
      const double cn = ck * c1 - sk * s1;
      sk = sk * c1 + ck * s1;
      ck = cn;
    }
  }
  out.a[0] /= K;
  for (std::size_t k = 1; k < n; ++k) out.a[k] *= 2.0 / K;
  return out;
}

double CosineSeries::eval(double theta) const {
  const double c1 = std::cos(theta), s1 = std::sin(theta);
  double ck = 1.0, sk = 0.0, sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sum += a[k] * ck;
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
  }
  return sum;
}

double CosineSeries::integral() const {
  return a.empty() ? 0.0 : M_PI * a[0];
}

cplx joukowski_u(cplx c) {
  // Points a few ulps past +-1 are band edges displaced by rounding; the
  // square-root branch point would amplify that eps-level displacement to
  // sqrt(eps), so snap them back onto the edge.
  const double edge_tol =
      8.0 * std::numeric_limits<double>::epsilon() * (std::abs(c) + 1.0);
  if (std::abs(c - 1.0) <= edge_tol) return {1.0, 0.0};
  if (std::abs(c + 1.0) <= edge_tol) return {-1.0, 0.0};
  // sqrt(c-1)*sqrt(c+1) (not sqrt(c^2-1)) picks the branch cut on [-1, 1].
  const cplx root = std::sqrt(c - 1.0) * std::sqrt(c + 1.0);
  cplx u = c + root;
  if (std::abs(u) < 1.0) u = c - root;
  // Guard the boundary |u| = 1 against rounding below 1.
  const double mag = std::abs(u);
  if (mag < 1.0) u /= mag;
  return u;
}

double band_log_kernel(const CosineSeries& f, double m, double h, cplx z) {
  const cplx c = (z - m) / h;
  const cplx u = joukowski_u(c);
  const cplx uinv = 1.0 / u;
  double sum = 0.0;
  cplx upow = uinv;  // u^{-k}
  for (std::size_t k = 1; k < f.a.size(); ++k) {
    sum += f.a[k] / static_cast<double>(k) * upow.real();
    upow *= uinv;
  }
  const double a0 = f.a.empty() ? 0.0 : f.a[0];
  return M_PI * a0 * (std::log(h / 2.0) + std::log(std::abs(u))) - M_PI * sum;
}

cplx band_cauchy(const CosineSeries& f, double m, double h, cplx z,
                 bool zero_left, bool zero_right) {
  const cplx c = (z - m) / h;
  const cplx u = joukowski_u(c);

  if (zero_right && std::abs(u - 1.0) < 0.25) {
    // f(0) = 0; subtract the (divergent-looking) constant mode exactly:
    //   W = (pi/h) * 2/(u+1) * sum_k a_k T_k,  T_k = sum_{j<k} u^{-j}.
    const cplx uinv = 1.0 / u;
    cplx T = 0.0, upow = 1.0, sum = 0.0;
    for (std::size_t k = 0; k < f.a.size(); ++k) {
      sum += f.a[k] * T;
      T += upow;
      upow *= uinv;
    }
    return (M_PI / h) * 2.0 / (u + 1.0) * sum;
  }
  if (zero_left && std::abs(u + 1.0) < 0.25) {
    // Mirror image with v = -1/u:  W = -(pi/h) * 2v/(1+v) * sum (-1)^k a_k T'_k.
    const cplx v = -1.0 / u;
    cplx T = 0.0, vpow = 1.0, sum = 0.0;
    double sgn = 1.0;
    for (std::size_t k = 0; k < f.a.size(); ++k) {
      sum += sgn * f.a[k] * T;
      T += vpow;
      vpow *= v;
      sgn = -sgn;
    }
    return -(M_PI / h) * 2.0 * v / (1.0 + v) * sum;
  }

  const cplx uinv = 1.0 / u;
  cplx upow = 1.0, sum = 0.0;
  for (std::size_t k = 0; k < f.a.size(); ++k) {
    sum += f.a[k] * upow;
    upow *= uinv;
  }
  return -(M_PI / h) * 2.0 * u / (u * u - 1.0) * sum;
}

cplx band_cauchy_deriv(const CosineSeries& f, double m, double h, cplx z) {
  const cplx c = (z - m) / h;
  const cplx u = joukowski_u(c);
  const cplx uinv = 1.0 / u;
  cplx A = 0.0, Ap = 0.0;  // A(u) = sum a_k u^{-k},  Ap = dA/du
  cplx upow = 1.0;
  for (std::size_t k = 0; k < f.a.size(); ++k) {
    A += f.a[k] * upow;
    if (k > 0) Ap -= static_cast<double>(k) * f.a[k] * upow * uinv;
    upow *= uinv;
  }
  const cplx den = u * u - 1.0;
  const cplx gprime = -2.0 * (u * u + 1.0) / (den * den) * A + 2.0 * u / den * Ap;
  const cplx dudz = 2.0 * u * u / (den * h);
  return -(M_PI / h) * gprime * dudz;
}

double band_cauchy_pv(const CosineSeries& f, double m, double h, double x) {
  const double c = (x - m) / h;
  if (!(c > -1.0 && c < 1.0)) {
    throw ValidationError("band_cauchy_pv: point is not inside the band");
  }
  const double theta = std::acos(c);
  const double s1 = std::sin(theta);
  // sum_k a_k sin(k theta) / sin(theta)
  double ck = 1.0, sk = 0.0, sum = 0.0;
  const double c1 = std::cos(theta);
  for (std::size_t k = 0; k < f.a.size(); ++k) {
    if (k > 0) sum += f.a[k] * sk;
    const double cn = ck * c1 - sk * s1;
    sk = sk * c1 + ck * s1;
    ck = cn;
  }
  return (M_PI / h) * sum / s1;
}

}  // namespace finitegap
