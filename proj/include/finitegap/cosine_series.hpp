#pragma once
// Cosine expansions f(theta) ~ sum_k a_k cos(k theta) of band densities pulled
// back through t = m + h cos(theta), together with closed-form integrals of
// such expansions against the logarithmic and Cauchy kernels.  Writing
// z = m + h*(u + 1/u)/2 with |u| >= 1 (Joukowski variable), each cosine mode
// integrates in closed form, which keeps evaluation spectrally accurate even
// arbitrarily close to (or on) the band.

#include <complex>
#include <functional>
#include <vector>

namespace finitegap {

struct CosineSeries {
  std::vector<double> a;  // a_k, k = 0 .. K-1

  // Collocation fit at theta_j = (j + 1/2) pi / K (discrete orthogonality).
  static CosineSeries fit(const std::function<double(double)>& f, int K);

  double eval(double theta) const;
  // integral over [0, pi]
  double integral() const;
  std::size_t size() const { return a.size(); }
};

// u(c) = c + sqrt(c - 1) sqrt(c + 1) with |u| >= 1.
std::complex<double> joukowski_u(std::complex<double> c);

// integral over the band of w(t) log|z - t| dt, where w dt = f(theta) dtheta.
double band_log_kernel(const CosineSeries& f, double m, double h,
                       std::complex<double> z);

// integral of w(t) / (t - z) dt for z off the closed band.  zero_left /
// zero_right declare that f vanishes at theta = pi / theta = 0 (weight with a
// square-root zero at that edge); the evaluation then switches to a
// cancellation-free form near that edge so boundary limits are finite.
std::complex<double> band_cauchy(const CosineSeries& f, double m, double h,
                                 std::complex<double> z, bool zero_left,
                                 bool zero_right);

// d/dz of band_cauchy, i.e. integral of w(t) / (t - z)^2 dt.
std::complex<double> band_cauchy_deriv(const CosineSeries& f, double m,
                                       double h, std::complex<double> z);

// Principal value of integral w(t) / (t - x) dt for x strictly inside the band.
double band_cauchy_pv(const CosineSeries& f, double m, double h, double x);

}  // namespace finitegap
