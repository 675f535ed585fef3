#include "oracles.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "finitegap/cosine_series.hpp"

namespace finitegap::test {

namespace {

// Closed-form mode integrals of a single-layer cosine density on a band
// [m-h, m+h]:  I_k(z) = \int_0^pi cos(k theta) log|z - (m + h cos theta)| dtheta.
// With u the exterior Joukowski coordinate of c = (z-m)/h (|u| >= 1):
//   I_0 = pi (log(h/2) + log|u|),   I_k = -(pi/k) Re(u^{-k})  (k >= 1).
// On the band itself |u| = 1 and the formulas reduce to the classical series
// for log|cos a - cos b|.
std::vector<double> mode_integrals(std::complex<double> z, double m, double h,
                                   int modes) {
  const std::complex<double> c = (z - m) / h;
  const std::complex<double> u = joukowski_u(c);
  std::vector<double> out(static_cast<std::size_t>(modes));
  const double pi = std::acos(-1.0);
  out[0] = pi * (std::log(h / 2.0) + std::log(std::abs(u)));
  const std::complex<double> uinv = 1.0 / u;
  std::complex<double> upow = uinv;
  for (int k = 1; k < modes; ++k) {
    out[static_cast<std::size_t>(k)] = -(pi / k) * upow.real();
    upow *= uinv;
  }
  return out;
}

}  // namespace

std::complex<double> disk_map(std::complex<double> z) {
  // Inverse Joukowski for halfwidth 2: z = u + 1/u with |u| >= 1; the disk map
  // is 1/u.
  const std::complex<double> u = joukowski_u(z / 2.0);
  return 1.0 / u;
}

double green_single_interval(std::complex<double> z) {
  return -std::log(std::abs(disk_map(z)));
}

double green_two_point_single_interval(std::complex<double> z,
                                       std::complex<double> w) {
  const std::complex<double> a = disk_map(z);
  const std::complex<double> b = disk_map(w);
  return std::log(std::abs(1.0 - a * std::conj(b))) -
         std::log(std::abs(a - b));
}

double bem_green_two_point(const IntervalSet& set, std::complex<double> z,
                           double w, int modes_per_band) {
  const auto& bands = set.bands();
  const int nb = static_cast<int>(bands.size());
  const int K = modes_per_band;
  const int unknowns = nb * K + 1;  // densities + additive constant
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(unknowns, unknowns);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
  const double pi = std::acos(-1.0);

  int row = 0;
  for (int ib = 0; ib < nb; ++ib) {
    const double m = bands[static_cast<std::size_t>(ib)].midpoint();
    const double h = bands[static_cast<std::size_t>(ib)].halfwidth();
    for (int cpt = 0; cpt < K; ++cpt, ++row) {
      const double theta = (cpt + 0.5) * pi / K;
      const double x = m + h * std::cos(theta);
      for (int jb = 0; jb < nb; ++jb) {
        const double mj = bands[static_cast<std::size_t>(jb)].midpoint();
        const double hj = bands[static_cast<std::size_t>(jb)].halfwidth();
        const auto modes = mode_integrals({x, 0.0}, mj, hj, K);
        for (int k = 0; k < K; ++k) {
          A(row, jb * K + k) = modes[static_cast<std::size_t>(k)];
        }
      }
      A(row, unknowns - 1) = 1.0;  // additive constant
      rhs(row) = std::log(std::abs(x - w));
    }
  }
  // Unit total charge: h(z) ~ log|z| at infinity cancels the -log|z - w|
  // of the pole term, so G stays bounded.
  for (int jb = 0; jb < nb; ++jb) {
    A(row, jb * K) = pi;
  }
  rhs(row) = 1.0;

  const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(rhs);

  double h_of_z = sol(unknowns - 1);
  for (int jb = 0; jb < nb; ++jb) {
    const double mj = bands[static_cast<std::size_t>(jb)].midpoint();
    const double hj = bands[static_cast<std::size_t>(jb)].halfwidth();
    const auto modes = mode_integrals(z, mj, hj, K);
    for (int k = 0; k < K; ++k) {
      h_of_z += sol(jb * K + k) * modes[static_cast<std::size_t>(k)];
    }
  }
  return -std::log(std::abs(z - w)) + h_of_z;
}

std::vector<double> preimage_arcsine_offdiag(int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  double x = 3.0;  // current p_odd^2
  for (int k = 0; static_cast<int>(out.size()) < count; ++k) {
    const double p_odd = std::sqrt(x);
    out.push_back(p_odd);
    if (static_cast<int>(out.size()) == count) break;
    const double pair_product = (k == 0) ? std::sqrt(2.0) : 1.0;
    const double p_even = pair_product / p_odd;
    out.push_back(p_even);
    x = 3.0 - p_even * p_even;
  }
  return out;
}

}  // namespace finitegap::test
