#pragma once
// The Stieltjes function r(z) = 1 + integral d sigma(x) / (x - z) of a
// spectral measure, its boundary values, the tau-transform pair
// (forward: poles of -1/r at the zeros of r; inverse: shift by -2), the
// canonical square-root-ratio measure, the exponential (phase) representation
// of r, and the Szego logarithmic integral against the equilibrium measure.

#include <complex>
#include <vector>

#include "finitegap/equilibrium.hpp"
#include "finitegap/measure.hpp"

namespace finitegap {

class StieltjesFunction {
 public:
  explicit StieltjesFunction(PreparedMeasure measure);

  // r(z); z must stay off the support (bands and atoms).
  std::complex<double> eval(std::complex<double> z) const;
  // r'(z) = integral d sigma / (x - z)^2, positive on real complement points.
  std::complex<double> derivative(std::complex<double> z) const;

  // Boundary values on band interiors: r(x + i0) = re_boundary + i pi w(x).
  double re_boundary(double x) const;  // principal value part
  double density(double x) const;      // a.c. density w(x)

  double total_mass() const { return measure_.total_mass(); }
  const PreparedMeasure& measure() const { return measure_; }

 private:
  std::complex<double> cauchy(std::complex<double> z) const;
  PreparedMeasure measure_;
};

// Result of a tau-transform: the derived measure (absolutely continuous part
// refitted on the same bands, point masses at the zeros found), plus the
// zeros themselves and any boundary-degenerate zeros that sit at band edges
// (reported, no mass emitted).
struct TauResult {
  PreparedMeasure measure;
  std::vector<double> zeros;
  std::vector<double> boundary_zeros;
};

// Forward transform: -1/r = -1 + integral d sigma_tau / (x - z); masses
// 1/r'(x) at the interior zeros x of r, density w / |r(x + i0)|^2.
TauResult tau_transform_measure(const StieltjesFunction& r);
// Inverse transform, recovering sigma from the transform of sigma_tau: the
// same construction applied to rho = r - 2.
TauResult tau_inverse_measure(const StieltjesFunction& r_tau);

// Measure whose Stieltjes function is the canonical ratio
//   r0(z) = prod_l (z - zeros[l]) / (z - poles[l]) *
//           prod_j sqrt(z - a_j) / sqrt(z - b_j)
// over bands [b_j, a_j]; absolutely continuous on the bands with point
// masses (negative residues) at the poles.  poles[l] < zeros[l] must
// interlace inside a common complement component.
SpectralMeasure make_sigma0(const IntervalSet& bands,
                            const std::vector<double>& poles,
                            const std::vector<double>& zeros);

// | sum of atom masses + integral of the density - total mass from the
// large-z tail of r |; vanishes when the measure has no singular part.
double mass_balance_residual(const StieltjesFunction& r);

// Phase function of the exponential representation
//   r(z) = exp{ (1/pi) integral f(x) / (x - z) dx }:
// f = pi between each left obstacle and the zero of r that follows it,
// f = arg r(x + i0) on the bands, f = 0 elsewhere.
struct PhaseFunction {
  struct PiInterval {
    double left = 0.0, right = 0.0;
  };
  struct BandPhase {
    double m = 0.0, h = 0.0;
    std::vector<double> theta, quad_w, arg;  // arg r at Gauss nodes
  };
  std::vector<PiInterval> pi_intervals;
  std::vector<BandPhase> bands;

  double eval(double x) const;  // f(x), 0 off the support of f
};

PhaseFunction exp_representation(const StieltjesFunction& r, int order = 256);
std::complex<double> exp_eval(const PhaseFunction& f, std::complex<double> z);

// integral over E of log(density) d mu_E against the equilibrium measure of
// the bands; -infinity signals a non-Szego weight.
double szego_integral(const PreparedMeasure& measure,
                      const EquilibriumData& eq);

}  // namespace finitegap
