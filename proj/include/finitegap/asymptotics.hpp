// Numerical diagnostics for the large-n behavior of the recurrence data:
// capacity-normalized coefficient products, torus frequencies from band
// masses, almost-period scans, exterior growth against the Green's function,
// single-interval reference asymptotics via an outer function on the disk,
// and stability of the coefficient tail under an added point mass.
#pragma once

#include <complex>
#include <string>
#include <vector>

#include "finitegap/equilibrium.hpp"
#include "finitegap/jacobi.hpp"
#include "finitegap/measure.hpp"

namespace finitegap {

// Torus frequencies attached to the gaps: omega_j is the equilibrium mass
// lying to the right of gap j, reduced modulo one.
struct FrequencyVector {
  std::vector<double> omegas;  // one entry per gap, each in [0, 1)
};

// One candidate shift T of the coefficient sequences.
struct PeriodCandidate {
  int period = 0;
  double torus_distance = 0.0;   // max_j distance of T*omega_j to integers
  double sup_deviation_p = 0.0;  // sup_m |p_{m+T} - p_m|, m >= burn_in
  double sup_deviation_q = 0.0;
};

struct AlmostPeriodDiagnostics {
  int burn_in = 0;
  std::vector<PeriodCandidate> candidates;
};

// One disk sample of the single-interval reference asymptotics.
struct SzegoCheckPoint {
  std::complex<double> zeta;      // sample in the punctured open unit disk
  std::complex<double> observed;  // P_n(z(zeta)) * zeta^n * D(zeta)
  double error = 0.0;             // |observed - 1|
};

struct SzegoCheckResult {
  std::vector<SzegoCheckPoint> points;
  double product_error = 0.0;  // |(p_0...p_N)/cap^N - D(0)|
};

struct PointMassStability {
  double sup_deviation_p = 0.0;
  double sup_deviation_q = 0.0;
};

struct AsymptoticsReport {
  std::vector<double> widom_factors;  // W_0 .. W_N
  FrequencyVector frequency;
  AlmostPeriodDiagnostics diagnostics;
  std::vector<SzegoCheckPoint> szego_checks;  // empty when not applicable
  double szego_product_error = 0.0;
  std::vector<std::string> notes;
};

// W_n = (p_0 ... p_n) / cap^n, computed in log space.  cap must be positive.
std::vector<double> widom_factors(const JacobiCoefficients& c, double cap);

// Suffix sums of the band equilibrium masses over the gaps.
FrequencyVector frequency_vector(const EquilibriumData& eq);

// max_j || T * omega_j ||  (distance to the nearest integer); 0 for no gaps.
double torus_distance(const FrequencyVector& omega, int period);

// For each T <= t_max: torus distance and the sup coefficient deviations over
// m in [burn_in, N - T].  Requires N >= burn_in + t_max + 10 coefficients.
AlmostPeriodDiagnostics almost_period_scan(const JacobiCoefficients& c,
                                           const FrequencyVector& omega,
                                           int burn_in, int t_max);

// Outer function on the unit disk whose boundary modulus squared is the
// pullback 2*pi*f(theta) of a single-interval measure: endpoint factors
// (1 -+ zeta)^{(1 + 2e)/2} times the Herglotz series of the smooth remainder.
std::complex<double> szego_outer(const PreparedMeasure& measure,
                                 std::complex<double> zeta);

// With z(zeta) = m + (h/2)(zeta + 1/zeta), checks P_n(z(zeta)) zeta^n D(zeta)
// against 1 at the given disk points, and the coefficient product against
// D(0).  Single interval without point masses only.
SzegoCheckResult szego_reference_check(
    const JacobiCoefficients& c, const PreparedMeasure& measure, int n,
    const std::vector<std::complex<double>>& zetas);

// | (1/n) log |P_n(z)| - G(z) |  for z off the support, n >= 50.
double nth_root_check(const JacobiCoefficients& c, const EquilibriumData& eq,
                      std::complex<double> z, int n);

// sup_{n >= burn_in} | log(|P_{n+T}(z)| / |P_n(z)|) - T * G(z) |.
double ratio_along_almost_periods(const JacobiCoefficients& c,
                                  const EquilibriumData& eq,
                                  std::complex<double> z, int burn_in,
                                  int period);

// Coefficient-tail movement when a point mass (x, m) is added to the base
// measure: sup over n >= burn_in of |delta p_n| and |delta q_n| at depth n_max.
PointMassStability point_mass_stability(const SpectralMeasure& base, double x,
                                        double m, int n_max, int burn_in);

// Assembles the diagnostics that apply to the given data; skipped sections
// are recorded in notes.  burn_in < 0 selects the default N/2.
AsymptoticsReport build_report(
    const PreparedMeasure& measure, const EquilibriumData& eq,
    const JacobiCoefficients& c, int burn_in = -1, int t_max = 12,
    const std::vector<std::complex<double>>& zetas = {{0.5, 0.0}, {0.3, 0.2}});

}  // namespace finitegap
