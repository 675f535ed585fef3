#pragma once
// Equilibrium measure, logarithmic capacity and Green's functions of a finite
// band union E.  The equilibrium density is |q(x)| / (pi sqrt|R(x)|) with
// R = prod (x - e) over the 2g+2 band endpoints and q a degree-g numerator
// whose integral over every bounded gap against 1/sqrt(R) vanishes; the g
// vanishing conditions are linear in the (Chebyshev-basis) coefficients of q.
// Green's functions are evaluated through per-band cosine expansions of the
// density (log-kernel closed forms) and, for the two-point function, through a
// normalized third-kind differential integrated from the nearest band edge.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "finitegap/cosine_series.hpp"
#include "finitegap/interval_set.hpp"

namespace finitegap {

struct EquilibriumData {
  IntervalSet set;
  int order = 0;                    // cosine-series length per band
  double capacity = 0.0;
  double log_capacity = 0.0;
  std::vector<double> gap_zeros;    // one zero of the numerator per gap
  std::vector<double> band_measures;
  std::vector<CosineSeries> band_density;  // theta pullbacks of the density
  std::vector<double> numerator_cheb;      // q in bounding-interval Chebyshev basis

  // Data for the two-point Green's function: gap quadratures and the linear
  // system shared by the numerator solve and the third-kind normalization.
  struct GapRule {
    double m = 0.0, h = 0.0;   // gap midpoint / halfwidth
    int sign = 1;              // sign of sqrt(R) on this gap (canonical branch)
    std::vector<double> x;     // quadrature nodes
    std::vector<double> coef;  // weights including the 1/sqrt(R) factor
  };
  std::vector<GapRule> gap_rules;
  Eigen::MatrixXd gap_matrix;   // g x (g+1): columns T_j(s(x)) against 1/sqrt(R)
  Eigen::PartialPivLU<Eigen::MatrixXd> gap_lu;  // of the left g x g block
};

// Solves the vanishing conditions, then doubles the quadrature order until the
// capacity is stable to 1e-10 (order capped at 1024).
EquilibriumData equilibrium(const IntervalSet& set, int order = 128);

// Canonical branch of sqrt(prod (z - e)): analytic off E, ~ z^{g+1} at +inf.
std::complex<double> sqrt_R(const IntervalSet& set, std::complex<double> z);
// Signed real value of the same branch for real x off the interior of E.
double sqrt_R_real(const IntervalSet& set, double x);

double equilibrium_density(const EquilibriumData& eq, double x);

// Green's function with pole at infinity; zero on E (within solver accuracy).
double green_infinity(const EquilibriumData& eq, std::complex<double> z);

// Green's function with finite real pole w off E; z real or complex, z != w.
double green_two_point(const EquilibriumData& eq, std::complex<double> z,
                       double w);

// Cumulative band measures strictly right of each bounded gap.
std::vector<double> harmonic_frequencies(const EquilibriumData& eq);

// sum of G(x, infinity) over the given real points (all off E).
double greens_sum(const EquilibriumData& eq, const std::vector<double>& points);

// sup over l of sum_{j != l} G(x_j, x_l); the mutual-separation sum bounded by
// the admissibility condition.
double carleson_sum(const EquilibriumData& eq, const std::vector<double>& points);

struct RescaleResult {
  IntervalSet set;
  double scale = 1.0;  // multiplicative factor applied about the midpoint
  double shift = 0.0;  // resulting affine shift: x' = scale * x + shift
};
RescaleResult rescale_to_unit_capacity(const IntervalSet& set, int order = 128);

}  // namespace finitegap
