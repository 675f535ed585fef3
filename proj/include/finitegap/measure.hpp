#pragma once
// Spectral measures: an absolutely continuous density on a band union plus
// finitely many point masses in the complement.  Densities are represented by
// their per-band pullbacks f(theta) = w(m + h cos theta) * h * sin(theta),
// which are smooth whenever the endpoint exponents lie in {-1/2, +1/2}, so a
// single cosine-series machinery covers all built-in weight families.

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "finitegap/cosine_series.hpp"
#include "finitegap/interval_set.hpp"

namespace finitegap {

enum class WeightKind {
  none,                // purely atomic measure
  equilibrium,         // density of the equilibrium measure of the bands
  generalized_jacobi,  // smooth * (x - l)^eL * (r - x)^eR per band
  sigma0_phase,        // boundary values of the canonical square-root ratio
  table                // piecewise-linear interpolation of samples; edge
                       // behaviour is resolved only to first order, so
                       // logarithmic integrals of table weights carry a few
                       // 1e-3 of relative error
};

// Per-band parameters of a generalized Jacobi weight.
struct BandWeight {
  double exp_left = -0.5;               // exponent of (x - l), in {-1/2, 1/2}
  double exp_right = -0.5;              // exponent of (r - x)
  std::vector<double> smooth_cheb{1.0};  // Chebyshev coefficients (band var.)
};

struct WeightSpec {
  WeightKind kind = WeightKind::none;
  std::vector<BandWeight> per_band;            // generalized_jacobi
  std::vector<double> sigma0_poles;            // sigma0_phase: X
  std::vector<double> sigma0_zeros;            // sigma0_phase: X^tau
  std::vector<double> table_x, table_w;        // table kind, sorted samples
  std::optional<double> normalize_mass;        // rescale a.c. part

  // Convenience families on a single band [l, r] (total a.c. mass 1).
  static WeightSpec semicircle();
  static WeightSpec arcsine();
  static WeightSpec equilibrium_of_bands();
  static WeightSpec generalized(std::vector<BandWeight> per_band);
  static WeightSpec sigma0(std::vector<double> poles,
                           std::vector<double> zeros);
  static WeightSpec sampled(std::vector<double> x, std::vector<double> w);
  static WeightSpec none_weight();
};

struct PointMass {
  double x = 0.0;
  double mass = 0.0;
};

struct SpectralMeasure {
  IntervalSet bands;             // may be empty (purely atomic)
  WeightSpec weight;
  std::vector<PointMass> masses;
};

// Validates support placement (atoms strictly off the bands, pairwise
// distinct, positive), weight invariants, and sigma0 interlacing.
SpectralMeasure build_measure(const IntervalSet& bands, WeightSpec weight,
                              std::vector<PointMass> masses);

// Working representation: fitted pullback series per band plus the atoms.
struct PreparedBand {
  double m = 0.0, h = 0.0;     // band midpoint / halfwidth
  CosineSeries f;              // pullback density * h sin(theta)
  double exp_left = -0.5;      // endpoint exponents (metadata for the
  double exp_right = -0.5;     // logarithmic integrals; see szego_integral)
  bool zero_theta0 = false;    // f vanishes at theta = 0 (right edge)
  bool zero_thetapi = false;   // f vanishes at theta = pi (left edge)
};

class PreparedMeasure {
 public:
  // Fits every band at the given series order and freezes the atoms.
  static PreparedMeasure prepare(const SpectralMeasure& measure,
                                 int order = 256);
  // Assembles a prepared measure directly from pullback samples; used by the
  // transforms whose densities are only known pointwise.
  static PreparedMeasure from_bands(IntervalSet bands,
                                    std::vector<PreparedBand> prepared,
                                    std::vector<PointMass> atoms);

  const IntervalSet& bands() const { return bands_; }
  const std::vector<PreparedBand>& prepared_bands() const { return bands_fit_; }
  const std::vector<PointMass>& atoms() const { return atoms_; }

  double ac_mass() const;      // integral of the density over the bands
  double total_mass() const;   // ac_mass + sum of atom masses

  // Pointwise density; x must lie strictly inside a band.
  double density(double x) const;

 private:
  IntervalSet bands_;
  std::vector<PreparedBand> bands_fit_;
  std::vector<PointMass> atoms_;
};

}  // namespace finitegap
