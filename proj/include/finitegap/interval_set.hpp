#pragma once
// Finite unions of disjoint closed intervals ("bands") on the real line,
// Cantor-type constructions obtained by repeatedly removing middle portions,
// and the metric diagnostics (local density, homogeneity, gap-separation sums)
// used to judge how thin such a set is.

#include <cstddef>
#include <string>
#include <vector>

namespace finitegap {

struct Band {
  double left = 0.0;
  double right = 0.0;
  double length() const { return right - left; }
  double midpoint() const { return 0.5 * (left + right); }
  double halfwidth() const { return 0.5 * (right - left); }
};

// Ordered disjoint closed bands.  Construction validates ordering and
// disjointness; bands whose separation is below 1e-14 * diameter are merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  static IntervalSet from_bands(std::vector<Band> bands);

  const std::vector<Band>& bands() const { return bands_; }
  std::size_t band_count() const { return bands_.size(); }
  bool empty() const { return bands_.empty(); }

  double left() const;      // left end of the bounding interval
  double right() const;     // right end of the bounding interval
  double diameter() const { return right() - left(); }

  bool contains(double x) const;
  // Distance from x to the set (0 when x lies in a band).
  double distance(double x) const;

 private:
  std::vector<Band> bands_;
};

// Middle-portion removal parameters: generation n replaces every band of
// length L by two end bands of length (1 - kappas[n-1]) * L / 2.
struct CantorSpec {
  double l0 = 1.0;                // length of the generation-0 interval
  double origin = 0.0;            // its left endpoint
  std::vector<double> kappas;     // removed fractions, one per generation
};

IntervalSet make_cantor(const CantorSpec& spec, int generation);

double total_length(const IntervalSet& set);

struct GapList {
  Band bounding;              // [b0, a0]
  std::vector<Band> gaps;     // bounded open complement components, sorted
};
GapList gaps(const IntervalSet& set);

// |(x - rho, x + rho) \cap E| / rho.  Values lie in [0, 2].
double local_density(const IntervalSet& set, double x, double rho);

struct SamplingGrid {
  std::vector<double> points;   // evaluation points x (subset of E)
  std::vector<double> radii;    // window radii rho
  std::string descriptor;       // human-readable provenance of the grid
};
SamplingGrid default_homogeneity_grid(const IntervalSet& set);

struct HomogeneityReport {
  double eta = 0.0;           // min over the grid of local_density
  double worst_x = 0.0;
  double worst_rho = 0.0;
  std::string grid_descriptor;
};
HomogeneityReport homogeneity_eta(const IntervalSet& set,
                                  const SamplingGrid& grid);
HomogeneityReport homogeneity_eta(const IntervalSet& set);

// sup over gaps j of sum_{k != j} sqrt(l_j l_k) / dist(gap_j, gap_k), with a
// formal outer term of unit length whose distance to gap j is the distance
// from gap j to the boundary of the bounding interval.  Small values certify
// homogeneity via the separation criterion.
double gap_separation_sum(const IntervalSet& set);

}  // namespace finitegap
