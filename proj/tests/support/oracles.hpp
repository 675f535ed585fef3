#pragma once
// Independent oracles for the test suites: closed forms on a single interval,
// a low-resolution boundary-element Dirichlet solver for two-point Green's
// functions on band unions, and the exact coefficient sequence for the
// quadratic-preimage measure.

#include <complex>
#include <vector>

#include "finitegap/interval_set.hpp"

namespace finitegap::test {

// Conformal map of the complement of [-2, 2] onto the unit disk.
std::complex<double> disk_map(std::complex<double> z);

// Green's function of C \ [-2, 2] with pole at infinity.
double green_single_interval(std::complex<double> z);

// Green's function of C \ [-2, 2] with finite pole w (disk-map pullback).
double green_two_point_single_interval(std::complex<double> z,
                                       std::complex<double> w);

// Boundary-element solve of the Dirichlet problem defining G(z, w):
// single-layer cosine densities on each band collocated at Chebyshev points.
// Accuracy ~1e-8 with modes_per_band ~ 48 on well-separated bands.
double bem_green_two_point(const IntervalSet& set, std::complex<double> z,
                           double w, int modes_per_band = 48);

// Exact off-diagonal recurrence coefficients p_1, p_2, ... for the pullback of
// the normalized arcsine measure under x -> x^2 - 3 (bands [-sqrt5,-1],[1,sqrt5]).
// The even/odd split of the symmetric chain makes x^2 act as the arcsine chain
// on [1, 5]: products p_{2k+1} p_{2k+2} give its off-diagonals (sqrt 2, then 1)
// and sums p_{2k}^2 + p_{2k+1}^2 give its constant diagonal 3.  Hence
// p_1^2 = 3, p_{2k+2} = base_k / p_{2k+1} with base_0 = sqrt 2 and 1 after,
// and p_{2k+3}^2 = 3 - p_{2k+2}^2.
std::vector<double> preimage_arcsine_offdiag(int count);

}  // namespace finitegap::test
