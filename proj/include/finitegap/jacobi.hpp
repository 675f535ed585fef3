#pragma once
// Three-term recurrence data of a spectral measure:
//   z P_n(z) = p_n P_{n-1}(z) + q_n P_n(z) + p_{n+1} P_{n+1}(z),
//   p_0 P_0 = 1, p_0^2 = total mass.
// Coefficients are computed by per-band Gauss discretization plus Lanczos
// with full reorthogonalization (moment determinants are exponentially
// ill-conditioned).  Also: orthonormal polynomial evaluation, second-kind
// functions h_n(z) = int P_n(x)/(z-x) dsigma(x) via backward (Miller)
// recurrence anchored at h_0 = (1 - r(z))/p_0, and the rank-one transform
// J -> J + p_0^2 e_0 e_0^T together with its polynomial-level unitary map.

#include <complex>
#include <vector>

#include "finitegap/measure.hpp"

namespace finitegap {

struct JacobiCoefficients {
  std::vector<double> p;  // p_0 .. p_N (p_0^2 = total mass, all positive)
  std::vector<double> q;  // q_0 .. q_{N-1}
};

struct DiscretizedMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;  // positive; sums to the total mass
  double total = 0.0;
  // Nodes [0, band_nodes) come from band quadrature; the rest are point
  // masses.  Defaults to "all of them" for hand-assembled instances.
  std::size_t band_nodes = static_cast<std::size_t>(-1);
};

// Per-band Gauss rule in the theta pullback (exact for the fitted density up
// to the rule's resolution, then rescaled band-by-band so the discrete mass
// matches the fitted mass), plus one exact node per point mass.
DiscretizedMeasure discretize(const PreparedMeasure& measure,
                              int nodes_per_band);

// Lanczos with full (twice-iterated) reorthogonalization on the discrete
// measure; n coefficients q_0..q_{n-1} and p_0..p_n.  With `compensated`,
// inner products run through error-free transformations (double-double
// accuracy).  Throws NumericalError("... rank exhausted ...") with the index
// when the discrete measure cannot support n orthogonal polynomials.
JacobiCoefficients recurrence_coefficients(const DiscretizedMeasure& d, int n,
                                           bool compensated = false);

// Deviation of the system from orthonormality under the discrete measure.
// Forward recurrence is only stable on the bands, and high-degree values at a
// gap point mass are not recoverable from rounded coefficients at all, so the
// check uses the band-node Gram matrix B alone: exact orthonormality makes
// I - B positive semidefinite of rank at most the number of point masses with
// eigenvalues in [0, 1].  Returns the largest spectral deviation from that
// structure; equals the spectral norm of I - B when there are no point
// masses.
double orthonormality_residual(const DiscretizedMeasure& d,
                               const JacobiCoefficients& c, int n);

// Driver: starts at 8n nodes (split across bands), doubles to a 64n cap
// until the orthonormality residual drops below 1e-8, then retries the final
// grid with compensated inner products if the residual still stalls.
struct CoefficientRun {
  JacobiCoefficients coefficients;
  double residual = 0.0;
  int nodes_per_band = 0;
  bool compensated = false;
};
CoefficientRun coefficients_for_measure(const PreparedMeasure& measure, int n);

// P_0(z) .. P_n(z) by forward recurrence; requires n <= N.
std::vector<std::complex<double>> eval_polys(const JacobiCoefficients& c,
                                             std::complex<double> z, int n);

// h_0(z) .. h_n(z), h_k(z) = int P_k(x)/(z-x) dsigma(x), for z off the
// support.  Backward recurrence from the full coefficient depth; keep a
// margin of coefficients beyond n, since the top entries of the trial
// sequence carry the truncation error.
std::vector<std::complex<double>> second_kind_eval(
    const PreparedMeasure& measure, const JacobiCoefficients& c,
    std::complex<double> z, int n);

// q_0 -> q_0 + p_0^2, everything else unchanged (rank-one update by the
// vector (p_0, 0, ...)).
JacobiCoefficients tau_transform_jacobi(const JacobiCoefficients& c);

// Polynomial-level check of the transform: maps P_k through
//   P^tau(z) = P(z) - int (P(x) - P(z))/(x - z) dsigma(x),
// measures the Gram residual of the mapped system under the transformed
// measure, and runs the inverse map
//   P(z) = P^tau(z) + int (P^tau(x) - P^tau(z))/(x - z) dsigma^tau(x)
// at sample points against the original polynomials.
struct TauPolyCheck {
  double gram_residual = 0.0;
  double inverse_error = 0.0;
};
TauPolyCheck tau_transform_polys(const PreparedMeasure& measure,
                                 const JacobiCoefficients& c, int n);

}  // namespace finitegap
