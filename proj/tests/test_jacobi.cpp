// Recurrence coefficients via discretize + Lanczos, orthonormal polynomial
// and second-kind evaluation, and the rank-one transform at matrix and
// polynomial level.  Oracles: Chebyshev closed forms on one band, the
// quadratic-preimage coefficient recursion on two bands, and geometric decay
// of second-kind functions at the rate of the Green's function.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "finitegap/errors.hpp"
#include "finitegap/interval_set.hpp"
#include "finitegap/jacobi.hpp"
#include "finitegap/measure.hpp"
#include "finitegap/stieltjes.hpp"
#include "support/oracles.hpp"

using namespace finitegap;
using cplx = std::complex<double>;

namespace {

IntervalSet one_band() { return IntervalSet::from_bands({{-2.0, 2.0}}); }

PreparedMeasure semicircle_measure() {
  return PreparedMeasure::prepare(
      build_measure(one_band(), WeightSpec::semicircle(), {}));
}

PreparedMeasure arcsine_measure() {
  return PreparedMeasure::prepare(
      build_measure(one_band(), WeightSpec::arcsine(), {}));
}

}  // namespace

TEST_CASE("discretization preserves mass, atoms, and moments") {
  const auto d = discretize(semicircle_measure(), 64);
  CHECK(d.total == doctest::Approx(1.0).epsilon(1e-12));
  double sum = 0.0;
  for (double w : d.weights) {
    CHECK(w > 0.0);
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  const auto with_atom = PreparedMeasure::prepare(
      build_measure(one_band(), WeightSpec::semicircle(), {{3.0, 0.1}}));
  const auto da = discretize(with_atom, 64);
  bool found = false;
  for (std::size_t i = 0; i < da.nodes.size(); ++i) {
    if (da.nodes[i] == 3.0) {
      found = true;
      CHECK(da.weights[i] == 0.1);
    }
  }
  CHECK(found);
  CHECK(da.total == doctest::Approx(1.1).epsilon(1e-12));

  const auto das = discretize(arcsine_measure(), 64);
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < das.nodes.size(); ++i) {
    m0 += das.weights[i];
    m1 += das.weights[i] * das.nodes[i];
    m2 += das.weights[i] * das.nodes[i] * das.nodes[i];
  }
  CHECK(m0 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(m1) < 1e-10);
  CHECK(m2 == doctest::Approx(2.0).epsilon(1e-10));

  CHECK_THROWS_AS(discretize(semicircle_measure(), 4), ValidationError);
}

TEST_CASE("Chebyshev closed-form coefficients on one band") {
  const auto sc = coefficients_for_measure(semicircle_measure(), 40);
  CHECK(sc.residual < 1e-8);
  CHECK(sc.coefficients.p[0] == doctest::Approx(1.0).epsilon(1e-10));
  for (int k = 1; k <= 40; ++k) {
    CHECK(sc.coefficients.p[static_cast<std::size_t>(k)] ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  for (int k = 0; k < 40; ++k) {
    CHECK(std::abs(sc.coefficients.q[static_cast<std::size_t>(k)]) < 1e-8);
  }

  const auto as = coefficients_for_measure(arcsine_measure(), 40);
  CHECK(as.residual < 1e-8);
  CHECK(as.coefficients.p[0] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(as.coefficients.p[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
  for (int k = 2; k <= 40; ++k) {
    CHECK(as.coefficients.p[static_cast<std::size_t>(k)] ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  for (int k = 0; k < 40; ++k) {
    CHECK(std::abs(as.coefficients.q[static_cast<std::size_t>(k)]) < 1e-8);
  }

  // Total mass 2 shows up as p_0 = sqrt(2).
  const auto s0 = coefficients_for_measure(
      PreparedMeasure::prepare(make_sigma0(one_band(), {}, {})), 10);
  CHECK(s0.coefficients.p[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("affine covariance of the coefficients") {
  // Semicircle mapped by x -> 0.5 x + 0.7: p_n scale by 0.5, q_n shift to 0.7.
  const auto meas = PreparedMeasure::prepare(build_measure(
      IntervalSet::from_bands({{-0.3, 1.7}}), WeightSpec::semicircle(), {}));
  const auto run = coefficients_for_measure(meas, 20);
  CHECK(run.residual < 1e-8);
  CHECK(run.coefficients.p[0] == doctest::Approx(1.0).epsilon(1e-10));
  for (int k = 1; k <= 20; ++k) {
    CHECK(run.coefficients.p[static_cast<std::size_t>(k)] ==
          doctest::Approx(0.5).epsilon(1e-8));
  }
  for (int k = 0; k < 20; ++k) {
    CHECK(run.coefficients.q[static_cast<std::size_t>(k)] ==
          doctest::Approx(0.7).epsilon(1e-8));
  }
}

TEST_CASE("symmetric two-band equilibrium measure has zero diagonal") {
  const auto set = IntervalSet::from_bands({{-2.0, -1.0}, {1.0, 2.0}});
  const auto meas = PreparedMeasure::prepare(
      build_measure(set, WeightSpec::equilibrium_of_bands(), {}));
  const auto run = coefficients_for_measure(meas, 20);
  CHECK(run.residual < 1e-8);
  for (int k = 0; k < 20; ++k) {
    CHECK(std::abs(run.coefficients.q[static_cast<std::size_t>(k)]) < 1e-9);
  }
}

TEST_CASE("quadratic-preimage equilibrium coefficients match the recursion") {
  const double s5 = std::sqrt(5.0);
  const auto set = IntervalSet::from_bands({{-s5, -1.0}, {1.0, s5}});
  const auto meas = PreparedMeasure::prepare(
      build_measure(set, WeightSpec::equilibrium_of_bands(), {}));
  const auto run = coefficients_for_measure(meas, 14);
  CHECK(run.residual < 1e-8);
  CHECK(run.coefficients.p[0] == doctest::Approx(1.0).epsilon(1e-10));
  const auto want = test::preimage_arcsine_offdiag(14);
  for (int k = 1; k <= 14; ++k) {
    CHECK(run.coefficients.p[static_cast<std::size_t>(k)] ==
          doctest::Approx(want[static_cast<std::size_t>(k - 1)]).epsilon(1e-8));
  }
}

TEST_CASE("point masses move the normalization but keep positivity") {
  const auto meas = PreparedMeasure::prepare(
      build_measure(one_band(), WeightSpec::semicircle(), {{3.0, 0.5}}));
  const auto run = coefficients_for_measure(meas, 15);
  CHECK(run.coefficients.p[0] * run.coefficients.p[0] ==
        doctest::Approx(1.5).epsilon(1e-12));
  for (double p : run.coefficients.p) CHECK(p > 0.0);
}

TEST_CASE("rank exhaustion raises a numerical error with the index") {
  // Two numerically coincident nodes leave only two independent directions.
  DiscretizedMeasure d;
  d.nodes = {0.0, 1e-14, 1.0};
  d.weights = {0.3, 0.3, 0.4};
  d.total = 1.0;
  CHECK_THROWS_AS(recurrence_coefficients(d, 2), NumericalError);
  CHECK_THROWS_AS(recurrence_coefficients(d, 5), ValidationError);
}

TEST_CASE("orthonormality residual flags undersampling, driver escalates") {
  const auto pm = semicircle_measure();
  const auto coarse = discretize(pm, 16);
  const auto c = recurrence_coefficients(coarse, 12);
  CHECK(orthonormality_residual(coarse, c, 12) < 1e-10);  // self-consistent
  // The same coefficients are *not* orthonormal for the true measure: judge
  // with a fine discretization.
  const auto fine = discretize(pm, 512);
  CHECK(orthonormality_residual(fine, c, 12) > 1e-6);
  const auto run = coefficients_for_measure(pm, 12);
  CHECK(run.residual < 1e-8);
}

TEST_CASE("orthonormal polynomial evaluation against Chebyshev forms") {
  const auto sc = coefficients_for_measure(semicircle_measure(), 12);
  const auto at1 = eval_polys(sc.coefficients, {1.0, 0.0}, 12);
  CHECK(std::abs(at1[0] - cplx{1.0, 0.0}) < 1e-12);
  CHECK(std::abs(at1[2]) < 1e-8);  // sin(3 theta)/sin(theta) = 0 at theta=pi/3
  const double theta = 1.1;
  const auto vals = eval_polys(sc.coefficients, {2.0 * std::cos(theta), 0.0}, 10);
  for (int k = 0; k <= 10; ++k) {
    const double want = std::sin((k + 1) * theta) / std::sin(theta);
    CHECK(vals[static_cast<std::size_t>(k)].real() ==
          doctest::Approx(want).epsilon(1e-8));
  }

  const auto as = coefficients_for_measure(arcsine_measure(), 12);
  const auto avals = eval_polys(as.coefficients, {1.0, 0.0}, 10);
  CHECK(std::abs(avals[0] - cplx{1.0, 0.0}) < 1e-12);
  for (int k = 1; k <= 10; ++k) {
    const double want = std::sqrt(2.0) * std::cos(k * std::acos(0.5));
    CHECK(avals[static_cast<std::size_t>(k)].real() ==
          doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("second-kind functions: anchor, recurrence, and decay") {
  const auto pm = semicircle_measure();
  const auto run = coefficients_for_measure(pm, 100);
  const auto& c = run.coefficients;

  const auto h = second_kind_eval(pm, c, {3.0, 0.0}, 70);
  CHECK(h[0].real() == doctest::Approx(0.3819660112501051).epsilon(1e-11));
  // Free-case closed form h_n(3) = ((3 - sqrt 5)/2)^{n+1}.
  const double ratio = 0.5 * (3.0 - std::sqrt(5.0));
  for (int k = 0; k <= 30; ++k) {
    CHECK(h[static_cast<std::size_t>(k)].real() ==
          doctest::Approx(std::pow(ratio, k + 1)).epsilon(1e-8));
  }
  // Defining recurrence, interior indices.
  for (const cplx z : {cplx{3.0, 0.0}, cplx{1.0, 1.5}}) {
    const auto hz = second_kind_eval(pm, c, z, 22);
    for (int k = 1; k <= 20; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      const cplx res = z * hz[ku] - c.p[ku] * hz[ku - 1] - c.q[ku] * hz[ku] -
                       c.p[ku + 1] * hz[ku + 1];
      CHECK(std::abs(res) < 1e-8);
    }
    // Inhomogeneous k = 0 relation: z h_0 = p_0 + q_0 h_0 + p_1 h_1.
    const cplx res0 = z * hz[0] - c.p[0] - c.q[0] * hz[0] - c.p[1] * hz[1];
    CHECK(std::abs(res0) < 1e-10);
  }
  // Log-slope of the decay equals minus the Green's function at z = 3.
  const double slope =
      (std::log(std::abs(h[60])) - std::log(std::abs(h[20]))) / 40.0;
  CHECK(slope == doctest::Approx(-0.9624236501192069).epsilon(0.01));

  CHECK_THROWS_AS(second_kind_eval(pm, c, {1.0, 0.0}, 10), ValidationError);
  CHECK_THROWS_AS(second_kind_eval(pm, c, {3.0, 0.0}, 100), ValidationError);
}

TEST_CASE("rank-one transform of the coefficient matrix") {
  const auto run = coefficients_for_measure(semicircle_measure(), 20);
  const auto t = tau_transform_jacobi(run.coefficients);
  CHECK(t.q[0] == doctest::Approx(1.0).epsilon(1e-8));
  for (int k = 1; k < 20; ++k) {
    CHECK(t.q[static_cast<std::size_t>(k)] ==
          doctest::Approx(run.coefficients.q[static_cast<std::size_t>(k)]));
  }
  for (std::size_t k = 0; k < t.p.size(); ++k) {
    CHECK(t.p[k] == run.coefficients.p[k]);
  }
  // Undoing the rank-one update recovers the original diagonal entry.
  CHECK(t.q[0] - t.p[0] * t.p[0] ==
        doctest::Approx(run.coefficients.q[0]).epsilon(1e-12));

  // 1x1 case: a unit mass at 0 carries q_0 = 0 and maps to q_0 = 1, the
  // coefficient data of a unit mass at 1.
  JacobiCoefficients tiny{{1.0}, {0.0}};
  const auto mapped = tau_transform_jacobi(tiny);
  CHECK(mapped.q[0] == doctest::Approx(1.0));

  // Cross-module check: Lanczos on the transformed measure reproduces the
  // rank-one update of the coefficients.
  const auto pm = semicircle_measure();
  const StieltjesFunction r(pm);
  const auto tau = tau_transform_measure(r);
  const auto tau_run = coefficients_for_measure(tau.measure, 20);
  CHECK(tau_run.coefficients.q[0] == doctest::Approx(1.0).epsilon(1e-8));
  for (int k = 1; k < 20; ++k) {
    CHECK(std::abs(tau_run.coefficients.q[static_cast<std::size_t>(k)]) < 1e-8);
  }
  for (int k = 0; k <= 20; ++k) {
    CHECK(tau_run.coefficients.p[static_cast<std::size_t>(k)] ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("polynomial-level transform is unitary and invertible") {
  const auto pm = semicircle_measure();
  const auto run = coefficients_for_measure(pm, 20);
  const auto check = tau_transform_polys(pm, run.coefficients, 20);
  CHECK(check.gram_residual < 1e-7);
  CHECK(check.inverse_error < 1e-7);

  const auto as = arcsine_measure();
  const auto arun = coefficients_for_measure(as, 20);
  const auto acheck = tau_transform_polys(as, arun.coefficients, 20);
  CHECK(acheck.gram_residual < 1e-7);
  CHECK(acheck.inverse_error < 1e-7);

  // One-point measure: the mapped constant stays orthonormal under the
  // shifted point mass.
  const auto delta = PreparedMeasure::prepare(
      build_measure(IntervalSet(), WeightSpec::none_weight(), {{0.0, 1.0}}));
  JacobiCoefficients tiny{{1.0}, {0.0}};
  const auto dcheck = tau_transform_polys(delta, tiny, 0);
  CHECK(dcheck.gram_residual < 1e-12);
  CHECK(dcheck.inverse_error < 1e-12);
}
