// The tau-transform pair on spectral measures: interior zeros of the
// Stieltjes function become point masses with mass 1/r', the density divides
// by |r(x+i0)|^2, endpoint exponents flip according to boundary zeros, and
// the inverse transform (shift by 2) recovers the original measure.  Also
// covers the exponential (phase) representation of r.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>

#include "doctest.h"
#include "finitegap/errors.hpp"
#include "finitegap/interval_set.hpp"
#include "finitegap/measure.hpp"
#include "finitegap/quadrature.hpp"
#include "finitegap/stieltjes.hpp"

using namespace finitegap;
using cplx = std::complex<double>;

namespace {

const double kPi = std::acos(-1.0);

IntervalSet one_band() { return IntervalSet::from_bands({{-2.0, 2.0}}); }

PreparedMeasure semicircle_measure() {
  return PreparedMeasure::prepare(
      build_measure(one_band(), WeightSpec::semicircle(), {}));
}

cplx r_semicircle(cplx z) {
  return 1.0 + 0.5 * (-z + std::sqrt(z - 2.0) * std::sqrt(z + 2.0));
}

}  // namespace

TEST_CASE("point mass at zero transforms to point mass at one") {
  const auto pm = PreparedMeasure::prepare(
      build_measure(IntervalSet(), WeightSpec::none_weight(), {{0.0, 1.0}}));
  const StieltjesFunction r(pm);
  // r(z) = 1 - 1/z.
  CHECK(std::abs(r.eval({2.0, 0.0}) - cplx{0.5, 0.0}) < 1e-14);

  const TauResult tau = tau_transform_measure(r);
  REQUIRE(tau.zeros.size() == 1);
  CHECK(tau.zeros[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tau.boundary_zeros.empty());
  REQUIRE(tau.measure.atoms().size() == 1);
  CHECK(tau.measure.atoms()[0].x == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tau.measure.atoms()[0].mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(tau.measure.bands().empty());

  const StieltjesFunction rt(tau.measure);
  const TauResult back = tau_inverse_measure(rt);
  REQUIRE(back.measure.atoms().size() == 1);
  CHECK(back.measure.atoms()[0].x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(back.measure.atoms()[0].mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("semicircle transform: closed-form density and boundary zero") {
  const auto pm = semicircle_measure();
  const StieltjesFunction r(pm);
  const TauResult tau = tau_transform_measure(r);

  CHECK(tau.zeros.empty());
  CHECK(tau.measure.atoms().empty());
  REQUIRE(tau.boundary_zeros.size() == 1);
  CHECK(tau.boundary_zeros[0] == doctest::Approx(2.0).epsilon(1e-9));

  // |r(x+i0)|^2 = 2 - x, so the new density is sqrt((2+x)/(2-x)) / (2 pi).
  for (double x : {0.0, 1.0, -1.0, 1.9}) {
    const double want = std::sqrt((2.0 + x) / (2.0 - x)) / (2.0 * kPi);
    CHECK(tau.measure.density(x) == doctest::Approx(want).epsilon(1e-9));
  }
  CHECK(tau.measure.ac_mass() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(tau.measure.total_mass() ==
        doctest::Approx(pm.total_mass()).epsilon(1e-10));

  const auto& band = tau.measure.prepared_bands()[0];
  CHECK(band.exp_left == 0.5);
  CHECK(band.exp_right == -0.5);
  CHECK(band.zero_thetapi);
  CHECK_FALSE(band.zero_theta0);

  // r_tau = 2 - 1/r.
  const StieltjesFunction rt(tau.measure);
  CHECK(rt.eval({3.0, 0.0}).real() ==
        doctest::Approx(0.3819660112501051).epsilon(1e-10));
  for (const cplx z : {cplx{1.0, 2.0}, cplx{-0.5, 0.25}, cplx{0.0, 10.0}}) {
    const cplx want = 2.0 - 1.0 / r.eval(z);
    CHECK(std::abs(rt.eval(z) - want) < 1e-9);
  }
}

TEST_CASE("inverse transform recovers the semicircle") {
  const auto pm = semicircle_measure();
  const StieltjesFunction r(pm);
  const TauResult tau = tau_transform_measure(r);
  const StieltjesFunction rt(tau.measure);
  const TauResult back = tau_inverse_measure(rt);

  CHECK(back.zeros.empty());
  CHECK(back.measure.atoms().empty());
  for (double x : {0.0, 1.2, -1.2}) {
    const double want = std::sqrt(4.0 - x * x) / (2.0 * kPi);
    CHECK(back.measure.density(x) == doctest::Approx(want).epsilon(1e-8));
  }
  const auto& band = back.measure.prepared_bands()[0];
  CHECK(band.exp_left == 0.5);
  CHECK(band.exp_right == 0.5);
  CHECK(band.zero_theta0);
  CHECK(band.zero_thetapi);

  const StieltjesFunction rb(back.measure);
  for (const cplx z : {cplx{1.0, 1.0}, cplx{3.0, 0.0}, cplx{-2.5, 0.0}}) {
    CHECK(std::abs(rb.eval(z) - r.eval(z)) < 1e-9);
  }
}

TEST_CASE("transform of a measure with a point mass") {
  const auto pm = PreparedMeasure::prepare(
      build_measure(one_band(), WeightSpec::semicircle(), {{3.0, 0.5}}));
  const StieltjesFunction r(pm);
  const TauResult tau = tau_transform_measure(r);

  // Closed form r(x) = 1 + (-x + sqrt(x^2-4))/2 + 0.5/(3-x) has exactly one
  // zero, to the right of the pole at 3.
  const auto r_cf = [](double x) {
    return 1.0 + 0.5 * (-x + std::sqrt(x * x - 4.0)) + 0.5 / (3.0 - x);
  };
  double lo = 3.0001, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (r_cf(mid) < 0.0 ? lo : hi) = mid;
  }
  const double xstar = 0.5 * (lo + hi);

  REQUIRE(tau.zeros.size() == 1);
  CHECK(tau.zeros[0] == doctest::Approx(xstar).epsilon(1e-10));
  CHECK(tau.boundary_zeros.empty());
  REQUIRE(tau.measure.atoms().size() == 1);
  const double slope =
      0.5 * (-1.0 + xstar / std::sqrt(xstar * xstar - 4.0)) +
      0.5 / ((3.0 - xstar) * (3.0 - xstar));
  CHECK(tau.measure.atoms()[0].mass ==
        doctest::Approx(1.0 / slope).epsilon(1e-8));
  CHECK(tau.measure.total_mass() == doctest::Approx(1.5).epsilon(1e-8));

  const StieltjesFunction rt(tau.measure);
  const TauResult back = tau_inverse_measure(rt);
  REQUIRE(back.measure.atoms().size() == 1);
  CHECK(back.measure.atoms()[0].x == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(back.measure.atoms()[0].mass == doctest::Approx(0.5).epsilon(1e-7));
  for (double x : {0.0, 1.5, -1.5}) {
    const double want = std::sqrt(4.0 - x * x) / (2.0 * kPi);
    CHECK(back.measure.density(x) == doctest::Approx(want).epsilon(1e-7));
  }
}

TEST_CASE("square-root ratio measure transforms pole to zero") {
  const auto pm = PreparedMeasure::prepare(make_sigma0(one_band(), {3.0}, {4.0}));
  const StieltjesFunction r(pm);
  const TauResult tau = tau_transform_measure(r);

  REQUIRE(tau.zeros.size() == 1);
  CHECK(tau.zeros[0] == doctest::Approx(4.0).epsilon(1e-10));
  REQUIRE(tau.boundary_zeros.size() == 1);
  CHECK(tau.boundary_zeros[0] == doctest::Approx(2.0).epsilon(1e-9));
  REQUIRE(tau.measure.atoms().size() == 1);
  // Residue calculus: r'(4) = 1/sqrt(3), so the new mass is sqrt(3).
  CHECK(tau.measure.atoms()[0].mass ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));

  // New density (1/pi) |(x-3)/(x-4)| sqrt((2+x)/(2-x)).
  CHECK(tau.measure.density(0.0) ==
        doctest::Approx(0.75 / kPi).epsilon(1e-9));
  const auto& band = tau.measure.prepared_bands()[0];
  CHECK(band.exp_left == 0.5);
  CHECK(band.exp_right == -0.5);

  const StieltjesFunction rt(tau.measure);
  for (const cplx z : {cplx{1.0, 1.5}, cplx{5.0, 0.0}}) {
    CHECK(std::abs(rt.eval(z) - (2.0 - 1.0 / r.eval(z))) < 1e-9);
  }

  const TauResult back = tau_inverse_measure(rt);
  REQUIRE(back.measure.atoms().size() == 1);
  CHECK(back.measure.atoms()[0].x == doctest::Approx(3.0).epsilon(1e-8));
  CHECK(back.measure.atoms()[0].mass ==
        doctest::Approx(0.4472135954999579).epsilon(1e-7));
  CHECK(back.measure.density(0.0) ==
        doctest::Approx(4.0 / (3.0 * kPi)).epsilon(1e-7));
}

TEST_CASE("exponential representation of an atomic measure") {
  const auto pm = PreparedMeasure::prepare(
      build_measure(IntervalSet(), WeightSpec::none_weight(), {{0.0, 1.0}}));
  const StieltjesFunction r(pm);
  const PhaseFunction f = exp_representation(r);
  REQUIRE(f.pi_intervals.size() == 1);
  CHECK(f.pi_intervals[0].left == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(f.pi_intervals[0].right == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(f.bands.empty());

  CHECK(f.eval(0.5) == doctest::Approx(kPi));
  CHECK(f.eval(1.5) == 0.0);
  CHECK(f.eval(-0.5) == 0.0);

  CHECK(std::abs(exp_eval(f, {2.0, 0.0}) - cplx{0.5, 0.0}) < 1e-12);
  CHECK(std::abs(exp_eval(f, {-1.0, 0.0}) - cplx{2.0, 0.0}) < 1e-12);
  for (const cplx z : {cplx{1.0, 1.0}, cplx{-0.3, 2.0}, cplx{0.2, -1.5}}) {
    CHECK(std::abs(exp_eval(f, z) - r.eval(z)) < 1e-12);
  }
}

TEST_CASE("exponential representation of the semicircle") {
  const auto pm = semicircle_measure();
  const StieltjesFunction r(pm);
  const PhaseFunction f = exp_representation(r);
  CHECK(f.pi_intervals.empty());
  REQUIRE(f.bands.size() == 1);

  // arg r(x+i0) = atan2(pi w, 1 - x/2).
  for (double x : {0.0, 1.0, -1.7}) {
    const double arg =
        std::atan2(std::sqrt(4.0 - x * x) / 2.0, 1.0 - 0.5 * x);
    CHECK(f.eval(x) == doctest::Approx(arg).epsilon(1e-5));
  }
  CHECK(f.eval(3.0) == 0.0);

  UniformSampler rng(331u);
  for (int t = 0; t < 20; ++t) {
    const double sgn = (rng.next() < 0.5) ? -1.0 : 1.0;
    const cplx z{rng.next(-4.0, 4.0), sgn * rng.next(0.5, 3.0)};
    CHECK(std::abs(exp_eval(f, z) - r.eval(z)) < 2e-5);
  }
}

TEST_CASE("exponential representation with a pole-zero pi interval") {
  const auto pm = PreparedMeasure::prepare(
      build_measure(one_band(), WeightSpec::semicircle(), {{3.0, 0.5}}));
  const StieltjesFunction r(pm);
  const TauResult tau = tau_transform_measure(r);
  REQUIRE(tau.zeros.size() == 1);
  const double xstar = tau.zeros[0];

  const PhaseFunction f = exp_representation(r);
  REQUIRE(f.pi_intervals.size() == 1);
  CHECK(f.pi_intervals[0].left == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.pi_intervals[0].right == doctest::Approx(xstar).epsilon(1e-10));
  CHECK(f.eval(0.5 * (3.0 + xstar)) == doctest::Approx(kPi));
  CHECK(f.eval(xstar + 0.5) == 0.0);

  UniformSampler rng(577u);
  for (int t = 0; t < 12; ++t) {
    const cplx z{rng.next(-4.0, 5.0), rng.next(0.5, 3.0)};
    CHECK(std::abs(exp_eval(f, z) - r.eval(z)) < 2e-5);
  }
}
