#include "finitegap/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "finitegap/cosine_series.hpp"
#include "finitegap/errors.hpp"

namespace finitegap {

using cplx = std::complex<double>;

std::vector<double> widom_factors(const JacobiCoefficients& c, double cap) {
  if (!(cap > 0.0)) {
    throw ValidationError("widom_factors: capacity must be positive");
  }
  if (c.p.empty()) {
    throw ValidationError("widom_factors: empty coefficient data");
  }
  const double logcap = std::log(cap);
  std::vector<double> out;
  out.reserve(c.p.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < c.p.size(); ++n) {
    if (!(c.p[n] > 0.0)) {
      throw ValidationError("widom_factors: off-diagonal entries must be positive");
    }
    acc += std::log(c.p[n]);
    out.push_back(std::exp(acc - static_cast<double>(n) * logcap));
  }
  return out;
}

FrequencyVector frequency_vector(const EquilibriumData& eq) {
  FrequencyVector omega;
  const auto& mu = eq.band_measures;
  if (mu.size() <= 1) return omega;
  omega.omegas.reserve(mu.size() - 1);
  double suffix = 0.0;
  for (std::size_t i = mu.size(); i-- > 1;) {
    suffix += mu[i];
    omega.omegas.push_back(suffix - std::floor(suffix));
  }
  std::reverse(omega.omegas.begin(), omega.omegas.end());
  return omega;
}

double torus_distance(const FrequencyVector& omega, int period) {
  double dist = 0.0;
  for (double w : omega.omegas) {
    const double x = period * w;
    dist = std::max(dist, std::abs(x - std::nearbyint(x)));
  }
  return dist;
}

AlmostPeriodDiagnostics almost_period_scan(const JacobiCoefficients& c,
                                           const FrequencyVector& omega,
                                           int burn_in, int t_max) {
  const int n = static_cast<int>(c.q.size());
  if (burn_in < 0 || t_max < 1) {
    throw ValidationError("almost_period_scan: burn_in >= 0 and t_max >= 1 required");
  }
  if (n < burn_in + t_max + 10) {
    throw ValidationError("almost_period_scan: not enough coefficients for the window");
  }
  AlmostPeriodDiagnostics diag;
  diag.burn_in = burn_in;
  diag.candidates.reserve(static_cast<std::size_t>(t_max));
  for (int t = 1; t <= t_max; ++t) {
    PeriodCandidate cand;
    cand.period = t;
    cand.torus_distance = torus_distance(omega, t);
    const auto tu = static_cast<std::size_t>(t);
    for (std::size_t m = static_cast<std::size_t>(burn_in); m + tu < c.p.size();
         ++m) {
      cand.sup_deviation_p =
          std::max(cand.sup_deviation_p, std::abs(c.p[m + tu] - c.p[m]));
    }
    for (std::size_t m = static_cast<std::size_t>(burn_in); m + tu < c.q.size();
         ++m) {
      cand.sup_deviation_q =
          std::max(cand.sup_deviation_q, std::abs(c.q[m + tu] - c.q[m]));
    }
    diag.candidates.push_back(cand);
  }
  return diag;
}

namespace {

// Splits log(2 pi f) into endpoint logarithms and a smooth even remainder and
// fits the remainder; the outer function follows from its cosine coefficients.
struct OuterData {
  double exp_right = 0.0;  // (1 + 2e) at theta = 0
  double exp_left = 0.0;   // (1 + 2e) at theta = pi
  CosineSeries smooth;
};

constexpr double kPi = 3.14159265358979323846;

OuterData outer_data(const PreparedMeasure& measure) {
  if (measure.prepared_bands().size() != 1) {
    throw ValidationError("outer function: measure must live on a single interval");
  }
  const auto& band = measure.prepared_bands().front();
  OuterData data;
  data.exp_right = 1.0 + 2.0 * band.exp_right;
  data.exp_left = 1.0 + 2.0 * band.exp_left;

  const int order = std::max(64, static_cast<int>(band.f.size()));
  for (int j = 0; j < order; ++j) {
    const double theta = (j + 0.5) * kPi / order;
    if (!(band.f.eval(theta) > 0.0)) {
      throw NumericalError("outer function: density sample is not positive");
    }
  }
  data.smooth = CosineSeries::fit(
      [&](double theta) {
        return std::log(2.0 * kPi * band.f.eval(theta)) -
               data.exp_right * std::log(2.0 * std::sin(0.5 * theta)) -
               data.exp_left * std::log(2.0 * std::cos(0.5 * theta));
      },
      order);
  return data;
}

cplx outer_eval(const OuterData& data, cplx zeta) {
  if (!(std::abs(zeta) < 1.0)) {
    throw ValidationError("outer function: point must lie in the open unit disk");
  }
  // Herglotz transform of the smooth part: c_0/2 + sum c_k zeta^k / 2.
  cplx acc = 0.5 * data.smooth.a[0];
  cplx power{1.0, 0.0};
  for (std::size_t k = 1; k < data.smooth.a.size(); ++k) {
    power *= zeta;
    acc += 0.5 * data.smooth.a[k] * power;
  }
  return std::pow(1.0 - zeta, 0.5 * data.exp_right) *
         std::pow(1.0 + zeta, 0.5 * data.exp_left) * std::exp(acc);
}

}  // namespace

cplx szego_outer(const PreparedMeasure& measure, cplx zeta) {
  return outer_eval(outer_data(measure), zeta);
}

SzegoCheckResult szego_reference_check(const JacobiCoefficients& c,
                                       const PreparedMeasure& measure, int n,
                                       const std::vector<cplx>& zetas) {
  if (measure.prepared_bands().size() != 1) {
    throw ValidationError("szego_reference_check: multi-band input is unsupported");
  }
  if (!measure.atoms().empty()) {
    throw ValidationError("szego_reference_check: point masses are unsupported");
  }
  if (n < 1) throw ValidationError("szego_reference_check: n >= 1 required");
  const auto& band = measure.prepared_bands().front();
  const OuterData data = outer_data(measure);

  SzegoCheckResult result;
  result.points.reserve(zetas.size());
  for (const cplx zeta : zetas) {
    if (!(std::abs(zeta) > 0.0) || !(std::abs(zeta) < 1.0)) {
      throw ValidationError(
          "szego_reference_check: points must lie in the punctured unit disk");
    }
    const cplx z = band.m + 0.5 * band.h * (zeta + 1.0 / zeta);
    const cplx pn = eval_polys(c, z, n).back();
    SzegoCheckPoint point;
    point.zeta = zeta;
    point.observed = pn * std::pow(zeta, n) * outer_eval(data, zeta);
    point.error = std::abs(point.observed - 1.0);
    result.points.push_back(point);
  }

  const double cap = 0.5 * band.h;
  const double w_last = widom_factors(c, cap).back();
  result.product_error = std::abs(w_last - outer_eval(data, 0.0).real());
  return result;
}

double nth_root_check(const JacobiCoefficients& c, const EquilibriumData& eq,
                      cplx z, int n) {
  if (n < 50) throw ValidationError("nth_root_check: n >= 50 required");
  const cplx pn = eval_polys(c, z, n).back();
  return std::abs(std::log(std::abs(pn)) / n - green_infinity(eq, z));
}

double ratio_along_almost_periods(const JacobiCoefficients& c,
                                  const EquilibriumData& eq, cplx z,
                                  int burn_in, int period) {
  if (burn_in < 0 || period < 1) {
    throw ValidationError(
        "ratio_along_almost_periods: burn_in >= 0 and period >= 1 required");
  }
  const int n = static_cast<int>(c.q.size());
  if (burn_in + period > n) {
    throw ValidationError("ratio_along_almost_periods: window exceeds the data");
  }
  const double target = period * green_infinity(eq, z);
  const auto vals = eval_polys(c, z, n);
  double sup = 0.0;
  for (std::size_t m = static_cast<std::size_t>(burn_in);
       m + static_cast<std::size_t>(period) < vals.size(); ++m) {
    const double step = std::log(std::abs(vals[m + static_cast<std::size_t>(
                                                      period)])) -
                        std::log(std::abs(vals[m]));
    sup = std::max(sup, std::abs(step - target));
  }
  return sup;
}

PointMassStability point_mass_stability(const SpectralMeasure& base, double x,
                                        double m, int n_max, int burn_in) {
  if (m < 0.0) {
    throw ValidationError("point_mass_stability: mass must be nonnegative");
  }
  if (base.bands.distance(x) == 0.0) {
    throw ValidationError("point_mass_stability: the point sits on the support");
  }
  if (burn_in < 0 || burn_in >= n_max) {
    throw ValidationError("point_mass_stability: need 0 <= burn_in < n_max");
  }
  SpectralMeasure bumped = base;
  if (m > 0.0) {
    bumped = build_measure(base.bands, base.weight, [&] {
      auto masses = base.masses;
      masses.push_back({x, m});
      return masses;
    }());
  }
  const auto run_base =
      coefficients_for_measure(PreparedMeasure::prepare(base), n_max);
  const auto run_bump =
      coefficients_for_measure(PreparedMeasure::prepare(bumped), n_max);

  PointMassStability out;
  const auto& cb = run_base.coefficients;
  const auto& cm = run_bump.coefficients;
  for (std::size_t k = static_cast<std::size_t>(burn_in); k < cb.p.size(); ++k) {
    out.sup_deviation_p = std::max(out.sup_deviation_p, std::abs(cb.p[k] - cm.p[k]));
  }
  for (std::size_t k = static_cast<std::size_t>(burn_in); k < cb.q.size(); ++k) {
    out.sup_deviation_q = std::max(out.sup_deviation_q, std::abs(cb.q[k] - cm.q[k]));
  }
  return out;
}

AsymptoticsReport build_report(const PreparedMeasure& measure,
                               const EquilibriumData& eq,
                               const JacobiCoefficients& c, int burn_in,
                               int t_max, const std::vector<cplx>& zetas) {
  AsymptoticsReport report;
  report.widom_factors = widom_factors(c, std::exp(eq.log_capacity));
  report.frequency = frequency_vector(eq);

  const int n = static_cast<int>(c.q.size());
  const int b = burn_in < 0 ? n / 2 : burn_in;
  const int t = std::min(t_max, n - b - 10);
  if (t >= 1) {
    report.diagnostics = almost_period_scan(c, report.frequency, b, t);
  } else {
    report.notes.push_back("almost-period scan skipped: too few coefficients");
  }

  if (measure.prepared_bands().size() == 1 && measure.atoms().empty()) {
    try {
      const auto res =
          szego_reference_check(c, measure, std::min(30, n), zetas);
      report.szego_checks = res.points;
      report.szego_product_error = res.product_error;
    } catch (const Error& err) {
      report.notes.push_back(std::string("szego reference skipped: ") + err.what());
    }
  } else {
    report.notes.push_back(
        "szego reference skipped: multi-band or atomic measure");
  }
  return report;
}

}  // namespace finitegap
