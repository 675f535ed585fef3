#include "finitegap/stieltjes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "finitegap/errors.hpp"
#include "finitegap/quadrature.hpp"
#include "potential_detail.hpp"

namespace finitegap {

using cplx = std::complex<double>;

StieltjesFunction::StieltjesFunction(PreparedMeasure measure)
    : measure_(std::move(measure)) {}

cplx StieltjesFunction::cauchy(cplx z) const {
  cplx sum = 0.0;
  for (const auto& p : measure_.atoms()) {
    sum += p.mass / (p.x - z);
  }
  for (const auto& pb : measure_.prepared_bands()) {
    sum += band_cauchy(pb.f, pb.m, pb.h, z, pb.zero_thetapi, pb.zero_theta0);
  }
  return sum;
}

cplx StieltjesFunction::eval(cplx z) const {
  if (z.imag() == 0.0) {
    const double x = z.real();
    if (!measure_.bands().empty() && measure_.bands().distance(x) == 0.0) {
      throw ValidationError("stieltjes: evaluation on the bands");
    }
    for (const auto& p : measure_.atoms()) {
      if (x == p.x) {
        throw ValidationError("stieltjes: evaluation at a point mass");
      }
    }
  }
  return 1.0 + cauchy(z);
}

cplx StieltjesFunction::derivative(cplx z) const {
  cplx sum = 0.0;
  for (const auto& p : measure_.atoms()) {
    const cplx d = p.x - z;
    sum += p.mass / (d * d);
  }
  for (const auto& pb : measure_.prepared_bands()) {
    sum += band_cauchy_deriv(pb.f, pb.m, pb.h, z);
  }
  return sum;
}

double StieltjesFunction::re_boundary(double x) const {
  const auto& bands = measure_.bands().bands();
  double sum = 1.0;
  for (const auto& p : measure_.atoms()) {
    sum += p.mass / (p.x - x);
  }
  bool found = false;
  for (std::size_t j = 0; j < bands.size(); ++j) {
    const auto& pb = measure_.prepared_bands()[j];
    if (x > bands[j].left && x < bands[j].right) {
      sum += band_cauchy_pv(pb.f, pb.m, pb.h, x);
      found = true;
    } else {
      sum += band_cauchy(pb.f, pb.m, pb.h, {x, 0.0}, pb.zero_thetapi,
                         pb.zero_theta0)
                 .real();
    }
  }
  if (!found) {
    throw ValidationError("stieltjes: boundary value off the bands");
  }
  return sum;
}

double StieltjesFunction::density(double x) const { return measure_.density(x); }

namespace {

// ---------------------------------------------------------------------------
// Zero scan shared by the transforms and the exponential representation.
// rho(x) = r(x) - shift is strictly increasing on every component of the
// complement of supp sigma, so each open interval between consecutive
// obstacles (atoms / bands) carries at most one zero, bracketed by limit
// signs at the interval ends.
// ---------------------------------------------------------------------------

struct Obstacle {
  double left, right;  // equal for atoms
  bool atom;
};

struct NegativeInterval {
  double left, right;
};

struct ZeroScan {
  std::vector<double> zeros;
  std::vector<double> boundary_zeros;       // zeros sitting at band edges
  std::vector<NegativeInterval> negative;   // where rho < 0 off the bands
};

double rho_eval(const StieltjesFunction& r, double x, double shift) {
  return r.eval({x, 0.0}).real() - shift;
}

ZeroScan scan_zeros(const StieltjesFunction& r, double shift) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<Obstacle> obs;
  for (const auto& b : r.measure().bands().bands()) {
    obs.push_back({b.left, b.right, false});
  }
  for (const auto& p : r.measure().atoms()) {
    obs.push_back({p.x, p.x, true});
  }
  std::sort(obs.begin(), obs.end(),
            [](const Obstacle& a, const Obstacle& b) { return a.left < b.left; });
  ZeroScan out;
  if (obs.empty()) return out;

  const double asym = 1.0 - shift;  // rho at +-infinity
  const double probe_fracs[] = {1e-3, 1e-6, 1e-9, 1e-12};

  const int n_intervals = static_cast<int>(obs.size()) + 1;
  for (int i = 0; i < n_intervals; ++i) {
    const bool left_inf = (i == 0);
    const bool right_inf = (i == n_intervals - 1);
    const double A = left_inf ? -inf : obs[static_cast<std::size_t>(i - 1)].right;
    const double B = right_inf ? inf : obs[static_cast<std::size_t>(i)].left;
    if (!left_inf && !right_inf && !(B > A)) continue;  // touching obstacles
    const double len = (left_inf || right_inf)
                           ? std::max(1.0, std::abs(left_inf ? B : A))
                           : (B - A);

    // Left limit sign and a bracket point with rho < 0 when negative.
    int sign_left;
    std::optional<double> lo;
    if (left_inf) {
      sign_left = (asym > 0.0) ? 1 : -1;
      if (sign_left < 0) {
        double step = len;
        double x = B - step;
        for (int k = 0; k < 80 && !(rho_eval(r, x, shift) < 0.0); ++k) {
          step *= 2.0;
          x = B - step;
        }
        if (!(rho_eval(r, x, shift) < 0.0)) {
          throw NumericalError("tau: failed to bracket a left-outer zero");
        }
        lo = x;
      }
    } else if (obs[static_cast<std::size_t>(i - 1)].atom) {
      sign_left = -1;
      for (double frac : probe_fracs) {
        const double x = A + frac * len;
        if (rho_eval(r, x, shift) < 0.0) {
          lo = x;
          break;
        }
      }
      if (!lo) {
        throw NumericalError("tau: failed to bracket below a point mass");
      }
    } else {
      // Band edge: probe toward the edge; rho decreases monotonically.
      double v_small = 0.0, v_large = 0.0;
      for (double frac : probe_fracs) {
        const double x = A + frac * len;
        const double v = rho_eval(r, x, shift);
        if (frac == probe_fracs[0]) v_large = v;
        v_small = v;
        if (v < 0.0) lo = x;
      }
      if (lo) {
        sign_left = -1;
        // Widest negative probe gives the most room for bisection.
        for (double frac : probe_fracs) {
          const double x = A + frac * len;
          if (rho_eval(r, x, shift) < 0.0) {
            lo = x;
            break;
          }
        }
      } else {
        sign_left = 1;
        if (v_small < 1e-4 * std::max(1.0, std::abs(v_large))) {
          out.boundary_zeros.push_back(A);
        }
      }
    }

    // Right limit sign and a bracket point with rho > 0 when positive.
    int sign_right;
    std::optional<double> hi;
    if (right_inf) {
      sign_right = (asym > 0.0) ? 1 : -1;
      if (sign_right > 0) {
        double step = len;
        double x = A + step;
        for (int k = 0; k < 80 && !(rho_eval(r, x, shift) > 0.0); ++k) {
          step *= 2.0;
          x = A + step;
        }
        if (!(rho_eval(r, x, shift) > 0.0)) {
          throw NumericalError("tau: failed to bracket a right-outer zero");
        }
        hi = x;
      }
    } else if (obs[static_cast<std::size_t>(i)].atom) {
      sign_right = 1;
      for (double frac : probe_fracs) {
        const double x = B - frac * len;
        if (rho_eval(r, x, shift) > 0.0) {
          hi = x;
          break;
        }
      }
      if (!hi) {
        throw NumericalError("tau: failed to bracket above a point mass");
      }
    } else {
      double v_small = 0.0, v_large = 0.0;
      for (double frac : probe_fracs) {
        const double x = B - frac * len;
        const double v = rho_eval(r, x, shift);
        if (frac == probe_fracs[0]) v_large = v;
        v_small = v;
        if (v > 0.0) hi = x;
      }
      if (hi) {
        sign_right = 1;
        for (double frac : probe_fracs) {
          const double x = B - frac * len;
          if (rho_eval(r, x, shift) > 0.0) {
            hi = x;
            break;
          }
        }
      } else {
        sign_right = -1;
        if (-v_small < 1e-4 * std::max(1.0, std::abs(v_large))) {
          out.boundary_zeros.push_back(B);
        }
      }
    }

    if (sign_left < 0 && sign_right > 0) {
      double a = *lo, b = *hi;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b) break;
        if (rho_eval(r, mid, shift) < 0.0) {
          a = mid;
        } else {
          b = mid;
        }
      }
      const double zero = 0.5 * (a + b);
      out.zeros.push_back(zero);
      if (!left_inf) out.negative.push_back({A, zero});
    } else if (sign_left < 0 && sign_right < 0 && !left_inf && !right_inf) {
      out.negative.push_back({A, B});
    }
  }
  return out;
}

// Exponent bookkeeping across a transform: inverse-square-root edges become
// square-root edges; square-root edges flip back only at boundary zeros.
double transformed_exponent(double e, bool boundary_zero_here) {
  if (e == -0.5) return 0.5;
  if (e == 0.5) return boundary_zero_here ? -0.5 : 0.5;
  return 0.0;
}

TauResult transform_with_shift(const StieltjesFunction& r, double shift) {
  const ZeroScan scan = scan_zeros(r, shift);
  std::vector<PointMass> atoms;
  atoms.reserve(scan.zeros.size());
  for (double x0 : scan.zeros) {
    const double slope = r.derivative({x0, 0.0}).real();
    if (!(slope > 0.0)) {
      throw NumericalError("tau: nonpositive slope at a transform zero");
    }
    atoms.push_back({x0, 1.0 / slope});
  }

  const IntervalSet& bands = r.measure().bands();
  const double scale = bands.empty() ? 1.0 : bands.diameter();
  std::vector<PreparedBand> out_bands;
  for (std::size_t j = 0; j < r.measure().prepared_bands().size(); ++j) {
    const auto& pb = r.measure().prepared_bands()[j];
    PreparedBand nb;
    nb.m = pb.m;
    nb.h = pb.h;
    nb.f = CosineSeries::fit(
        [&](double theta) {
          const double f = pb.f.eval(theta);
          const double x = pb.m + pb.h * std::cos(theta);
          const double w = f / (pb.h * std::sin(theta));
          const double re = r.re_boundary(x) - shift;
          const double pi = std::acos(-1.0);
          return f / (re * re + pi * pi * w * w);
        },
        static_cast<int>(pb.f.size()));
    const auto near_boundary_zero = [&](double edge) {
      for (double b : scan.boundary_zeros) {
        if (std::abs(b - edge) <= 1e-9 * std::max(1.0, scale)) return true;
      }
      return false;
    };
    nb.exp_left =
        transformed_exponent(pb.exp_left, near_boundary_zero(pb.m - pb.h));
    nb.exp_right =
        transformed_exponent(pb.exp_right, near_boundary_zero(pb.m + pb.h));
    double at0 = 0.0, atpi = 0.0, ref = 0.0;
    for (std::size_t k = 0; k < nb.f.a.size(); ++k) {
      at0 += nb.f.a[k];
      atpi += (k % 2 == 0) ? nb.f.a[k] : -nb.f.a[k];
      ref += std::abs(nb.f.a[k]);
    }
    nb.zero_theta0 = std::abs(at0) < 1e-8 * (ref + 1e-300);
    nb.zero_thetapi = std::abs(atpi) < 1e-8 * (ref + 1e-300);
    out_bands.push_back(std::move(nb));
  }

  TauResult result{
      PreparedMeasure::from_bands(bands, std::move(out_bands), std::move(atoms)),
      scan.zeros,
      scan.boundary_zeros};
  return result;
}

}  // namespace

TauResult tau_transform_measure(const StieltjesFunction& r) {
  return transform_with_shift(r, 0.0);
}

TauResult tau_inverse_measure(const StieltjesFunction& r_tau) {
  return transform_with_shift(r_tau, 2.0);
}

SpectralMeasure make_sigma0(const IntervalSet& bands,
                            const std::vector<double>& poles,
                            const std::vector<double>& zeros) {
  // Validate the geometry first (interlacing, placement).
  build_measure(bands, WeightSpec::sigma0(poles, zeros), {});

  std::vector<PointMass> atoms;
  for (std::size_t l = 0; l < poles.size(); ++l) {
    const double p = poles[l];
    double logq = 0.0;
    for (const auto& b : bands.bands()) {
      logq += 0.5 * (std::log(std::abs(p - b.right)) -
                     std::log(std::abs(p - b.left)));
    }
    double ratio = 1.0;
    for (std::size_t k = 0; k < poles.size(); ++k) {
      ratio *= (p - zeros[k]);
      if (k != l) ratio /= (p - poles[k]);
    }
    atoms.push_back({p, -ratio * std::exp(logq)});
  }
  return build_measure(bands, WeightSpec::sigma0(poles, zeros),
                       std::move(atoms));
}

double mass_balance_residual(const StieltjesFunction& r) {
  double scale = 1.0;
  const auto& bands = r.measure().bands();
  if (!bands.empty()) {
    scale = std::max({scale, std::abs(bands.left()), std::abs(bands.right())});
  }
  for (const auto& p : r.measure().atoms()) {
    scale = std::max(scale, std::abs(p.x));
  }
  const cplx z{0.0, 1e5 * scale};
  const double tail_mass = (z * (1.0 - r.eval(z))).real();
  double lhs = r.measure().ac_mass();
  for (const auto& p : r.measure().atoms()) lhs += p.mass;
  return std::abs(lhs - tail_mass);
}

double PhaseFunction::eval(double x) const {
  const double pi = std::acos(-1.0);
  for (const auto& iv : pi_intervals) {
    if (x > iv.left && x < iv.right) return pi;
  }
  for (const auto& bp : bands) {
    if (x >= bp.m - bp.h && x <= bp.m + bp.h) {
      const double c = std::clamp((x - bp.m) / bp.h, -1.0, 1.0);
      const double t = std::acos(c);
      if (t <= bp.theta.front()) return bp.arg.front();
      if (t >= bp.theta.back()) return bp.arg.back();
      const auto it = std::upper_bound(bp.theta.begin(), bp.theta.end(), t);
      const std::size_t i = static_cast<std::size_t>(it - bp.theta.begin());
      const double u =
          (t - bp.theta[i - 1]) / (bp.theta[i] - bp.theta[i - 1]);
      return (1.0 - u) * bp.arg[i - 1] + u * bp.arg[i];
    }
  }
  return 0.0;
}

PhaseFunction exp_representation(const StieltjesFunction& r, int order) {
  const ZeroScan scan = scan_zeros(r, 0.0);
  PhaseFunction f;
  for (const auto& iv : scan.negative) {
    f.pi_intervals.push_back({iv.left, iv.right});
  }
  const double pi = std::acos(-1.0);
  const GaussRule th = theta_rule(order);
  for (const auto& pb : r.measure().prepared_bands()) {
    PhaseFunction::BandPhase bp;
    bp.m = pb.m;
    bp.h = pb.h;
    for (std::size_t i = 0; i < th.x.size(); ++i) {
      const double theta = th.x[i];
      const double x = pb.m + pb.h * std::cos(theta);
      const double w = pb.f.eval(theta) / (pb.h * std::sin(theta));
      const double re = r.re_boundary(x);
      bp.theta.push_back(theta);
      bp.quad_w.push_back(th.w[i]);
      bp.arg.push_back(std::atan2(pi * w, re));
    }
    f.bands.push_back(std::move(bp));
  }
  return f;
}

cplx exp_eval(const PhaseFunction& f, cplx z) {
  const double pi = std::acos(-1.0);
  cplx acc = 0.0;
  for (const auto& iv : f.pi_intervals) {
    acc += pi * (std::log(cplx(iv.right) - z) - std::log(cplx(iv.left) - z));
  }
  for (const auto& bp : f.bands) {
    for (std::size_t i = 0; i < bp.theta.size(); ++i) {
      const double x = bp.m + bp.h * std::cos(bp.theta[i]);
      acc += bp.quad_w[i] * bp.arg[i] * bp.h * std::sin(bp.theta[i]) / (x - z);
    }
  }
  return std::exp(acc / pi);
}

double szego_integral(const PreparedMeasure& measure,
                      const EquilibriumData& eq) {
  const auto& mb = measure.bands().bands();
  const auto& eb = eq.set.bands();
  if (mb.size() != eb.size()) {
    throw ValidationError("szego: measure and equilibrium bands differ");
  }
  const double tol = 1e-10 * std::max(1.0, eq.set.diameter());
  for (std::size_t j = 0; j < mb.size(); ++j) {
    if (std::abs(mb[j].left - eb[j].left) > tol ||
        std::abs(mb[j].right - eb[j].right) > tol) {
      throw ValidationError("szego: measure and equilibrium bands differ");
    }
  }

  const double minus_inf = -std::numeric_limits<double>::infinity();
  const double pi = std::acos(-1.0);
  const GaussRule th = theta_rule(200);
  double total = 0.0;
  for (std::size_t j = 0; j < mb.size(); ++j) {
    const auto& pb = measure.prepared_bands()[j];
    const auto& feq = eq.band_density[j];
    const double eL = pb.exp_left, eR = pb.exp_right;
    const double h = pb.h;
    if (eL == 0.0 && eR == 0.0) {
      for (std::size_t i = 0; i < th.x.size(); ++i) {
        const double theta = th.x[i];
        const double w = pb.f.eval(theta) / (h * std::sin(theta));
        if (!(w > 0.0)) return minus_inf;
        total += th.w[i] * feq.eval(theta) * std::log(w);
      }
      continue;
    }
    // Split log w into a smooth factor plus exact endpoint-power integrals.
    for (std::size_t i = 0; i < th.x.size(); ++i) {
      const double theta = th.x[i];
      const double fv = pb.f.eval(theta);
      if (!(fv > 0.0)) return minus_inf;
      const double s = std::sin(0.5 * theta);
      const double c = std::cos(0.5 * theta);
      const double log_sm = std::log(fv) -
                            (1.0 + eL + eR) * (std::log(h) + std::log(2.0)) -
                            (1.0 + 2.0 * eR) * std::log(s) -
                            (1.0 + 2.0 * eL) * std::log(c);
      total += th.w[i] * feq.eval(theta) * log_sm;
    }
    const double a0 = feq.a.empty() ? 0.0 : feq.a[0];
    double sum_k = 0.0, sum_alt = 0.0;
    for (std::size_t k = 1; k < feq.a.size(); ++k) {
      const double term = feq.a[k] / static_cast<double>(k);
      sum_k += term;
      sum_alt += (k % 2 == 1) ? term : -term;
    }
    total += eL * (pi * a0 * (std::log(h) - std::log(2.0)) + pi * sum_alt);
    total += eR * (pi * a0 * (std::log(h) - std::log(2.0)) - pi * sum_k);
  }
  return total;
}

}  // namespace finitegap
