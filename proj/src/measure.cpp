#include "finitegap/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "finitegap/equilibrium.hpp"
#include "finitegap/errors.hpp"
#include "potential_detail.hpp"

namespace finitegap {

namespace {

bool valid_exponent(double e) { return e == -0.5 || e == 0.5 || e == 0.0; }

double support_scale(const IntervalSet& bands,
                     const std::vector<PointMass>& masses) {
  double scale = 1.0;
  if (!bands.empty()) scale = std::max(scale, bands.diameter());
  for (const auto& p : masses) scale = std::max(scale, std::abs(p.x));
  return scale;
}

// Piecewise-linear sample interpolation with clamped ends.
double interp_table(const std::vector<double>& xs, const std::vector<double>& ws,
                    double x) {
  if (xs.empty()) return 0.0;
  if (x <= xs.front()) return ws.front();
  if (x >= xs.back()) return ws.back();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1.0 - t) * ws[i - 1] + t * ws[i];
}

}  // namespace

WeightSpec WeightSpec::semicircle() {
  WeightSpec w;
  w.kind = WeightKind::generalized_jacobi;
  w.per_band = {BandWeight{0.5, 0.5, {1.0}}};
  w.normalize_mass = 1.0;
  return w;
}

WeightSpec WeightSpec::arcsine() {
  WeightSpec w;
  w.kind = WeightKind::generalized_jacobi;
  w.per_band = {BandWeight{-0.5, -0.5, {1.0}}};
  w.normalize_mass = 1.0;
  return w;
}

WeightSpec WeightSpec::equilibrium_of_bands() {
  WeightSpec w;
  w.kind = WeightKind::equilibrium;
  return w;
}

WeightSpec WeightSpec::generalized(std::vector<BandWeight> per_band) {
  WeightSpec w;
  w.kind = WeightKind::generalized_jacobi;
  w.per_band = std::move(per_band);
  return w;
}

WeightSpec WeightSpec::sigma0(std::vector<double> poles,
                              std::vector<double> zeros) {
  WeightSpec w;
  w.kind = WeightKind::sigma0_phase;
  w.sigma0_poles = std::move(poles);
  w.sigma0_zeros = std::move(zeros);
  return w;
}

WeightSpec WeightSpec::sampled(std::vector<double> x, std::vector<double> w) {
  WeightSpec spec;
  spec.kind = WeightKind::table;
  spec.table_x = std::move(x);
  spec.table_w = std::move(w);
  return spec;
}

WeightSpec WeightSpec::none_weight() { return WeightSpec{}; }

SpectralMeasure build_measure(const IntervalSet& bands, WeightSpec weight,
                              std::vector<PointMass> masses) {
  const double scale = support_scale(bands, masses);
  const double tol = 1e-12 * scale;

  std::sort(masses.begin(), masses.end(),
            [](const PointMass& a, const PointMass& b) { return a.x < b.x; });
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i].mass > 0.0)) {
      throw ValidationError("measure: point masses must be positive");
    }
    if (!bands.empty() && bands.distance(masses[i].x) <= tol) {
      throw ValidationError("measure: mass point on support");
    }
    if (i > 0 && masses[i].x - masses[i - 1].x <= tol) {
      throw ValidationError("measure: point mass locations must be distinct");
    }
  }

  switch (weight.kind) {
    case WeightKind::none:
      break;
    case WeightKind::equilibrium:
      if (bands.empty()) {
        throw ValidationError("measure: equilibrium weight needs bands");
      }
      break;
    case WeightKind::generalized_jacobi: {
      if (bands.empty()) {
        throw ValidationError("measure: weight given but no bands");
      }
      if (weight.per_band.size() == 1 && bands.band_count() > 1) {
        weight.per_band.assign(bands.band_count(), weight.per_band.front());
      }
      if (weight.per_band.size() != bands.band_count()) {
        throw ValidationError("measure: per-band weight count mismatch");
      }
      for (const auto& bw : weight.per_band) {
        if (!valid_exponent(bw.exp_left) || !valid_exponent(bw.exp_right)) {
          throw ValidationError(
              "measure: endpoint exponents must be -1/2, 0 or 1/2");
        }
        if (bw.smooth_cheb.empty()) {
          throw ValidationError("measure: empty smooth factor");
        }
      }
      break;
    }
    case WeightKind::sigma0_phase: {
      if (bands.empty()) {
        throw ValidationError("measure: weight given but no bands");
      }
      const auto& p = weight.sigma0_poles;
      const auto& z = weight.sigma0_zeros;
      if (p.size() != z.size()) {
        throw ValidationError("measure: pole/zero count mismatch");
      }
      for (std::size_t l = 0; l < p.size(); ++l) {
        if (!(p[l] < z[l])) {
          throw ValidationError("measure: each zero must lie right of its pole");
        }
        if (l > 0 && !(p[l] > z[l - 1])) {
          throw ValidationError("measure: pole/zero pairs must alternate");
        }
        if (bands.distance(p[l]) <= tol || bands.distance(z[l]) <= tol) {
          throw ValidationError("measure: pole or zero on the bands");
        }
        // Same complement component: no band may start or end inside (p, z).
        for (const auto& b : bands.bands()) {
          if ((b.left > p[l] && b.left < z[l]) ||
              (b.right > p[l] && b.right < z[l])) {
            throw ValidationError(
                "measure: pole/zero pair straddles a band");
          }
        }
      }
      break;
    }
    case WeightKind::table:
      if (weight.table_x.size() != weight.table_w.size() ||
          weight.table_x.size() < 2) {
        throw ValidationError("measure: invalid sample table");
      }
      if (!std::is_sorted(weight.table_x.begin(), weight.table_x.end())) {
        throw ValidationError("measure: sample table must be sorted");
      }
      break;
  }

  if (weight.normalize_mass && !(*weight.normalize_mass > 0.0)) {
    throw ValidationError("measure: normalization target must be positive");
  }

  return SpectralMeasure{bands, std::move(weight), std::move(masses)};
}

PreparedMeasure PreparedMeasure::prepare(const SpectralMeasure& measure,
                                         int order) {
  PreparedMeasure out;
  out.bands_ = measure.bands;
  out.atoms_ = measure.masses;
  const auto& bands = measure.bands.bands();
  const auto& weight = measure.weight;

  if (weight.kind == WeightKind::equilibrium) {
    const EquilibriumData eq = equilibrium(measure.bands, order);
    for (std::size_t j = 0; j < bands.size(); ++j) {
      PreparedBand pb;
      pb.m = bands[j].midpoint();
      pb.h = bands[j].halfwidth();
      pb.f = eq.band_density[j];
      pb.exp_left = -0.5;
      pb.exp_right = -0.5;
      out.bands_fit_.push_back(std::move(pb));
    }
  } else if (weight.kind == WeightKind::generalized_jacobi) {
    for (std::size_t j = 0; j < bands.size(); ++j) {
      const auto& bw = weight.per_band[j];
      PreparedBand pb;
      pb.m = bands[j].midpoint();
      pb.h = bands[j].halfwidth();
      const double h = pb.h;
      const double pref =
          std::pow(h, 1.0 + bw.exp_left + bw.exp_right) *
          std::pow(2.0, 1.0 + bw.exp_left + bw.exp_right);
      // f(theta) = smooth(x) * pref * sin(theta/2)^(2 eR + 1)
      //                            * cos(theta/2)^(2 eL + 1) ... expressed
      // through the exact half-angle powers {0, 1, 2}.
      pb.f = CosineSeries::fit(
          [&](double theta) {
            const double s = std::sin(0.5 * theta);
            const double c = std::cos(0.5 * theta);
            const double x = pb.m + h * std::cos(theta);
            const double sm =
                detail::cheb_eval_band(bw.smooth_cheb, pb.m, h, x);
            if (!(sm > 0.0)) {
              throw ValidationError(
                  "measure: smooth weight factor must stay positive");
            }
            return sm * pref * std::pow(s, 2.0 * bw.exp_right + 1.0) *
                   std::pow(c, 2.0 * bw.exp_left + 1.0);
          },
          order);
      pb.exp_left = bw.exp_left;
      pb.exp_right = bw.exp_right;
      pb.zero_theta0 = bw.exp_right > 0.0;
      pb.zero_thetapi = bw.exp_left > 0.0;
      out.bands_fit_.push_back(std::move(pb));
    }
  } else if (weight.kind == WeightKind::sigma0_phase) {
    const auto& poles = weight.sigma0_poles;
    const auto& zeros = weight.sigma0_zeros;
    const double pi = std::acos(-1.0);
    for (std::size_t j = 0; j < bands.size(); ++j) {
      PreparedBand pb;
      pb.m = bands[j].midpoint();
      pb.h = bands[j].halfwidth();
      pb.f = CosineSeries::fit(
          [&](double theta) {
            const double x = pb.m + pb.h * std::cos(theta);
            double logq = 0.0;  // other-band square-root factors
            for (std::size_t k = 0; k < bands.size(); ++k) {
              if (k == j) continue;
              logq += 0.5 * (std::log(std::abs(x - bands[k].right)) -
                             std::log(std::abs(x - bands[k].left)));
            }
            double ratio = 1.0;
            for (std::size_t l = 0; l < poles.size(); ++l) {
              ratio *= (x - zeros[l]) / (x - poles[l]);
            }
            const double s = std::sin(0.5 * theta);
            return (2.0 * pb.h / pi) * ratio * s * s * std::exp(logq);
          },
          order);
      pb.exp_left = -0.5;
      pb.exp_right = 0.5;
      pb.zero_theta0 = true;
      pb.zero_thetapi = false;
      out.bands_fit_.push_back(std::move(pb));
    }
  } else if (weight.kind == WeightKind::table) {
    for (std::size_t j = 0; j < bands.size(); ++j) {
      PreparedBand pb;
      pb.m = bands[j].midpoint();
      pb.h = bands[j].halfwidth();
      pb.f = CosineSeries::fit(
          [&](double theta) {
            const double x = pb.m + pb.h * std::cos(theta);
            return interp_table(weight.table_x, weight.table_w, x) * pb.h *
                   std::sin(theta);
          },
          order);
      pb.exp_left = 0.0;
      pb.exp_right = 0.0;
      out.bands_fit_.push_back(std::move(pb));
    }
  } else if (!bands.empty()) {
    throw ValidationError("measure: bands given but weight kind is none");
  }

  if (weight.normalize_mass) {
    const double mass = out.ac_mass();
    if (!(mass > 0.0)) {
      throw ValidationError("measure: cannot normalize zero a.c. mass");
    }
    const double scale = *weight.normalize_mass / mass;
    for (auto& pb : out.bands_fit_) {
      for (double& a : pb.f.a) a *= scale;
    }
  }
  return out;
}

PreparedMeasure PreparedMeasure::from_bands(IntervalSet bands,
                                            std::vector<PreparedBand> prepared,
                                            std::vector<PointMass> atoms) {
  PreparedMeasure out;
  out.bands_ = std::move(bands);
  out.bands_fit_ = std::move(prepared);
  out.atoms_ = std::move(atoms);
  return out;
}

double PreparedMeasure::ac_mass() const {
  double sum = 0.0;
  for (const auto& pb : bands_fit_) sum += pb.f.integral();
  return sum;
}

double PreparedMeasure::total_mass() const {
  double sum = ac_mass();
  for (const auto& p : atoms_) sum += p.mass;
  return sum;
}

double PreparedMeasure::density(double x) const {
  const auto& bands = bands_.bands();
  for (std::size_t j = 0; j < bands.size(); ++j) {
    if (x > bands[j].left && x < bands[j].right) {
      const auto& pb = bands_fit_[j];
      const double c = std::clamp((x - pb.m) / pb.h, -1.0, 1.0);
      const double theta = std::acos(c);
      const double st = std::sin(theta);
      if (st == 0.0) {
        throw NumericalError("density: evaluation at a band edge");
      }
      return pb.f.eval(theta) / (pb.h * st);
    }
  }
  throw ValidationError("density: point not strictly inside a band");
}

}  // namespace finitegap
