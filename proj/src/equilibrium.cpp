#include "finitegap/equilibrium.hpp"

#include <algorithm>
#include <cmath>

#include "finitegap/errors.hpp"
#include "finitegap/quadrature.hpp"
#include "potential_detail.hpp"

namespace finitegap {

using cplx = std::complex<double>;
using detail::all_endpoints;
using detail::cheb_eval;
using detail::cheb_values;
using detail::scaled_var;
using detail::sqrt_prod_excluding;

namespace {

struct SolveOutput {
  std::vector<double> q_cheb;
  std::vector<CosineSeries> band_density;
  std::vector<double> band_measures;
  std::vector<EquilibriumData::GapRule> gap_rules;
  Eigen::MatrixXd gap_matrix;
  double log_capacity = 0.0;
};

SolveOutput solve_at_order(const IntervalSet& set, int order) {
  const auto& bands = set.bands();
  const int g = static_cast<int>(bands.size()) - 1;
  const std::vector<double> endpoints = all_endpoints(set);
  const GaussRule th = theta_rule(order);

  SolveOutput out;

  // Gap quadrature rules: integral over gap k of f / sqrt(R) dx equals
  // sum_i coef_i * f(x_i); the edge square roots are absorbed by the cosine
  // substitution.  sign = parity of the canonical sqrt(R) branch on the gap.
  out.gap_rules.resize(static_cast<std::size_t>(g));
  for (int k = 0; k < g; ++k) {
    auto& rule = out.gap_rules[static_cast<std::size_t>(k)];
    const double gl = bands[static_cast<std::size_t>(k)].right;
    const double gr = bands[static_cast<std::size_t>(k) + 1].left;
    rule.m = 0.5 * (gl + gr);
    rule.h = 0.5 * (gr - gl);
    rule.sign = ((g - k) % 2 == 0) ? 1 : -1;
    rule.x.resize(th.x.size());
    rule.coef.resize(th.x.size());
    for (std::size_t i = 0; i < th.x.size(); ++i) {
      const double x = rule.m + rule.h * std::cos(th.x[i]);
      rule.x[i] = x;
      rule.coef[i] = th.w[i] / sqrt_prod_excluding(endpoints, gl, gr, x);
    }
  }

  // Vanishing conditions, linear in the Chebyshev coefficients of q.
  out.gap_matrix.resize(g, g + 1);
  std::vector<double> tvals;
  for (int k = 0; k < g; ++k) {
    Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(g + 1);
    const auto& rule = out.gap_rules[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      cheb_values(scaled_var(set, rule.x[i]), g, tvals);
      for (int j = 0; j <= g; ++j) {
        row(j) += rule.coef[i] * tvals[static_cast<std::size_t>(j)];
      }
    }
    out.gap_matrix.row(k) = row;
  }

  if (g == 0) {
    out.q_cheb = {1.0};
  } else {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(out.gap_matrix, Eigen::ComputeFullV);
    Eigen::VectorXd v = svd.matrixV().col(g);  // null direction
    out.q_cheb.assign(v.data(), v.data() + g + 1);
    // Deterministic orientation: positive at the right end of the set.
    if (cheb_eval(set, out.q_cheb, set.right()) < 0.0) {
      for (double& c : out.q_cheb) c = -c;
    }
  }

  // Per-band theta pullbacks of |q| / (pi sqrt|R|); the containing band's edge
  // factors cancel against the substitution Jacobian.
  out.band_density.reserve(bands.size());
  double total = 0.0;
  for (const Band& b : bands) {
    const double m = b.midpoint(), h = b.halfwidth();
    CosineSeries f = CosineSeries::fit(
        [&](double theta) {
          const double x = m + h * std::cos(theta);
          return std::abs(cheb_eval(set, out.q_cheb, x)) /
                 (M_PI * sqrt_prod_excluding(endpoints, b.left, b.right, x));
        },
        order);
    total += f.integral();
    out.band_density.push_back(std::move(f));
  }

  // Scale to a probability measure (equivalent to the monic normalization).
  for (CosineSeries& f : out.band_density) {
    for (double& a : f.a) a /= total;
  }
  for (double& c : out.q_cheb) c /= total;
  out.band_measures.reserve(bands.size());
  for (const CosineSeries& f : out.band_density) {
    out.band_measures.push_back(f.integral());
  }

  // log capacity = potential at any point of E; use the right endpoint.
  double U = 0.0;
  for (std::size_t i = 0; i < bands.size(); ++i) {
    U += band_log_kernel(out.band_density[i], bands[i].midpoint(),
                         bands[i].halfwidth(), cplx(set.right(), 0.0));
  }
  out.log_capacity = U;
  return out;
}

}  // namespace

EquilibriumData equilibrium(const IntervalSet& set, int order) {
  if (set.empty()) throw ValidationError("equilibrium: empty set");
  if (order < 16) throw ValidationError("equilibrium: order must be >= 16");

  int ord = order;
  SolveOutput solved = solve_at_order(set, ord);
  while (ord < 1024) {
    const int next = std::min(1024, 2 * ord);
    SolveOutput refined = solve_at_order(set, next);
    const bool stable = std::abs(std::exp(refined.log_capacity) -
                                 std::exp(solved.log_capacity)) < 1e-10;
    solved = std::move(refined);
    ord = next;
    if (stable) break;
  }

  EquilibriumData eq;
  eq.set = set;
  eq.order = ord;
  eq.log_capacity = solved.log_capacity;
  eq.capacity = std::exp(solved.log_capacity);
  eq.band_measures = std::move(solved.band_measures);
  eq.band_density = std::move(solved.band_density);
  eq.numerator_cheb = std::move(solved.q_cheb);
  eq.gap_rules = std::move(solved.gap_rules);
  eq.gap_matrix = std::move(solved.gap_matrix);
  const int g = static_cast<int>(set.band_count()) - 1;
  if (g > 0) {
    eq.gap_lu.compute(eq.gap_matrix.leftCols(g));
  }

  // One zero of q per gap, located by bisection (sign change is guaranteed).
  const auto& bands = set.bands();
  for (int k = 0; k < g; ++k) {
    double lo = bands[static_cast<std::size_t>(k)].right;
    double hi = bands[static_cast<std::size_t>(k) + 1].left;
    double flo = cheb_eval(set, eq.numerator_cheb, lo);
    const double fhi = cheb_eval(set, eq.numerator_cheb, hi);
    if (flo == 0.0) {
      eq.gap_zeros.push_back(lo);
      continue;
    }
    if (flo * fhi > 0.0) {
      throw NumericalError("equilibrium: numerator does not change sign in gap");
    }
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      const double fm = cheb_eval(set, eq.numerator_cheb, mid);
      if (fm == 0.0 || hi - lo < 1e-16 * set.diameter()) {
        lo = hi = mid;
        break;
      }
      if ((fm > 0.0) == (flo > 0.0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    eq.gap_zeros.push_back(0.5 * (lo + hi));
  }
  return eq;
}

cplx sqrt_R(const IntervalSet& set, cplx z) {
  cplx s = 1.0;
  for (const Band& b : set.bands()) {
    s *= std::sqrt(z - b.left) * std::sqrt(z - b.right);
  }
  return s;
}

double sqrt_R_real(const IntervalSet& set, double x) {
  // Parity of the endpoint count to the right of x fixes the sign of the
  // canonical branch; magnitude through logs.
  int count_right = 0;
  double logsum = 0.0;
  for (const Band& b : set.bands()) {
    for (double e : {b.left, b.right}) {
      if (e > x) ++count_right;
      logsum += std::log(std::abs(x - e));
    }
  }
  const double mag = std::exp(0.5 * logsum);
  return (count_right % 4 == 2) ? -mag : mag;
}

double equilibrium_density(const EquilibriumData& eq, double x) {
  const auto& bands = eq.set.bands();
  for (const Band& b : bands) {
    if (x <= b.left || x >= b.right) continue;
    const std::vector<double> endpoints = all_endpoints(eq.set);
    const double num = std::abs(cheb_eval(eq.set, eq.numerator_cheb, x));
    const double den = M_PI * std::sqrt((x - b.left) * (b.right - x)) *
                       sqrt_prod_excluding(endpoints, b.left, b.right, x);
    return num / den;
  }
  return 0.0;  // density vanishes off the open bands
}

double green_infinity(const EquilibriumData& eq, cplx z) {
  double U = 0.0;
  const auto& bands = eq.set.bands();
  for (std::size_t i = 0; i < bands.size(); ++i) {
    U += band_log_kernel(eq.band_density[i], bands[i].midpoint(),
                         bands[i].halfwidth(), z);
  }
  return U - eq.log_capacity;
}

std::vector<double> harmonic_frequencies(const EquilibriumData& eq) {
  std::vector<double> omega;
  const std::size_t n = eq.band_measures.size();
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double sum = 0.0;
    for (std::size_t i = j + 1; i < n; ++i) sum += eq.band_measures[i];
    omega.push_back(sum);
  }
  return omega;
}

double greens_sum(const EquilibriumData& eq, const std::vector<double>& points) {
  double sum = 0.0;
  for (double x : points) sum += green_infinity(eq, cplx(x, 0.0));
  return sum;
}

double carleson_sum(const EquilibriumData& eq,
                    const std::vector<double>& points) {
  double sup = 0.0;
  for (std::size_t l = 0; l < points.size(); ++l) {
    double sum = 0.0;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == l) continue;
      sum += green_two_point(eq, cplx(points[j], 0.0), points[l]);
    }
    sup = std::max(sup, sum);
  }
  return sup;
}

RescaleResult rescale_to_unit_capacity(const IntervalSet& set, int order) {
  const EquilibriumData eq = equilibrium(set, order);
  const double mid = 0.5 * (set.left() + set.right());
  RescaleResult out;
  out.scale = 1.0 / eq.capacity;
  out.shift = mid * (1.0 - out.scale);
  std::vector<Band> bands;
  for (const Band& b : set.bands()) {
    bands.push_back(
        {out.scale * b.left + out.shift, out.scale * b.right + out.shift});
  }
  out.set = IntervalSet::from_bands(std::move(bands));
  return out;
}

}  // namespace finitegap
