// Two-point Green's function via the third-kind differential with vanishing
// gap periods.  With S = sqrt(R) on the canonical branch and a real pole w,
//
//   F(z) = -S(w) / (S(z) (z-w)) - q(z) / S(z),   deg q <= g - 1,
//
// is the complex derivative of G + i(conjugate): it has residue -1 at w,
// decays like 1/z^2, and is purely imaginary on the bands (S is imaginary
// there), so Re int F is constant on every band.  Requiring the integral of
// F over every bounded gap to vanish (principal value in the gap containing
// w) pins the g coefficients of q and makes that constant the same zero on
// all of E.  The integral starts at a band edge e chosen in the component of
// z so the path avoids the pole.

#include <algorithm>
#include <cmath>

#include "finitegap/equilibrium.hpp"
#include "finitegap/errors.hpp"
#include "finitegap/quadrature.hpp"
#include "potential_detail.hpp"

namespace finitegap {

using cplx = std::complex<double>;
using detail::all_endpoints;
using detail::cheb_eval;
using detail::sqrt_prod_excluding;

namespace {

struct Component {
  enum Kind { outer_left, gap, outer_right } kind;
  int index = -1;  // gap index when kind == gap
};

Component locate(const IntervalSet& set, double x) {
  if (x < set.left()) return {Component::outer_left, -1};
  if (x > set.right()) return {Component::outer_right, -1};
  const auto& bands = set.bands();
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    if (x > bands[i].right && x < bands[i + 1].left) {
      return {Component::gap, static_cast<int>(i)};
    }
  }
  throw ValidationError("point lies on the set");
}

}  // namespace

double green_two_point(const EquilibriumData& eq, cplx z, double w) {
  const IntervalSet& set = eq.set;
  const double diam = set.diameter();
  const double tol_on = 1e-12 * diam;
  if (set.distance(w) <= tol_on) {
    throw ValidationError("green_two_point: pole lies on the set");
  }
  const bool real_z = (z.imag() == 0.0);
  if (real_z && set.distance(z.real()) <= tol_on) {
    throw ValidationError("green_two_point: evaluation point lies on the set");
  }
  if (std::abs(z - w) < 1e-10 * diam) {
    throw ValidationError("green_two_point: coincident points");
  }

  // If both points sit in the same unbounded component with z beyond w, the
  // path from the edge to z would cross the pole; symmetry lets us swap.
  if (real_z) {
    const double zr = z.real();
    if ((zr < set.left() && w < set.left() && zr < w) ||
        (zr > set.right() && w > set.right() && zr > w)) {
      return green_two_point(eq, cplx(w, 0.0), zr);
    }
  }

  const auto& bands = set.bands();
  const int g = static_cast<int>(bands.size()) - 1;
  const double Sw = sqrt_R_real(set, w);
  const Component cw = locate(set, w);

  // Coefficients of q (Chebyshev basis of the bounding interval) from the
  // vanishing gap periods.  Dividing the condition on gap k by the gap sign
  // of sqrt(R) leaves magnitude-normalized quantities on both sides, so the
  // equilibrium gap matrix and its factorization apply directly.
  std::vector<double> q_cheb(static_cast<std::size_t>(std::max(g, 0)), 0.0);
  if (g > 0) {
    const GaussRule th = theta_rule(eq.order);
    const std::vector<double> endpoints = all_endpoints(set);
    Eigen::VectorXd rhs(g);
    for (int k = 0; k < g; ++k) {
      const auto& rule = eq.gap_rules[static_cast<std::size_t>(k)];
      const double gl = bands[static_cast<std::size_t>(k)].right;
      const double gr = bands[static_cast<std::size_t>(k) + 1].left;
      double J2 = 0.0;  // integral of 1 / (|sqrt(R)| (x - w)) over the gap
      if (cw.kind == Component::gap && cw.index == k) {
        // Principal value: subtract the value at the pole in the cosine
        // variable; the pure-pole part integrates to zero exactly.
        const auto smooth = [&](double c) {
          const double x = rule.m + rule.h * c;
          return 1.0 / (rule.h * sqrt_prod_excluding(endpoints, gl, gr, x));
        };
        const double c_w = (w - rule.m) / rule.h;
        const double at_w = smooth(c_w);
        for (std::size_t i = 0; i < th.x.size(); ++i) {
          const double ci = std::cos(th.x[i]);
          double quotient;
          if (std::abs(ci - c_w) > 1e-7) {
            quotient = (smooth(ci) - at_w) / (ci - c_w);
          } else {
            quotient = (smooth(c_w + 1e-5) - smooth(c_w - 1e-5)) / 2e-5;
          }
          J2 += th.w[i] * quotient;
        }
      } else {
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
          J2 += rule.coef[i] / (rule.x[i] - w);
        }
      }
      rhs(k) = -Sw * J2;
    }
    const Eigen::VectorXd beta = eq.gap_lu.solve(rhs);
    for (int j = 0; j < g; ++j) {
      q_cheb[static_cast<std::size_t>(j)] = beta(j);
    }
  }

  // Starting band edge in the component of z, on the side that avoids w.
  double edge = set.left();
  if (real_z) {
    const double zr = z.real();
    const Component cz = locate(set, zr);
    switch (cz.kind) {
      case Component::outer_left:
        edge = set.left();
        break;
      case Component::outer_right:
        edge = set.right();
        break;
      case Component::gap: {
        const double gl = bands[static_cast<std::size_t>(cz.index)].right;
        const double gr = bands[static_cast<std::size_t>(cz.index) + 1].left;
        if (cw.kind == Component::gap && cw.index == cz.index) {
          edge = (zr < w) ? gl : gr;
        } else {
          edge = (zr - gl <= gr - zr) ? gl : gr;
        }
        break;
      }
    }
  } else {
    const std::vector<double> endpoints = all_endpoints(set);
    edge = endpoints.front();
    for (double e : endpoints) {
      if (std::abs(z - e) < std::abs(z - edge)) edge = e;
    }
  }

  const auto F = [&](cplx zeta) -> cplx {
    const cplx S = sqrt_R(set, zeta);
    return -Sw / (S * (zeta - w)) - cheb_eval(set, q_cheb, zeta) / S;
  };
  const auto F_real = [&](double x) -> double {
    const double S = sqrt_R_real(set, x);
    return -Sw / (S * (x - w)) - cheb_eval(set, q_cheb, x) / S;
  };

  // Substitution zeta = edge + (z - edge) s^2 absorbs the edge square root.
  const GaussRule& gl256 = gauss_legendre(256);
  double G = 0.0;
  if (real_z) {
    const double d = z.real() - edge;
    for (std::size_t i = 0; i < gl256.x.size(); ++i) {
      const double s = 0.5 * (gl256.x[i] + 1.0);
      const double ws = 0.5 * gl256.w[i];
      G += ws * F_real(edge + d * s * s) * 2.0 * d * s;
    }
  } else {
    const cplx d = z - edge;
    for (std::size_t i = 0; i < gl256.x.size(); ++i) {
      const double s = 0.5 * (gl256.x[i] + 1.0);
      const double ws = 0.5 * gl256.w[i];
      G += ws * (F(edge + d * s * s) * 2.0 * d * s).real();
    }
  }
  return G;
}

}  // namespace finitegap
