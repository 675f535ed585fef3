#include "finitegap/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "finitegap/errors.hpp"
#include "finitegap/quadrature.hpp"
#include "finitegap/stieltjes.hpp"

namespace finitegap {

using cplx = std::complex<double>;

DiscretizedMeasure discretize(const PreparedMeasure& measure,
                              int nodes_per_band) {
  if (nodes_per_band < 8) {
    throw ValidationError("discretize: need at least 8 nodes per band");
  }
  DiscretizedMeasure d;
  if (!measure.prepared_bands().empty()) {
    const GaussRule th = theta_rule(nodes_per_band);
    std::vector<double> wts(th.x.size());
    for (const auto& pb : measure.prepared_bands()) {
      double discrete = 0.0;
      for (std::size_t i = 0; i < th.x.size(); ++i) {
        const double w = th.w[i] * pb.f.eval(th.x[i]);
        if (!(w > 0.0)) {
          throw NumericalError("discretize: nonpositive node weight");
        }
        wts[i] = w;
        discrete += w;
      }
      // Band-by-band rescale so the discrete mass matches the fitted mass.
      const double fix = pb.f.integral() / discrete;
      if (!(fix > 0.0)) {
        throw NumericalError("discretize: nonpositive band mass");
      }
      for (std::size_t i = 0; i < th.x.size(); ++i) {
        d.nodes.push_back(pb.m + pb.h * std::cos(th.x[i]));
        d.weights.push_back(wts[i] * fix);
      }
    }
  }
  d.band_nodes = d.nodes.size();
  for (const auto& ps : measure.atoms()) {
    d.nodes.push_back(ps.x);
    d.weights.push_back(ps.mass);
  }
  if (d.nodes.empty()) {
    throw ValidationError("discretize: empty measure");
  }
  d.total = compensated_sum(d.weights);
  return d;
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b,
           bool compensated) {
  if (compensated) return compensated_dot(a.data(), b.data(), a.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// P_0..P_n at a vector of real points, by forward recurrence.
std::vector<std::vector<double>> poly_table(const JacobiCoefficients& c,
                                            const std::vector<double>& x,
                                            int n) {
  const std::size_t m = x.size();
  std::vector<std::vector<double>> table(static_cast<std::size_t>(n) + 1,
                                         std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i) table[0][i] = 1.0 / c.p[0];
  if (n >= 1) {
    for (std::size_t i = 0; i < m; ++i) {
      table[1][i] = (x[i] - c.q[0]) * table[0][i] / c.p[1];
    }
  }
  for (int k = 1; k < n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < m; ++i) {
      table[ku + 1][i] = ((x[i] - c.q[ku]) * table[ku][i] -
                          c.p[ku] * table[ku - 1][i]) /
                         c.p[ku + 1];
    }
  }
  return table;
}

std::vector<std::vector<double>> poly_deriv_table(const JacobiCoefficients& c,
                                                  const std::vector<double>& x,
                                                  int n) {
  const auto value = poly_table(c, x, n);
  const std::size_t m = x.size();
  std::vector<std::vector<double>> table(static_cast<std::size_t>(n) + 1,
                                         std::vector<double>(m, 0.0));
  if (n >= 1) {
    for (std::size_t i = 0; i < m; ++i) table[1][i] = value[0][i] / c.p[1];
  }
  for (int k = 1; k < n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < m; ++i) {
      table[ku + 1][i] = ((x[i] - c.q[ku]) * table[ku][i] + value[ku][i] -
                          c.p[ku] * table[ku - 1][i]) /
                         c.p[ku + 1];
    }
  }
  return table;
}

void require_depth(const JacobiCoefficients& c, int n, const char* who) {
  if (n < 0 || c.p.size() < static_cast<std::size_t>(n) + 1 ||
      (n >= 1 && c.q.size() < static_cast<std::size_t>(n))) {
    throw ValidationError(std::string(who) + ": not enough coefficients");
  }
}

}  // namespace

JacobiCoefficients recurrence_coefficients(const DiscretizedMeasure& d, int n,
                                           bool compensated) {
  const std::size_t m = d.nodes.size();
  if (n < 1) throw ValidationError("recurrence: need at least one step");
  if (static_cast<std::size_t>(n) >= m) {
    throw ValidationError("recurrence: more coefficients than nodes");
  }
  if (!(d.total > 0.0)) throw ValidationError("recurrence: empty measure");

  double scale = 1.0;
  for (double x : d.nodes) scale = std::max(scale, std::abs(x));

  JacobiCoefficients c;
  c.p.push_back(std::sqrt(d.total));
  std::vector<std::vector<double>> basis;
  {
    std::vector<double> v0(m);
    for (std::size_t i = 0; i < m; ++i) {
      v0[i] = std::sqrt(d.weights[i]) / c.p[0];
    }
    basis.push_back(std::move(v0));
  }

  std::vector<double> u(m);
  for (int k = 0; k < n; ++k) {
    const auto& vk = basis.back();
    for (std::size_t i = 0; i < m; ++i) u[i] = d.nodes[i] * vk[i];
    const double qk = dot(u, vk, compensated);
    c.q.push_back(qk);
    for (std::size_t i = 0; i < m; ++i) u[i] -= qk * vk[i];
    if (k > 0) {
      const auto& vm = basis[basis.size() - 2];
      const double pk = c.p[static_cast<std::size_t>(k)];
      for (std::size_t i = 0; i < m; ++i) u[i] -= pk * vm[i];
    }
    // Full reorthogonalization, twice (classical Gram-Schmidt squared).
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const double s = dot(u, b, compensated);
        for (std::size_t i = 0; i < m; ++i) u[i] -= s * b[i];
      }
    }
    const double norm = std::sqrt(dot(u, u, compensated));
    if (!(norm > 1e-12 * scale)) {
      throw NumericalError("recurrence: rank exhausted at index " +
                           std::to_string(k + 1));
    }
    c.p.push_back(norm);
    for (std::size_t i = 0; i < m; ++i) u[i] /= norm;
    basis.push_back(u);
  }
  return c;
}

double orthonormality_residual(const DiscretizedMeasure& d,
                               const JacobiCoefficients& c, int n) {
  require_depth(c, n, "orthonormality_residual");
  const std::size_t band_count = std::min(d.band_nodes, d.nodes.size());
  const std::size_t atom_count = d.nodes.size() - band_count;
  const std::vector<double> band_x(d.nodes.begin(),
                                   d.nodes.begin() +
                                       static_cast<std::ptrdiff_t>(band_count));
  const auto table = poly_table(c, band_x, n);

  // Band-node Gram matrix; the point-mass contribution I - B must be PSD of
  // rank <= atom_count with eigenvalues bounded by 1 (each atom's share of a
  // normalized system is at most its Christoffel bound).
  Eigen::MatrixXd defect(n + 1, n + 1);
  for (int a = 0; a <= n; ++a) {
    const auto& ta = table[static_cast<std::size_t>(a)];
    for (int b = a; b <= n; ++b) {
      const auto& tb = table[static_cast<std::size_t>(b)];
      double g = 0.0;
      for (std::size_t i = 0; i < band_count; ++i) {
        g += d.weights[i] * ta[i] * tb[i];
      }
      const double entry = (a == b ? 1.0 : 0.0) - g;
      defect(a, b) = entry;
      defect(b, a) = entry;
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(defect,
                                                        Eigen::EigenvaluesOnly);
  const auto& lambda = solver.eigenvalues();  // ascending
  double res = 0.0;
  const std::size_t count = static_cast<std::size_t>(n) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const double v = lambda(static_cast<Eigen::Index>(i));
    if (i + atom_count < count) {
      res = std::max(res, std::abs(v));  // outside the allowed rank: must be 0
    } else {
      res = std::max(res, std::max(-v, v - 1.0));  // atom share: within [0, 1]
    }
  }
  return std::max(res, 0.0);
}

CoefficientRun coefficients_for_measure(const PreparedMeasure& measure,
                                        int n) {
  CoefficientRun run;
  const int bands = static_cast<int>(measure.prepared_bands().size());
  if (bands == 0) {
    const DiscretizedMeasure d = discretize(measure, 8);
    run.coefficients = recurrence_coefficients(d, n);
    run.residual = orthonormality_residual(d, run.coefficients, n);
    return run;
  }
  const int base = std::max(64, (8 * n + bands - 1) / bands);
  for (int mult = 1; mult <= 8; mult *= 2) {
    run.nodes_per_band = base * mult;
    const DiscretizedMeasure d = discretize(measure, run.nodes_per_band);
    run.coefficients = recurrence_coefficients(d, n);
    run.residual = orthonormality_residual(d, run.coefficients, n);
    if (run.residual < 1e-8) return run;
  }
  // Residual stalled at the node cap: one compensated sweep.
  const DiscretizedMeasure d = discretize(measure, run.nodes_per_band);
  run.coefficients = recurrence_coefficients(d, n, true);
  run.residual = orthonormality_residual(d, run.coefficients, n);
  run.compensated = true;
  return run;
}

std::vector<cplx> eval_polys(const JacobiCoefficients& c, cplx z, int n) {
  require_depth(c, n, "eval_polys");
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  out.push_back(cplx{1.0 / c.p[0], 0.0});
  if (n >= 1) out.push_back((z - c.q[0]) * out[0] / c.p[1]);
  for (int k = 1; k < n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    out.push_back(((z - c.q[ku]) * out[ku] - c.p[ku] * out[ku - 1]) /
                  c.p[ku + 1]);
  }
  return out;
}

std::vector<cplx> second_kind_eval(const PreparedMeasure& measure,
                                   const JacobiCoefficients& c, cplx z,
                                   int n) {
  const int depth = static_cast<int>(c.q.size());
  if (n < 0 || n >= depth) {
    throw ValidationError(
        "second_kind_eval: need coefficient depth beyond the requested index");
  }
  const StieltjesFunction r(measure);
  const cplx h0 = (1.0 - r.eval(z)) / c.p[0];

  // Backward (Miller) recurrence: the second-kind sequence is the minimal
  // solution, so a trial started high with (0, 1) converges onto it after
  // normalization at index 0.
  const int top = depth;
  std::vector<cplx> ht(static_cast<std::size_t>(top) + 1);
  std::vector<double> logc(static_cast<std::size_t>(top) + 1, 0.0);
  ht[static_cast<std::size_t>(top)] = 0.0;
  ht[static_cast<std::size_t>(top) - 1] = 1.0;
  double acc = 0.0;
  for (int k = top - 1; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    ht[ku - 1] =
        ((z - c.q[ku]) * ht[ku] - c.p[ku + 1] * ht[ku + 1]) / c.p[ku];
    logc[ku - 1] = acc;
    const double mag = std::abs(ht[ku - 1]);
    if (mag > 1e200) {
      ht[ku - 1] /= mag;
      ht[ku] /= mag;
      acc += std::log(mag);
      logc[ku - 1] = acc;
      logc[ku] = acc;
    }
  }
  if (ht[0] == cplx{0.0, 0.0}) {
    throw NumericalError("second_kind_eval: trial sequence vanished");
  }
  std::vector<cplx> out(static_cast<std::size_t>(n) + 1);
  const cplx norm = h0 / ht[0];
  for (int j = 0; j <= n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    out[ju] = ht[ju] * norm * std::exp(logc[ju] - logc[0]);
  }
  return out;
}

JacobiCoefficients tau_transform_jacobi(const JacobiCoefficients& c) {
  if (c.p.empty() || c.q.empty()) {
    throw ValidationError("tau_transform_jacobi: empty coefficients");
  }
  JacobiCoefficients out = c;
  out.q[0] += c.p[0] * c.p[0];
  return out;
}

TauPolyCheck tau_transform_polys(const PreparedMeasure& measure,
                                 const JacobiCoefficients& c, int n) {
  require_depth(c, n, "tau_transform_polys");
  const StieltjesFunction r(measure);
  const TauResult tau = tau_transform_measure(r);

  const int bands =
      std::max(1, static_cast<int>(measure.prepared_bands().size()));
  const int npb = std::max(64, (8 * (n + 1) + bands - 1) / bands);
  const DiscretizedMeasure ds = discretize(measure, npb);
  const DiscretizedMeasure dt = discretize(tau.measure, npb);

  double scale = 1.0;
  for (double x : ds.nodes) scale = std::max(scale, std::abs(x));
  for (double x : dt.nodes) scale = std::max(scale, std::abs(x));
  const double coincide = 1e-7 * scale;

  const auto ps = poly_table(c, ds.nodes, n);
  const auto pt = poly_table(c, dt.nodes, n);
  const auto pdt = poly_deriv_table(c, dt.nodes, n);

  // P^tau_k at the nodes of the transformed measure.
  std::vector<std::vector<double>> ptau(static_cast<std::size_t>(n) + 1,
                                        std::vector<double>(dt.nodes.size()));
  for (int k = 0; k <= n; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < dt.nodes.size(); ++i) {
      const double y = dt.nodes[i];
      if (i >= dt.band_nodes) {
        // Atom of the transformed measure, i.e. a zero of r.  There the map
        // reduces to -integral P_k(x) dsigma(x) / (x - y); the generic
        // difference-quotient form would subtract terms of size P_k(y),
        // which grows geometrically with k outside the bands and destroys
        // the cancellation down to r(y) = 0.
        double integral = 0.0;
        for (std::size_t j = 0; j < ds.nodes.size(); ++j) {
          integral += ds.weights[j] * ps[ku][j] / (ds.nodes[j] - y);
        }
        ptau[ku][i] = -integral;
        continue;
      }
      double integral = 0.0;
      for (std::size_t j = 0; j < ds.nodes.size(); ++j) {
        const double dx = ds.nodes[j] - y;
        const double quot = (std::abs(dx) < coincide)
                                ? pdt[ku][i]
                                : (ps[ku][j] - pt[ku][i]) / dx;
        integral += ds.weights[j] * quot;
      }
      ptau[ku][i] = pt[ku][i] - integral;
    }
  }

  TauPolyCheck check;
  for (int a = 0; a <= n; ++a) {
    for (int b = a; b <= n; ++b) {
      double g = 0.0;
      for (std::size_t i = 0; i < dt.nodes.size(); ++i) {
        g += dt.weights[i] * ptau[static_cast<std::size_t>(a)][i] *
             ptau[static_cast<std::size_t>(b)][i];
      }
      check.gram_residual =
          std::max(check.gram_residual, std::abs(g - (a == b ? 1.0 : 0.0)));
    }
  }

  // Inverse map at off-axis sample points must reproduce the originals.
  UniformSampler rng(4242u);
  for (int t = 0; t < 10; ++t) {
    const cplx z{rng.next(-3.0, 3.0), rng.next(0.3, 2.5)};
    const auto pz = eval_polys(c, z, n);
    for (int k = 0; k <= n; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      cplx fwd = 0.0;
      for (std::size_t j = 0; j < ds.nodes.size(); ++j) {
        fwd += ds.weights[j] * (ps[ku][j] - pz[ku]) / (ds.nodes[j] - z);
      }
      const cplx ptau_z = pz[ku] - fwd;
      cplx bwd = 0.0;
      for (std::size_t i = 0; i < dt.nodes.size(); ++i) {
        bwd += dt.weights[i] * (ptau[ku][i] - ptau_z) / (dt.nodes[i] - z);
      }
      const cplx back = ptau_z + bwd;
      // Relative per sample: high-degree values grow geometrically in |z|.
      check.inverse_error =
          std::max(check.inverse_error,
                   std::abs(back - pz[ku]) / std::max(1.0, std::abs(pz[ku])));
    }
  }
  return check;
}

}  // namespace finitegap
