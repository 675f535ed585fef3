#include "finitegap/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "finitegap/errors.hpp"

namespace finitegap {

IntervalSet IntervalSet::from_bands(std::vector<Band> bands) {
  if (bands.empty()) {
    IntervalSet out;
    return out;  // empty set is allowed (purely atomic measures use it)
  }
  std::sort(bands.begin(), bands.end(),
            [](const Band& a, const Band& b) { return a.left < b.left; });
  for (const Band& b : bands) {
    if (!std::isfinite(b.left) || !std::isfinite(b.right)) {
      throw ValidationError("band endpoints must be finite");
    }
    if (!(b.left < b.right)) {
      std::ostringstream os;
      os << "band [" << b.left << ", " << b.right << "] is not an interval";
      throw ValidationError(os.str());
    }
  }
  const double diam = bands.back().right - bands.front().left;
  const double merge_tol = 1e-14 * std::max(diam, 1.0);
  std::vector<Band> merged;
  merged.push_back(bands.front());
  for (std::size_t i = 1; i < bands.size(); ++i) {
    Band& prev = merged.back();
    const Band& cur = bands[i];
    if (cur.left < prev.right - merge_tol) {
      std::ostringstream os;
      os << "bands overlap near x=" << cur.left;
      throw ValidationError(os.str());
    }
    if (cur.left - prev.right <= merge_tol) {
      prev.right = std::max(prev.right, cur.right);  // merge touching bands
    } else {
      merged.push_back(cur);
    }
  }
  IntervalSet out;
  out.bands_ = std::move(merged);
  return out;
}

double IntervalSet::left() const {
  if (bands_.empty()) throw ValidationError("empty interval set has no bounds");
  return bands_.front().left;
}

double IntervalSet::right() const {
  if (bands_.empty()) throw ValidationError("empty interval set has no bounds");
  return bands_.back().right;
}

bool IntervalSet::contains(double x) const {
  for (const Band& b : bands_) {
    if (x >= b.left && x <= b.right) return true;
  }
  return false;
}

double IntervalSet::distance(double x) const {
  double best = std::numeric_limits<double>::infinity();
  for (const Band& b : bands_) {
    if (x >= b.left && x <= b.right) return 0.0;
    best = std::min(best, std::min(std::abs(x - b.left), std::abs(x - b.right)));
  }
  return best;
}

IntervalSet make_cantor(const CantorSpec& spec, int generation) {
  if (!(spec.l0 > 0.0)) throw ValidationError("cantor: l0 must be positive");
  if (generation < 0) throw ValidationError("cantor: generation must be >= 0");
  if (static_cast<std::size_t>(generation) > spec.kappas.size()) {
    throw ValidationError("cantor: generation exceeds number of kappas");
  }
  for (double k : spec.kappas) {
    if (!(k > 0.0 && k < 1.0)) {
      throw ValidationError("cantor: every kappa must lie in (0, 1)");
    }
  }
  std::vector<Band> bands{{spec.origin, spec.origin + spec.l0}};
  for (int g = 0; g < generation; ++g) {
    const double kappa = spec.kappas[static_cast<std::size_t>(g)];
    std::vector<Band> next;
    next.reserve(2 * bands.size());
    for (const Band& b : bands) {
      const double child = 0.5 * (1.0 - kappa) * b.length();
      next.push_back({b.left, b.left + child});
      next.push_back({b.right - child, b.right});
    }
    bands = std::move(next);
  }
  return IntervalSet::from_bands(std::move(bands));
}

double total_length(const IntervalSet& set) {
  double sum = 0.0;
  for (const Band& b : set.bands()) sum += b.length();
  return sum;
}

GapList gaps(const IntervalSet& set) {
  GapList out;
  out.bounding = {set.left(), set.right()};
  const auto& bands = set.bands();
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    out.gaps.push_back({bands[i].right, bands[i + 1].left});
  }
  return out;
}

double local_density(const IntervalSet& set, double x, double rho) {
  if (!(rho > 0.0)) throw ValidationError("local_density: rho must be positive");
  const double lo = x - rho, hi = x + rho;
  double covered = 0.0;
  for (const Band& b : set.bands()) {
    const double l = std::max(lo, b.left);
    const double r = std::min(hi, b.right);
    if (r > l) covered += r - l;
  }
  return covered / rho;
}

SamplingGrid default_homogeneity_grid(const IntervalSet& set) {
  SamplingGrid grid;
  for (const Band& b : set.bands()) {
    grid.points.push_back(b.left);
    grid.points.push_back(b.midpoint());
    grid.points.push_back(b.right);
  }
  std::sort(grid.points.begin(), grid.points.end());
  grid.points.erase(std::unique(grid.points.begin(), grid.points.end()),
                    grid.points.end());
  const double diam = set.diameter();
  for (int k = 0; k <= 20; ++k) {
    grid.radii.push_back(diam * std::pow(2.0, -k));
  }
  std::ostringstream os;
  os << "band endpoints and midpoints (" << grid.points.size()
     << " points) x dyadic radii diam*2^-k, k=0..20";
  grid.descriptor = os.str();
  return grid;
}

HomogeneityReport homogeneity_eta(const IntervalSet& set,
                                  const SamplingGrid& grid) {
  if (grid.points.empty() || grid.radii.empty()) {
    throw ValidationError("homogeneity grid must be non-empty");
  }
  HomogeneityReport rep;
  rep.eta = std::numeric_limits<double>::infinity();
  rep.grid_descriptor = grid.descriptor;
  for (double x : grid.points) {
    if (!set.contains(x)) continue;  // density bounds only constrain x in E
    for (double rho : grid.radii) {
      const double d = local_density(set, x, rho);
      if (d < rep.eta) {
        rep.eta = d;
        rep.worst_x = x;
        rep.worst_rho = rho;
      }
    }
  }
  if (!std::isfinite(rep.eta)) {
    throw ValidationError("homogeneity grid contains no points of the set");
  }
  return rep;
}

HomogeneityReport homogeneity_eta(const IntervalSet& set) {
  return homogeneity_eta(set, default_homogeneity_grid(set));
}

double gap_separation_sum(const IntervalSet& set) {
  const GapList gl = gaps(set);
  const auto& gs = gl.gaps;
  if (gs.empty()) return 0.0;
  const auto dist = [](const Band& a, const Band& b) {
    if (a.right < b.left) return b.left - a.right;
    return a.left - b.right;
  };
  double sup = 0.0;
  for (std::size_t j = 0; j < gs.size(); ++j) {
    const double lj = gs[j].length();
    double sum = 0.0;
    for (std::size_t k = 0; k < gs.size(); ++k) {
      if (k == j) continue;
      sum += std::sqrt(lj * gs[k].length()) / dist(gs[j], gs[k]);
    }
    // Formal outer term: unit length at the distance from gap j to the
    // boundary of the bounding interval.
    const double rho0 = std::min(gs[j].left - gl.bounding.left,
                                 gl.bounding.right - gs[j].right);
    sum += std::sqrt(lj) / rho0;
    sup = std::max(sup, sum);
  }
  return sup;
}

}  // namespace finitegap
