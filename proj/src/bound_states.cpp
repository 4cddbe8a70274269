#include "levinson/bound_states.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "levinson/errors.hpp"

namespace levinson {

namespace {

constexpr double pi = std::numbers::pi;

void require_cutoff(const Potential& p) {
  if (p.tail().kind != TailKind::cutoff)
    throw TailModeError("tail mode required: bound-state matching needs a cutoff potential");
}

double defect_of(const BoundaryState& s, double E) {
  return s.theta + std::atan(std::sqrt(-E));
}

bool tiny(double a, double b) {
  return b - a <= 4.0 * std::numeric_limits<double>::epsilon() *
                      std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
}

struct Sample {
  double E;
  BoundaryState s;
  double d;
};

class Matcher {
public:
  Matcher(const Potential& p, Parity parity, double lambda, const Config& cfg)
      : p_(p), parity_(parity), lambda_(lambda), cfg_(cfg) {}

  Sample at(double E) const {
    BoundaryState s = inner_log_derivative(p_, parity_, E, lambda_, cfg_.engine);
    return {E, s, defect_of(s, E)};
  }

  // Walks [a, b], splitting wherever the inner winding changes so that the
  // defect is continuous (hence strictly decreasing) on every piece. The
  // winding is monotone in E, so equal windings at the ends mean no jump.
  void scan(const Sample& a, const Sample& b, bool b_is_zero, std::vector<double>& roots) const {
    if (a.s.winding != b.s.winding) {
      if (tiny(a.E, b.E)) {
        if (a.d > 0.0) roots.push_back(a.E);
        return;
      }
      Sample m = at(0.5 * (a.E + b.E));
      scan(a, m, false, roots);
      scan(m, b, b_is_zero, roots);
      return;
    }
    if (!(a.d > 0.0)) return;
    const bool root_at_b = b_is_zero ? b.s.theta < -cfg_.tol_half : b.d <= 0.0;
    if (!root_at_b) return;
    if (!b_is_zero && b.d == 0.0) {
      roots.push_back(b.E);
      return;
    }
    double lo = a.E, hi = b.E;
    for (int it = 0; it < 400 && !tiny(lo, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      const Sample m = at(mid);
      if (m.d > 0.0) lo = mid;
      else hi = mid;
    }
    roots.push_back(0.5 * (lo + hi));
  }

private:
  const Potential& p_;
  Parity parity_;
  double lambda_;
  const Config& cfg_;
};

} // namespace

double matching_defect(const Potential& p, Parity parity, double E, double lambda,
                       const EngineConfig& cfg) {
  if (!(E <= 0.0)) throw DomainError("matching defect needs E <= 0");
  return defect_of(inner_log_derivative(p, parity, E, lambda, cfg), E);
}

double energy_floor(const Potential& p, double lambda) {
  const double g = pi / p.x0();
  return -(lambda * p.max_abs_inner() + g * g);
}

bool is_critical(const BoundaryState& zero_energy, double tol) {
  return std::abs(zero_energy.theta) <= tol;
}

BoundStateResult count_by_matching(const Potential& p, Parity parity, double lambda,
                                   const Config& cfg) {
  require_cutoff(p);
  Matcher m(p, parity, lambda, cfg);
  const double Emin = energy_floor(p, lambda);
  const Sample top = m.at(0.0);
  const Sample bottom = m.at(Emin);
  const long span = std::abs(top.s.winding - bottom.s.winding);
  const long intervals = std::max(16L, 8 * (span + 1));

  std::vector<Sample> grid{bottom};
  for (long i = 1; i < intervals; ++i)
    grid.push_back(m.at(Emin * (1.0 - static_cast<double>(i) / static_cast<double>(intervals))));
  grid.push_back(top);

  BoundStateResult r;
  r.parity = parity;
  r.method = CountMethod::matching;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i)
    m.scan(grid[i], grid[i + 1], i + 2 == grid.size(), r.energies);
  r.count = static_cast<long>(r.energies.size());
  r.half_bound = is_critical(top.s, cfg.tol_half);
  return r;
}

BoundStateResult count_by_nodes(const Potential& p, Parity parity, double lambda,
                                const Config& cfg) {
  require_cutoff(p);
  const InnerSolution sol = integrate_inner(p, parity, 0.0, lambda, cfg.engine);
  BoundStateResult r;
  r.parity = parity;
  r.method = CountMethod::node_count;
  r.half_bound = is_critical(sol.boundary, cfg.tol_half);
  // Exterior psi(x) = psi(x0) (1 + A (x - x0)) vanishes beyond x0 iff A < 0.
  const bool exterior = !r.half_bound && sol.boundary.theta < 0.0;
  r.count = sol.node_count + (exterior ? 1 : 0);
  return r;
}

bool detect_half_bound(const Potential& p, Parity parity, const Config& cfg) {
  require_cutoff(p);
  return is_critical(inner_log_derivative(p, parity, 0.0, 1.0, cfg.engine), cfg.tol_half);
}

} // namespace levinson
