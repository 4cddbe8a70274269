#include "levinson/phase_shifts.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "levinson/bound_states.hpp"
#include "levinson/errors.hpp"
#include "levinson/parallel.hpp"
#include "levinson/tail.hpp"

namespace levinson {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kBranchAgreement = 1e-6;

// The branch of tan(eta) nearest to `target`.
double branch_near(const TanEta& t, Parity parity, double target) {
  double base = t.infinite ? pi / 2 : std::atan(t.value);
  if (parity == Parity::even) base -= pi / 2;
  return base + pi * std::round((target - base) / pi);
}

void check_momentum(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("momentum k must be positive");
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
}

class Tracker {
public:
  Tracker(const Potential& p, Parity parity, double k, double lambda, const Config& cfg)
      : p_(p), parity_(parity), k_(k), lambda_(lambda), cfg_(cfg) {}

  double run() {
    if (cfg_.lambda_steps < 2) throw ConfigError("lambda_steps must be >= 2");
    Point cur = start();
    for (int i = 1; i <= cfg_.lambda_steps; ++i)
      cur = step(cur, lambda_ * static_cast<double>(i) / static_cast<double>(cfg_.lambda_steps));
    return cur.eta;
  }

  // One tracked value per grid entry; the budget applies per interval.
  std::vector<double> path(const std::vector<double>& lambdas) {
    std::vector<double> out;
    Point cur = start();
    for (double l : lambdas) {
      evaluations_ = 0;
      if (l > cur.lambda) cur = step(cur, l);
      out.push_back(cur.eta);
    }
    return out;
  }

private:
  struct Point {
    double lambda, eta, g;
  };

  Point start() const { return {0.0, 0.0, prufer_phase(state(0.0), k_)}; }

  BoundaryState state(double lambda) const {
    return inner_log_derivative(p_, parity_, k_ * k_, lambda, cfg_.engine);
  }

  Point step(const Point& a, double lb) {
    if (++evaluations_ > cfg_.max_lambda_steps)
      throw BranchTrackingError("branch-tracking unresolved: lambda refinement budget exhausted at k = " +
                                std::to_string(k_));
    const BoundaryState s = state(lb);
    const double g = prufer_phase(s, k_);
    const double predicted = a.eta + (g - a.g);
    const double eta = branch_near(tan_eta_odd(k_, s, p_.x0()), parity_, predicted);
    if (std::abs(eta - predicted) > kBranchAgreement)
      throw BranchTrackingError("branch-tracking unresolved: phase formula and Pruefer lift disagree");
    if (std::abs(eta - a.eta) < pi / 2) return {lb, eta, g};
    if (lb - a.lambda <= 1e-15 * lambda_)
      throw BranchTrackingError("branch-tracking unresolved: lambda step underflow");
    const Point mid = step(a, 0.5 * (a.lambda + lb));
    return step(mid, lb);
  }

  const Potential& p_;
  Parity parity_;
  double k_;
  double lambda_;
  const Config& cfg_;
  int evaluations_ = 0;
};

} // namespace

TanEta tan_eta_odd(double k, const BoundaryState& A, double x0) {
  check_momentum(k);
  const double s = std::sin(A.theta), c = std::cos(A.theta);
  const double S = std::sin(k * x0), C = std::cos(k * x0);
  TanEta t;
  t.num = k * c * C - s * S;
  t.den = s * C + k * c * S;
  const double scale = std::abs(s * C) + std::abs(k * c * S);
  t.infinite = std::abs(t.den) <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
  t.value = t.infinite ? std::numeric_limits<double>::infinity() : t.num / t.den;
  return t;
}

double prufer_phase(const BoundaryState& s, double k) {
  // unwrapped = m pi + phi with phi in [0, pi).
  const long m = level_floor(s);
  double sp = std::sin(s.theta), cp = std::cos(s.theta);
  if (s.theta < 0.0) {
    sp = -sp;
    cp = -cp;
  }
  return -pi * static_cast<double>(m) + std::atan2(k * cp, sp);
}

double phase_shift(const Potential& p, Parity parity, double k, double lambda, const Config& cfg) {
  check_momentum(k);
  check_lambda(lambda);
  switch (p.tail().kind) {
  case TailKind::inverse_square: return tail_phase_shift(p, parity, k, lambda, cfg);
  case TailKind::rejected_slow_decay:
    throw RefusedError("refused: tail declared to decay slower than x^-2");
  case TailKind::cutoff: break;
  }
  if (lambda == 0.0) return 0.0;
  return Tracker(p, parity, k, lambda, cfg).run();
}

std::vector<double> phase_along_lambda(const Potential& p, Parity parity, double k,
                                       const std::vector<double>& lambdas, const Config& cfg) {
  check_momentum(k);
  if (p.tail().kind != TailKind::cutoff)
    throw TailModeError("tail mode required: lambda paths need a cutoff potential");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    check_lambda(lambdas[i]);
    if (i > 0 && !(lambdas[i] >= lambdas[i - 1]))
      throw ConfigError("lambda grid must be non-decreasing");
  }
  const double top = lambdas.empty() ? 1.0 : std::max(lambdas.back(), 1e-300);
  return Tracker(p, parity, k, top, cfg).path(lambdas);
}

PhaseShiftCurve phase_curve(const Potential& p, Parity parity, const std::vector<double>& k_grid,
                            double lambda, const Config& cfg) {
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    check_momentum(k_grid[i]);
    if (i > 0 && !(k_grid[i] > k_grid[i - 1]))
      throw ConfigError("k grid must be strictly increasing");
  }
  PhaseShiftCurve c;
  c.parity = parity;
  c.lambda = lambda;
  c.k_grid = k_grid;
  c.eta = parallel_map<double>(k_grid.size(), cfg.jobs, [&](std::size_t i) {
    return phase_shift(p, parity, k_grid[i], lambda, cfg);
  });
  return c;
}

SmallKExpansion small_k_expansion(const Potential& p, Parity parity, double lambda,
                                  const Config& cfg) {
  const InnerSolution z = integrate_inner(p, parity, 0.0, lambda, cfg.engine);
  if (at_node_numerically(z))
    throw ExpansionUndefinedError("expansion undefined: zero-energy solution has a node at x0");
  return {std::tan(z.boundary.theta), z.quadrature_I};
}

std::vector<double> base_momentum_ladder(double x0) {
  return {1e-2 / x0, 1e-3 / x0, 1e-4 / x0, 1e-5 / x0};
}

std::vector<double> momentum_ladder(double x0, double A0, double c2, bool critical) {
  std::vector<double> ladder = base_momentum_ladder(x0);
  if (!std::isfinite(A0)) return ladder;
  const double scale = std::isfinite(c2) ? std::max(c2, x0) : x0;
  const double a = std::abs(A0);
  if (!critical) {
    // Stop once c2 k^2 is negligible against A0 at the last four points.
    while (ladder.back() * ladder.back() * scale > 1e-7 * a && ladder.back() > 1e-12 / x0)
      ladder.push_back(ladder.back() / 10.0);
    return ladder;
  }
  std::vector<double> kept;
  for (double k : ladder)
    if (k * k * scale >= 100.0 * a) kept.push_back(k);
  if (kept.size() < 2) {
    std::vector<double> wide{1e-1 / x0, std::pow(10.0, -1.5) / x0};
    wide.insert(wide.end(), kept.begin(), kept.end());
    kept = wide;
  }
  return kept;
}

ZeroMomentumLimit limit_on_ladder(Parity parity, bool critical, double offset,
                                  const std::vector<double>& ladder,
                                  const std::function<double(double)>& eta) {
  if (ladder.size() < 2) throw ConfigError("momentum ladder needs at least two points");
  ZeroMomentumLimit z;
  z.parity = parity;
  z.critical = critical;
  z.offset = offset;
  z.k_ladder = ladder;
  for (double k : ladder) z.eta_ladder.push_back(eta(k));
  const std::size_t n = ladder.size();
  for (std::size_t i = n >= 4 ? n - 3 : 1; i < n; ++i)
    if (std::abs(z.eta_ladder[i] - z.eta_ladder[i - 1]) > pi / 4)
      throw LimitUnresolvedError("limit unresolved: eta moves by more than pi/4 between k = " +
                                 std::to_string(ladder[i - 1]) + " and k = " +
                                 std::to_string(ladder[i]));
  const double k1 = ladder[n - 2], k2 = ladder[n - 1];
  const double e1 = z.eta_ladder[n - 2], e2 = z.eta_ladder[n - 1];
  z.eta_raw = e2 - k2 * (e1 - e2) / (k1 - k2);
  z.multiple = std::lround((z.eta_raw + offset) / pi);
  z.eta0 = pi * static_cast<double>(z.multiple) - offset;
  z.raw_residual = std::abs(z.eta_raw + offset - pi * static_cast<double>(z.multiple));
  return z;
}

ZeroMomentumLimit zero_momentum_limit(const Potential& p, Parity parity, const Config& cfg) {
  switch (p.tail().kind) {
  case TailKind::inverse_square: return tail_zero_momentum_limit(p, parity, cfg);
  case TailKind::rejected_slow_decay:
    throw RefusedError("refused: tail declared to decay slower than x^-2");
  case TailKind::cutoff: break;
  }
  const InnerSolution z = integrate_inner(p, parity, 0.0, 1.0, cfg.engine);
  const bool critical = is_critical(z.boundary, cfg.tol_half);
  const double A0 = z.boundary.log_derivative();
  const auto ladder = momentum_ladder(p.x0(), A0, z.quadrature_I, critical);
  double offset = 0.0;
  if (parity == Parity::odd) offset = critical ? -pi / 2 : 0.0;
  else offset = critical ? 0.0 : pi / 2;
  return limit_on_ladder(parity, critical, offset, ladder,
                         [&](double k) { return phase_shift(p, parity, k, 1.0, cfg); });
}

} // namespace levinson
