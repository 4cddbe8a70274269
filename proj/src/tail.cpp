#include "levinson/tail.hpp"

#include <cmath>
#include <numbers>

#include "levinson/errors.hpp"

namespace levinson {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kMatchTolerance = 1e-6;

void require_tail(const Potential& p) {
  if (p.tail().kind != TailKind::inverse_square)
    throw TailModeError("tail mode requires an inverse-square tail");
}

struct Frame {
  // M maps (psi, psi') at x0 to the coefficients (c1, c2) of psi = c1 F + c2 G.
  double m11, m12, m21, m22;

  static Frame at(double j, double k, double x) {
    const RiccatiBessel r = riccati_bessel(j, k, x);
    const double W = -k;
    return {r.dG / W, -r.G / W, -r.dF / W, r.F / W};
  }
  double angle_of_column0() const { return std::atan2(m21, m11); }
};

double coefficient_angle(const Frame& M, double psi, double dpsi) {
  return std::atan2(M.m21 * psi + M.m22 * dpsi, M.m11 * psi + M.m12 * dpsi);
}

// Continuous coefficient angle for a Pruefer state: `base` is the tracked
// angle of M (1, 0). M has det 1/W < 0, so it reverses orientation and every
// node of the inner solution advances the angle by +pi.
double lifted_angle(const Frame& M, double base, const BoundaryState& s) {
  const long m = level_floor(s);
  double sp = std::sin(s.theta), cp = std::cos(s.theta);
  if (s.theta < 0.0) {
    sp = -sp;
    cp = -cp;
  }
  const double ax = M.m11, ay = M.m21;
  const double bx = M.m11 * cp + M.m12 * sp, by = M.m21 * cp + M.m22 * sp;
  const double rho = std::atan2(ax * by - ay * bx, ax * bx + ay * by);
  return base - pi * static_cast<double>(m) + rho;
}

class TailTracker {
public:
  TailTracker(const Potential& p, Parity parity, double k, const Config& cfg)
      : p_(p), parity_(parity), k_(k), cfg_(cfg) {}

  struct Point {
    double lambda, base, eta;
    Frame M;
    BoundaryState s;
  };

  Point run(double lambda) {
    if (cfg_.lambda_steps < 2) throw ConfigError("lambda_steps must be >= 2");
    const Frame M0 = Frame::at(0.0, k_, p_.x0());
    const BoundaryState s0 = state(0.0);
    const double base0 = M0.angle_of_column0();
    delta0_ = lifted_angle(M0, base0, s0);
    Point cur{0.0, base0, 0.0, M0, s0};
    if (lambda == 0.0) return cur;
    for (int i = 1; i <= cfg_.lambda_steps; ++i)
      cur = step(cur, lambda * static_cast<double>(i) / static_cast<double>(cfg_.lambda_steps),
                 lambda);
    return cur;
  }

private:
  BoundaryState state(double lambda) const {
    return inner_log_derivative(p_, parity_, k_ * k_, lambda, cfg_.engine);
  }

  Point step(const Point& a, double lb, double lambda_end) {
    if (++evaluations_ > cfg_.max_lambda_steps)
      throw BranchTrackingError("branch-tracking unresolved: tail refinement budget exhausted at k = " +
                                std::to_string(k_));
    const double j = tail_order(p_.tail().b, lb);
    const Frame M = Frame::at(j, k_, p_.x0());
    const double dbase = std::remainder(M.angle_of_column0() - a.M.angle_of_column0(), 2.0 * pi);
    const double base = a.base + dbase;
    const BoundaryState s = state(lb);
    const double eta = lifted_angle(M, base, s) - delta0_ + j * pi / 2;
    if (std::abs(dbase) < pi / 4 && std::abs(eta - a.eta) < pi / 2) return {lb, base, eta, M, s};
    if (lb - a.lambda <= 1e-15 * lambda_end)
      throw BranchTrackingError("branch-tracking unresolved: lambda step underflow in tail mode");
    const Point mid = step(a, 0.5 * (a.lambda + lb), lambda_end);
    return step(mid, lb, lambda_end);
  }

  const Potential& p_;
  Parity parity_;
  double k_;
  const Config& cfg_;
  double delta0_ = 0.0;
  int evaluations_ = 0;
};

} // namespace

RiccatiBessel riccati_bessel(double j, double k, double x) {
  const double nu = j + 0.5;
  const double z = k * x;
  const double pref = std::sqrt(pi * z / 2.0);
  const double Jn = std::cyl_bessel_j(nu, z), Jn1 = std::cyl_bessel_j(nu + 1.0, z);
  const double Yn = std::cyl_neumann(nu, z), Yn1 = std::cyl_neumann(nu + 1.0, z);
  RiccatiBessel r;
  r.F = pref * Jn;
  r.dF = k * pref * ((j + 1.0) / z * Jn - Jn1);
  r.G = -pref * Yn;
  r.dG = -k * pref * ((j + 1.0) / z * Yn - Yn1);
  return r;
}

double tail_order(double b, double lambda) { return inverse_square_order(lambda * b); }

double tail_phase_shift(const Potential& p, Parity parity, double k, double lambda, double R_match,
                        const Config& cfg) {
  require_tail(p);
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("momentum k must be positive");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  if (!(R_match > p.x0())) throw DomainError("matching radius must exceed x0");

  TailTracker tracker(p, parity, k, cfg);
  const TailTracker::Point end = tracker.run(lambda);

  // Second route: carry the solution through the tail and match there.
  const double j = tail_order(p.tail().b, lambda);
  const InnerSolution far = integrate_to(p, parity, k * k, lambda, R_match, cfg.engine);
  const double at_R = coefficient_angle(Frame::at(j, k, R_match), far.psi, far.dpsi);
  const double at_x0 =
      coefficient_angle(end.M, std::cos(end.s.theta), std::sin(end.s.theta));
  const double mismatch = std::remainder(at_R - at_x0, pi);
  if (std::abs(mismatch) > kMatchTolerance)
    throw TailMatchError("increase matching radius: tail phase at R = " + std::to_string(R_match) +
                         " differs from the x0 match by " + std::to_string(mismatch));
  return end.eta;
}

double tail_phase_shift(const Potential& p, Parity parity, double k, double lambda,
                        const Config& cfg) {
  return tail_phase_shift(p, parity, k, lambda, cfg.match_radius_factor * p.x0(), cfg);
}

TailZeroEnergy tail_zero_energy(const Potential& p, Parity parity, const Config& cfg) {
  require_tail(p);
  const InnerSolution z = integrate_inner(p, parity, 0.0, 1.0, cfg.engine);
  TailZeroEnergy t;
  t.inner_nodes = z.node_count;
  t.theta = z.boundary.theta;
  // Exterior zero-energy solution a x^{j+1} + b x^{-j}: it has a node
  // beyond x0 iff A(x0) < -j / x0.
  t.theta_star = std::atan(-p.tail().j / p.x0());
  t.critical = std::abs(t.theta - t.theta_star) <= cfg.tol_half;
  t.n = t.inner_nodes + (!t.critical && t.theta < t.theta_star ? 1 : 0);
  return t;
}

ZeroMomentumLimit tail_zero_momentum_limit(const Potential& p, Parity parity, const Config& cfg) {
  const TailZeroEnergy t = tail_zero_energy(p, parity, cfg);
  if (t.critical)
    throw RefusedError("refused: critical inverse-square tail (A(0) = -j/x0); the modified "
                       "relation covers non-critical cases only");
  const InnerSolution z = integrate_inner(p, parity, 0.0, 1.0, cfg.engine);
  const double j = p.tail().j;
  const double A0 = z.boundary.log_derivative() + j / p.x0();
  const auto ladder = momentum_ladder(p.x0(), A0, z.quadrature_I, false);
  const double offset = parity == Parity::odd ? -j * pi / 2 : (1.0 - j) * pi / 2;
  return limit_on_ladder(parity, false, offset, ladder,
                         [&](double k) { return tail_phase_shift(p, parity, k, 1.0, cfg); });
}

} // namespace levinson
