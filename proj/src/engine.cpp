#include "levinson/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "levinson/errors.hpp"

namespace levinson {

namespace {

constexpr double pi = std::numbers::pi;

struct State {
  double psi, dpsi, I;
};

// One RK4 step of length h from x. V is clamped into [lo, hi] so that a jump
// at a segment end is seen from the inside only.
template <class Q>
State rk4(const State& y, double x, double h, const Q& q) {
  auto f = [&](double xx, const State& s) {
    return State{s.dpsi, q(xx) * s.psi, s.psi * s.psi};
  };
  State k1 = f(x, y);
  State y2{y.psi + 0.5 * h * k1.psi, y.dpsi + 0.5 * h * k1.dpsi, 0.0};
  State k2 = f(x + 0.5 * h, y2);
  State y3{y.psi + 0.5 * h * k2.psi, y.dpsi + 0.5 * h * k2.dpsi, 0.0};
  State k3 = f(x + 0.5 * h, y3);
  State y4{y.psi + h * k3.psi, y.dpsi + h * k3.dpsi, 0.0};
  State k4 = f(x + h, y4);
  return {y.psi + h / 6.0 * (k1.psi + 2.0 * k2.psi + 2.0 * k3.psi + k4.psi),
          y.dpsi + h / 6.0 * (k1.dpsi + 2.0 * k2.dpsi + 2.0 * k3.dpsi + k4.dpsi),
          y.I + h / 6.0 * (k1.I + 2.0 * k2.I + 2.0 * k3.I + k4.I)};
}

// pi/2 exactly iff psi = 0, so the angle always agrees with the node count.
double reduce_angle(double psi, double dpsi) {
  if (psi == 0.0) return pi / 2;
  const double edge = std::nextafter(pi / 2, 0.0);
  return std::clamp(std::atan(dpsi / psi), -edge, edge);
}

InnerSolution run(const Potential& p, Parity parity, double E, double lambda, double R,
                  const EngineConfig& cfg) {
  if (!std::isfinite(E)) throw DomainError("energy must be finite");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  const double h = effective_step(p, cfg);
  const double rel_tol = cfg.node_tolerance > 0.0 ? cfg.node_tolerance : 1e-12;

  std::vector<double> cuts{0.0};
  for (double b : p.breakpoints()) cuts.push_back(b);
  cuts.push_back(p.x0());
  if (R > p.x0()) cuts.push_back(R);

  State y = parity == Parity::even ? State{1.0, 0.0, 0.0} : State{0.0, 1.0, 0.0};
  InnerSolution out;

  for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
    const double s0 = cuts[s], s1 = cuts[s + 1];
    const double lo = std::nextafter(s0, s1), hi = std::nextafter(s1, s0);
    auto q = [&](double x) { return lambda * p.value(std::clamp(x, lo, hi)) - E; };
    const double len = s1 - s0;
    const auto n = static_cast<long>(std::ceil(len / h - 1e-9));
    const double hs = len / static_cast<double>(std::max(n, 1L));
    for (long i = 0; i < std::max(n, 1L); ++i) {
      const double x = s0 + hs * static_cast<double>(i);
      State next = rk4(y, x, hs, q);
      if (y.psi != 0.0 && (next.psi == 0.0 || std::signbit(next.psi) != std::signbit(y.psi))) {
        double a = 0.0, b = hs;
        while (b - a > rel_tol * (x + b)) {
          const double m = 0.5 * (a + b);
          State t = rk4(y, x, m, q);
          if (t.psi == 0.0 || std::signbit(t.psi) != std::signbit(y.psi)) b = m;
          else a = m;
        }
        out.nodes.push_back(x + 0.5 * (a + b));
      }
      const double m = std::max(std::abs(next.psi), std::abs(next.dpsi));
      if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("integration produced a non-finite state");
      y = {next.psi / m, next.dpsi / m, next.I / (m * m)};
    }
  }

  out.node_count = static_cast<long>(out.nodes.size());
  out.boundary = {reduce_angle(y.psi, y.dpsi), -out.node_count, std::max(R, p.x0())};
  out.psi = y.psi;
  out.dpsi = y.dpsi;
  out.quadrature_I = y.psi != 0.0 ? y.I / (y.psi * y.psi) : std::numeric_limits<double>::infinity();
  return out;
}

} // namespace

std::string_view to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

Parity parity_from_string(std::string_view s) {
  if (s == "even") return Parity::even;
  if (s == "odd") return Parity::odd;
  throw ParameterError("parity must be 'even' or 'odd'");
}

double BoundaryState::unwrapped() const { return theta + pi * static_cast<double>(winding); }

double BoundaryState::log_derivative() const {
  return at_node() ? std::numeric_limits<double>::infinity() : std::tan(theta);
}

bool BoundaryState::at_node() const { return theta == pi / 2; }

long level_floor(const BoundaryState& s) { return s.winding + (s.theta < 0.0 ? -1 : 0); }

int compare_level(const BoundaryState& s, long L) {
  const long d = s.winding - L;
  if (d >= 1) return 1;
  if (d <= -1) return -1;
  return (s.theta > 0.0) - (s.theta < 0.0);
}

double effective_step(const Potential& p, const EngineConfig& cfg) {
  if (!cfg.step) return p.x0() / 4096.0;
  const double h = *cfg.step;
  if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("integration step must be positive");
  return h;
}

InnerSolution integrate_inner(const Potential& p, Parity parity, double E, double lambda,
                              const EngineConfig& cfg) {
  return run(p, parity, E, lambda, p.x0(), cfg);
}

InnerSolution integrate_to(const Potential& p, Parity parity, double E, double lambda, double R,
                           const EngineConfig& cfg) {
  if (!(R >= p.x0())) throw DomainError("integration radius must be >= x0");
  return run(p, parity, E, lambda, R, cfg);
}

BoundaryState inner_log_derivative(const Potential& p, Parity parity, double E, double lambda,
                                   const EngineConfig& cfg) {
  return integrate_inner(p, parity, E, lambda, cfg).boundary;
}

double outer_log_derivative(double E) {
  if (!(E <= 0.0)) throw DomainError("outer log-derivative needs E <= 0");
  return E == 0.0 ? 0.0 : -std::sqrt(-E);
}

bool at_node_numerically(const InnerSolution& sol) {
  return std::abs(sol.psi) <= kNodeResolution * std::max(std::abs(sol.psi), std::abs(sol.dpsi)) ||
         !std::isfinite(sol.quadrature_I);
}

double dA_dE_quadrature(const InnerSolution& sol) {
  if (at_node_numerically(sol))
    throw NodeDerivativeError("derivative undefined at node: psi(x0) = 0");
  return -sol.quadrature_I;
}

} // namespace levinson
