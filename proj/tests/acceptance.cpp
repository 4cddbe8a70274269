// Acceptance run: one [PASS]/[FAIL] line per criterion, exit status 1 if any
// criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "levinson/bound_states.hpp"
#include "levinson/engine.hpp"
#include "levinson/errors.hpp"
#include "levinson/phase_shifts.hpp"
#include "levinson/tail.hpp"
#include "levinson/verifier.hpp"
#include "oracles.hpp"

using namespace levinson;
using std::numbers::pi;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what;
      pass = false;
    }
  }
};

const std::vector<double> kSuiteZ0{0.3, 1.0, 2.0, 2.5, 4.0, 6.0};
constexpr Parity kParities[] = {Parity::even, Parity::odd};

Potential unit_well(double z0) { return make_square_well(z0 * z0, 1.0, 1.0); }

const ParityReport& sector(const LevinsonReport& r, Parity p) {
  for (const ParityReport& pr : r.parities)
    if (pr.parity == p) return pr;
  throw InternalConsistencyError("report lacks a sector");
}

std::vector<Potential> suite() {
  std::vector<Potential> ps;
  for (double z0 : kSuiteZ0) ps.push_back(unit_well(z0));
  ps.push_back(make_gaussian_well(10.0, 1.0));
  ps.push_back(make_gaussian_well(50.0, 0.5));
  ps.push_back(make_square_barrier(3.0, 1.0, 1.0));
  ps.push_back(make_double_well(40.0, 0.3, 1.0, 1.0, 10.0));
  return ps;
}

std::string name(const Potential& p) {
  std::ostringstream s;
  s << to_string(p.family());
  for (const auto& [k, v] : p.descriptor().params) s << ' ' << k << '=' << v;
  return s.str();
}

// 1. Free closed forms.
void free_closed_forms(Outcome& o) {
  double worst = 0.0;
  for (double x0 : {1.0, 2.5}) {
    const Potential p = make_square_well(0.0, x0, x0);
    for (int i = 0; i < 50; ++i) {
      const double kx = 0.1 * std::pow(100.0, i / 49.0);
      const double kappa = kx / x0;
      for (Parity par : kParities) {
        const double A = inner_log_derivative(p, par, -kappa * kappa, 1.0).log_derivative();
        const double ref = oracle::free_A(par, kappa, x0);
        worst = std::max(worst, std::abs(A - ref) / std::abs(ref));
      }
    }
  }
  o.require(worst <= 1e-8, "relative error above 1e-8");
  o.detail << (o.pass ? "" : "; ") << "max relative error " << worst;
}

// 2. Free-particle relations.
void free_levinson(Outcome& o) {
  const LevinsonReport r = verify(make_square_well(0.0, 1.0, 1.0));
  const ParityReport& e = sector(r, Parity::even);
  const ParityReport& d = sector(r, Parity::odd);
  o.require(e.critical && e.limit.eta0 == 0.0 && e.n == 0 && e.pass, "even sector");
  o.require(!d.critical && d.limit.eta0 == 0.0 && d.n == 0 && d.pass, "odd sector");
  o.require(e.raw_residual <= 1e-3 && d.raw_residual <= 1e-3, "raw residual above 1e-3");
  o.detail << (o.pass ? "" : "; ") << "raw residuals " << e.raw_residual << ", " << d.raw_residual;
}

// 3. Square-well suite.
void square_well_suite(Outcome& o) {
  double worst = 0.0;
  for (double z0 : kSuiteZ0) {
    const Potential p = unit_well(z0);
    const LevinsonReport r = verify(p);
    o.require(r.pass, "verify fails at z0 = " + std::to_string(z0));
    for (Parity par : kParities) {
      const long expected = oracle::well_count(par, z0);
      const std::string where = " z0 = " + std::to_string(z0) + " " + std::string(to_string(par));
      o.require(count_by_matching(p, par, 1.0).count == expected, "matching count" + where);
      o.require(count_by_nodes(p, par, 1.0).count == expected, "node count" + where);
      const ParityReport& pr = sector(r, par);
      o.require(pr.n == expected, "reported n" + where);
      const double eta = phase_shift(p, par, 1e-3, 1.0);
      const double res = std::abs(eta + pr.limit.offset - pi * static_cast<double>(expected));
      worst = std::max(worst, res);
      o.require(res <= 0.02, "residual at k = 1e-3" + where);
    }
  }
  o.detail << (o.pass ? "" : "; ") << "max residual at k=1e-3: " << worst;
}

// 4. Critical case and its perturbations.
void critical_case(Outcome& o) {
  const Potential p = unit_well(pi);
  o.require(detect_half_bound(p, Parity::even), "half-bound not detected");
  const LevinsonReport r = verify(p);
  const ParityReport& e = sector(r, Parity::even);
  o.require(e.critical && e.n == 1 && std::abs(e.limit.eta0 - pi) < 1e-12 && e.pass,
            "critical even sector");
  for (double f : {1.01, 0.99}) {
    const Potential q = make_square_well(f * pi * pi, 1.0, 1.0);
    const LevinsonReport rq = verify(q);
    const ParityReport& eq = sector(rq, Parity::even);
    // Deeper: A(0) has fallen through zero, one more bound state.
    const long expected = f > 1.0 ? 2 : 1;
    o.require(!eq.critical, "perturbed well still critical");
    o.require(eq.n == expected && rq.pass, "perturbed count");
    o.require(eq.sweep_net == expected, "perturbed sweep");
    o.detail << (o.pass ? "" : "; ") << "V0*" << f << ": n+=" << eq.n << " ";
  }
}

// 5. Monotonicity of the angle and the quadrature derivative.
void monotonicity(Outcome& o) {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  double worst_fd = 0.0;
  for (int w = 0; w < 20; ++w) {
    Potential p = make_square_well(1.0, 1.0, 1.0);
    switch (w % 3) {
    case 0: {
      const double a = 0.5 + u(rng);
      p = make_square_well(1.0 + 59.0 * u(rng), a, a * (1.0 + 0.5 * u(rng)));
      break;
    }
    case 1: p = make_gaussian_well(5.0 + 55.0 * u(rng), 0.4 + 0.6 * u(rng)); break;
    default: {
      const double inner = 0.1 + 0.4 * u(rng);
      const double outer = inner + 0.3 + u(rng);
      p = make_double_well(5.0 + 55.0 * u(rng), inner, outer, outer, 20.0 * u(rng));
    }
    }
    const double Emin = energy_floor(p, 1.0);
    for (Parity par : kParities) {
      double prev = 0.0;
      for (int i = 0; i < 40; ++i) {
        const double E = Emin + (0.0 - Emin) * i / 39.0;
        const double t = inner_log_derivative(p, par, E, 1.0).unwrapped();
        if (i > 0) o.require(t <= prev, "angle increased with E in " + name(p));
        prev = t;
      }
      for (int i = 0; i < 10; ++i) {
        double E = Emin * (1.0 - (i + 0.5) / 10.0);
        const double dE = 1e-5 * std::max(1.0, std::abs(Emin));
        // Stay clear of nodes at x0, where A has a pole.
        for (int tries = 0; tries < 40; ++tries) {
          const InnerSolution s = integrate_inner(p, par, E, 1.0);
          if (std::abs(s.boundary.log_derivative()) < 20.0 &&
              integrate_inner(p, par, E - dE, 1.0).node_count ==
                  integrate_inner(p, par, E + dE, 1.0).node_count)
            break;
          E += 0.0123 * std::abs(Emin);
          if (E > -dE) E = Emin * 0.5 * u(rng);
        }
        const InnerSolution s = integrate_inner(p, par, E, 1.0);
        const double q = dA_dE_quadrature(s);
        const double fd = (inner_log_derivative(p, par, E + dE, 1.0).log_derivative() -
                           inner_log_derivative(p, par, E - dE, 1.0).log_derivative()) /
                          (2.0 * dE);
        const double rel = std::abs(fd - q) / std::abs(q);
        worst_fd = std::max(worst_fd, rel);
        o.require(rel <= 1e-4, "finite difference off in " + name(p));
        ++checked;
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << checked << " derivative checks, max relative deviation "
           << worst_fd;
}

// 6. Crossing identity.
void crossing_identity(Outcome& o) {
  int cases = 0;
  for (const Potential& p : suite())
    for (Parity par : kParities) {
      const long n = count_by_matching(p, par, 1.0).count;
      const long net = sweep_lambda(p, par).net;
      o.require(net == n, "net " + std::to_string(net) + " != n " + std::to_string(n) + " for " +
                              name(p) + " " + std::string(to_string(par)));
      ++cases;
    }
  o.detail << (o.pass ? "" : "; ") << cases << " potential/parity pairs";
}

// 7. Phase jumps along the lambda sweep.
void phase_jumps(Outcome& o) {
  const Potential p = unit_well(4.0);
  const double k = 1e-4;
  const int n = 401;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = static_cast<double>(i) / (n - 1);
  const std::vector<double> eta = phase_along_lambda(p, Parity::odd, k, grid);

  std::vector<double> downs;
  for (const CrossingEvent& e : sweep_lambda(p, Parity::odd).events) {
    o.require(e.kind == CrossingKind::down, "unexpected crossing kind");
    downs.push_back(e.lambda_star);
  }
  // A(0, lambda) = z cot z with z = 4 sqrt(lambda): node at x0 where z = pi,
  // A = 1/x0 only at lambda = 0. Next to a crossing eta drifts by O(k / A),
  // so step heights and flatness are read between plateaus `reach` samples
  // away.
  const double node_lambda = std::pow(pi / 4.0, 2);
  const int reach = 20;
  auto change = [&](int i0, int i1) {
    return eta[std::min(i1, n - 1)] - eta[std::max(i0, 0)];
  };
  std::size_t steps = 0;
  double worst_step = 0.0, worst_flat = 0.0;
  for (int i = 1; i < n; ++i) {
    const double d = eta[i] - eta[i - 1];
    long inside = 0;
    for (double l : downs) inside += l > grid[i - 1] && l <= grid[i];
    if (std::abs(d) >= pi / 2) {
      ++steps;
      worst_step = std::max(worst_step, std::abs(change(i - 1 - reach, i + reach) - pi));
      o.require(inside == 1, "step without a down-crossing at lambda " + std::to_string(grid[i]));
    } else {
      o.require(inside == 0, "down-crossing without a step at lambda " + std::to_string(grid[i]));
    }
    if (node_lambda > grid[i - 1] && node_lambda <= grid[i])
      worst_flat = std::max(worst_flat, std::abs(change(i - 1 - reach, i + reach)));
  }
  worst_flat = std::max(worst_flat, std::abs(change(0, reach)));
  o.require(steps == downs.size() && steps == 1, "step count");
  o.require(worst_step < 1e-2, "plateau difference differs from pi");
  o.require(worst_flat < 1e-2, "eta moves at a crossing of 1/x0 or at the node at x0");
  o.detail << (o.pass ? "" : "; ") << steps << " step(s), |plateau step - pi| <= " << worst_step
           << ", max change across flat points " << worst_flat;
}

// 8. Tail mode.
int run_cli(const std::string& args) {
  const std::string cmd = "'" LEVINSON_CLI "' " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

void tail_mode(Outcome& o) {
  const Potential t0 = make_inverse_square_tail(0.0, 1.0, 4.0);
  const Potential cut = unit_well(2.0);
  double worst = 0.0;
  for (Parity par : kParities)
    for (double k : {1e-3, 1e-2, 0.1, 1.0, 3.0})
      worst = std::max(worst, std::abs(tail_phase_shift(t0, par, k, 1.0) - phase_shift(cut, par, k, 1.0)));
  o.require(worst <= 1e-8, "b = 0 differs from cutoff");

  const LevinsonReport r = verify(make_inverse_square_tail(2.0, 1.0, 4.0));
  double res = 0.0;
  for (const ParityReport& pr : r.parities) res = std::max(res, pr.raw_residual);
  o.require(r.pass && r.modified, "b = 2 verification");
  o.require(res <= 0.05, "b = 2 residual");

  const int status = run_cli("verify --family square-well --V0 4 --a 1 --x0 1 --tail-b -0.5");
  o.require(status == 2, "b = -0.5 exit status " + std::to_string(status));
  o.detail << (o.pass ? "" : "; ") << "b=0 max deviation " << worst << ", b=2 residual " << res
           << ", b=-0.5 exit " << status;
}

// 9. Step halving and an independent integrator.
void oracle_equivalence(Outcome& o) {
  double worst_A = 0.0, worst_eta = 0.0, worst_verlet = 0.0;
  for (const Potential& p : suite()) {
    Config fine;
    fine.engine.step = effective_step(p, {}) / 2.0;
    const double Emin = energy_floor(p, 1.0);
    for (Parity par : kParities) {
      for (double E : {0.0, 0.5 * Emin, 0.1 * Emin, 1.0}) {
        const double A = inner_log_derivative(p, par, E, 1.0).log_derivative();
        const double Af = inner_log_derivative(p, par, E, 1.0, fine.engine).log_derivative();
        const double Av = oracle::verlet_A(p, par, E, 1.0, effective_step(p, {}) / 16.0);
        worst_A = std::max(worst_A, std::abs(A - Af));
        worst_verlet = std::max(worst_verlet, std::abs(A - Av));
      }
      for (double k : {1e-3, 0.3, 2.0})
        worst_eta = std::max(worst_eta, std::abs(phase_shift(p, par, k, 1.0) -
                                                 phase_shift(p, par, k, 1.0, fine)));
      worst_eta = std::max(worst_eta, std::abs(zero_momentum_limit(p, par).eta_raw -
                                               zero_momentum_limit(p, par, fine).eta_raw));
    }
  }
  o.require(worst_A < 1e-6, "A changes under step halving");
  o.require(worst_eta < 1e-6, "eta changes under step halving");
  o.require(worst_verlet < 1e-6, "second-order integrator disagrees");
  o.detail << (o.pass ? "" : "; ") << "max |dA| " << worst_A << ", max |d eta| " << worst_eta
           << ", max |A - A_verlet| " << worst_verlet;
}

} // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria{
      {"free-particle closed forms", free_closed_forms},
      {"free-particle Levinson relations", free_levinson},
      {"square-well suite", square_well_suite},
      {"critical well and perturbations", critical_case},
      {"monotonicity and quadrature derivative", monotonicity},
      {"crossing identity", crossing_identity},
      {"phase-jump bookkeeping", phase_jumps},
      {"inverse-square tail mode", tail_mode},
      {"step halving and independent integrator", oracle_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("[%s] %zu. %s (%.1f s): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].title,
                secs, o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
