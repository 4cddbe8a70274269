#pragma once

#include "levinson/config.hpp"
#include "levinson/engine.hpp"
#include "levinson/phase_shifts.hpp"
#include "levinson/potential.hpp"

namespace levinson {

// Solutions of u'' + (k^2 - j(j+1)/x^2) u = 0 and their x-derivatives:
//   F = sqrt(pi z / 2) J_{j+1/2}(z)  ~ sin(z - j pi/2)
//   G = -sqrt(pi z / 2) Y_{j+1/2}(z) ~ cos(z - j pi/2),   z = k x.
// Wronskian F G' - F' G = -k.
struct RiccatiBessel {
  double F = 0.0, dF = 0.0, G = 0.0, dG = 0.0;
};

RiccatiBessel riccati_bessel(double j, double k, double x);

// Order of the scaled tail lambda b / x^2.
double tail_order(double b, double lambda);

// eta(k, lambda) for a potential with a b/x^2 tail. lambda scales the tail
// too. Reported as the phase against sin(kx) plus j(lambda) pi, which is
// eta(k, 0) = 0 at lambda = 0 and continuous in lambda. The result is
// rechecked by integrating through the tail to R_match; a mismatch above
// 1e-6 throws TailMatchError.
double tail_phase_shift(const Potential& p, Parity parity, double k, double lambda, double R_match,
                        const Config& cfg = {});
// R_match = cfg.match_radius_factor * x0.
double tail_phase_shift(const Potential& p, Parity parity, double k, double lambda,
                        const Config& cfg = {});

struct TailZeroEnergy {
  long n = 0;            // nodes on (0, inf)
  long inner_nodes = 0;
  bool critical = false; // exterior solution is the pure decaying x^-j
  double theta = 0.0;
  double theta_star = 0.0; // atan(-j / x0)
};

TailZeroEnergy tail_zero_energy(const Potential& p, Parity parity, const Config& cfg = {});

// Throws RefusedError for a critical tail.
ZeroMomentumLimit tail_zero_momentum_limit(const Potential& p, Parity parity,
                                           const Config& cfg = {});

} // namespace levinson
