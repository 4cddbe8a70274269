#pragma once

#include <functional>
#include <string>
#include <vector>

#include "levinson/config.hpp"
#include "levinson/engine.hpp"
#include "levinson/potential.hpp"

namespace levinson {

inline constexpr const char* kPhaseConvention = "eta(k,0)=0, continuous in lambda";

// tan(eta_-) from the matching condition, written in the Pruefer angle of the
// inner solution so that a node at x0 needs no special case. `infinite` marks
// a vanishing denominator; `value` is then meaningless.
struct TanEta {
  double num = 0.0;
  double den = 1.0;
  bool infinite = false;
  double value = 0.0;
};

TanEta tan_eta_odd(double k, const BoundaryState& A, double x0);

// Continuous outer phase carried by a Pruefer state at momentum k. The
// difference of two values is the change of eta between them, exactly.
double prufer_phase(const BoundaryState& s, double k);

// eta(k, lambda) for a cutoff potential, tracked in lambda from eta(k, 0) = 0.
// Even parity returns eta_+ (eta_+ + pi/2 obeys the odd-parity formula).
double phase_shift(const Potential& p, Parity parity, double k, double lambda,
                   const Config& cfg = {});

// eta(k, lambda_i) along a non-decreasing grid, one tracked path from
// lambda = 0. Cutoff potentials only.
std::vector<double> phase_along_lambda(const Potential& p, Parity parity, double k,
                                       const std::vector<double>& lambdas, const Config& cfg = {});

struct PhaseShiftCurve {
  Parity parity = Parity::odd;
  double lambda = 1.0;
  std::vector<double> k_grid;
  std::vector<double> eta;
  std::string convention_tag = kPhaseConvention;
};

// k_grid must be strictly increasing and positive. Tail potentials go
// through the inverse-square machinery.
PhaseShiftCurve phase_curve(const Potential& p, Parity parity, const std::vector<double>& k_grid,
                            double lambda, const Config& cfg = {});

// A(E, lambda) ~ A0 - c2 k^2 near threshold.
struct SmallKExpansion {
  double A0 = 0.0;
  double c2 = 0.0;
};

SmallKExpansion small_k_expansion(const Potential& p, Parity parity, double lambda,
                                  const Config& cfg = {});

struct ZeroMomentumLimit {
  Parity parity = Parity::odd;
  double eta0 = 0.0;        // on the lattice
  bool critical = false;
  long multiple = 0;        // (eta0 + offset) / pi
  double offset = 0.0;      // eta0 + offset is a multiple of pi
  double eta_raw = 0.0;     // extrapolated, before rounding
  double raw_residual = 0.0;
  std::vector<double> k_ladder;
  std::vector<double> eta_ladder;
};

// 10^{-2-j} / x0 for j = 0..3.
std::vector<double> base_momentum_ladder(double x0);

// Evaluates eta on the ladder, extrapolates linearly to k = 0 and rounds to
// the lattice {n pi - offset}. Throws LimitUnresolvedError when successive
// ladder values move by more than pi/4.
ZeroMomentumLimit limit_on_ladder(Parity parity, bool critical, double offset,
                                  const std::vector<double>& ladder,
                                  const std::function<double(double)>& eta);

// Ladder for a zero-energy state with log-derivative distance A0 from its
// critical value: extended downward until c2 k^2 is far below |A0|
// (non-critical), or trimmed to k where c2 k^2 dominates A0 (critical).
std::vector<double> momentum_ladder(double x0, double A0, double c2, bool critical);

ZeroMomentumLimit zero_momentum_limit(const Potential& p, Parity parity, const Config& cfg = {});

} // namespace levinson
