#pragma once

#include <optional>

namespace levinson {

// Settings of the fixed-step integrator.
struct EngineConfig {
  std::optional<double> step;     // unset: x0 / 4096
  double node_tolerance = 1e-12;  // relative, for node positions
};

// Everything above the engine that a report echoes back.
struct Config {
  EngineConfig engine;
  double tol_half = 1e-6;            // criticality threshold on the angle
  int lambda_steps = 32;             // initial lambda intervals for phase tracking
  int max_lambda_steps = 1 << 14;
  int sweep_points = 65;             // initial lambda samples of a sweep
  int max_sweep_points = 1 << 16;
  double sweep_tolerance = 1e-6;     // crossing localization in lambda
  double match_radius_factor = 50.0; // tail cross-check radius in units of x0
  int jobs = 1;
};

} // namespace levinson
