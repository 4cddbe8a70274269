#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "levinson/config.hpp"
#include "levinson/engine.hpp"
#include "levinson/phase_shifts.hpp"
#include "levinson/potential.hpp"

namespace levinson {

enum class CrossingKind {
  down,            // A(0, lambda) falls through zero: a bound state appears
  up,              // A(0, lambda) rises through zero: one disappears
  half_bound,      // A(0, 1) = 0 reached from above: no count change
  half_bound_loss, // A(0, 1) = 0 reached from below: the last state turns half-bound
};

std::string_view to_string(CrossingKind k);

struct CrossingEvent {
  double lambda_star = 0.0;
  CrossingKind kind = CrossingKind::down;
};

struct LambdaSweep {
  Parity parity = Parity::even;
  std::vector<double> lambda_grid;
  std::vector<double> theta0;  // unwrapped Pruefer angle of the zero-energy solution at x0
  std::vector<CrossingEvent> events;
  long net = 0;                // #down - #up - #half_bound_loss
  bool terminal_half_bound = false;
};

// Samples the zero-energy angle over lambda in [0, 1], refines until
// neighbours differ by at most pi/4, and localizes every level crossing to
// cfg.sweep_tolerance. Cutoff tails only.
LambdaSweep sweep_lambda(const Potential& p, Parity parity, const Config& cfg = {});

struct ParityReport {
  Parity parity = Parity::even;
  long n = 0;
  long n_matching = -1;  // -1 when matching does not apply (tail mode)
  long n_nodes = 0;
  std::vector<double> energies;
  bool critical = false;
  ZeroMomentumLimit limit;
  std::string relation;
  double residual = 0.0;     // 0 on pass
  double raw_residual = 0.0; // |eta_raw + offset - n pi|
  bool pass = false;
  bool has_sweep = false;
  long sweep_net = 0;
  std::vector<CrossingEvent> sweep_events;
};

struct LevinsonReport {
  PotentialDescriptor descriptor;
  Config config;
  TailClass tail;
  bool modified = false;  // inverse-square relation in use
  std::vector<ParityReport> parities;
  bool pass = false;
};

// Checks the parity-resolved relations. Throws RefusedError for declared
// slow tails and critical inverse-square tails, InternalConsistencyError when
// the two bound-state counts disagree.
LevinsonReport verify(const Potential& p, const Config& cfg = {},
                      const std::vector<Parity>& parities = {Parity::even, Parity::odd});

} // namespace levinson
