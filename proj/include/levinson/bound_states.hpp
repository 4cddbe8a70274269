#pragma once

#include <vector>

#include "levinson/config.hpp"
#include "levinson/engine.hpp"
#include "levinson/potential.hpp"

namespace levinson {

enum class CountMethod { matching, node_count };

struct BoundStateResult {
  Parity parity = Parity::even;
  long count = 0;
  std::vector<double> energies;  // increasing, all < 0; empty for node_count
  bool half_bound = false;
  CountMethod method = CountMethod::matching;
};

// theta_inner - theta_outer with theta_outer = -atan(kappa). The reduced
// inner angle keeps the value in (-pi/2, pi); it is zero exactly at a bound
// state and jumps by +pi where psi(x0) passes through zero.
double matching_defect(const Potential& p, Parity parity, double E, double lambda,
                       const EngineConfig& cfg = {});

// Lower end of the energy search: no inner node survives below it.
double energy_floor(const Potential& p, double lambda);

// Roots of the matching defect on (energy_floor, 0). Cutoff tails only.
BoundStateResult count_by_matching(const Potential& p, Parity parity, double lambda,
                                   const Config& cfg = {});

// Nodes of the zero-energy solution on (0, inf): those inside x0 plus the
// one the linear exterior continuation has when A(0) < 0. Cutoff tails only.
BoundStateResult count_by_nodes(const Potential& p, Parity parity, double lambda,
                                const Config& cfg = {});

// |theta_inner(0, lambda)| <= tol. The angle is taken relative to the level
// the zero-energy exterior solution defines: 0 for a cutoff.
bool is_critical(const BoundaryState& zero_energy, double tol);

bool detect_half_bound(const Potential& p, Parity parity, const Config& cfg = {});

} // namespace levinson
