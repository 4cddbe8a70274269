#pragma once

#include <string_view>
#include <vector>

#include "levinson/config.hpp"
#include "levinson/potential.hpp"

namespace levinson {

enum class Parity { even, odd };

std::string_view to_string(Parity p);
Parity parity_from_string(std::string_view s);

// Projective form of (psi, psi') at one point.
//
// theta lies in (-pi/2, pi/2] and tan(theta) = psi'/psi; theta = pi/2 is a
// node. winding = -(nodes in (0, at_x]), so the continuous Pruefer angle is
// theta + pi * winding. It decreases through every node.
struct BoundaryState {
  double theta = 0.0;
  long winding = 0;
  double at_x = 0.0;

  double unwrapped() const;
  // A = psi'/psi; +infinity at a node.
  double log_derivative() const;
  bool at_node() const;
};

// floor(unwrapped / pi), computed from (theta, winding) without rounding.
long level_floor(const BoundaryState& s);
// Sign of (unwrapped - L pi), exact.
int compare_level(const BoundaryState& s, long L);

struct InnerSolution {
  BoundaryState boundary;
  long node_count = 0;
  std::vector<double> nodes;  // positions, increasing
  double quadrature_I = 0.0;  // psi(x0)^-2 * integral of psi^2 over [0, x0]; inf at a node
  double psi = 0.0;           // (psi, psi') at x0, scaled so max(|psi|, |psi'|) = 1
  double dpsi = 0.0;
};

// Step actually used for p under cfg. Throws ConfigError for a non-positive
// or non-finite step.
double effective_step(const Potential& p, const EngineConfig& cfg);

// psi'' + (E - lambda V) psi = 0 on [0, x0] with the parity start values.
InnerSolution integrate_inner(const Potential& p, Parity parity, double E, double lambda,
                              const EngineConfig& cfg = {});

// Same equation carried out to R >= x0 (through the tail, if any). The
// quadrature then covers [0, R].
InnerSolution integrate_to(const Potential& p, Parity parity, double E, double lambda, double R,
                           const EngineConfig& cfg = {});

BoundaryState inner_log_derivative(const Potential& p, Parity parity, double E, double lambda,
                                   const EngineConfig& cfg = {});

// -sqrt(-E) for E <= 0. Throws DomainError for E > 0.
double outer_log_derivative(double E);

// |psi(x0)| below this fraction of max(|psi|, |psi'|) is a node: the
// integrator cannot place psi(x0) closer to zero than its own error.
inline constexpr double kNodeResolution = 1e-10;

bool at_node_numerically(const InnerSolution& sol);

// dA/dE = -quadrature_I. Throws NodeDerivativeError at a node.
double dA_dE_quadrature(const InnerSolution& sol);

} // namespace levinson
