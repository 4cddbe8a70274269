#include "levinson/verifier.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "levinson/bound_states.hpp"
#include "levinson/errors.hpp"
#include "levinson/parallel.hpp"
#include "levinson/tail.hpp"

namespace levinson {

namespace {

constexpr double pi = std::numbers::pi;

class Sweeper {
public:
  Sweeper(const Potential& p, Parity parity, const Config& cfg)
      : p_(p), parity_(parity), cfg_(cfg) {}

  const BoundaryState& at(double lambda) {
    auto it = cache_.find(lambda);
    if (it == cache_.end())
      it = cache_.emplace(lambda, inner_log_derivative(p_, parity_, 0.0, lambda, cfg_.engine)).first;
    return it->second;
  }

  // First lambda in (a, b] whose level floor differs from `from`.
  double locate(double a, double b, long from) {
    if (compare_level(at(a), from) == 0) return a;
    while (b - a > cfg_.sweep_tolerance) {
      const double m = 0.5 * (a + b);
      if (level_floor(at(m)) == from) a = m;
      else b = m;
    }
    return 0.5 * (a + b);
  }

private:
  const Potential& p_;
  Parity parity_;
  const Config& cfg_;
  std::map<double, BoundaryState> cache_;
};

std::string relation_text(Parity parity, bool critical, bool tail) {
  if (tail)
    return parity == Parity::odd ? "eta-(0) - j*pi/2 = n-*pi" : "eta+(0) + (1-j)*pi/2 = n+*pi";
  if (critical)
    return parity == Parity::odd ? "eta-(0) - pi/2 = n-*pi" : "eta+(0) = n+*pi";
  return parity == Parity::odd ? "eta-(0) = n-*pi" : "eta+(0) + pi/2 = n+*pi";
}

void settle(ParityReport& r) {
  r.raw_residual = std::abs(r.limit.eta_raw + r.limit.offset - pi * static_cast<double>(r.n));
  r.pass = r.pass && r.limit.multiple == r.n;
  r.residual = r.pass ? 0.0 : r.raw_residual;
}

ParityReport verify_cutoff(const Potential& p, Parity parity, const Config& cfg) {
  const BoundStateResult by_match = count_by_matching(p, parity, 1.0, cfg);
  const BoundStateResult by_nodes = count_by_nodes(p, parity, 1.0, cfg);
  if (by_match.count != by_nodes.count)
    throw InternalConsistencyError(std::string(to_string(parity)) +
                                   ": matching count " + std::to_string(by_match.count) +
                                   " != node count " + std::to_string(by_nodes.count));
  ParityReport r;
  r.parity = parity;
  r.n = by_nodes.count;
  r.n_matching = by_match.count;
  r.n_nodes = by_nodes.count;
  r.energies = by_match.energies;
  r.critical = by_nodes.half_bound;
  r.limit = zero_momentum_limit(p, parity, cfg);
  if (r.limit.critical != r.critical)
    throw InternalConsistencyError("criticality differs between counting and phase limit");
  r.relation = relation_text(parity, r.critical, false);

  const LambdaSweep sw = sweep_lambda(p, parity, cfg);
  r.has_sweep = true;
  r.sweep_net = sw.net;
  r.sweep_events = sw.events;
  r.pass = sw.net == r.n;
  settle(r);
  return r;
}

ParityReport verify_tail(const Potential& p, Parity parity, const Config& cfg) {
  const TailZeroEnergy z = tail_zero_energy(p, parity, cfg);
  ParityReport r;
  r.parity = parity;
  r.n = z.n;
  r.n_nodes = z.n;
  r.critical = z.critical;
  r.limit = tail_zero_momentum_limit(p, parity, cfg);
  r.relation = relation_text(parity, false, true);
  r.pass = true;
  settle(r);
  return r;
}

} // namespace

std::string_view to_string(CrossingKind k) {
  switch (k) {
  case CrossingKind::down: return "down";
  case CrossingKind::up: return "up";
  case CrossingKind::half_bound: return "half_bound";
  case CrossingKind::half_bound_loss: return "half_bound_loss";
  }
  return "unknown";
}

LambdaSweep sweep_lambda(const Potential& p, Parity parity, const Config& cfg) {
  if (p.tail().kind != TailKind::cutoff)
    throw TailModeError("tail mode required: the lambda sweep needs a cutoff potential");
  if (cfg.sweep_points < 2) throw ConfigError("sweep needs at least two lambda points");
  if (!(cfg.sweep_tolerance > 0.0)) throw ConfigError("sweep tolerance must be positive");

  Sweeper sw(p, parity, cfg);
  std::vector<double> grid;
  for (int i = 0; i < cfg.sweep_points; ++i)
    grid.push_back(static_cast<double>(i) / static_cast<double>(cfg.sweep_points - 1));

  for (bool refined = true; refined;) {
    refined = false;
    std::vector<double> next{grid.front()};
    for (std::size_t i = 1; i < grid.size(); ++i) {
      const double d = sw.at(grid[i]).unwrapped() - sw.at(grid[i - 1]).unwrapped();
      if (std::abs(d) > pi / 4) {
        next.push_back(0.5 * (grid[i - 1] + grid[i]));
        refined = true;
      }
      next.push_back(grid[i]);
    }
    grid = std::move(next);
    if (static_cast<long>(grid.size()) > cfg.max_sweep_points)
      throw SweepUnresolvedError("sweep unresolved: lambda refinement exceeded " +
                                 std::to_string(cfg.max_sweep_points) + " points");
  }

  LambdaSweep out;
  out.parity = parity;
  out.lambda_grid = grid;
  for (double l : grid) out.theta0.push_back(sw.at(l).unwrapped());

  const BoundaryState end = sw.at(grid.back());
  out.terminal_half_bound = is_critical(end, cfg.tol_half);
  // A terminal tangency sits on level `winding`; any approach below it is
  // the loss of a bound state, not an up-crossing.
  const long end_level = out.terminal_half_bound ? end.winding : level_floor(end);

  long down = 0, up = 0, loss = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const long fa = level_floor(sw.at(grid[i - 1]));
    const bool last = i + 1 == grid.size();
    const long fb = last ? end_level : level_floor(sw.at(grid[i]));
    if (fb < fa) {
      for (long l = fa; l > fb; --l) {
        out.events.push_back({sw.locate(grid[i - 1], grid[i], l), CrossingKind::down});
        ++down;
      }
    } else if (fb > fa) {
      for (long l = fa; l < fb; ++l) {
        if (last && out.terminal_half_bound && l + 1 == fb) {
          out.events.push_back({grid[i], CrossingKind::half_bound_loss});
          ++loss;
        } else {
          out.events.push_back({sw.locate(grid[i - 1], grid[i], l), CrossingKind::up});
          ++up;
        }
      }
    }
  }
  // The marker records an arrival at A(0) = 0; a path that is critical
  // right up to lambda = 1 never arrives.
  const bool arrives = !is_critical(sw.at(grid[grid.size() - 2]), cfg.tol_half);
  if (out.terminal_half_bound && arrives &&
      (out.events.empty() || out.events.back().kind != CrossingKind::half_bound_loss))
    out.events.push_back({grid.back(), CrossingKind::half_bound});
  out.net = down - up - loss;
  return out;
}

LevinsonReport verify(const Potential& p, const Config& cfg, const std::vector<Parity>& parities) {
  if (parities.empty()) throw ConfigError("no parity selected");
  LevinsonReport rep;
  rep.descriptor = p.descriptor();
  rep.config = cfg;
  rep.tail = p.tail();
  switch (p.tail().kind) {
  case TailKind::rejected_slow_decay:
    throw RefusedError("refused: the potential is declared to decay slower than x^-2, where the "
                       "Levinson relations fail");
  case TailKind::inverse_square: rep.modified = true; break;
  case TailKind::cutoff: break;
  }
  rep.parities = parallel_map<ParityReport>(parities.size(), cfg.jobs, [&](std::size_t i) {
    return rep.modified ? verify_tail(p, parities[i], cfg) : verify_cutoff(p, parities[i], cfg);
  });
  rep.pass = true;
  for (const auto& r : rep.parities) rep.pass = rep.pass && r.pass;
  return rep;
}

} // namespace levinson
