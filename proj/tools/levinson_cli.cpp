#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "levinson/bound_states.hpp"
#include "levinson/errors.hpp"
#include "levinson/phase_shifts.hpp"
#include "levinson/report.hpp"
#include "levinson/tail.hpp"
#include "levinson/verifier.hpp"

namespace fs = std::filesystem;
using namespace levinson;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitRefused = 2;
constexpr int kExitUsage = 64;

// Raised for anything wrong with the invocation or its input files.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string potential_file;
  std::string family;
  std::optional<double> V0, a, height, inner, outer, barrier, x0, tail_b;
  bool slow_decay = false;
  std::string parity = "both";
  double k_min = 1e-3, k_max = 5.0;
  int k_points = 50;
  std::optional<int> lambda_points;
  double lambda = 1.0;
  std::optional<double> step;
  double tol_half = 1e-6;
  double match_radius_factor = 50.0;
  std::string out;
  std::string events;
  int jobs = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out.flush()) throw Error("write to '" + path + "' failed");
}

double need(const std::optional<double>& v, const char* flag, const std::string& family) {
  if (!v) throw UsageError(family + " needs " + flag);
  return *v;
}

PotentialDescriptor build_descriptor(const Options& o) {
  PotentialDescriptor d;
  if (!o.potential_file.empty()) {
    try {
      d = descriptor_from_json_text(read_file(o.potential_file));
    } catch (const ParameterError& e) {
      throw UsageError(e.what());
    }
    if (o.x0) d.x0 = *o.x0;
  } else {
    if (o.family.empty()) throw UsageError("give --family or --potential");
    const Family f = family_from_string(o.family);
    switch (f) {
    case Family::square_well:
    case Family::square_barrier: {
      const double a = o.a.value_or(1.0);
      d = f == Family::square_well
              ? make_square_well(need(o.V0, "--V0", o.family), a, o.x0.value_or(a)).descriptor()
              : make_square_barrier(need(o.height, "--height", o.family), a, o.x0.value_or(a))
                    .descriptor();
      break;
    }
    case Family::gaussian_well:
      d = make_gaussian_well(need(o.V0, "--V0", o.family), o.a.value_or(1.0), o.x0.value_or(0.0))
              .descriptor();
      break;
    case Family::double_well: {
      const double outer = need(o.outer, "--outer", o.family);
      d = make_double_well(need(o.V0, "--V0", o.family), need(o.inner, "--inner", o.family), outer,
                           o.x0.value_or(outer), o.barrier.value_or(0.0))
              .descriptor();
      break;
    }
    case Family::inverse_square_tail: {
      const double x0 = o.x0.value_or(1.0);
      d = {"inverse_square_tail",
           {{"b", need(o.tail_b, "--tail-b", o.family)}, {"V0", o.V0.value_or(0.0)},
            {"a", o.a.value_or(x0)}},
           x0,
           "inverse_square",
           {}};
      return d;
    }
    case Family::tabulated: throw UsageError("tabulated potentials are read with --potential");
    }
  }
  if (o.tail_b) {
    d.tail = "inverse_square";
    d.params["b"] = *o.tail_b;
  }
  if (o.slow_decay) d.tail = "slow_decay";
  return d;
}

Config build_config(const Options& o) {
  Config c;
  c.engine.step = o.step;
  c.tol_half = o.tol_half;
  c.match_radius_factor = o.match_radius_factor;
  if (o.lambda_points) {
    c.lambda_steps = *o.lambda_points;
    c.sweep_points = *o.lambda_points;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  c.jobs = o.jobs > 0 ? o.jobs : static_cast<int>(std::max(hw, 1u));
  if (!(c.tol_half > 0.0)) throw UsageError("--tol-half must be positive");
  if (!(c.match_radius_factor > 1.0)) throw UsageError("--r-match must exceed 1");
  return c;
}

std::vector<Parity> parities_of(const std::string& s) {
  if (s == "both") return {Parity::even, Parity::odd};
  if (s == "even") return {Parity::even};
  if (s == "odd") return {Parity::odd};
  throw UsageError("--parity must be even, odd or both");
}

std::vector<double> k_grid(const Options& o) {
  if (!(o.k_min > 0.0) || !(o.k_max >= o.k_min) || o.k_points < 1)
    throw UsageError("need 0 < k-min <= k-max and k-points >= 1");
  if (o.k_points == 1) return {o.k_min};
  if (o.k_max == o.k_min) throw UsageError("k-min == k-max needs k-points = 1");
  std::vector<double> k;
  const double l0 = std::log(o.k_min), l1 = std::log(o.k_max);
  for (int i = 0; i < o.k_points; ++i)
    k.push_back(std::exp(l0 + (l1 - l0) * i / (o.k_points - 1)));
  k.front() = o.k_min;
  k.back() = o.k_max;
  return k;
}

// "dir/phase.csv" -> "dir/phase_even.csv"
std::string with_suffix(const std::string& path, const std::string& suffix) {
  fs::path p(path);
  fs::path name = p.stem();
  name += "_" + suffix;
  name += p.extension();
  return (p.parent_path() / name).string();
}

int cmd_verify(const Potential& p, const Config& cfg, const Options& o) {
  const LevinsonReport r = verify(p, cfg, parities_of(o.parity));
  const std::string text = report_to_json(r);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    write_file(o.out, text);
    for (const auto& pr : r.parities)
      std::cout << to_string(pr.parity) << ": n=" << pr.n << " eta0=" << format_number(pr.limit.eta0)
                << (pr.critical ? " critical" : "") << " [" << pr.relation << "] "
                << (pr.pass ? "pass" : "fail") << "\n";
  }
  return r.pass ? 0 : kExitFail;
}

int cmd_phase(const Potential& p, const Config& cfg, const Options& o) {
  const auto parities = parities_of(o.parity);
  const auto ks = k_grid(o);
  std::vector<std::pair<std::string, std::string>> files;
  const std::string base = o.out.empty() ? "phase.csv" : o.out;
  for (Parity par : parities) {
    const PhaseShiftCurve c = phase_curve(p, par, ks, o.lambda, cfg);
    const std::string path =
        parities.size() > 1 ? with_suffix(base, std::string(to_string(par))) : base;
    files.emplace_back(path, phase_curve_csv(c));
  }
  std::vector<std::string> written;
  try {
    for (const auto& [path, text] : files) {
      written.push_back(path);
      write_file(path, text);
    }
  } catch (...) {
    for (const auto& w : written) fs::remove(w);
    throw;
  }
  for (const auto& [path, _] : files) std::cout << path << "\n";
  return 0;
}

int cmd_sweep(const Potential& p, const Config& cfg, const Options& o) {
  std::vector<LambdaSweep> sweeps;
  for (Parity par : parities_of(o.parity)) sweeps.push_back(sweep_lambda(p, par, cfg));
  const std::string csv_path = o.out.empty() ? "sweep.csv" : o.out;
  std::string ev = o.events;
  if (ev.empty()) {
    fs::path e(csv_path);
    e.replace_extension();
    e += "_events.json";
    ev = e.string();
  }
  write_file(csv_path, sweep_csv(sweeps));
  write_file(ev, sweep_events_json(sweeps));
  for (const auto& s : sweeps)
    std::cout << to_string(s.parity) << ": net=" << s.net << " events=" << s.events.size()
              << (s.terminal_half_bound ? " terminal half-bound" : "") << "\n";
  return 0;
}

int cmd_bound(const Potential& p, const Config& cfg, const Options& o) {
  nlohmann::json a = nlohmann::json::array();
  for (Parity par : parities_of(o.parity)) {
    nlohmann::json j;
    j["parity"] = std::string(to_string(par));
    if (p.tail().kind == TailKind::cutoff) {
      const BoundStateResult m = count_by_matching(p, par, 1.0, cfg);
      const BoundStateResult n = count_by_nodes(p, par, 1.0, cfg);
      if (m.count != n.count)
        throw InternalConsistencyError("matching and node counts disagree");
      j["count"] = m.count;
      j["energies"] = m.energies;
      j["half_bound"] = m.half_bound;
    } else if (p.tail().kind == TailKind::inverse_square) {
      const TailZeroEnergy z = tail_zero_energy(p, par, cfg);
      j["count"] = z.n;
      j["energies"] = nlohmann::json::array();
      j["half_bound"] = z.critical;
    } else {
      throw RefusedError("refused: tail declared to decay slower than x^-2");
    }
    a.push_back(j);
  }
  const std::string text = nlohmann::json{{"bound_states", a}}.dump(2) + "\n";
  if (o.out.empty()) std::cout << text;
  else write_file(o.out, text);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parity-resolved Levinson theorem checks for 1D symmetric potentials"};
  app.set_config("--config", "", "TOML/INI file with the same keys as the long flags");
  app.require_subcommand(1);
  Options o;

  app.add_option("--potential", o.potential_file, "potential descriptor (JSON)");
  app.add_option("--family", o.family,
                 "square-well | gaussian-well | square-barrier | double-well | inverse-square-tail");
  app.add_option("--V0", o.V0, "well depth");
  app.add_option("--a", o.a, "half-width");
  app.add_option("--height", o.height, "barrier height");
  app.add_option("--inner", o.inner, "double well: inner edge");
  app.add_option("--outer", o.outer, "double well: outer edge");
  app.add_option("--barrier", o.barrier, "double well: central barrier height");
  app.add_option("--x0", o.x0, "cutoff radius");
  app.add_option("--tail-b", o.tail_b, "b of a b/x^2 tail beyond x0");
  app.add_flag("--slow-decay", o.slow_decay, "declare a tail decaying slower than x^-2");
  app.add_option("--parity", o.parity, "even | odd | both");
  app.add_option("--k-min", o.k_min, "smallest momentum");
  app.add_option("--k-max", o.k_max, "largest momentum");
  app.add_option("--k-points", o.k_points, "log-spaced momenta");
  app.add_option("--lambda-points", o.lambda_points, "initial lambda grid size");
  app.add_option("--lambda", o.lambda, "coupling for phase curves");
  app.add_option("--step", o.step, "integration step (default x0/4096)");
  app.add_option("--tol-half", o.tol_half, "criticality tolerance on the angle");
  app.add_option("--r-match", o.match_radius_factor, "tail cross-check radius in units of x0");
  app.add_option("--out", o.out, "output file");
  app.add_option("--events", o.events, "sweep events file");
  app.add_option("--jobs", o.jobs, "worker threads (default: all cores)");

  auto* verify_cmd = app.add_subcommand("verify", "check the Levinson relations")->fallthrough();
  auto* phase_cmd = app.add_subcommand("phase", "phase-shift curves as CSV")->fallthrough();
  auto* sweep_cmd = app.add_subcommand("sweep", "lambda sweep of A(0, lambda)")->fallthrough();
  auto* bound_cmd = app.add_subcommand("bound", "bound-state listing")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "levinson: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const Config cfg = build_config(o);
    PotentialDescriptor d = build_descriptor(o);
    const Potential p(std::move(d));
    if (verify_cmd->parsed()) return cmd_verify(p, cfg, o);
    if (phase_cmd->parsed()) return cmd_phase(p, cfg, o);
    if (sweep_cmd->parsed()) return cmd_sweep(p, cfg, o);
    if (bound_cmd->parsed()) return cmd_bound(p, cfg, o);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "levinson: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InfiniteSpectrumError& e) {
    std::cerr << "levinson: " << e.what() << "\n";
    return kExitRefused;
  } catch (const RefusedError& e) {
    std::cerr << "levinson: " << e.what() << "\n";
    return kExitRefused;
  } catch (const ParameterError& e) {
    std::cerr << "levinson: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "levinson: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "levinson: " << e.what() << "\n";
    return kExitFail;
  }
}
