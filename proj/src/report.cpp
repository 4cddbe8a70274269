#include "levinson/report.hpp"

#include <cstdio>
#include <json.hpp>

namespace levinson {

namespace {

using nlohmann::json;

json descriptor_json(const PotentialDescriptor& d) { return json::parse(to_json_text(d)); }

json config_json(const Config& c) {
  json j;
  j["step"] = c.engine.step ? json(*c.engine.step) : json(nullptr);
  j["node_tolerance"] = c.engine.node_tolerance;
  j["tol_half"] = c.tol_half;
  j["lambda_steps"] = c.lambda_steps;
  j["max_lambda_steps"] = c.max_lambda_steps;
  j["sweep_points"] = c.sweep_points;
  j["max_sweep_points"] = c.max_sweep_points;
  j["sweep_tolerance"] = c.sweep_tolerance;
  j["match_radius_factor"] = c.match_radius_factor;
  return j;
}

json events_json(const std::vector<CrossingEvent>& events) {
  json a = json::array();
  for (const auto& e : events)
    a.push_back({{"lambda_star", e.lambda_star}, {"direction", std::string(to_string(e.kind))}});
  return a;
}

json parity_json(const ParityReport& r) {
  json j;
  j["parity"] = std::string(to_string(r.parity));
  j["n"] = r.n;
  j["n_matching"] = r.n_matching >= 0 ? json(r.n_matching) : json(nullptr);
  j["n_nodes"] = r.n_nodes;
  j["energies"] = r.energies;
  j["eta0"] = r.limit.eta0;
  j["eta_raw"] = r.limit.eta_raw;
  j["multiple"] = r.limit.multiple;
  j["critical"] = r.critical;
  j["relation"] = r.relation;
  j["residual"] = r.residual;
  j["raw_residual"] = r.raw_residual;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["k_ladder"] = r.limit.k_ladder;
  j["eta_ladder"] = r.limit.eta_ladder;
  if (r.has_sweep) j["sweep"] = {{"net", r.sweep_net}, {"events", events_json(r.sweep_events)}};
  return j;
}

} // namespace

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string report_to_json(const LevinsonReport& r) {
  json j;
  j["schema"] = kReportSchema;
  j["potential"] = descriptor_json(r.descriptor);
  j["config"] = config_json(r.config);
  if (r.tail.kind != TailKind::cutoff)
    j["tail"] = {{"kind", std::string(to_string(r.tail.kind))},
                 {"b", r.tail.b},
                 {"j", r.tail.j},
                 {"modified", r.modified}};
  json parities = json::object();
  for (const auto& p : r.parities) parities[std::string(to_string(p.parity))] = parity_json(p);
  j["parities"] = parities;
  j["verdict"] = r.pass ? "pass" : "fail";
  return j.dump(2) + "\n";
}

std::string phase_curve_csv(const PhaseShiftCurve& c) {
  std::string out = "k,eta,lambda,parity\n";
  for (std::size_t i = 0; i < c.k_grid.size(); ++i)
    out += format_number(c.k_grid[i]) + "," + format_number(c.eta[i]) + "," +
           format_number(c.lambda) + "," + std::string(to_string(c.parity)) + "\n";
  return out;
}

std::string sweep_csv(const std::vector<LambdaSweep>& sweeps) {
  std::string out = "lambda,theta0,parity\n";
  for (const auto& s : sweeps)
    for (std::size_t i = 0; i < s.lambda_grid.size(); ++i)
      out += format_number(s.lambda_grid[i]) + "," + format_number(s.theta0[i]) + "," +
             std::string(to_string(s.parity)) + "\n";
  return out;
}

std::string sweep_events_json(const std::vector<LambdaSweep>& sweeps) {
  json a = json::array();
  for (const auto& s : sweeps)
    a.push_back({{"parity", std::string(to_string(s.parity))},
                 {"net", s.net},
                 {"terminal_half_bound", s.terminal_half_bound},
                 {"events", events_json(s.events)}});
  return json{{"sweeps", a}}.dump(2) + "\n";
}

} // namespace levinson
