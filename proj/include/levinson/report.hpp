#pragma once

#include <string>
#include <vector>

#include "levinson/phase_shifts.hpp"
#include "levinson/verifier.hpp"

namespace levinson {

inline constexpr const char* kReportSchema = "levinson-report/1";

// 17 significant digits: reads back bit-identical.
std::string format_number(double v);

// JSON report. Numbers are written so that they read back bit-identical.
std::string report_to_json(const LevinsonReport& r);

// Header "k,eta,lambda,parity", one row per k.
std::string phase_curve_csv(const PhaseShiftCurve& c);

// Header "lambda,theta0,parity"; rows of every sweep in order.
std::string sweep_csv(const std::vector<LambdaSweep>& sweeps);

// {"sweeps": [{"parity", "net", "terminal_half_bound", "events": [...]}]}
std::string sweep_events_json(const std::vector<LambdaSweep>& sweeps);

} // namespace levinson
