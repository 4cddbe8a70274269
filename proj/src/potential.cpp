#include "levinson/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "levinson/errors.hpp"

namespace levinson {

namespace {

bool finite_all(const PotentialDescriptor& d) {
  if (!std::isfinite(d.x0)) return false;
  for (const auto& [_, v] : d.params)
    if (!std::isfinite(v)) return false;
  for (double v : d.table)
    if (!std::isfinite(v)) return false;
  return true;
}

double get_or(const PotentialDescriptor& d, const char* name, double fallback) {
  auto it = d.params.find(name);
  return it == d.params.end() ? fallback : it->second;
}

double require(const PotentialDescriptor& d, const char* name) {
  auto it = d.params.find(name);
  if (it == d.params.end())
    throw ParameterError(d.family + ": missing parameter '" + name + "'");
  return it->second;
}

void add_breakpoint(std::vector<double>& bps, double x, double x0) {
  if (x > 0.0 && x < x0) bps.push_back(x);
}

} // namespace

double inverse_square_order(double b) {
  if (!(b >= -0.25))
    throw InfiniteSpectrumError(
        "infinite spectrum: tail b/x^2 with b < -1/4 binds infinitely many states");
  return -0.5 + std::sqrt(b + 0.25);
}

std::string_view to_string(Family f) {
  switch (f) {
  case Family::square_well: return "square_well";
  case Family::gaussian_well: return "gaussian_well";
  case Family::square_barrier: return "square_barrier";
  case Family::double_well: return "double_well";
  case Family::tabulated: return "tabulated";
  case Family::inverse_square_tail: return "inverse_square_tail";
  }
  return "unknown";
}

std::string_view to_string(TailKind t) {
  switch (t) {
  case TailKind::cutoff: return "cutoff";
  case TailKind::inverse_square: return "inverse_square";
  case TailKind::rejected_slow_decay: return "slow_decay";
  }
  return "unknown";
}

Family family_from_string(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '-', '_');
  for (Family f : {Family::square_well, Family::gaussian_well, Family::square_barrier,
                   Family::double_well, Family::tabulated, Family::inverse_square_tail})
    if (to_string(f) == s) return f;
  throw ParameterError("unknown potential family '" + std::string(name) + "'");
}

TailClass classify_tail(const PotentialDescriptor& d) {
  std::string t = d.tail;
  std::replace(t.begin(), t.end(), '-', '_');
  bool is_tail_family = false;
  try {
    is_tail_family = family_from_string(d.family) == Family::inverse_square_tail;
  } catch (const ParameterError&) {
  }
  if (t == "slow_decay" || t == "rejected_slow_decay")
    return {TailKind::rejected_slow_decay, 0.0, 0.0};
  if (t == "inverse_square" || (is_tail_family && (t.empty() || t == "cutoff"))) {
    double b = require(d, "b");
    if (!std::isfinite(b)) throw ParameterError("tail coefficient b must be finite");
    return {TailKind::inverse_square, b, inverse_square_order(b)};
  }
  if (t.empty() || t == "cutoff") return {TailKind::cutoff, 0.0, 0.0};
  throw ParameterError("unknown tail kind '" + d.tail + "'");
}

TailClass classify_tail(const Potential& p) { return p.tail(); }

Potential::Potential(PotentialDescriptor d)
    : desc_(std::move(d)), family_(family_from_string(desc_.family)), x0_(desc_.x0) {
  if (!finite_all(desc_)) throw ParameterError("potential parameters must be finite");
  if (!(x0_ > 0.0)) throw ParameterError("cutoff radius x0 must be positive");
  desc_.family = std::string(to_string(family_));
  tail_ = classify_tail(desc_);
  if (family_ == Family::inverse_square_tail) desc_.tail = "inverse_square";
  else if (desc_.tail.empty()) desc_.tail = "cutoff";

  switch (family_) {
  case Family::square_well: {
    p0_ = require(desc_, "V0");
    p1_ = require(desc_, "a");
    if (!(p1_ > 0.0)) throw ParameterError("square_well: a must be positive");
    if (x0_ < p1_) throw ParameterError("square_well: x0 must be >= a");
    add_breakpoint(breakpoints_, p1_, x0_);
    max_abs_ = std::abs(p0_);
    break;
  }
  case Family::gaussian_well: {
    p0_ = require(desc_, "V0");
    p1_ = require(desc_, "a");
    if (!(p1_ > 0.0)) throw ParameterError("gaussian_well: a must be positive");
    p2_ = gaussian_support_radius(p1_);
    if (x0_ < p2_)
      throw ParameterError("gaussian_well: x0 must be >= the truncation radius " +
                           std::to_string(p2_));
    add_breakpoint(breakpoints_, p2_, x0_);
    max_abs_ = std::abs(p0_);
    break;
  }
  case Family::square_barrier: {
    p0_ = require(desc_, "height");
    p1_ = require(desc_, "a");
    if (!(p1_ > 0.0)) throw ParameterError("square_barrier: a must be positive");
    if (x0_ < p1_) throw ParameterError("square_barrier: x0 must be >= a");
    add_breakpoint(breakpoints_, p1_, x0_);
    max_abs_ = std::abs(p0_);
    break;
  }
  case Family::double_well: {
    p0_ = require(desc_, "V0");
    p1_ = require(desc_, "inner");
    p2_ = require(desc_, "outer");
    p3_ = get_or(desc_, "barrier", 0.0);
    if (!(p1_ > 0.0) || !(p2_ > p1_))
      throw ParameterError("double_well: need 0 < inner < outer");
    if (x0_ < p2_) throw ParameterError("double_well: x0 must be >= outer");
    add_breakpoint(breakpoints_, p1_, x0_);
    add_breakpoint(breakpoints_, p2_, x0_);
    max_abs_ = std::max(std::abs(p0_), std::abs(p3_));
    break;
  }
  case Family::tabulated: {
    if (desc_.table.size() < 2) throw ParameterError("tabulated: need at least two samples");
    p0_ = x0_ / static_cast<double>(desc_.table.size() - 1);
    for (double v : desc_.table) max_abs_ = std::max(max_abs_, std::abs(v));
    break;
  }
  case Family::inverse_square_tail: {
    p0_ = get_or(desc_, "V0", 0.0);
    p1_ = get_or(desc_, "a", x0_);
    if (!(p1_ > 0.0)) throw ParameterError("inverse_square_tail: a must be positive");
    if (x0_ < p1_) throw ParameterError("inverse_square_tail: x0 must be >= a");
    add_breakpoint(breakpoints_, p1_, x0_);
    max_abs_ = std::abs(p0_);
    break;
  }
  }
  std::sort(breakpoints_.begin(), breakpoints_.end());
  breakpoints_.erase(std::unique(breakpoints_.begin(), breakpoints_.end()), breakpoints_.end());
}

double Potential::param(const std::string& name) const {
  auto it = desc_.params.find(name);
  if (it == desc_.params.end()) throw ParameterError("no parameter '" + name + "'");
  return it->second;
}

double Potential::inner_value(double x) const {
  switch (family_) {
  case Family::square_well:
  case Family::inverse_square_tail:
    return x <= p1_ ? -p0_ : 0.0;
  case Family::gaussian_well:
    if (x >= p2_) return 0.0;
    return -p0_ * std::exp(-(x / p1_) * (x / p1_));
  case Family::square_barrier:
    return x <= p1_ ? p0_ : 0.0;
  case Family::double_well:
    if (x < p1_) return p3_;
    return x <= p2_ ? -p0_ : 0.0;
  case Family::tabulated: {
    const auto& t = desc_.table;
    double s = x / p0_;
    auto i = static_cast<std::size_t>(s);
    if (i >= t.size() - 1) return t.back();
    double f = s - static_cast<double>(i);
    return t[i] + f * (t[i + 1] - t[i]);
  }
  }
  return 0.0;
}

double Potential::value(double x) const {
  if (x >= x0_) {
    if (tail_.kind == TailKind::inverse_square) return tail_.b / (x * x);
    // A declared slow tail carries no functional form; only the
    // declaration matters downstream.
    return 0.0;
  }
  return inner_value(x);
}

double evaluate(const Potential& p, double x, double lambda) {
  if (!(x >= 0.0)) throw DomainError("potential evaluated at negative x");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  return lambda * p.value(x);
}

double gaussian_support_radius(double a) {
  return a * std::sqrt(14.0 * std::log(10.0));
}

Potential make_square_well(double V0, double a, double x0) {
  return Potential({"square_well", {{"V0", V0}, {"a", a}}, x0, "cutoff", {}});
}

Potential make_gaussian_well(double V0, double a, double x0) {
  if (x0 <= 0.0) x0 = gaussian_support_radius(a);
  return Potential({"gaussian_well", {{"V0", V0}, {"a", a}}, x0, "cutoff", {}});
}

Potential make_square_barrier(double height, double a, double x0) {
  return Potential({"square_barrier", {{"height", height}, {"a", a}}, x0, "cutoff", {}});
}

Potential make_double_well(double V0, double inner, double outer, double x0, double barrier) {
  return Potential({"double_well",
                    {{"V0", V0}, {"inner", inner}, {"outer", outer}, {"barrier", barrier}},
                    x0,
                    "cutoff",
                    {}});
}

Potential make_tabulated(std::vector<double> values, double x0) {
  return Potential({"tabulated", {}, x0, "cutoff", std::move(values)});
}

Potential make_inverse_square_tail(double b, double x0, double V0, double a) {
  if (a < 0.0) a = x0;
  return Potential(
      {"inverse_square_tail", {{"b", b}, {"V0", V0}, {"a", a}}, x0, "inverse_square", {}});
}

} // namespace levinson
