#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace levinson {

// Units throughout: hbar = 1, 2m = 1, so the radial equation reads
// psi'' + (E - lambda V(x)) psi = 0 and E = k^2 above threshold.

enum class Family {
  square_well,
  gaussian_well,
  square_barrier,
  double_well,
  tabulated,
  inverse_square_tail,
};

enum class TailKind {
  cutoff,              // V = 0 exactly for x >= x0
  inverse_square,      // V = b / x^2 for x >= x0, b >= -1/4
  rejected_slow_decay, // declared to decay slower than x^-2
};

struct TailClass {
  TailKind kind = TailKind::cutoff;
  double b = 0.0; // inverse_square only
  double j = 0.0; // j(j+1) = b, j >= -1/2
};

// Positive root of j(j+1) = b. Throws InfiniteSpectrumError for b < -1/4.
double inverse_square_order(double b);

std::string_view to_string(Family f);
std::string_view to_string(TailKind t);
// Accepts snake_case or kebab-case names.
Family family_from_string(std::string_view name);

// The serializable description of a potential. Validation happens when a
// Potential is built from it.
struct PotentialDescriptor {
  std::string family;
  std::map<std::string, double> params;
  double x0 = 0.0;
  std::string tail = "cutoff"; // cutoff | inverse_square | slow_decay
  std::vector<double> table;   // tabulated family only

  bool operator==(const PotentialDescriptor&) const = default;
};

// Classifies the declared tail. inverse_square reads params["b"].
// Throws InfiniteSpectrumError for b < -1/4 and ParameterError for an
// unknown tail keyword.
TailClass classify_tail(const PotentialDescriptor& d);

// Immutable symmetric potential V(|x|), known on x >= 0.
class Potential {
public:
  explicit Potential(PotentialDescriptor d);

  Family family() const { return family_; }
  double x0() const { return x0_; }
  const TailClass& tail() const { return tail_; }
  const PotentialDescriptor& descriptor() const { return desc_; }

  // Parameter lookup; throws ParameterError when absent.
  double param(const std::string& name) const;

  // V(x) at full strength. No domain checks (hot path of the integrators).
  double value(double x) const;

  // Positions in (0, x0) where V jumps, sorted. Integrators align steps
  // to these so that each step sees a smooth integrand.
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  // max |V| over [0, x0].
  double max_abs_inner() const { return max_abs_; }

private:
  double inner_value(double x) const;

  PotentialDescriptor desc_;
  Family family_;
  double x0_;
  TailClass tail_;
  std::vector<double> breakpoints_;
  double max_abs_ = 0.0;
  // cached parameters
  double p0_ = 0.0, p1_ = 0.0, p2_ = 0.0, p3_ = 0.0;
};

// lambda V(x). Throws DomainError for x < 0 or lambda outside [0, 1].
double evaluate(const Potential& p, double x, double lambda);

TailClass classify_tail(const Potential& p);

// Builders for the analytic families.
Potential make_square_well(double V0, double a, double x0);
// V = -V0 exp(-(x/a)^2), set to zero beyond the radius where it drops
// below 1e-14 V0. x0 defaults to that radius.
Potential make_gaussian_well(double V0, double a, double x0 = 0.0);
double gaussian_support_radius(double a);
Potential make_square_barrier(double height, double a, double x0);
// Barrier of height `barrier` on [0, inner), well of depth V0 on
// [inner, outer], zero beyond.
Potential make_double_well(double V0, double inner, double outer, double x0,
                           double barrier = 0.0);
// Uniform grid on [0, x0], linear interpolation, zero for x >= x0.
Potential make_tabulated(std::vector<double> values, double x0);
// Square well of depth V0 and half-width a inside, b / x^2 beyond x0.
Potential make_inverse_square_tail(double b, double x0, double V0 = 0.0,
                                   double a = -1.0);

// Structured-text (JSON) form of a descriptor. Numbers round-trip exactly.
std::string to_json_text(const PotentialDescriptor& d);
PotentialDescriptor descriptor_from_json_text(const std::string& text);

} // namespace levinson
