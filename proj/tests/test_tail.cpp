#include "doctest.h"

#include <cmath>
#include <numbers>

#include "levinson/errors.hpp"
#include "levinson/tail.hpp"
#include "levinson/verifier.hpp"
#include "oracles.hpp"

using namespace levinson;
using std::numbers::pi;

TEST_CASE("order-zero references are the free sinusoids") {
  for (double z : {0.1, 1.0, 3.7, 20.0}) {
    const double k = 1.3, x = z / k;
    const RiccatiBessel r = riccati_bessel(0.0, k, x);
    CHECK(r.F == doctest::Approx(std::sin(z)).epsilon(1e-13));
    CHECK(r.G == doctest::Approx(std::cos(z)).epsilon(1e-13));
    CHECK(r.dF == doctest::Approx(k * std::cos(z)).epsilon(1e-13));
    CHECK(r.dG == doctest::Approx(-k * std::sin(z)).epsilon(1e-13));
  }
}

TEST_CASE("order-one references in closed form") {
  for (double z : {0.3, 1.0, 4.2, 17.0}) {
    const double k = 0.6, x = z / k;
    const RiccatiBessel r = riccati_bessel(1.0, k, x);
    CHECK(r.F == doctest::Approx(std::sin(z) / z - std::cos(z)).epsilon(1e-12));
    CHECK(r.G == doctest::Approx(std::cos(z) / z + std::sin(z)).epsilon(1e-12));
    const double dFdz = -std::sin(z) / (z * z) + std::cos(z) / z + std::sin(z);
    const double dGdz = -std::cos(z) / (z * z) - std::sin(z) / z + std::cos(z);
    CHECK(r.dF == doctest::Approx(k * dFdz).epsilon(1e-12));
    CHECK(r.dG == doctest::Approx(k * dGdz).epsilon(1e-12));
  }
}

TEST_CASE("reference Wronskian") {
  for (double j : {-0.5, 0.0, 0.5, 1.0, 2.3})
    for (double z : {0.05, 0.8, 6.0}) {
      const double k = 2.0;
      const RiccatiBessel r = riccati_bessel(j, k, z / k);
      CHECK(r.F * r.dG - r.dF * r.G == doctest::Approx(-k).epsilon(1e-10));
    }
}

TEST_CASE("tail order scales with coupling") {
  CHECK(tail_order(2.0, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(tail_order(2.0, 0.0) == 0.0);
  CHECK(tail_order(3.0, 0.25) == doctest::Approx(oracle::quadratic_j(0.75)).epsilon(1e-14));
}

TEST_CASE("vanishing tail reproduces the cutoff phase") {
  const Potential tail = make_inverse_square_tail(0.0, 1.0, 4.0);
  const Potential cut = make_square_well(4.0, 1.0, 1.0);
  for (Parity par : {Parity::even, Parity::odd})
    for (double k : {1e-3, 0.1, 1.0, 4.0})
      CHECK(std::abs(tail_phase_shift(tail, par, k, 1.0) - phase_shift(cut, par, k, 1.0)) < 1e-8);
}

TEST_CASE("tail phase against the k-continuous oracle") {
  struct Case {
    double b, V0;
  };
  for (const Case c : {Case{2.0, 0.0}, Case{2.0, 4.0}, Case{0.75, 4.0}, Case{0.75, 16.0},
                       Case{6.0, 30.0}}) {
    const Potential p = make_inverse_square_tail(c.b, 1.0, c.V0);
    for (Parity par : {Parity::even, Parity::odd})
      for (double k : {2e-3, 0.3, 2.0}) {
        CAPTURE(c.b);
        CAPTURE(c.V0);
        CAPTURE(k);
        CAPTURE(to_string(par));
        CHECK(std::abs(tail_phase_shift(p, par, k, 1.0) -
                       oracle::tail_well_phase_k_continuous(par, c.V0, c.b, 1.0, k)) < 1e-7);
      }
  }
}

TEST_CASE("pure order-one tail") {
  const Potential p = make_inverse_square_tail(2.0, 1.0);
  const TailZeroEnergy z = tail_zero_energy(p, Parity::odd);
  CHECK(z.n == 0);
  CHECK_FALSE(z.critical);
  CHECK(z.theta_star == doctest::Approx(std::atan(-1.0)));
  const ZeroMomentumLimit o = tail_zero_momentum_limit(p, Parity::odd);
  CHECK(o.eta0 - pi / 2 == doctest::Approx(0.0).epsilon(1e-12));
  const ZeroMomentumLimit e = tail_zero_momentum_limit(p, Parity::even);
  CHECK(e.eta0 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("half-integer order") {
  const Potential p = make_inverse_square_tail(0.75, 1.0, 4.0);
  CHECK(p.tail().j == doctest::Approx(0.5).epsilon(1e-14));
  const LevinsonReport r = verify(p);
  CHECK(r.modified);
  CHECK(r.pass);
}

TEST_CASE("order-one tail outside a depth-4 well") {
  const Potential p = make_inverse_square_tail(2.0, 1.0, 4.0);
  const LevinsonReport r = verify(p);
  REQUIRE(r.parities.size() == 2);
  CHECK(r.pass);
  for (const ParityReport& pr : r.parities) {
    CHECK(pr.raw_residual <= 0.05);
    CHECK(pr.n_matching == -1);
    if (pr.parity == Parity::odd) {
      CHECK(pr.limit.eta0 - pi / 2 == doctest::Approx(pi * pr.n));
      CHECK(pr.relation == "eta-(0) - j*pi/2 = n-*pi");
    } else {
      CHECK(pr.limit.eta0 == doctest::Approx(pi * pr.n));
      CHECK(pr.relation == "eta+(0) + (1-j)*pi/2 = n+*pi");
    }
  }
}

TEST_CASE("inverse-square tails with weak coefficient agree with the cutoff verdict") {
  const Potential cut = make_square_well(4.0, 1.0, 1.0);
  const LevinsonReport rc = verify(cut);
  for (double b : {1e-6, 1e-3}) {
    const LevinsonReport rt = verify(make_inverse_square_tail(b, 1.0, 4.0));
    CHECK(rt.pass);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(rt.parities[i].n == rc.parities[i].n);
      CHECK(std::abs(rt.parities[i].limit.eta_raw - rc.parities[i].limit.eta_raw) < 0.01);
    }
  }
}

TEST_CASE("coarse integration fails the far-field cross-check") {
  const Potential p = make_inverse_square_tail(2.0, 1.0, 4.0);
  Config cfg;
  cfg.engine.step = 0.25;
  CHECK_THROWS_AS(tail_phase_shift(p, Parity::odd, 3.0, 1.0, cfg), TailMatchError);
  CHECK_THROWS_AS(tail_phase_shift(p, Parity::odd, 1.0, 1.0, 0.5), DomainError);
}

TEST_CASE("tail mode guards") {
  CHECK_THROWS_AS(tail_phase_shift(make_square_well(4.0, 1.0, 1.0), Parity::odd, 1.0, 1.0),
                  TailModeError);
  CHECK_THROWS_AS(make_inverse_square_tail(-0.5, 1.0), InfiniteSpectrumError);
}

TEST_CASE("critical tails are refused") {
  // Odd pure tail with j = 1: A(0) = 1/x0 inside, critical value -j/x0.
  // An inner well tuned to A(0) = -1 (z cot z = -1) is critical.
  double lo = 2.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    (m / std::tan(m) + 1.0 > 0.0 ? lo : hi) = m;
  }
  const double z = 0.5 * (lo + hi);
  const Potential p = make_inverse_square_tail(2.0, 1.0, z * z);
  CHECK(tail_zero_energy(p, Parity::odd).critical);
  CHECK_THROWS_AS(tail_zero_momentum_limit(p, Parity::odd), RefusedError);
  CHECK_THROWS_AS(verify(p), RefusedError);
}
