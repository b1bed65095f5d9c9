#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nearwell/dual.hpp"
#include "nearwell/fluid.hpp"

using namespace nearwell;

TEST_CASE("density correlation") {
  PhaseProperties f{Phase::Brine, 1000.0, 1.0e7, 4.5e-10, 6.5e-4, 0.0};
  CHECK(density(f, 1.0e7) == doctest::Approx(1000.0).epsilon(1e-14));
  // Arbitrary-precision exp evaluation at dp = 1e7.
  CHECK(density(f, 2.0e7) ==
        doctest::Approx(1004.51014020460133).epsilon(1e-14));

  f.compressibility = 0.0;
  CHECK(density(f, 5.0e6) == doctest::Approx(1000.0));
  CHECK(density(f, 5.0e8) == doctest::Approx(1000.0));
}

TEST_CASE("density derivative matches finite differences") {
  const PhaseProperties f{Phase::Gas, 700.0, 1.0e7, 1.0e-8, 5.8e-5, 0.0};
  for (double p : {5.0e6, 1.0e7, 2.0e7}) {
    const double h = 1.0;
    const double fd = (density(f, p + h) - density(f, p - h)) / (2.0 * h);
    const double analytic = f.compressibility * density(f, p);
    CHECK(fd == doctest::Approx(analytic).epsilon(1e-8));
    // Dual propagation gives the same derivative.
    const Dual<1> d = density(f, Dual<1>::var(p, 0));
    CHECK(d.d[0] == doctest::Approx(analytic).epsilon(1e-14));
  }
}

TEST_CASE("viscosity correlation") {
  PhaseProperties f{Phase::Gas, 700.0, 1.0e7, 0.0, 5.0e-5, 1.0e-13};
  CHECK(viscosity(f, 1.0e7) == doctest::Approx(5.0e-5).epsilon(1e-14));
  CHECK(viscosity(f, 2.0e7) == doctest::Approx(5.1e-5).epsilon(1e-14));
  f.mu_slope = 0.0;
  CHECK(viscosity(f, 9.9e7) == doctest::Approx(5.0e-5));
  // Floor at 0.1 mu_ref.
  f.mu_slope = 1.0e-13;
  CHECK(viscosity(f, 1.0e7 - 1.0e9) == doctest::Approx(5.0e-6));
}

TEST_CASE("Corey relative permeability") {
  RockFluid rf{0.2, 0.1, 2.0, 2.0, 0.0, 0.35};
  CHECK(rel_perm(rf, Phase::Gas, 0.1) == doctest::Approx(0.0));
  CHECK(rel_perm(rf, Phase::Gas, 0.8) == doctest::Approx(1.0));
  CHECK(rel_perm(rf, Phase::Gas, 0.45) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(rel_perm(rf, Phase::Brine, 0.0) == doctest::Approx(1.0));

  // Monotone in S_g: gas non-decreasing, brine non-increasing.
  double prev_g = -1.0, prev_b = 2.0;
  for (int i = 0; i <= 100; ++i) {
    const double s = i / 100.0;
    const double krg = rel_perm(rf, Phase::Gas, s);
    const double krb = rel_perm(rf, Phase::Brine, s);
    CHECK(krg >= prev_g);
    CHECK(krb <= prev_b);
    CHECK(krg >= 0.0);
    CHECK(krg <= 1.0);
    prev_g = krg;
    prev_b = krb;
  }
}

TEST_CASE("capillary pressure") {
  RockFluid rf{0.2, 0.1, 2.0, 2.0, 0.0, 0.35};
  CHECK(capillary_pressure(rf, 0.0) == 0.0);
  CHECK(capillary_pressure(rf, 0.7) == 0.0);
  rf.pc_entry = 1.0e4;
  CHECK(capillary_pressure(rf, 0.5) == doctest::Approx(5.0e3));
  CHECK(capillary_pressure(rf, 0.0) == 0.0);
}

TEST_CASE("parameter validation") {
  PhaseProperties f = PhaseProperties::default_brine();
  f.rho_ref = -1.0;
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  RockFluid rf{0.6, 0.5, 2.0, 2.0, 0.0, 0.35};
  CHECK_THROWS_AS(rf.validate(), std::invalid_argument);
}
