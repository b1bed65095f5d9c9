#pragma once

#include <stdexcept>

#include "nearwell/dual.hpp"

namespace nearwell {

enum class Phase { Brine, Gas };

/// Analytic PVT at fixed reservoir temperature: exponential
/// compressibility density, linear-in-pressure viscosity. Stands in for
/// tabulated PVT so runs are reproducible without external data.
struct PhaseProperties {
  Phase phase = Phase::Brine;
  double rho_ref = 0.0;         // kg/m3 at p_ref
  double p_ref = 0.0;           // Pa
  double compressibility = 0.0; // 1/Pa
  double mu_ref = 0.0;          // Pa s
  double mu_slope = 0.0;        // Pa s / Pa

  void validate() const {
    if (!(rho_ref > 0.0)) throw std::invalid_argument("fluid: rho_ref <= 0");
    if (!(mu_ref > 0.0)) throw std::invalid_argument("fluid: mu_ref <= 0");
    if (compressibility < 0.0)
      throw std::invalid_argument("fluid: negative compressibility");
  }

  static PhaseProperties default_brine() {
    return {Phase::Brine, 1010.0, 100.0e5, 4.5e-10, 6.5e-4, 0.0};
  }
  static PhaseProperties default_co2() {
    return {Phase::Gas, 700.0, 100.0e5, 1.0e-8, 5.8e-5, 0.0};
  }
};

/// Corey relative permeabilities with residual saturations, plus a
/// pluggable linear capillary model (entry pressure 0 by default).
struct RockFluid {
  double s_br = 0.0;      // residual brine saturation
  double s_gr = 0.0;      // residual gas saturation
  double n_b = 2.0;       // brine Corey exponent
  double n_g = 2.0;       // gas Corey exponent
  double pc_entry = 0.0;  // Pa
  double phi = 0.0;       // porosity

  void validate() const {
    if (!(s_br >= 0.0 && s_gr >= 0.0 && s_br + s_gr < 1.0))
      throw std::invalid_argument("rock: residual saturations");
    if (n_b < 1.0 || n_g < 1.0)
      throw std::invalid_argument("rock: Corey exponents must be >= 1");
    if (!(phi > 0.0 && phi < 1.0))
      throw std::invalid_argument("rock: porosity out of (0,1)");
  }
};

template <class T>
T density(const PhaseProperties& f, const T& p) {
  using std::exp;
  return f.rho_ref * exp(f.compressibility * (p - f.p_ref));
}

template <class T>
T viscosity(const PhaseProperties& f, const T& p) {
  using std::fmax;
  T mu = f.mu_ref + f.mu_slope * (p - f.p_ref);
  return fmax(mu, T(0.1 * f.mu_ref));
}

template <class T>
T rel_perm(const RockFluid& rf, Phase phase, const T& s_g) {
  using std::fmax;
  using std::fmin;
  using std::pow;
  const double span = 1.0 - rf.s_br - rf.s_gr;
  T s_eff = phase == Phase::Gas ? (s_g - rf.s_gr) * (1.0 / span)
                                : ((1.0 - rf.s_br) - s_g) * (1.0 / span);
  s_eff = fmin(fmax(s_eff, T(0.0)), T(1.0));
  return pow(s_eff, phase == Phase::Gas ? rf.n_g : rf.n_b);
}

/// p_c,bg = p_b - p_g; linear in S_g, zero by default.
template <class T>
T capillary_pressure(const RockFluid& rf, const T& s_g) {
  return rf.pc_entry * s_g;
}

}  // namespace nearwell
