#pragma once

#include <stdexcept>
#include <vector>

#include "nearwell/fluid.hpp"
#include "nearwell/units.hpp"

namespace nearwell {

/// One well-to-cell connection with its precomputed Peaceman geometry.
struct WellConnection {
  int cell = -1;
  double depth = 0.0;   // connection depth, m
  double k = 0.0;       // horizontal permeability of the cell, m2
  double h = 0.0;       // connected interval height, m
  double r_e = 0.0;     // equivalent radius of the cell, m
  double wi_geo = 0.0;  // 2 pi k h / ln(r_e / r_w), m3
};

/// Rate-controlled injector. Internal rates are mass rates (kg/s); deck
/// values in m3/day or tonne/day are converted at the boundary.
struct Well {
  double r_w = 0.0;
  double datum_depth = 0.0;  // p_bhp reference depth
  Phase injected = Phase::Brine;
  double target_mass_rate = 0.0;  // kg/s
  std::vector<WellConnection> connections;

  void validate() const {
    if (!(r_w > 0.0)) throw std::invalid_argument("well: r_w <= 0");
    if (connections.empty())
      throw std::invalid_argument("well: needs at least one connection");
    if (target_mass_rate < 0.0)
      throw std::invalid_argument("well: negative rate");
  }
};

/// Peaceman's anisotropic equivalent radius. Reduces to ~0.198 dx for
/// isotropic square cells.
double equivalent_radius(double dx, double dy, double kx, double ky);

/// Geometric part of the well index, 2 pi k h / ln(r_e / r_w). Throws if
/// r_e <= r_w (grid too fine for a Peaceman-type model).
double wi_geometric(double k, double h, double r_e, double r_w);

/// Pressure offset between the connection and the bhp datum, using the
/// injected-phase density at p_bhp for the wellbore column.
template <class T>
T hydrostatic_offset(const PhaseProperties& injected_fluid, const T& p_bhp,
                     double connection_depth, double datum_depth) {
  return density(injected_fluid, p_bhp) * units::gravity *
         (connection_depth - datum_depth);
}

/// Per-phase connection mass rates, positive into the cell. Injecting
/// connections use the injected phase at endpoint relative permeability
/// with wellbore-pressure properties; reversed connections upwind the
/// cell state.
template <class T>
struct ConnectionRates {
  T q_brine{0.0};
  T q_gas{0.0};
  T total() const { return q_brine + q_gas; }
};

template <class T>
ConnectionRates<T> connection_rate_peaceman(const WellConnection& conn,
                                            const PhaseProperties& brine,
                                            const PhaseProperties& gas,
                                            const RockFluid& rock,
                                            Phase injected, const T& p_cell,
                                            const T& s_g_cell,
                                            const T& p_well_conn) {
  ConnectionRates<T> rates;
  const T drawdown = p_well_conn - p_cell;
  if (value(drawdown) >= 0.0) {
    const PhaseProperties& f = injected == Phase::Gas ? gas : brine;
    const double endpoint =
        injected == Phase::Gas
            ? rel_perm(rock, Phase::Gas, 1.0 - rock.s_br)
            : rel_perm(rock, Phase::Brine, rock.s_gr);
    const T mob = endpoint * density(f, p_well_conn) / viscosity(f, p_well_conn);
    const T q = conn.wi_geo * mob * drawdown;
    (injected == Phase::Gas ? rates.q_gas : rates.q_brine) = q;
  } else {
    // Transient backflow during Newton iterations: upwind the cell.
    const T mob_b = rel_perm(rock, Phase::Brine, s_g_cell) *
                    density(brine, p_cell) / viscosity(brine, p_cell);
    const T mob_g = rel_perm(rock, Phase::Gas, s_g_cell) *
                    density(gas, p_cell) / viscosity(gas, p_cell);
    rates.q_brine = conn.wi_geo * mob_b * drawdown;
    rates.q_gas = conn.wi_geo * mob_g * drawdown;
  }
  return rates;
}

/// R_w = Q_target - sum of connection rates; zero at the solution.
template <class T>
T rate_control_residual(double target_mass_rate, const T& total_rate) {
  return target_mass_rate - total_rate;
}

}  // namespace nearwell
