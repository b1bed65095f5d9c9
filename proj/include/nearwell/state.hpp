#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nearwell/fluid.hpp"
#include "nearwell/graph.hpp"
#include "nearwell/units.hpp"

namespace nearwell {

/// Primary unknowns: brine pressure and gas saturation per cell, plus one
/// bottom-hole pressure per rate-controlled well.
struct ReservoirState {
  Eigen::VectorXd p;     // Pa
  Eigen::VectorXd s_g;   // [0, 1]
  std::vector<double> p_bhp;  // Pa, one per well
  double t = 0.0;        // s
  double v_tot = 0.0;    // injected volume at reference conditions, m3
};

/// Uniform-pressure state (flat single-layer cases).
ReservoirState uniform_state(const FlowGraph& g, double p_init, int n_wells);

/// Discrete hydrostatic equilibrium: face potentials vanish exactly, so
/// the initial residual is zero without a settling transient. p_init is
/// prescribed at datum_depth.
ReservoirState hydrostatic_state(const FlowGraph& g,
                                 const PhaseProperties& brine, double p_init,
                                 double datum_depth, int n_wells);

}  // namespace nearwell
