#pragma once

#include <Eigen/Sparse>
#include <vector>

#include "nearwell/graph.hpp"
#include "nearwell/nnwell.hpp"
#include "nearwell/state.hpp"
#include "nearwell/units.hpp"
#include "nearwell/wells.hpp"

namespace nearwell {

struct SimConfig {
  double dt_init = 100.0;            // s
  double dt_max = 0.5 * units::day;  // s
  double dt_growth = 1.5;
  double dt_min = 1.0;               // s; going below is a failure
  double newton_tol = 1.0e-8;        // mass-scaled max norm
  int newton_max_iter = 12;
  double max_saturation_change = 0.2;  // per-iteration chop

  void validate() const;
};

struct Schedule {
  std::vector<double> report_times;  // strictly increasing, s
  double total_time() const { return report_times.back(); }
};

/// Geometrically spaced report times (dense early); last time = t_total.
Schedule geometric_schedule(double t_first, double t_total, int n_steps);

enum class WellModelKind { Peaceman, DataDrivenNN };

struct SimWell {
  Well def;
  WellModelKind model = WellModelKind::Peaceman;
  const TrainedModel* nn = nullptr;  // borrowed; required for DataDrivenNN
  bool nn_lagged = false;  // debug: drop dWI/dstate (Picard-style coupling)
};

/// Fixed mass source, used by the fine-scale ensemble runs where the well
/// is the inner boundary and carries no unknowns.
struct SourceTerm {
  int cell = -1;
  Phase phase = Phase::Brine;
  double mass_rate = 0.0;  // kg/s, positive into the cell
};

struct SystemModel {
  const FlowGraph* graph = nullptr;
  PhaseProperties brine = PhaseProperties::default_brine();
  PhaseProperties gas = PhaseProperties::default_co2();
  RockFluid rock;
  std::vector<SimWell> wells;
  std::vector<SourceTerm> sources;

  int n_unknowns() const {
    return 2 * graph->n_cells() + static_cast<int>(wells.size());
  }
  Phase injected_phase() const;
  const PhaseProperties& injected_props() const {
    return injected_phase() == Phase::Gas ? gas : brine;
  }
  double total_injection_rate() const;  // kg/s
};

struct AssembledSystem {
  Eigen::VectorXd residual;  // kg/s; rows (2c, 2c+1) = (brine, gas), wells after
  Eigen::SparseMatrix<double> jacobian;
};

/// Residual and exact Jacobian of the fully-implicit system at `state`
/// against `prev`. Throws on non-finite properties (names the cell).
AssembledSystem assemble_system(const SystemModel& model,
                                const ReservoirState& state,
                                const ReservoirState& prev, double dt);

struct NewtonReport {
  bool converged = false;
  int iterations = 0;  // linear solves
  double final_norm = 0.0;
};

/// Newton with saturations chopped to [0,1] each iteration. After the
/// tolerance is met one extra polish iteration runs so the accepted
/// residual sits at the assembly noise floor; this is what makes the
/// per-step mass balance exact to ~1e-13 instead of ~newton_tol.
NewtonReport newton_solve(const SystemModel& model, ReservoirState& state,
                          const ReservoirState& prev, double dt,
                          const SimConfig& cfg);

struct SimReport {
  std::vector<double> times;  // report times, s
  std::vector<double> p_bhp;  // first well, Pa (empty without wells)
  std::vector<double> v_tot;  // m3 at reference conditions
  std::vector<std::vector<double>> q_conn;       // [time][connection], kg/s
  std::vector<std::vector<double>> p_conn_well;  // [time][connection], Pa
  std::vector<std::vector<double>> p_snapshots;  // [time][cell] if recorded
  std::vector<std::vector<double>> s_snapshots;

  long n_timesteps = 0;
  long total_newton_iterations = 0;
  int max_newton_iterations = 0;
  double max_mass_balance_error = 0.0;  // per-step per-component relative
  long clamp_events = 0;                // NN model, converged states only
  double runtime_seconds = 0.0;
};

/// Adaptive dt: halve on non-convergence, grow on success, land exactly
/// on report times. Throws on dt underflow.
SimReport run_simulation(const SystemModel& model, const ReservoirState& init,
                         const Schedule& schedule, const SimConfig& cfg,
                         bool record_fields);

/// Per-connection rates and well pressures at a converged state (also
/// counts NN clamp events when a counter is supplied).
struct WellRatesAtState {
  std::vector<double> q_conn;
  std::vector<double> p_conn_well;
};
WellRatesAtState evaluate_well_rates(const SystemModel& model,
                                     const ReservoirState& state,
                                     long* clamp_events = nullptr);

}  // namespace nearwell
