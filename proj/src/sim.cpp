#include "nearwell/sim.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "nearwell/dual.hpp"

namespace nearwell {

void SimConfig::validate() const {
  if (!(dt_init > 0.0 && dt_max >= dt_init && dt_growth >= 1.0))
    throw std::invalid_argument("sim config: bad time-step controls");
  if (!(newton_tol > 0.0))
    throw std::invalid_argument("sim config: newton_tol must be > 0");
  if (newton_max_iter < 1)
    throw std::invalid_argument("sim config: newton_max_iter must be >= 1");
}

Schedule geometric_schedule(double t_first, double t_total, int n_steps) {
  if (!(t_first > 0.0 && t_total > t_first) || n_steps < 2)
    throw std::invalid_argument("geometric_schedule: bad parameters");
  Schedule s;
  s.report_times.resize(n_steps);
  const double ratio = std::pow(t_total / t_first, 1.0 / (n_steps - 1));
  double t = t_first;
  for (int i = 0; i < n_steps; ++i) {
    s.report_times[i] = t;
    t *= ratio;
  }
  s.report_times.back() = t_total;
  return s;
}

Phase SystemModel::injected_phase() const {
  if (!wells.empty()) return wells.front().def.injected;
  if (!sources.empty()) return sources.front().phase;
  return Phase::Brine;
}

double SystemModel::total_injection_rate() const {
  double q = 0.0;
  for (const auto& w : wells) q += w.def.target_mass_rate;
  for (const auto& s : sources) q += s.mass_rate;
  return q;
}

namespace {

using D2 = Dual<2>;
using D4 = Dual<4>;
using D3 = Dual<3>;
using D7 = Dual<7>;

// Phase mass in place for one cell; pv multiplier included.
template <class T>
T cell_phase_mass(const SystemModel& m, const FlowGraph::Cell& cell, Phase ph,
                  const T& p, const T& s_g) {
  const double pv = cell.volume * cell.pv_mult * cell.phi;
  if (ph == Phase::Brine) return pv * density(m.brine, p) * (1.0 - s_g);
  const T p_gas = p - capillary_pressure(m.rock, s_g);
  return pv * density(m.gas, p_gas) * s_g;
}

// Upwinded phase mass flux through one face, positive from c0 to c1.
// Slots: (p0, s0, p1, s1).
struct FaceFlux {
  D4 brine;
  D4 gas;
};

FaceFlux face_flux(const SystemModel& m, const FlowGraph::Face& face,
                   const ReservoirState& state) {
  const FlowGraph::Cell& c0 = m.graph->cells[face.c0];
  const FlowGraph::Cell& c1 = m.graph->cells[face.c1];
  const D4 p0 = D4::var(state.p[face.c0], 0);
  const D4 s0 = D4::var(state.s_g[face.c0], 1);
  const D4 p1 = D4::var(state.p[face.c1], 2);
  const D4 s1 = D4::var(state.s_g[face.c1], 3);
  const double dd = c0.depth - c1.depth;

  FaceFlux out;
  for (Phase ph : {Phase::Brine, Phase::Gas}) {
    const PhaseProperties& f = ph == Phase::Gas ? m.gas : m.brine;
    const D4 pp0 = ph == Phase::Gas ? p0 - capillary_pressure(m.rock, s0) : p0;
    const D4 pp1 = ph == Phase::Gas ? p1 - capillary_pressure(m.rock, s1) : p1;
    const D4 rho_face = 0.5 * (density(f, pp0) + density(f, pp1));
    const D4 pot = (pp0 - pp1) - rho_face * units::gravity * dd;
    const bool up0 = pot.v >= 0.0;  // phase-potential upwinding
    const D4& p_up = up0 ? pp0 : pp1;
    const D4& s_up = up0 ? s0 : s1;
    const D4 mob = rel_perm(m.rock, ph, s_up) * density(f, p_up) /
                   viscosity(f, p_up);
    const D4 flux = face.trans * mob * pot;
    (ph == Phase::Gas ? out.gas : out.brine) = flux;
  }
  return out;
}

FeatureFrame make_feature_frame(const SystemModel& m, const SimWell& well,
                                const WellConnection& conn,
                                const ReservoirState& state) {
  const FlowGraph& g = *m.graph;
  const FlowGraph::Cell& cell = g.cells[conn.cell];
  FeatureFrame frame;
  frame.p_self = state.p[conn.cell];
  frame.s_self = state.s_g[conn.cell];
  frame.k_self = conn.k;
  if (cell.above >= 0) {
    frame.has_up = true;
    frame.p_up = state.p[cell.above];
    frame.s_up = state.s_g[cell.above];
    frame.k_up = g.cells[cell.above].kx;
  }
  if (cell.below >= 0) {
    frame.has_down = true;
    frame.p_down = state.p[cell.below];
    frame.s_down = state.s_g[cell.below];
    frame.k_down = g.cells[cell.below].kx;
  }
  frame.v_tot = state.v_tot;
  frame.r_e = conn.r_e;
  frame.h = conn.h;
  frame.r_w = well.def.r_w;
  frame.k = conn.k;
  frame.h_res = conn.h;  // single-layer families: reservoir height
  return frame;
}

double scaled_norm(const SystemModel& m, const Eigen::VectorXd& r, double dt) {
  const FlowGraph& g = *m.graph;
  double norm = 0.0;
  for (int c = 0; c < g.n_cells(); ++c) {
    // Unmultiplied pore mass scale: boundary cells must converge to the
    // same absolute level as interior ones or the mass balance drifts.
    const double pv = g.cells[c].volume * g.cells[c].phi;
    norm = std::max(norm, std::abs(r[2 * c]) * dt / (pv * m.brine.rho_ref));
    norm = std::max(norm, std::abs(r[2 * c + 1]) * dt / (pv * m.gas.rho_ref));
  }
  for (size_t w = 0; w < m.wells.size(); ++w) {
    const double scale = std::max(m.wells[w].def.target_mass_rate, 1.0e-3);
    norm = std::max(norm,
                    std::abs(r[2 * g.n_cells() + static_cast<int>(w)]) / scale);
  }
  return norm;
}

class SparseSolver {
 public:
  bool solve(const Eigen::SparseMatrix<double>& a, const Eigen::VectorXd& b,
             Eigen::VectorXd& x) {
    if (!analyzed_) {
      lu_.analyzePattern(a);
      analyzed_ = true;
    }
    lu_.factorize(a);
    if (lu_.info() != Eigen::Success) return false;
    x = lu_.solve(b);
    return lu_.info() == Eigen::Success;
  }

 private:
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu_;
  bool analyzed_ = false;
};

NewtonReport newton_iterate(const SystemModel& model, ReservoirState& state,
                            const ReservoirState& prev, double dt,
                            const SimConfig& cfg, SparseSolver& solver) {
  const int n_cells = model.graph->n_cells();
  NewtonReport rep;
  bool polish_done = false;
  for (;;) {
    AssembledSystem sys;
    try {
      sys = assemble_system(model, state, prev, dt);
    } catch (const std::runtime_error&) {
      return rep;  // treated as non-convergence; caller cuts dt
    }
    const double norm = scaled_norm(model, sys.residual, dt);
    if (!std::isfinite(norm)) return rep;
    rep.final_norm = norm;
    if (norm < cfg.newton_tol && polish_done) {
      rep.converged = true;
      return rep;
    }
    if (norm < cfg.newton_tol) polish_done = true;
    if (rep.iterations >= cfg.newton_max_iter) {
      rep.converged = norm < cfg.newton_tol;
      return rep;
    }

    Eigen::VectorXd dx;
    if (!solver.solve(sys.jacobian, -sys.residual, dx)) return rep;
    for (int c = 0; c < n_cells; ++c) {
      state.p[c] += dx[2 * c];
      const double ds = std::clamp(dx[2 * c + 1], -cfg.max_saturation_change,
                                   cfg.max_saturation_change);
      state.s_g[c] = std::clamp(state.s_g[c] + ds, 0.0, 1.0);
    }
    for (size_t w = 0; w < state.p_bhp.size(); ++w)
      state.p_bhp[w] += dx[2 * n_cells + static_cast<int>(w)];
    ++rep.iterations;
  }
}

std::pair<double, double> component_masses(const SystemModel& m,
                                           const ReservoirState& s) {
  double mb = 0.0, mg = 0.0;
  for (int c = 0; c < m.graph->n_cells(); ++c) {
    mb += cell_phase_mass(m, m.graph->cells[c], Phase::Brine, s.p[c], s.s_g[c]);
    mg += cell_phase_mass(m, m.graph->cells[c], Phase::Gas, s.p[c], s.s_g[c]);
  }
  return {mb, mg};
}

}  // namespace

AssembledSystem assemble_system(const SystemModel& model,
                                const ReservoirState& state,
                                const ReservoirState& prev, double dt) {
  const FlowGraph& g = *model.graph;
  const int n_cells = g.n_cells();
  const int n = model.n_unknowns();
  if (state.p.size() != n_cells || state.s_g.size() != n_cells ||
      static_cast<int>(state.p_bhp.size()) != static_cast<int>(model.wells.size()))
    throw std::invalid_argument("assemble_system: state size mismatch");
  if (!(dt > 0.0)) throw std::invalid_argument("assemble_system: dt <= 0");

  AssembledSystem sys;
  sys.residual = Eigen::VectorXd::Zero(n);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(16 * n_cells + 32 * model.wells.size());
  const double inv_dt = 1.0 / dt;

  // Accumulation.
  for (int c = 0; c < n_cells; ++c) {
    const D2 p = D2::var(state.p[c], 0);
    const D2 s = D2::var(state.s_g[c], 1);
    const D2 mb = cell_phase_mass(model, g.cells[c], Phase::Brine, p, s);
    const D2 mg = cell_phase_mass(model, g.cells[c], Phase::Gas, p, s);
    const double mb_prev =
        cell_phase_mass(model, g.cells[c], Phase::Brine, prev.p[c], prev.s_g[c]);
    const double mg_prev =
        cell_phase_mass(model, g.cells[c], Phase::Gas, prev.p[c], prev.s_g[c]);
    const D2 rb = (mb - mb_prev) * inv_dt;
    const D2 rg = (mg - mg_prev) * inv_dt;
    if (!std::isfinite(rb.v) || !std::isfinite(rg.v))
      throw std::runtime_error("assemble_system: non-finite properties at cell " +
                               std::to_string(c));
    sys.residual[2 * c] += rb.v;
    sys.residual[2 * c + 1] += rg.v;
    for (int k = 0; k < 2; ++k) {
      trips.emplace_back(2 * c, 2 * c + k, rb.d[k]);
      trips.emplace_back(2 * c + 1, 2 * c + k, rg.d[k]);
    }
  }

  // Face fluxes; slots (p0, s0, p1, s1).
  for (const auto& face : g.faces) {
    const FaceFlux flux = face_flux(model, face, state);
    const int cols[4] = {2 * face.c0, 2 * face.c0 + 1, 2 * face.c1,
                         2 * face.c1 + 1};
    for (Phase ph : {Phase::Brine, Phase::Gas}) {
      const D4& f = ph == Phase::Gas ? flux.gas : flux.brine;
      const int row0 = ph == Phase::Gas ? 2 * face.c0 + 1 : 2 * face.c0;
      const int row1 = ph == Phase::Gas ? 2 * face.c1 + 1 : 2 * face.c1;
      sys.residual[row0] += f.v;
      sys.residual[row1] -= f.v;
      for (int k = 0; k < 4; ++k) {
        trips.emplace_back(row0, cols[k], f.d[k]);
        trips.emplace_back(row1, cols[k], -f.d[k]);
      }
    }
  }

  // Fixed sources (ensemble inner-boundary wells).
  for (const auto& src : model.sources) {
    const int row =
        src.phase == Phase::Gas ? 2 * src.cell + 1 : 2 * src.cell;
    sys.residual[row] -= src.mass_rate;
  }

  // Wells: one p_bhp unknown each, rate-control residual row.
  for (size_t w = 0; w < model.wells.size(); ++w) {
    const SimWell& sw = model.wells[w];
    const int wrow = 2 * n_cells + static_cast<int>(w);
    sys.residual[wrow] += sw.def.target_mass_rate;
    const PhaseProperties& inj = sw.def.injected == Phase::Gas ? model.gas
                                                               : model.brine;
    const int phase_off = sw.def.injected == Phase::Gas ? 1 : 0;

    for (const WellConnection& conn : sw.def.connections) {
      if (sw.model == WellModelKind::Peaceman) {
        // Slots: (p_cell, s_cell, p_bhp).
        const D3 p = D3::var(state.p[conn.cell], 0);
        const D3 s = D3::var(state.s_g[conn.cell], 1);
        const D3 pb = D3::var(state.p_bhp[w], 2);
        const D3 p_wc = pb + hydrostatic_offset(inj, pb, conn.depth,
                                                sw.def.datum_depth);
        const ConnectionRates<D3> rates = connection_rate_peaceman(
            conn, model.brine, model.gas, model.rock, sw.def.injected, p, s,
            p_wc);
        const int cols[3] = {2 * conn.cell, 2 * conn.cell + 1, wrow};
        auto scatter = [&](int row, const D3& q) {
          sys.residual[row] -= q.v;
          for (int k = 0; k < 3; ++k) trips.emplace_back(row, cols[k], -q.d[k]);
        };
        scatter(2 * conn.cell, rates.q_brine);
        scatter(2 * conn.cell + 1, rates.q_gas);
        const D3 total = rates.total();
        sys.residual[wrow] -= total.v;
        for (int k = 0; k < 3; ++k)
          trips.emplace_back(wrow, cols[k], -total.d[k]);
      } else {
        // Data-driven WI; slots (p_u, s_u, p, s, p_l, s_l, p_bhp). The
        // inferred WI folds mobility in, so no extra factor here.
        const FeatureFrame frame = make_feature_frame(model, sw, conn, state);
        const WellIndexEval eval = nn_well_index(*sw.nn, frame);
        D7 wi(eval.wi);
        if (!sw.nn_lagged) {
          wi.d[0] = eval.d_p[0];
          wi.d[1] = eval.d_sg[0];
          wi.d[2] = eval.d_p[1];
          wi.d[3] = eval.d_sg[1];
          wi.d[4] = eval.d_p[2];
          wi.d[5] = eval.d_sg[2];
        }
        const D7 p = D7::var(state.p[conn.cell], 2);
        const D7 pb = D7::var(state.p_bhp[w], 6);
        const D7 p_wc = pb + hydrostatic_offset(inj, pb, conn.depth,
                                                sw.def.datum_depth);
        const D7 q = wi * (p_wc - p);  // positive into the cell

        const FlowGraph::Cell& cell = g.cells[conn.cell];
        int cols[7] = {-1, -1, 2 * conn.cell, 2 * conn.cell + 1, -1, -1, wrow};
        if (cell.above >= 0) {
          cols[0] = 2 * cell.above;
          cols[1] = 2 * cell.above + 1;
        }
        if (cell.below >= 0) {
          cols[4] = 2 * cell.below;
          cols[5] = 2 * cell.below + 1;
        }
        const int qrow = 2 * conn.cell + phase_off;
        sys.residual[qrow] -= q.v;
        sys.residual[wrow] -= q.v;
        for (int k = 0; k < 7; ++k) {
          if (cols[k] < 0) continue;
          trips.emplace_back(qrow, cols[k], -q.d[k]);
          trips.emplace_back(wrow, cols[k], -q.d[k]);
        }
      }
    }
  }

  sys.jacobian.resize(n, n);
  sys.jacobian.setFromTriplets(trips.begin(), trips.end());
  return sys;
}

NewtonReport newton_solve(const SystemModel& model, ReservoirState& state,
                          const ReservoirState& prev, double dt,
                          const SimConfig& cfg) {
  SparseSolver solver;
  return newton_iterate(model, state, prev, dt, cfg, solver);
}

WellRatesAtState evaluate_well_rates(const SystemModel& model,
                                     const ReservoirState& state,
                                     long* clamp_events) {
  WellRatesAtState out;
  for (size_t w = 0; w < model.wells.size(); ++w) {
    const SimWell& sw = model.wells[w];
    const PhaseProperties& inj =
        sw.def.injected == Phase::Gas ? model.gas : model.brine;
    for (const WellConnection& conn : sw.def.connections) {
      const double h_wi = hydrostatic_offset(inj, state.p_bhp[w], conn.depth,
                                             sw.def.datum_depth);
      const double p_wc = state.p_bhp[w] + h_wi;
      double q = 0.0;
      if (sw.model == WellModelKind::Peaceman) {
        const auto rates = connection_rate_peaceman(
            conn, model.brine, model.gas, model.rock, sw.def.injected,
            state.p[conn.cell], state.s_g[conn.cell], p_wc);
        q = rates.total();
      } else {
        const FeatureFrame frame = make_feature_frame(model, sw, conn, state);
        const WellIndexEval eval = nn_well_index(*sw.nn, frame, clamp_events);
        q = eval.wi * (p_wc - state.p[conn.cell]);
      }
      out.q_conn.push_back(q);
      out.p_conn_well.push_back(p_wc);
    }
  }
  return out;
}

SimReport run_simulation(const SystemModel& model, const ReservoirState& init,
                         const Schedule& schedule, const SimConfig& cfg,
                         bool record_fields) {
  cfg.validate();
  if (schedule.report_times.empty())
    throw std::invalid_argument("run_simulation: empty schedule");
  for (size_t i = 1; i < schedule.report_times.size(); ++i)
    if (!(schedule.report_times[i] > schedule.report_times[i - 1]))
      throw std::invalid_argument("run_simulation: report times not increasing");

  const auto t_start = std::chrono::steady_clock::now();
  SimReport report;
  SparseSolver solver;

  ReservoirState current = init;
  const double rho_ref = model.injected_props().rho_ref;
  const double rate = model.total_injection_rate();
  const Phase inj_phase = model.injected_phase();
  double cum_inj_b = 0.0, cum_inj_g = 0.0;
  double dt_nominal = cfg.dt_init;

  for (double t_report : schedule.report_times) {
    while (current.t < t_report - 1.0e-9) {
      const double dt = std::min(dt_nominal, t_report - current.t);
      ReservoirState trial = current;
      trial.t = current.t + dt;
      trial.v_tot = current.v_tot + rate * dt / rho_ref;

      const NewtonReport newton =
          newton_iterate(model, trial, current, dt, cfg, solver);
      if (!newton.converged) {
        dt_nominal = 0.5 * dt;
        if (dt_nominal < cfg.dt_min)
          throw std::runtime_error(
              "run_simulation: time step underflow at t = " +
              std::to_string(current.t) + " s");
        continue;
      }

      // Per-step component balance: injected minus in-place change.
      const auto [mb0, mg0] = component_masses(model, current);
      const auto [mb1, mg1] = component_masses(model, trial);
      const double inj = rate * dt;
      const double inj_b = inj_phase == Phase::Brine ? inj : 0.0;
      const double inj_g = inj_phase == Phase::Gas ? inj : 0.0;
      cum_inj_b += inj_b;
      cum_inj_g += inj_g;
      const double err_b = std::abs(mb1 - mb0 - inj_b) /
                           std::max({std::abs(mb1), cum_inj_b, 1.0});
      const double err_g = std::abs(mg1 - mg0 - inj_g) /
                           std::max({std::abs(mg1), cum_inj_g, 1.0});
      report.max_mass_balance_error =
          std::max({report.max_mass_balance_error, err_b, err_g});

      current = std::move(trial);
      ++report.n_timesteps;
      report.total_newton_iterations += newton.iterations;
      report.max_newton_iterations =
          std::max(report.max_newton_iterations, newton.iterations);
      dt_nominal = std::min(dt_nominal * cfg.dt_growth, cfg.dt_max);
    }

    report.times.push_back(t_report);
    if (!current.p_bhp.empty()) report.p_bhp.push_back(current.p_bhp[0]);
    report.v_tot.push_back(current.v_tot);
    const WellRatesAtState rates =
        evaluate_well_rates(model, current, &report.clamp_events);
    report.q_conn.push_back(rates.q_conn);
    report.p_conn_well.push_back(rates.p_conn_well);
    if (record_fields) {
      report.p_snapshots.emplace_back(current.p.data(),
                                      current.p.data() + current.p.size());
      report.s_snapshots.emplace_back(current.s_g.data(),
                                      current.s_g.data() + current.s_g.size());
    }
  }

  report.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return report;
}

}  // namespace nearwell
