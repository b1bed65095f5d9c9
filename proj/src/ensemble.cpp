#include "nearwell/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "nearwell/rng.hpp"

namespace nearwell {

std::vector<double> EnsembleSpec::layer_heights(
    const MemberParams& params) const {
  if (family == Family::H2O2D) return {params.h};
  return std::vector<double>(n_layers, layer_height);
}

void EnsembleSpec::validate() const {
  if (count < 1) throw std::invalid_argument("ensemble: count must be >= 1");
  for (const ParamRange* r : {&p_init, &k, &h})
    if (r->hi < r->lo)
      throw std::invalid_argument("ensemble: inverted parameter range");
  if (n_layers < 1) throw std::invalid_argument("ensemble: n_layers >= 1");
  if (family != Family::CO23D && n_layers != 1)
    throw std::invalid_argument("ensemble: 2D families are single-layer");
  if (!(rate_mass > 0.0))
    throw std::invalid_argument("ensemble: injection rate must be positive");
}

namespace {

double sample_range(Rng& rng, const ParamRange& r) {
  return r.degenerate() ? r.lo : rng.uniform(r.lo, r.hi);
}

std::vector<MemberParams> build_random(const EnsembleSpec& spec) {
  Rng rng(spec.seed);
  std::vector<MemberParams> members(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    MemberParams& m = members[i];
    m.id = i;
    m.p_init = sample_range(rng, spec.p_init);
    const int n_k = spec.family == Family::CO23D ? spec.n_layers : 1;
    for (int l = 0; l < n_k; ++l)
      m.k_layers.push_back(sample_range(rng, spec.k));
    if (spec.family != Family::CO23D)
      m.k_layers.resize(spec.n_layers, m.k_layers[0]);
    m.h = spec.family == Family::H2O2D
              ? sample_range(rng, spec.h)
              : spec.n_layers * spec.layer_height;
  }
  return members;
}

std::vector<MemberParams> build_grid(const EnsembleSpec& spec) {
  // Active (sampled) dimensions in fixed order: p, k layers, h.
  int dims = spec.p_init.degenerate() ? 0 : 1;
  const int n_k = spec.family == Family::CO23D ? spec.n_layers : 1;
  if (!spec.k.degenerate()) dims += n_k;
  const bool sample_h = spec.family == Family::H2O2D && !spec.h.degenerate();
  if (sample_h) dims += 1;

  if (dims == 0) {
    MemberParams m;
    m.id = 0;
    m.p_init = spec.p_init.lo;
    m.k_layers.assign(spec.n_layers, spec.k.lo);
    m.h = spec.family == Family::H2O2D ? spec.h.lo
                                       : spec.n_layers * spec.layer_height;
    return {m};
  }

  const int n_per =
      std::max(1, static_cast<int>(std::floor(
                      std::pow(static_cast<double>(spec.count), 1.0 / dims))));
  auto level = [&](const ParamRange& r, int i) {
    if (r.degenerate()) return r.lo;
    if (n_per == 1) return 0.5 * (r.lo + r.hi);
    return r.lo + (r.hi - r.lo) * i / (n_per - 1);
  };

  std::vector<MemberParams> members;
  std::vector<int> idx(dims, 0);
  for (;;) {
    MemberParams m;
    m.id = static_cast<int>(members.size());
    int d = 0;
    m.p_init = spec.p_init.degenerate() ? spec.p_init.lo
                                        : level(spec.p_init, idx[d++]);
    for (int l = 0; l < n_k; ++l)
      m.k_layers.push_back(spec.k.degenerate() ? spec.k.lo
                                               : level(spec.k, idx[d++]));
    if (spec.family != Family::CO23D)
      m.k_layers.resize(spec.n_layers, m.k_layers[0]);
    m.h = spec.family == Family::H2O2D
              ? (sample_h ? level(spec.h, idx[d++]) : spec.h.lo)
              : spec.n_layers * spec.layer_height;
    members.push_back(std::move(m));

    int carry = dims - 1;
    while (carry >= 0 && ++idx[carry] == n_per) idx[carry--] = 0;
    if (carry < 0) break;
  }
  return members;
}

}  // namespace

std::vector<MemberParams> build_ensemble(const EnsembleSpec& spec) {
  spec.validate();
  return spec.sampling == EnsembleSpec::Sampling::UniformRandom
             ? build_random(spec)
             : build_grid(spec);
}

MemberRecord run_member(const EnsembleSpec& spec, const MemberParams& params) {
  const std::vector<double> heights = spec.layer_heights(params);
  const RadialGrid grid = build_radial_log_grid(
      spec.r_w, spec.r_outer, spec.n_r, heights, spec.boundary_pv_mult);
  const FlowGraph graph =
      build_graph(grid, params.k_layers, spec.kz_over_kxy, spec.phi);

  MemberRecord rec;
  rec.params = params;
  rec.r_w = spec.r_w;
  rec.r_outer = spec.r_outer;
  rec.n_r = spec.n_r;
  rec.layer_heights = heights;

  SystemModel model;
  model.graph = &graph;
  model.brine = spec.brine;
  model.gas = spec.gas;
  model.rock = spec.rock;
  model.rock.phi = spec.phi;

  // No well model at the fine scale: a fixed rate source per layer on the
  // innermost ring, split by k_l h_l.
  double kh_sum = 0.0;
  for (int l = 0; l < grid.n_z(); ++l) kh_sum += params.k_layers[l] * heights[l];
  std::vector<double> q_layer(grid.n_z());
  for (int l = 0; l < grid.n_z(); ++l) {
    q_layer[l] = spec.rate_mass * params.k_layers[l] * heights[l] / kh_sum;
    model.sources.push_back(
        {grid.cell_index(0, l), spec.injected, q_layer[l]});
  }

  const ReservoirState init =
      grid.n_z() == 1 ? uniform_state(graph, params.p_init, 0)
                      : hydrostatic_state(graph, spec.brine, params.p_init,
                                          grid.cell_depth(0, 0), 0);

  SimReport report;
  try {
    report = run_simulation(model, init, spec.schedule, spec.sim, true);
  } catch (const std::runtime_error&) {
    rec.failed = true;
    return rec;
  }

  rec.report_times = report.times;
  rec.v_tot = report.v_tot;
  rec.p_field = std::move(report.p_snapshots);
  rec.s_field = std::move(report.s_snapshots);

  // Innermost-face pressure per layer: the half-cell between r_w and the
  // first cell center carries the full layer rate in the injected phase,
  // so p_well = p_0 + q ln(rc_0/r_w) / (2 pi k h * endpoint mobility).
  // One property refinement at the midpoint pressure.
  const double endpoint_kr =
      rel_perm(spec.rock, spec.injected,
               spec.injected == Phase::Gas ? 1.0 - spec.rock.s_br : 0.0);
  const PhaseProperties& inj =
      spec.injected == Phase::Gas ? spec.gas : spec.brine;
  const double ln_half = std::log(grid.cell_center_radius(0) / grid.r_w);
  for (size_t t = 0; t < rec.report_times.size(); ++t) {
    std::vector<double> pw(grid.n_z());
    for (int l = 0; l < grid.n_z(); ++l) {
      const double p0 = rec.p_field[t][grid.cell_index(0, l)];
      const double t_wb =
          2.0 * std::numbers::pi * params.k_layers[l] * heights[l] / ln_half;
      auto face_pressure = [&](double p_eval) {
        const double mob =
            endpoint_kr * density(inj, p_eval) / viscosity(inj, p_eval);
        return p0 + q_layer[l] / (t_wb * mob);
      };
      const double first = face_pressure(p0);
      pw[l] = face_pressure(0.5 * (p0 + first));
    }
    rec.q_conn.push_back(q_layer);
    rec.p_well.push_back(std::move(pw));
  }
  return rec;
}

std::vector<MemberRecord> run_ensemble(const EnsembleSpec& spec,
                                       const std::vector<MemberParams>& members,
                                       int workers) {
  std::vector<MemberRecord> records(members.size());
  std::atomic<size_t> next{0};
  const int n_threads = std::max(
      1, std::min<int>(workers, static_cast<int>(members.size())));
  auto worker = [&]() {
    for (;;) {
      const size_t i = next.fetch_add(1);
      if (i >= members.size()) return;
      records[i] = run_member(spec, members[i]);
    }
  };
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return records;
}

}  // namespace nearwell
