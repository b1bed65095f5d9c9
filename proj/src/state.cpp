#include "nearwell/state.hpp"

#include <cmath>
#include <map>

namespace nearwell {

ReservoirState uniform_state(const FlowGraph& g, double p_init, int n_wells) {
  ReservoirState s;
  s.p = Eigen::VectorXd::Constant(g.n_cells(), p_init);
  s.s_g = Eigen::VectorXd::Zero(g.n_cells());
  s.p_bhp.assign(n_wells, p_init);
  return s;
}

namespace {

// One segment of the hydrostatic chain: p_b with the face-average density
// balance p_b - p_a = 0.5 (rho(p_a) + rho(p_b)) g (d_b - d_a), solved by
// fixed point (contracts fast at these compressibilities).
double chain_segment(const PhaseProperties& brine, double p_a, double d_a,
                     double d_b) {
  double p_b = p_a;
  for (int it = 0; it < 100; ++it) {
    const double rho_avg = 0.5 * (density(brine, p_a) + density(brine, p_b));
    const double next = p_a + rho_avg * units::gravity * (d_b - d_a);
    const bool done = std::abs(next - p_b) <= 1e-10;
    p_b = next;
    if (done) break;
  }
  return p_b;
}

}  // namespace

ReservoirState hydrostatic_state(const FlowGraph& g,
                                 const PhaseProperties& brine, double p_init,
                                 double datum_depth, int n_wells) {
  ReservoirState s = uniform_state(g, p_init, n_wells);
  // Layered grids: pressure is a function of depth only. The vertical
  // faces connect adjacent layers, so chaining level by level makes every
  // face potential difference vanish exactly.
  std::map<double, double> by_depth;
  for (int c = 0; c < g.n_cells(); ++c) by_depth[g.cells[c].depth] = 0.0;
  by_depth[datum_depth] = p_init;

  auto datum_it = by_depth.find(datum_depth);
  double p = p_init, d = datum_depth;
  for (auto it = std::next(datum_it); it != by_depth.end(); ++it) {
    it->second = chain_segment(brine, p, d, it->first);
    p = it->second;
    d = it->first;
  }
  p = p_init;
  d = datum_depth;
  for (auto it = std::make_reverse_iterator(datum_it); it != by_depth.rend();
       ++it) {
    it->second = chain_segment(brine, p, d, it->first);
    p = it->second;
    d = it->first;
  }
  for (int c = 0; c < g.n_cells(); ++c) s.p[c] = by_depth[g.cells[c].depth];
  return s;
}

}  // namespace nearwell
