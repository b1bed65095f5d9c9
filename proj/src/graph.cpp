#include "nearwell/graph.hpp"

#include <stdexcept>

namespace nearwell {

FlowGraph build_graph(const RadialGrid& grid, std::span<const double> k_layer,
                      double kz_over_kxy, double phi) {
  if (static_cast<int>(k_layer.size()) != grid.n_z())
    throw std::invalid_argument("build_graph: one permeability per layer");

  FlowGraph g;
  g.cells.resize(grid.n_cells());
  for (int l = 0; l < grid.n_z(); ++l) {
    for (int i = 0; i < grid.n_r; ++i) {
      FlowGraph::Cell& c = g.cells[grid.cell_index(i, l)];
      c.volume = grid.cell_volume(i, l);
      c.pv_mult = grid.pore_volume_multiplier(i);
      c.depth = grid.cell_depth(i, l);
      c.phi = phi;
      c.kx = k_layer[l];
      c.dz = grid.layer_heights[l];
      c.above = l > 0 ? grid.cell_index(i, l - 1) : -1;
      c.below = l < grid.n_z() - 1 ? grid.cell_index(i, l + 1) : -1;
    }
  }
  for (int l = 0; l < grid.n_z(); ++l) {
    const double h = grid.layer_heights[l];
    for (int f = 1; f < grid.n_r; ++f) {
      g.faces.push_back({grid.cell_index(f - 1, l), grid.cell_index(f, l),
                         radial_transmissibility(grid, f, k_layer[l], h)});
    }
  }
  for (int l = 0; l + 1 < grid.n_z(); ++l) {
    for (int i = 0; i < grid.n_r; ++i) {
      const double t = radial_vertical_transmissibility(
          grid, i, l, kz_over_kxy * k_layer[l], kz_over_kxy * k_layer[l + 1]);
      g.faces.push_back({grid.cell_index(i, l), grid.cell_index(i, l + 1), t});
    }
  }
  return g;
}

FlowGraph build_graph(const CartesianGrid& grid,
                      std::span<const double> k_layer, double kz_over_kxy,
                      double phi) {
  if (static_cast<int>(k_layer.size()) != grid.n_z)
    throw std::invalid_argument("build_graph: one permeability per layer");

  FlowGraph g;
  g.cells.resize(grid.n_cells());
  for (int l = 0; l < grid.n_z; ++l) {
    for (int j = 0; j < grid.n_y; ++j) {
      for (int i = 0; i < grid.n_x; ++i) {
        FlowGraph::Cell& c = g.cells[grid.cell_index(i, j, l)];
        c.volume = grid.cell_volume();
        c.pv_mult = grid.is_lateral_boundary(i, j)
                        ? grid.pore_volume_multiplier_boundary
                        : 1.0;
        c.depth = grid.cell_depth(l);
        c.phi = phi;
        c.kx = k_layer[l];
        c.dz = grid.dz;
        c.above = l > 0 ? grid.cell_index(i, j, l - 1) : -1;
        c.below = l < grid.n_z - 1 ? grid.cell_index(i, j, l + 1) : -1;
      }
    }
  }
  for (int l = 0; l < grid.n_z; ++l) {
    const double k = k_layer[l];
    const double tx = cartesian_transmissibility(grid, Axis::X, k, k);
    const double ty = cartesian_transmissibility(grid, Axis::Y, k, k);
    for (int j = 0; j < grid.n_y; ++j)
      for (int i = 0; i + 1 < grid.n_x; ++i)
        g.faces.push_back(
            {grid.cell_index(i, j, l), grid.cell_index(i + 1, j, l), tx});
    for (int j = 0; j + 1 < grid.n_y; ++j)
      for (int i = 0; i < grid.n_x; ++i)
        g.faces.push_back(
            {grid.cell_index(i, j, l), grid.cell_index(i, j + 1, l), ty});
  }
  for (int l = 0; l + 1 < grid.n_z; ++l) {
    const double tz = cartesian_transmissibility(
        grid, Axis::Z, kz_over_kxy * k_layer[l], kz_over_kxy * k_layer[l + 1]);
    for (int j = 0; j < grid.n_y; ++j)
      for (int i = 0; i < grid.n_x; ++i)
        g.faces.push_back(
            {grid.cell_index(i, j, l), grid.cell_index(i, j, l + 1), tz});
  }
  return g;
}

}  // namespace nearwell
