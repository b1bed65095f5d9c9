#pragma once

#include <span>
#include <vector>

#include "nearwell/grid.hpp"

namespace nearwell {

/// Grid-agnostic finite-volume connectivity: cells with pore volume and
/// depth, faces with geometric transmissibility (permeability folded in).
/// Both grid types lower onto this, so the assembler is written once.
struct FlowGraph {
  struct Cell {
    double volume = 0.0;   // bulk volume, m3
    double pv_mult = 1.0;  // pore-volume multiplier (boundary cells)
    double depth = 0.0;    // cell-center depth, m (positive down)
    double phi = 0.0;      // porosity
    double kx = 0.0;       // horizontal permeability, m2
    double dz = 0.0;       // vertical extent, m
    int above = -1;        // vertical neighbor indices, -1 at boundary
    int below = -1;
  };
  struct Face {
    int c0 = -1;
    int c1 = -1;
    double trans = 0.0;  // m3
  };

  std::vector<Cell> cells;
  std::vector<Face> faces;

  int n_cells() const { return static_cast<int>(cells.size()); }
  double pore_volume(int c) const {
    return cells[c].volume * cells[c].pv_mult * cells[c].phi;
  }
};

/// k_layer holds the horizontal permeability per vertical layer;
/// kz = kz_over_kxy * kxy.
FlowGraph build_graph(const RadialGrid& grid, std::span<const double> k_layer,
                      double kz_over_kxy, double phi);

FlowGraph build_graph(const CartesianGrid& grid,
                      std::span<const double> k_layer, double kz_over_kxy,
                      double phi);

}  // namespace nearwell
