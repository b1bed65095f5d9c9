#pragma once

#include <cstddef>
#include <vector>

namespace nearwell {

/// Axisymmetric 1.5D grid: logarithmically spaced annular rings times
/// stacked vertical layers. The innermost face sits at the wellbore
/// radius, so the well can be driven as a boundary rate source without
/// any well-index model.
struct RadialGrid {
  double r_w = 0.0;
  double r_outer = 0.0;
  int n_r = 0;
  std::vector<double> layer_heights;            // one per layer, m
  std::vector<double> r_faces;                  // n_r + 1 faces, log spaced
  double boundary_pv_multiplier = 1.0e6;        // outermost ring

  int n_z() const { return static_cast<int>(layer_heights.size()); }
  int n_cells() const { return n_r * n_z(); }
  int cell_index(int ring, int layer) const { return layer * n_r + ring; }
  int ring_of(int cell) const { return cell % n_r; }
  int layer_of(int cell) const { return cell / n_r; }

  /// Geometric mean of the bounding faces; the analytic steady profile is
  /// linear in ln r, and this choice makes the TPFA solution exact on it.
  double cell_center_radius(int ring) const;
  double ring_area(int ring) const;             // pi (r1^2 - r0^2)
  double cell_volume(int ring, int layer) const;
  double cell_depth(int ring, int layer) const; // layer mid-depth, top at 0
  double pore_volume_multiplier(int ring) const {
    return ring == n_r - 1 ? boundary_pv_multiplier : 1.0;
  }
  double total_height() const;
};

/// Uniform Cartesian grid; lateral boundary cells get a pore-volume
/// multiplier emulating a constant-pressure far field.
struct CartesianGrid {
  int n_x = 0, n_y = 0, n_z = 0;
  double dx = 0.0, dy = 0.0, dz = 0.0;
  double pore_volume_multiplier_boundary = 1.0e6;

  int n_cells() const { return n_x * n_y * n_z; }
  int cell_index(int i, int j, int l) const { return (l * n_y + j) * n_x + i; }
  bool is_lateral_boundary(int i, int j) const {
    return i == 0 || i == n_x - 1 || j == 0 || j == n_y - 1;
  }
  double cell_volume() const { return dx * dy * dz; }
  double cell_depth(int layer) const { return (layer + 0.5) * dz; }
};

/// Faces at r_w * (r_outer/r_w)^(i/n_r). Throws on non-positive or
/// non-monotone geometry.
RadialGrid build_radial_log_grid(double r_w, double r_outer, int n_r,
                                 const std::vector<double>& layer_heights,
                                 double boundary_pv_multiplier = 1.0e6);

CartesianGrid build_cartesian_grid(int n_x, int n_y, int n_z, double dx,
                                   double dy, double dz,
                                   double boundary_pv_multiplier = 1.0e6);

/// TPFA transmissibility of interior radial face `face` (between rings
/// face-1 and face): 2 pi k h / ln(rc_right / rc_left). Throws on a
/// boundary face index.
double radial_transmissibility(const RadialGrid& grid, int face, double k,
                               double h);

/// Vertical TPFA between layers `layer` and `layer+1` of ring `ring`,
/// harmonic in the half-layer heights.
double radial_vertical_transmissibility(const RadialGrid& grid, int ring,
                                        int layer, double kz_upper,
                                        double kz_lower);

enum class Axis { X, Y, Z };

/// Harmonic two-point transmissibility between neighbors along `axis`.
/// Symmetric in its sides; zero permeability blocks the face.
double cartesian_transmissibility(const CartesianGrid& grid, Axis axis,
                                  double k_left, double k_right);

/// Axis-aligned rectangle in coordinates centered on the circle.
struct Rect {
  double x0, x1, y0, y1;
};

/// Exact area of disk(radius) intersected with `rect`, via circular
/// segment decomposition. Degenerate rectangles give zero.
double circle_rect_overlap(double radius, const Rect& rect);

/// Overlap of the annulus [r_in, r_out] with `rect`.
double annulus_rect_overlap(double r_in, double r_out, const Rect& rect);

}  // namespace nearwell
