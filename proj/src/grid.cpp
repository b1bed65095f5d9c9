#include "nearwell/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nearwell {

namespace {
constexpr double kPi = std::numbers::pi;
}

double RadialGrid::cell_center_radius(int ring) const {
  return std::sqrt(r_faces[ring] * r_faces[ring + 1]);
}

double RadialGrid::ring_area(int ring) const {
  const double r0 = r_faces[ring];
  const double r1 = r_faces[ring + 1];
  return kPi * (r1 * r1 - r0 * r0);
}

double RadialGrid::cell_volume(int ring, int layer) const {
  return ring_area(ring) * layer_heights[layer];
}

double RadialGrid::cell_depth(int /*ring*/, int layer) const {
  double top = 0.0;
  for (int l = 0; l < layer; ++l) top += layer_heights[l];
  return top + 0.5 * layer_heights[layer];
}

double RadialGrid::total_height() const {
  double h = 0.0;
  for (double hl : layer_heights) h += hl;
  return h;
}

RadialGrid build_radial_log_grid(double r_w, double r_outer, int n_r,
                                 const std::vector<double>& layer_heights,
                                 double boundary_pv_multiplier) {
  if (!(r_w > 0.0) || !(r_outer > r_w))
    throw std::invalid_argument("radial grid: need 0 < r_w < r_outer");
  if (n_r < 1) throw std::invalid_argument("radial grid: n_r must be >= 1");
  if (layer_heights.empty())
    throw std::invalid_argument("radial grid: at least one layer");
  for (double h : layer_heights)
    if (!(h > 0.0))
      throw std::invalid_argument("radial grid: layer heights must be > 0");

  RadialGrid g;
  g.r_w = r_w;
  g.r_outer = r_outer;
  g.n_r = n_r;
  g.layer_heights = layer_heights;
  g.boundary_pv_multiplier = boundary_pv_multiplier;
  g.r_faces.resize(n_r + 1);
  const double log_ratio = std::log(r_outer / r_w) / n_r;
  for (int i = 0; i <= n_r; ++i)
    g.r_faces[i] = r_w * std::exp(log_ratio * i);
  g.r_faces.front() = r_w;
  g.r_faces.back() = r_outer;
  return g;
}

CartesianGrid build_cartesian_grid(int n_x, int n_y, int n_z, double dx,
                                   double dy, double dz,
                                   double boundary_pv_multiplier) {
  if (n_x < 1 || n_y < 1 || n_z < 1)
    throw std::invalid_argument("cartesian grid: cell counts must be >= 1");
  if (!(dx > 0.0 && dy > 0.0 && dz > 0.0))
    throw std::invalid_argument("cartesian grid: cell sizes must be > 0");
  if (boundary_pv_multiplier < 1.0)
    throw std::invalid_argument("cartesian grid: pv multiplier must be >= 1");
  return CartesianGrid{n_x, n_y, n_z, dx, dy, dz, boundary_pv_multiplier};
}

double radial_transmissibility(const RadialGrid& grid, int face, double k,
                               double h) {
  if (face < 1 || face > grid.n_r - 1)
    throw std::out_of_range("radial_transmissibility: face " +
                            std::to_string(face) + " is not interior");
  const double rc_left = grid.cell_center_radius(face - 1);
  const double rc_right = grid.cell_center_radius(face);
  return 2.0 * kPi * k * h / std::log(rc_right / rc_left);
}

double radial_vertical_transmissibility(const RadialGrid& grid, int ring,
                                        int layer, double kz_upper,
                                        double kz_lower) {
  if (layer < 0 || layer > grid.n_z() - 2)
    throw std::out_of_range("radial_vertical_transmissibility: layer pair");
  const double area = grid.ring_area(ring);
  const double du = 0.5 * grid.layer_heights[layer];
  const double dl = 0.5 * grid.layer_heights[layer + 1];
  if (kz_upper <= 0.0 || kz_lower <= 0.0) return 0.0;
  return area / (du / kz_upper + dl / kz_lower);
}

double cartesian_transmissibility(const CartesianGrid& grid, Axis axis,
                                  double k_left, double k_right) {
  double area = 0.0, half = 0.0;
  switch (axis) {
    case Axis::X: area = grid.dy * grid.dz; half = 0.5 * grid.dx; break;
    case Axis::Y: area = grid.dx * grid.dz; half = 0.5 * grid.dy; break;
    case Axis::Z: area = grid.dx * grid.dy; half = 0.5 * grid.dz; break;
  }
  if (k_left <= 0.0 || k_right <= 0.0) return 0.0;
  return area / (half / k_left + half / k_right);
}

namespace {

// Antiderivative of sqrt(r^2 - t^2).
double circle_antideriv(double r, double t) {
  t = std::clamp(t, -r, r);
  return 0.5 * (t * std::sqrt(std::max(0.0, r * r - t * t)) +
                r * r * std::asin(t / r));
}

}  // namespace

double circle_rect_overlap(double radius, const Rect& rect) {
  if (radius <= 0.0) return 0.0;
  if (rect.x1 <= rect.x0 || rect.y1 <= rect.y0) return 0.0;

  const double a = std::max(rect.x0, -radius);
  const double b = std::min(rect.x1, radius);
  if (b <= a) return 0.0;

  // Strip integral of max(0, min(y1, w) - max(y0, -w)), w = sqrt(r^2-t^2).
  // Breakpoints where the chord crosses y0 or y1 split it into intervals
  // with a single closed form each.
  std::vector<double> ts = {a, b};
  for (double y : {rect.y0, rect.y1}) {
    if (std::abs(y) < radius) {
      const double t = std::sqrt(radius * radius - y * y);
      for (double s : {-t, t})
        if (s > a && s < b) ts.push_back(s);
    }
  }
  std::sort(ts.begin(), ts.end());

  double area = 0.0;
  for (size_t seg = 0; seg + 1 < ts.size(); ++seg) {
    const double t0 = ts[seg], t1 = ts[seg + 1];
    if (t1 <= t0) continue;
    const double tm = 0.5 * (t0 + t1);
    const double w = std::sqrt(std::max(0.0, radius * radius - tm * tm));
    const bool top_flat = rect.y1 <= w;    // top edge inside the disk
    const bool bot_flat = rect.y0 >= -w;   // bottom edge inside the disk
    const double top_m = top_flat ? rect.y1 : w;
    const double bot_m = bot_flat ? rect.y0 : -w;
    if (top_m <= bot_m) continue;
    const double dw = circle_antideriv(radius, t1) - circle_antideriv(radius, t0);
    double piece = 0.0;
    piece += top_flat ? rect.y1 * (t1 - t0) : dw;
    piece -= bot_flat ? rect.y0 * (t1 - t0) : -dw;
    area += piece;
  }
  return area;
}

double annulus_rect_overlap(double r_in, double r_out, const Rect& rect) {
  return circle_rect_overlap(r_out, rect) - circle_rect_overlap(r_in, rect);
}

}  // namespace nearwell
