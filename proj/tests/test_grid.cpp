#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "nearwell/grid.hpp"

using namespace nearwell;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("radial log grid faces and volumes") {
  const RadialGrid g = build_radial_log_grid(0.25, 100.0, 50, {5.0});
  CHECK(g.n_cells() == 50);
  CHECK(g.r_faces.front() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.r_faces.back() == doctest::Approx(100.0).epsilon(1e-15));
  // Arbitrary-precision value of the spacing formula at i = 25.
  CHECK(g.r_faces[25] == doctest::Approx(5.0).epsilon(1e-13));

  // Constant ratio to 1e-12 (logarithmic spacing).
  const double ratio = g.r_faces[1] / g.r_faces[0];
  for (int i = 1; i < g.n_r; ++i)
    CHECK(g.r_faces[i + 1] / g.r_faces[i] ==
          doctest::Approx(ratio).epsilon(1e-12));

  double vol = 0.0;
  for (int i = 0; i < g.n_r; ++i) vol += g.cell_volume(i, 0);
  const double expected = kPi * (100.0 * 100.0 - 0.25 * 0.25) * 5.0;
  CHECK(vol == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("single annulus grid") {
  const RadialGrid g = build_radial_log_grid(1.0, std::exp(1.0), 1, {1.0});
  CHECK(g.n_cells() == 1);
  CHECK(g.r_faces[0] == doctest::Approx(1.0));
  CHECK(g.r_faces[1] == doctest::Approx(std::exp(1.0)));
}

TEST_CASE("invalid grid geometry throws") {
  CHECK_THROWS_AS(build_radial_log_grid(-0.1, 100.0, 10, {5.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_radial_log_grid(10.0, 1.0, 10, {5.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_radial_log_grid(0.25, 100.0, 10, {-5.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_cartesian_grid(0, 3, 1, 1.0, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_cartesian_grid(3, 3, 1, -1.0, 1.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("radial transmissibility") {
  // Faces {1, e, e^2}: cell-center ratio is e, so ln cancels.
  const RadialGrid g =
      build_radial_log_grid(1.0, std::exp(2.0), 2, {5.0});
  const double t = radial_transmissibility(g, 1, 1.0e-12, 5.0);
  CHECK(t == doctest::Approx(2.0 * kPi * 5.0e-12).epsilon(1e-12));
  CHECK(radial_transmissibility(g, 1, 2.0e-12, 5.0) ==
        doctest::Approx(2.0 * t).epsilon(1e-12));
  CHECK(radial_transmissibility(g, 1, 0.0, 5.0) == 0.0);
  CHECK_THROWS_AS(radial_transmissibility(g, 0, 1e-12, 5.0),
                  std::out_of_range);
  CHECK_THROWS_AS(radial_transmissibility(g, 2, 1e-12, 5.0),
                  std::out_of_range);
}

TEST_CASE("cartesian transmissibility") {
  const CartesianGrid g = build_cartesian_grid(3, 3, 1, 1.0, 1.0, 1.0);
  // Homogeneous limit T = k A / dx.
  CHECK(cartesian_transmissibility(g, Axis::X, 1e-12, 1e-12) ==
        doctest::Approx(1e-12).epsilon(1e-12));
  // Blocking cell.
  CHECK(cartesian_transmissibility(g, Axis::X, 0.0, 1e-12) == 0.0);
  // Harmonic mean arithmetic.
  CHECK(cartesian_transmissibility(g, Axis::X, 1e-12, 3e-12) ==
        doctest::Approx(1.5e-12).epsilon(1e-12));
  // Symmetric under side swap.
  for (double ka : {1e-14, 3e-13, 1e-12})
    for (double kb : {5e-14, 2e-13}) {
      CHECK(cartesian_transmissibility(g, Axis::Y, ka, kb) ==
            doctest::Approx(cartesian_transmissibility(g, Axis::Y, kb, ka))
                .epsilon(1e-14));
      CHECK(cartesian_transmissibility(g, Axis::Y, ka, kb) >= 0.0);
    }
}

TEST_CASE("circle-rectangle overlap") {
  // Disk fully inside the rectangle.
  CHECK(circle_rect_overlap(1.0, {-5, 5, -5, 5}) ==
        doctest::Approx(kPi).epsilon(1e-12));
  // Rectangle fully inside the disk.
  CHECK(circle_rect_overlap(10.0, {-1, 2, -1, 1}) ==
        doctest::Approx(6.0).epsilon(1e-12));
  // Half plane through the center.
  CHECK(circle_rect_overlap(1.0, {0, 10, -10, 10}) ==
        doctest::Approx(kPi / 2.0).epsilon(1e-12));
  // Degenerate rectangle.
  CHECK(circle_rect_overlap(1.0, {2, 2, -1, 1}) == 0.0);
  CHECK(circle_rect_overlap(0.0, {-1, 1, -1, 1}) == 0.0);
}

TEST_CASE("annulus overlaps partition to the annulus area") {
  const double r_in = 3.3, r_out = 9.7;
  double sum = 0.0;
  for (int i = -12; i < 12; ++i)
    for (int j = -12; j < 12; ++j)
      sum += annulus_rect_overlap(
          r_in, r_out,
          {static_cast<double>(i), i + 1.0, static_cast<double>(j), j + 1.0});
  const double area = kPi * (r_out * r_out - r_in * r_in);
  CHECK(sum == doctest::Approx(area).epsilon(1e-9));
}

TEST_CASE("radial vertical transmissibility") {
  const RadialGrid g = build_radial_log_grid(0.25, 100.0, 10, {4.0, 6.0});
  const double t = radial_vertical_transmissibility(g, 3, 0, 2e-12, 2e-12);
  const double area = g.ring_area(3);
  CHECK(t == doctest::Approx(area / (2.0 / 2e-12 + 3.0 / 2e-12)).epsilon(1e-12));
  CHECK(radial_vertical_transmissibility(g, 3, 0, 0.0, 2e-12) == 0.0);
}
