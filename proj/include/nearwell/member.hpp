#pragma once

#include <string>
#include <vector>

namespace nearwell {

/// One sampled ensemble tuple. k_layers has one entry for the 2D families
/// and one per layer for the 3D family; h is only sampled for H2O.
struct MemberParams {
  int id = -1;
  double p_init = 0.0;         // Pa
  std::vector<double> k_layers;  // m2
  double h = 0.0;              // m (total height)
};

/// Raw output of one fine-scale radial run: per report time, the injected
/// volume, per-layer connection rate and innermost-face pressure, and the
/// full pressure/saturation fields the upscaler consumes.
struct MemberRecord {
  MemberParams params;
  bool failed = false;

  // Fine grid geometry (the upscaler rebuilds the radial grid from it).
  double r_w = 0.0;
  double r_outer = 0.0;
  int n_r = 0;
  std::vector<double> layer_heights;

  std::vector<double> report_times;             // s
  std::vector<double> v_tot;                    // m3 at reference conditions
  std::vector<std::vector<double>> q_conn;      // [time][layer], kg/s
  std::vector<std::vector<double>> p_well;      // [time][layer], Pa
  std::vector<std::vector<double>> p_field;     // [time][layer*n_r + ring]
  std::vector<std::vector<double>> s_field;     // [time][cell]
};

void save_member(const std::string& path, const MemberRecord& record);
MemberRecord load_member(const std::string& path);

}  // namespace nearwell
