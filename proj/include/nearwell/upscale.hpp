#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nearwell/features.hpp"
#include "nearwell/grid.hpp"
#include "nearwell/member.hpp"
#include "nearwell/nn.hpp"

namespace nearwell {

/// One dataset row: raw feature vector, raw (untransformed) well index,
/// and provenance.
struct WellIndexSample {
  std::vector<double> x;
  double wi = 0.0;  // kg/(s Pa): the ensemble rate is total mass inflow
  int member_id = -1;
  double time = 0.0;        // s
  double coarse_size = 0.0; // m
  int layer = 0;
};

struct DropStats {
  long failed_members = 0;
  long dropped_small_dp = 0;
  long dropped_nonpositive = 0;
  long kept = 0;
};

struct Dataset {
  FeatureSpec fspec;
  std::vector<WellIndexSample> train, val, test;
  DropStats drops;
};

/// Flow-based well index q / (p_well - p_i). Returns nullopt when the
/// pressure difference is below eps_dp or the result is not positive;
/// those samples are dropped and counted, never asserted on.
std::optional<double> data_driven_wi(double q, double p_well, double p_i,
                                     double eps_dp = 100.0);

/// Fine pressure of the radial cell whose center radius is closest to
/// r_e; ties break to the smaller radius.
double upscale_pressure(const RadialGrid& grid,
                        std::span<const double> p_layer, double r_e);

/// Overlap-weighted average of the fine saturations over the coarse
/// square [-half, half]^2 centered on the well (weights normalized to a
/// convex combination).
double upscale_saturation(const RadialGrid& grid,
                          std::span<const double> s_layer, double half_width);

/// log10(2 pi k h / ln(r_e / r_w)).
double expert_feature(double k, double h, double r_e, double r_w);

/// One sample per (member, report time, coarse size, connection layer),
/// split by member id so no member leaks across splits. Throws if nothing
/// survives the drop filters (message carries the statistics).
Dataset assemble_dataset(const std::vector<MemberRecord>& records,
                         const FeatureSpec& fspec,
                         std::span<const double> coarse_sizes,
                         std::array<double, 3> split_fractions, uint64_t seed,
                         double eps_dp = 100.0);

/// Raw samples -> training matrices; applies the target transform.
TrainData to_train_data(const std::vector<WellIndexSample>& samples,
                        const FeatureSpec& fspec);

void write_dataset_csv(const std::string& path, const FeatureSpec& fspec,
                       const std::vector<WellIndexSample>& samples);
std::vector<WellIndexSample> read_dataset_csv(const std::string& path,
                                              const FeatureSpec& fspec);

}  // namespace nearwell
