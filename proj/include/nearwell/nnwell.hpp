#pragma once

#include <array>

#include "nearwell/model_io.hpp"

namespace nearwell {

/// Raw stencil values for one connection, SI units. Vertical boundaries
/// are flagged so padding follows the dataset convention (pressure padded
/// with the own value, permeability and saturation with zero).
struct FeatureFrame {
  double p_self = 0.0, p_up = 0.0, p_down = 0.0;
  double s_self = 0.0, s_up = 0.0, s_down = 0.0;
  double k_self = 0.0, k_up = 0.0, k_down = 0.0;
  bool has_up = false, has_down = false;
  double v_tot = 0.0;
  double r_e = 0.0;
  double h = 0.0;    // connected interval height
  double r_w = 0.0;
  double k = 0.0;    // raw permeability feature (H2O family)
  double h_res = 0.0;  // reservoir height feature (H2O family)
};

/// Raw feature vector in the model's declared order.
Eigen::VectorXd extract_features(const FeatureFrame& frame,
                                 const FeatureSpec& fspec);

/// Inferred well index and its derivatives with respect to the stencil
/// unknowns (index 0 = cell above, 1 = connection cell, 2 = cell below).
/// Inputs outside the scaler range are clamped with zero derivative;
/// clamp events are counted into *clamp_events when given.
struct WellIndexEval {
  double wi = 0.0;
  std::array<double, 3> d_p{};   // d wi / d pressure
  std::array<double, 3> d_sg{};  // d wi / d gas saturation
};

WellIndexEval nn_well_index(const TrainedModel& model,
                            const FeatureFrame& frame,
                            long* clamp_events = nullptr);

/// Convenience: inferred well index value only.
double nn_well_index_value(const TrainedModel& model,
                           const FeatureFrame& frame);

}  // namespace nearwell
