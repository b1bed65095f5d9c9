#pragma once

#include <string>

#include "nearwell/features.hpp"
#include "nearwell/nn.hpp"

namespace nearwell {

/// A trained well-index model: network, scaling, and feature contract.
struct TrainedModel {
  FCNN net;
  Scaler scaler;
  FeatureSpec fspec;
};

/// Versioned self-describing text format; numbers are written with full
/// round-trip precision, so save -> load -> forward is bit-exact.
void save_model(const std::string& path, const TrainedModel& model);
TrainedModel load_model(const std::string& path);

}  // namespace nearwell
