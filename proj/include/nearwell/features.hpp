#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace nearwell {

enum class Family { H2O2D, CO22D, CO23D };

Family family_from_name(const std::string& name);
std::string family_name(Family f);

/// Semantic tag of one network input. The same tags drive both dataset
/// assembly (values upscaled from fine radial fields) and runtime
/// extraction (values read from the coarse state), which pins the two
/// sides to one convention.
enum class FeatureKind {
  PressureSelf,  // well-cell pressure / fine pressure at r_e
  PressureUp,    // cell above (padded with own value at the top boundary)
  PressureDown,  // cell below (padded with own value at the bottom)
  SatSelf,       // gas saturation (overlap average on the fine side)
  SatUp,         // padded with 0 at boundaries
  SatDown,
  KSelf,         // horizontal permeability, padded with 0 at boundaries
  KUp,
  KDown,
  Vtot,          // cumulative injected volume at reference conditions
  Re,            // equivalent radius of the coarse cell
  Expert,        // log10(2 pi k h / ln(r_e/r_w))
  K,             // raw permeability (H2O family)
  H,             // reservoir height (H2O family)
};

std::string feature_kind_name(FeatureKind k);
FeatureKind feature_kind_from_name(const std::string& name);

struct FeatureSpec {
  Family family = Family::H2O2D;
  bool log10_target = false;
  std::vector<FeatureKind> kinds;

  int n_features() const { return static_cast<int>(kinds.size()); }
  std::vector<std::string> names() const;
  void validate() const;
};

/// The per-family input vectors:
///   H2O:    (p, k, h, r_e), identity target
///   CO2-2D: (p, log10(2 pi k h / ln(r_e/r_w)), V_tot), log10 target
///   CO2-3D: (p_u, p, p_l, S_u, S, S_l, k_u, k, k_l, V_tot, r_e, expert),
///           log10 target
FeatureSpec feature_spec_for(Family family);

}  // namespace nearwell
