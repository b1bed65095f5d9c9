#include "nearwell/features.hpp"

#include <algorithm>
#include <set>

namespace nearwell {

Family family_from_name(const std::string& name) {
  if (name == "h2o_2d") return Family::H2O2D;
  if (name == "co2_2d") return Family::CO22D;
  if (name == "co2_3d") return Family::CO23D;
  throw std::invalid_argument("unknown example family: " + name);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::H2O2D: return "h2o_2d";
    case Family::CO22D: return "co2_2d";
    case Family::CO23D: return "co2_3d";
  }
  return "h2o_2d";
}

namespace {
struct KindName {
  FeatureKind kind;
  const char* name;
};
constexpr KindName kKindNames[] = {
    {FeatureKind::PressureSelf, "p"},
    {FeatureKind::PressureUp, "p_u"},
    {FeatureKind::PressureDown, "p_l"},
    {FeatureKind::SatSelf, "s_g"},
    {FeatureKind::SatUp, "s_g_u"},
    {FeatureKind::SatDown, "s_g_l"},
    {FeatureKind::KSelf, "k_xy"},
    {FeatureKind::KUp, "k_xy_u"},
    {FeatureKind::KDown, "k_xy_l"},
    {FeatureKind::Vtot, "v_tot"},
    {FeatureKind::Re, "r_e"},
    {FeatureKind::Expert, "log10_wi_geo"},
    {FeatureKind::K, "k"},
    {FeatureKind::H, "h"},
};
}  // namespace

std::string feature_kind_name(FeatureKind k) {
  for (const auto& kn : kKindNames)
    if (kn.kind == k) return kn.name;
  throw std::invalid_argument("unknown feature kind");
}

FeatureKind feature_kind_from_name(const std::string& name) {
  for (const auto& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  throw std::invalid_argument("unknown feature name: " + name);
}

std::vector<std::string> FeatureSpec::names() const {
  std::vector<std::string> out;
  out.reserve(kinds.size());
  for (FeatureKind k : kinds) out.push_back(feature_kind_name(k));
  return out;
}

void FeatureSpec::validate() const {
  if (kinds.empty()) throw std::invalid_argument("feature spec: no features");
  std::set<FeatureKind> seen(kinds.begin(), kinds.end());
  if (seen.size() != kinds.size())
    throw std::invalid_argument("feature spec: duplicate feature");
  if (family == Family::CO23D && kinds.size() != 12)
    throw std::invalid_argument("feature spec: 3D stencil needs 12 inputs");
}

FeatureSpec feature_spec_for(Family family) {
  FeatureSpec fs;
  fs.family = family;
  switch (family) {
    case Family::H2O2D:
      fs.log10_target = false;
      fs.kinds = {FeatureKind::PressureSelf, FeatureKind::K, FeatureKind::H,
                  FeatureKind::Re};
      break;
    case Family::CO22D:
      fs.log10_target = true;
      fs.kinds = {FeatureKind::PressureSelf, FeatureKind::Expert,
                  FeatureKind::Vtot};
      break;
    case Family::CO23D:
      fs.log10_target = true;
      fs.kinds = {FeatureKind::PressureUp,   FeatureKind::PressureSelf,
                  FeatureKind::PressureDown, FeatureKind::SatUp,
                  FeatureKind::SatSelf,      FeatureKind::SatDown,
                  FeatureKind::KUp,          FeatureKind::KSelf,
                  FeatureKind::KDown,        FeatureKind::Vtot,
                  FeatureKind::Re,           FeatureKind::Expert};
      break;
  }
  fs.validate();
  return fs;
}

}  // namespace nearwell
