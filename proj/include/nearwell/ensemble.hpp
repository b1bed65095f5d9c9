#pragma once

#include <cstdint>

#include "nearwell/features.hpp"
#include "nearwell/member.hpp"
#include "nearwell/sim.hpp"

namespace nearwell {

struct ParamRange {
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate() const { return !(hi > lo); }
};

/// Ensemble of fine-scale radial runs. H2O samples (p_init, k, h); CO2-2D
/// samples (p_init, k); CO2-3D samples (p_init, k_1..k_L) with fixed layer
/// heights.
struct EnsembleSpec {
  Family family = Family::H2O2D;
  int count = 1;
  uint64_t seed = 0;
  enum class Sampling { UniformRandom, UniformGrid };
  Sampling sampling = Sampling::UniformRandom;

  ParamRange p_init;  // Pa
  ParamRange k;       // m2, per layer for the 3D family
  ParamRange h;       // m, H2O only (degenerate otherwise)

  int n_layers = 1;
  double layer_height = 5.0;  // m, families with fixed height
  double r_w = 0.25;
  double r_outer = 100.0;
  int n_r = 50;
  double boundary_pv_mult = 1.0e6;
  double kz_over_kxy = 1.0;
  double phi = 0.35;

  PhaseProperties brine = PhaseProperties::default_brine();
  PhaseProperties gas = PhaseProperties::default_co2();
  RockFluid rock;
  Phase injected = Phase::Brine;
  double rate_mass = 0.0;  // kg/s

  Schedule schedule;
  SimConfig sim;

  std::vector<double> layer_heights(const MemberParams& params) const;
  void validate() const;
};

/// Deterministic given the seed; sampled values stay inside the declared
/// ranges. Grid sampling uses floor(count^(1/dims)) points per active
/// dimension.
std::vector<MemberParams> build_ensemble(const EnsembleSpec& spec);

/// One fine-scale radial run: rate source on the innermost faces split
/// across layers proportionally to k_l h_l, innermost-face pressure
/// reconstructed per layer as p_well. Failures flag the member instead of
/// aborting the ensemble.
MemberRecord run_member(const EnsembleSpec& spec, const MemberParams& params);

/// Worker-pool execution; results ordered by member id.
std::vector<MemberRecord> run_ensemble(const EnsembleSpec& spec,
                                       const std::vector<MemberParams>& members,
                                       int workers);

}  // namespace nearwell
