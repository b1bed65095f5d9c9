#include "nearwell/nnwell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nearwell/upscale.hpp"

namespace nearwell {

namespace {

// Which stencil slot a feature differentiates into: 0 = up, 1 = self,
// 2 = down, -1 = static. Padded vertical neighbors redirect pressure
// derivatives to the own cell and kill saturation derivatives.
struct FeatureBinding {
  double value = 0.0;
  int pressure_slot = -1;
  int saturation_slot = -1;
};

FeatureBinding bind_feature(const FeatureFrame& f, FeatureKind kind) {
  switch (kind) {
    case FeatureKind::PressureSelf: return {f.p_self, 1, -1};
    case FeatureKind::PressureUp:
      return f.has_up ? FeatureBinding{f.p_up, 0, -1}
                      : FeatureBinding{f.p_self, 1, -1};
    case FeatureKind::PressureDown:
      return f.has_down ? FeatureBinding{f.p_down, 2, -1}
                        : FeatureBinding{f.p_self, 1, -1};
    case FeatureKind::SatSelf: return {f.s_self, -1, 1};
    case FeatureKind::SatUp:
      return f.has_up ? FeatureBinding{f.s_up, -1, 0}
                      : FeatureBinding{0.0, -1, -1};
    case FeatureKind::SatDown:
      return f.has_down ? FeatureBinding{f.s_down, -1, 2}
                        : FeatureBinding{0.0, -1, -1};
    case FeatureKind::KSelf: return {f.k_self, -1, -1};
    case FeatureKind::KUp: return {f.has_up ? f.k_up : 0.0, -1, -1};
    case FeatureKind::KDown: return {f.has_down ? f.k_down : 0.0, -1, -1};
    case FeatureKind::Vtot: return {f.v_tot, -1, -1};
    case FeatureKind::Re: return {f.r_e, -1, -1};
    case FeatureKind::Expert:
      return {expert_feature(f.k_self, f.h, f.r_e, f.r_w), -1, -1};
    case FeatureKind::K: return {f.k, -1, -1};
    case FeatureKind::H: return {f.h_res, -1, -1};
  }
  throw std::logic_error("bind_feature: unhandled kind");
}

}  // namespace

Eigen::VectorXd extract_features(const FeatureFrame& frame,
                                 const FeatureSpec& fspec) {
  Eigen::VectorXd x(fspec.n_features());
  for (int i = 0; i < fspec.n_features(); ++i)
    x[i] = bind_feature(frame, fspec.kinds[i]).value;
  return x;
}

WellIndexEval nn_well_index(const TrainedModel& model,
                            const FeatureFrame& frame, long* clamp_events) {
  const FeatureSpec& fs = model.fspec;
  const int n = fs.n_features();
  if (model.net.n_inputs() != n)
    throw std::runtime_error(
        "nn well model: network input size does not match the feature spec");

  Eigen::VectorXd x_raw(n);
  std::vector<FeatureBinding> bindings(n);
  std::vector<bool> clamped(n, false);
  for (int i = 0; i < n; ++i) {
    bindings[i] = bind_feature(frame, fs.kinds[i]);
    double v = bindings[i].value;
    if (v < model.scaler.x_min[i] || v > model.scaler.x_max[i]) {
      clamped[i] = true;
      if (clamp_events) ++(*clamp_events);
      v = std::min(std::max(v, model.scaler.x_min[i]), model.scaler.x_max[i]);
    }
    x_raw[i] = v;
  }

  const Eigen::VectorXd x_scaled = model.scaler.scale(x_raw);
  const ForwardWithGrad fwd = forward_with_input_grad(model.net, x_scaled);

  const double y_raw = model.scaler.unscale_target(fwd.y);
  const double dy_dyscaled = 0.5 * (model.scaler.y_max - model.scaler.y_min);

  WellIndexEval out;
  double wi = y_raw;
  double transform_factor = 1.0;
  if (fs.log10_target) {
    wi = std::pow(10.0, y_raw);
    transform_factor = wi * std::numbers::ln10;
  }
  out.wi = wi;

  for (int i = 0; i < n; ++i) {
    if (clamped[i]) continue;  // zero derivative in the clamped region
    const double dscale = 2.0 / (model.scaler.x_max[i] - model.scaler.x_min[i]);
    const double d = transform_factor * dy_dyscaled * fwd.dy_dx[i] * dscale;
    if (bindings[i].pressure_slot >= 0) out.d_p[bindings[i].pressure_slot] += d;
    if (bindings[i].saturation_slot >= 0)
      out.d_sg[bindings[i].saturation_slot] += d;
  }
  return out;
}

double nn_well_index_value(const TrainedModel& model,
                           const FeatureFrame& frame) {
  return nn_well_index(model, frame).wi;
}

}  // namespace nearwell
