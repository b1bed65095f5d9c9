#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace nearwell {

enum class Activation { Sigmoid, Tanh, Relu, Softplus };

Activation activation_from_name(const std::string& name);
std::string activation_name(Activation a);

/// Fully connected network with a linear output layer. Weights are stored
/// as W[l] (out x in) and b[l]; evaluation is batched through Eigen.
struct FCNN {
  std::vector<Eigen::MatrixXd> weights;
  std::vector<Eigen::VectorXd> biases;
  Activation activation = Activation::Sigmoid;

  int n_inputs() const { return static_cast<int>(weights.front().cols()); }
  int n_outputs() const { return static_cast<int>(weights.back().rows()); }
  std::vector<int> layer_sizes() const;
  long parameter_count() const;
};

/// [n_in, h1, ..., hd, n_out]; seeded Glorot-uniform init.
FCNN make_fcnn(const std::vector<int>& layer_sizes, Activation act,
               uint64_t seed);

/// Per-feature affine map onto [-1, 1]; target handled the same way.
struct Scaler {
  Eigen::VectorXd x_min, x_max;
  double y_min = 0.0, y_max = 0.0;

  Eigen::VectorXd scale(const Eigen::VectorXd& x) const;
  Eigen::VectorXd unscale(const Eigen::VectorXd& x_scaled) const;
  double scale_target(double y) const;
  double unscale_target(double y_scaled) const;
};

/// Fit bounds over columns of X (samples are rows) and targets y.
/// Throws if any feature or the target is constant.
Scaler fit_scaler(const Eigen::MatrixXd& x_rows, const Eigen::VectorXd& y);

/// Forward pass; x_scaled columns are samples.
Eigen::MatrixXd forward(const FCNN& net, const Eigen::MatrixXd& x_scaled);
double forward_one(const FCNN& net, const Eigen::VectorXd& x_scaled);

/// Scalar output and its gradient with respect to the inputs (reverse
/// sweep through the layers).
struct ForwardWithGrad {
  double y = 0.0;
  Eigen::VectorXd dy_dx;
};
ForwardWithGrad forward_with_input_grad(const FCNN& net,
                                        const Eigen::VectorXd& x_scaled);

/// Mean squared error over a batch (scaled space), 1/K sum |yhat - y|^2.
double loss_mse(const FCNN& net, const Eigen::MatrixXd& x_scaled,
                const Eigen::VectorXd& y_scaled);

/// Exact dL/dtheta for the MSE loss by backpropagation.
struct Gradients {
  std::vector<Eigen::MatrixXd> d_weights;
  std::vector<Eigen::VectorXd> d_biases;
};
Gradients gradients(const FCNN& net, const Eigen::MatrixXd& x_scaled,
                    const Eigen::VectorXd& y_scaled);

struct TrainConfig {
  double learning_rate = 1.0e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1.0e-8;
  int batch_size = 64;
  int max_epochs = 2000;
  int patience = 200;  // early stop: epochs without a new best val loss
  uint64_t seed = 0;

  void validate() const;
};

/// Adam moments; step() applies one bias-corrected update in place.
struct AdamState {
  std::vector<Eigen::MatrixXd> m_w, v_w;
  std::vector<Eigen::VectorXd> m_b, v_b;
  long step_count = 0;

  explicit AdamState(const FCNN& net);
};
void adam_step(FCNN& net, AdamState& state, const Gradients& grads,
               const TrainConfig& cfg);

struct TrainHistory {
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  int best_epoch = -1;
  double best_val_loss = 0.0;
};

/// Raw-sample training set; rows are samples. Targets are already in
/// transformed (e.g. log10) but unscaled space.
struct TrainData {
  Eigen::MatrixXd x;  // n_samples x n_features
  Eigen::VectorXd y;
};

struct TrainResult {
  FCNN net;
  Scaler scaler;
  TrainHistory history;
};

/// Scaler fitted on the training split only; shuffled seeded mini-batches;
/// returns the parameters of the best-validation epoch. Throws on NaN loss
/// (message names the epoch).
TrainResult train(const TrainData& train_data, const TrainData& val_data,
                  const std::vector<int>& hidden_layers, Activation act,
                  const TrainConfig& cfg);

struct SearchCandidate {
  int depth = 0;
  int width = 0;
  Activation activation = Activation::Sigmoid;
  double learning_rate = 0.0;
};

struct SearchRow {
  SearchCandidate candidate;
  double val_loss = 0.0;
  long parameter_count = 0;
};

struct SearchResult {
  SearchCandidate best;
  TrainResult best_run;
  std::vector<SearchRow> report;
};

/// Exhaustive grid; selection by final validation loss, ties broken
/// toward fewer parameters.
SearchResult hyperparameter_search(const TrainData& train_data,
                                   const TrainData& val_data,
                                   const std::vector<int>& depths,
                                   const std::vector<int>& widths,
                                   const std::vector<Activation>& activations,
                                   const std::vector<double>& learning_rates,
                                   const TrainConfig& cfg);

/// Sweep of one scaled input over [-1, 1] with the others fixed to seeded
/// random values; one curve per draw plus the mean output range.
struct SensitivityCurves {
  std::vector<double> sweep_points;              // shared x axis
  std::vector<std::vector<double>> curves;       // [draw][point]
  double mean_range = 0.0;
};
SensitivityCurves sensitivity(const FCNN& net, int input_index, int n_draws,
                              uint64_t seed, int n_points = 101);

}  // namespace nearwell
