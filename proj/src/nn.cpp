#include "nearwell/nn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nearwell/rng.hpp"

namespace nearwell {

Activation activation_from_name(const std::string& name) {
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "tanh") return Activation::Tanh;
  if (name == "relu") return Activation::Relu;
  if (name == "softplus") return Activation::Softplus;
  throw std::invalid_argument("unknown activation: " + name);
}

std::string activation_name(Activation a) {
  switch (a) {
    case Activation::Sigmoid: return "sigmoid";
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
    case Activation::Softplus: return "softplus";
  }
  return "sigmoid";
}

namespace {

double act_eval(Activation a, double x) {
  switch (a) {
    case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
    case Activation::Tanh: return std::tanh(x);
    case Activation::Relu: return x > 0.0 ? x : 0.0;
    case Activation::Softplus:
      // log(1 + e^x), stable for large |x|.
      return x > 30.0 ? x : std::log1p(std::exp(x));
  }
  return 0.0;
}

double act_deriv(Activation a, double x) {
  switch (a) {
    case Activation::Sigmoid: {
      const double s = 1.0 / (1.0 + std::exp(-x));
      return s * (1.0 - s);
    }
    case Activation::Tanh: {
      const double t = std::tanh(x);
      return 1.0 - t * t;
    }
    case Activation::Relu: return x > 0.0 ? 1.0 : 0.0;
    case Activation::Softplus: return 1.0 / (1.0 + std::exp(-x));
  }
  return 0.0;
}

Eigen::MatrixXd act_eval(Activation a, const Eigen::MatrixXd& x) {
  return x.unaryExpr([a](double v) { return act_eval(a, v); });
}

Eigen::MatrixXd act_deriv(Activation a, const Eigen::MatrixXd& x) {
  return x.unaryExpr([a](double v) { return act_deriv(a, v); });
}

}  // namespace

std::vector<int> FCNN::layer_sizes() const {
  std::vector<int> sizes;
  sizes.push_back(n_inputs());
  for (const auto& w : weights) sizes.push_back(static_cast<int>(w.rows()));
  return sizes;
}

long FCNN::parameter_count() const {
  long n = 0;
  for (size_t l = 0; l < weights.size(); ++l)
    n += weights[l].size() + biases[l].size();
  return n;
}

FCNN make_fcnn(const std::vector<int>& layer_sizes, Activation act,
               uint64_t seed) {
  if (layer_sizes.size() < 2)
    throw std::invalid_argument("make_fcnn: need at least input and output");
  for (int s : layer_sizes)
    if (s < 1) throw std::invalid_argument("make_fcnn: layer size < 1");

  FCNN net;
  net.activation = act;
  Rng rng(seed);
  for (size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const int n_in = layer_sizes[l];
    const int n_out = layer_sizes[l + 1];
    const double bound = std::sqrt(6.0 / (n_in + n_out));
    Eigen::MatrixXd w(n_out, n_in);
    for (int r = 0; r < n_out; ++r)
      for (int c = 0; c < n_in; ++c) w(r, c) = rng.uniform(-bound, bound);
    net.weights.push_back(std::move(w));
    net.biases.push_back(Eigen::VectorXd::Zero(n_out));
  }
  return net;
}

Eigen::VectorXd Scaler::scale(const Eigen::VectorXd& x) const {
  Eigen::VectorXd out(x.size());
  for (int i = 0; i < x.size(); ++i)
    out[i] = -1.0 + 2.0 * (x[i] - x_min[i]) / (x_max[i] - x_min[i]);
  return out;
}

Eigen::VectorXd Scaler::unscale(const Eigen::VectorXd& x_scaled) const {
  Eigen::VectorXd out(x_scaled.size());
  for (int i = 0; i < x_scaled.size(); ++i)
    out[i] = x_min[i] + 0.5 * (x_scaled[i] + 1.0) * (x_max[i] - x_min[i]);
  return out;
}

double Scaler::scale_target(double y) const {
  return -1.0 + 2.0 * (y - y_min) / (y_max - y_min);
}

double Scaler::unscale_target(double y_scaled) const {
  return y_min + 0.5 * (y_scaled + 1.0) * (y_max - y_min);
}

Scaler fit_scaler(const Eigen::MatrixXd& x_rows, const Eigen::VectorXd& y) {
  if (x_rows.rows() == 0) throw std::invalid_argument("fit_scaler: no data");
  Scaler s;
  s.x_min = x_rows.colwise().minCoeff();
  s.x_max = x_rows.colwise().maxCoeff();
  for (int i = 0; i < s.x_min.size(); ++i)
    if (!(s.x_max[i] > s.x_min[i]))
      throw std::invalid_argument("fit_scaler: feature " + std::to_string(i) +
                                  " is constant");
  s.y_min = y.minCoeff();
  s.y_max = y.maxCoeff();
  if (!(s.y_max > s.y_min))
    throw std::invalid_argument("fit_scaler: constant target");
  return s;
}

Eigen::MatrixXd forward(const FCNN& net, const Eigen::MatrixXd& x_scaled) {
  Eigen::MatrixXd a = x_scaled;
  const size_t last = net.weights.size() - 1;
  for (size_t l = 0; l < net.weights.size(); ++l) {
    Eigen::MatrixXd z =
        (net.weights[l] * a).colwise() + net.biases[l];
    a = l == last ? z : act_eval(net.activation, z);
  }
  return a;
}

double forward_one(const FCNN& net, const Eigen::VectorXd& x_scaled) {
  return forward(net, x_scaled)(0, 0);
}

ForwardWithGrad forward_with_input_grad(const FCNN& net,
                                        const Eigen::VectorXd& x_scaled) {
  const size_t n_layers = net.weights.size();
  std::vector<Eigen::VectorXd> zs(n_layers);
  Eigen::VectorXd a = x_scaled;
  for (size_t l = 0; l < n_layers; ++l) {
    zs[l] = net.weights[l] * a + net.biases[l];
    a = l == n_layers - 1 ? zs[l]
                          : static_cast<Eigen::VectorXd>(
                                act_eval(net.activation, zs[l]));
  }
  ForwardWithGrad out;
  out.y = a[0];
  // dy/dx = W0^T D0 W1^T D1 ... Wlast^T applied right to left.
  Eigen::VectorXd g = net.weights[n_layers - 1].row(0).transpose();
  for (size_t l = n_layers - 1; l-- > 0;) {
    g = g.cwiseProduct(
        static_cast<Eigen::VectorXd>(act_deriv(net.activation, zs[l])));
    g = net.weights[l].transpose() * g;
  }
  out.dy_dx = g;
  return out;
}

double loss_mse(const FCNN& net, const Eigen::MatrixXd& x_scaled,
                const Eigen::VectorXd& y_scaled) {
  const Eigen::MatrixXd yhat = forward(net, x_scaled);
  return (yhat.row(0).transpose() - y_scaled).squaredNorm() /
         static_cast<double>(y_scaled.size());
}

Gradients gradients(const FCNN& net, const Eigen::MatrixXd& x_scaled,
                    const Eigen::VectorXd& y_scaled) {
  const size_t n_layers = net.weights.size();
  const int batch = static_cast<int>(x_scaled.cols());

  std::vector<Eigen::MatrixXd> activations(n_layers + 1);
  std::vector<Eigen::MatrixXd> zs(n_layers);
  activations[0] = x_scaled;
  for (size_t l = 0; l < n_layers; ++l) {
    zs[l] = (net.weights[l] * activations[l]).colwise() + net.biases[l];
    activations[l + 1] =
        l == n_layers - 1 ? zs[l] : act_eval(net.activation, zs[l]);
  }

  Gradients g;
  g.d_weights.resize(n_layers);
  g.d_biases.resize(n_layers);

  // dL/dyhat = 2 (yhat - y) / K, linear output layer.
  Eigen::MatrixXd delta =
      2.0 / batch * (activations[n_layers].row(0).transpose() - y_scaled)
          .transpose();
  for (size_t l = n_layers; l-- > 0;) {
    g.d_weights[l] = delta * activations[l].transpose();
    g.d_biases[l] = delta.rowwise().sum();
    if (l > 0)
      delta = (net.weights[l].transpose() * delta)
                  .cwiseProduct(act_deriv(net.activation, zs[l - 1]));
  }
  return g;
}

void TrainConfig::validate() const {
  if (!(beta1 > 0.0 && beta1 < 1.0 && beta2 > 0.0 && beta2 < 1.0))
    throw std::invalid_argument("train config: betas must be in (0,1)");
  if (batch_size < 1)
    throw std::invalid_argument("train config: batch size must be >= 1");
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("train config: learning rate must be > 0");
}

AdamState::AdamState(const FCNN& net) {
  for (size_t l = 0; l < net.weights.size(); ++l) {
    m_w.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(),
                                        net.weights[l].cols()));
    v_w.push_back(Eigen::MatrixXd::Zero(net.weights[l].rows(),
                                        net.weights[l].cols()));
    m_b.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
    v_b.push_back(Eigen::VectorXd::Zero(net.biases[l].size()));
  }
}

void adam_step(FCNN& net, AdamState& state, const Gradients& grads,
               const TrainConfig& cfg) {
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(cfg.beta1, state.step_count);
  const double bc2 = 1.0 - std::pow(cfg.beta2, state.step_count);
  auto update = [&](auto& theta, auto& m, auto& v, const auto& g) {
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.cwiseProduct(g);
    theta.array() -= cfg.learning_rate * (m.array() / bc1) /
                     ((v.array() / bc2).sqrt() + cfg.eps);
  };
  for (size_t l = 0; l < net.weights.size(); ++l) {
    update(net.weights[l], state.m_w[l], state.v_w[l], grads.d_weights[l]);
    update(net.biases[l], state.m_b[l], state.v_b[l], grads.d_biases[l]);
  }
}

TrainResult train(const TrainData& train_data, const TrainData& val_data,
                  const std::vector<int>& hidden_layers, Activation act,
                  const TrainConfig& cfg) {
  cfg.validate();
  if (train_data.x.rows() == 0 || val_data.x.rows() == 0)
    throw std::invalid_argument("train: empty training or validation set");

  TrainResult result;
  result.scaler = fit_scaler(train_data.x, train_data.y);

  auto prepare = [&](const TrainData& d) {
    Eigen::MatrixXd x(d.x.cols(), d.x.rows());  // features x samples
    Eigen::VectorXd y(d.y.size());
    for (int r = 0; r < d.x.rows(); ++r) {
      x.col(r) = result.scaler.scale(d.x.row(r).transpose());
      y[r] = result.scaler.scale_target(d.y[r]);
    }
    return std::pair{x, y};
  };
  const auto [x_train, y_train] = prepare(train_data);
  const auto [x_val, y_val] = prepare(val_data);

  std::vector<int> sizes;
  sizes.push_back(static_cast<int>(x_train.rows()));
  for (int hsize : hidden_layers) sizes.push_back(hsize);
  sizes.push_back(1);

  FCNN net = make_fcnn(sizes, act, cfg.seed);
  AdamState adam(net);
  Rng shuffle_rng(cfg.seed + 0x5eedu);

  const int n = static_cast<int>(x_train.cols());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);

  TrainHistory hist;
  FCNN best = net;
  double best_val = std::numeric_limits<double>::infinity();
  int best_epoch = -1;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    for (int start = 0; start < n; start += cfg.batch_size) {
      const int count = std::min(cfg.batch_size, n - start);
      Eigen::MatrixXd xb(x_train.rows(), count);
      Eigen::VectorXd yb(count);
      for (int i = 0; i < count; ++i) {
        xb.col(i) = x_train.col(order[start + i]);
        yb[i] = y_train[order[start + i]];
      }
      adam_step(net, adam, gradients(net, xb, yb), cfg);
    }
    const double tl = loss_mse(net, x_train, y_train);
    const double vl = loss_mse(net, x_val, y_val);
    if (!std::isfinite(tl) || !std::isfinite(vl))
      throw std::runtime_error("train: non-finite loss at epoch " +
                               std::to_string(epoch));
    hist.train_loss.push_back(tl);
    hist.val_loss.push_back(vl);
    if (vl < best_val) {
      best_val = vl;
      best_epoch = epoch;
      best = net;
    }
    if (epoch - best_epoch >= cfg.patience) break;
  }

  hist.best_epoch = best_epoch;
  hist.best_val_loss = best_val;
  result.net = std::move(best);
  result.history = std::move(hist);
  return result;
}

SearchResult hyperparameter_search(const TrainData& train_data,
                                   const TrainData& val_data,
                                   const std::vector<int>& depths,
                                   const std::vector<int>& widths,
                                   const std::vector<Activation>& activations,
                                   const std::vector<double>& learning_rates,
                                   const TrainConfig& cfg) {
  if (depths.empty() || widths.empty() || activations.empty() ||
      learning_rates.empty())
    throw std::invalid_argument("hyperparameter_search: empty grid axis");

  SearchResult result;
  double best_loss = std::numeric_limits<double>::infinity();
  long best_params = std::numeric_limits<long>::max();

  for (int depth : depths) {
    for (int width : widths) {
      for (Activation act : activations) {
        for (double lr : learning_rates) {
          TrainConfig run_cfg = cfg;
          run_cfg.learning_rate = lr;
          std::vector<int> hidden(depth, width);
          TrainResult run = train(train_data, val_data, hidden, act, run_cfg);
          SearchRow row;
          row.candidate = {depth, width, act, lr};
          row.val_loss = run.history.best_val_loss;
          row.parameter_count = run.net.parameter_count();
          result.report.push_back(row);
          const bool better =
              row.val_loss < best_loss ||
              (row.val_loss == best_loss && row.parameter_count < best_params);
          if (better) {
            best_loss = row.val_loss;
            best_params = row.parameter_count;
            result.best = row.candidate;
            result.best_run = std::move(run);
          }
        }
      }
    }
  }
  return result;
}

SensitivityCurves sensitivity(const FCNN& net, int input_index, int n_draws,
                              uint64_t seed, int n_points) {
  const int n_in = net.n_inputs();
  if (input_index < 0 || input_index >= n_in)
    throw std::invalid_argument("sensitivity: input index out of range");

  SensitivityCurves out;
  out.sweep_points.resize(n_points);
  for (int i = 0; i < n_points; ++i)
    out.sweep_points[i] = -1.0 + 2.0 * i / (n_points - 1);

  Rng rng(seed);
  double range_sum = 0.0;
  for (int draw = 0; draw < n_draws; ++draw) {
    Eigen::VectorXd x(n_in);
    for (int i = 0; i < n_in; ++i) x[i] = rng.uniform(-1.0, 1.0);
    std::vector<double> curve(n_points);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < n_points; ++i) {
      x[input_index] = out.sweep_points[i];
      curve[i] = forward_one(net, x);
      lo = std::min(lo, curve[i]);
      hi = std::max(hi, curve[i]);
    }
    range_sum += hi - lo;
    out.curves.push_back(std::move(curve));
  }
  out.mean_range = n_draws > 0 ? range_sum / n_draws : 0.0;
  return out;
}

}  // namespace nearwell
