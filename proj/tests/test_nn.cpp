#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "nearwell/model_io.hpp"
#include "nearwell/nn.hpp"
#include "nearwell/rng.hpp"

using namespace nearwell;

namespace {

TrainData linear_data(int n, double slope, uint64_t seed) {
  Rng rng(seed);
  TrainData d;
  d.x.resize(n, 1);
  d.y.resize(n);
  for (int i = 0; i < n; ++i) {
    d.x(i, 0) = rng.uniform(-1.0, 1.0);
    d.y[i] = slope * d.x(i, 0);
  }
  return d;
}

}  // namespace

TEST_CASE("min-max scaler") {
  Eigen::MatrixXd x(3, 2);
  x << 0.0, 10.0, 5.0, 20.0, 10.0, 40.0;
  Eigen::VectorXd y(3);
  y << 1.0, 2.0, 5.0;
  const Scaler s = fit_scaler(x, y);

  Eigen::VectorXd lo(2), mid(2);
  lo << 0.0, 10.0;
  mid << 5.0, 25.0;
  CHECK(s.scale(lo)[0] == doctest::Approx(-1.0));
  CHECK(s.scale(lo)[1] == doctest::Approx(-1.0));
  CHECK(s.scale(mid)[0] == doctest::Approx(0.0));
  CHECK(s.scale(mid)[1] == doctest::Approx(0.0));
  CHECK(s.scale_target(1.0) == doctest::Approx(-1.0));
  CHECK(s.scale_target(5.0) == doctest::Approx(1.0));

  // Round trip exact to 1e-12.
  Rng rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd v(2);
    v << rng.uniform(0.0, 10.0), rng.uniform(10.0, 40.0);
    const Eigen::VectorXd back = s.unscale(s.scale(v));
    CHECK(back[0] == doctest::Approx(v[0]).epsilon(1e-12));
    CHECK(back[1] == doctest::Approx(v[1]).epsilon(1e-12));
    const double yv = rng.uniform(1.0, 5.0);
    CHECK(s.unscale_target(s.scale_target(yv)) ==
          doctest::Approx(yv).epsilon(1e-12));
  }

  // Constant feature rejected.
  Eigen::MatrixXd xc(2, 1);
  xc << 3.0, 3.0;
  Eigen::VectorXd yc(2);
  yc << 0.0, 1.0;
  CHECK_THROWS_AS(fit_scaler(xc, yc), std::invalid_argument);
}

TEST_CASE("forward pass") {
  // Identity single linear layer.
  FCNN id = make_fcnn({2, 2}, Activation::Sigmoid, 0);
  id.weights[0] = Eigen::MatrixXd::Identity(2, 2);
  id.biases[0] = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd x(2);
  x << 0.3, -0.7;
  const Eigen::MatrixXd y = forward(id, x);
  CHECK(y(0, 0) == doctest::Approx(0.3));
  CHECK(y(1, 0) == doctest::Approx(-0.7));

  // Zero weights give the bias.
  FCNN constant = make_fcnn({3, 1}, Activation::Sigmoid, 0);
  constant.weights[0].setZero();
  constant.biases[0][0] = 4.25;
  Eigen::VectorXd x3 = Eigen::VectorXd::Random(3);
  CHECK(forward_one(constant, x3) == doctest::Approx(4.25));

  // Single sigmoid unit with zero input weights: hidden = 0.5.
  FCNN sig = make_fcnn({1, 1, 1}, Activation::Sigmoid, 0);
  sig.weights[0].setZero();
  sig.biases[0].setZero();
  sig.weights[1](0, 0) = 2.0;
  sig.biases[1][0] = 0.25;
  Eigen::VectorXd x1(1);
  x1 << 0.9;
  CHECK(forward_one(sig, x1) == doctest::Approx(0.5 * 2.0 + 0.25));
}

TEST_CASE("mse loss values") {
  FCNN id = make_fcnn({1, 1}, Activation::Sigmoid, 0);
  id.weights[0](0, 0) = 1.0;
  id.biases[0][0] = 0.0;
  Eigen::MatrixXd x(1, 2);
  x << 1.0, 3.0;
  Eigen::VectorXd y(2);
  y << 1.0, 3.0;
  CHECK(loss_mse(id, x, y) == doctest::Approx(0.0));
  // Errors {1, 3} -> (1 + 9)/2 = 5.
  Eigen::VectorXd y2(2);
  y2 << 0.0, 0.0;
  CHECK(loss_mse(id, x, y2) == doctest::Approx(5.0));
  // Constant error e -> e^2.
  Eigen::VectorXd y3(2);
  y3 << 1.5, 3.5;
  CHECK(loss_mse(id, x, y3) == doctest::Approx(0.25));
}

TEST_CASE("gradients match central finite differences") {
  Rng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const int n_in = 2 + static_cast<int>(rng.below(3));
    const int width = 2 + static_cast<int>(rng.below(4));
    const int depth = 1 + static_cast<int>(rng.below(2));
    const Activation act =
        trial % 3 == 0 ? Activation::Sigmoid
                       : (trial % 3 == 1 ? Activation::Tanh
                                         : Activation::Softplus);
    std::vector<int> sizes = {n_in};
    for (int d = 0; d < depth; ++d) sizes.push_back(width);
    sizes.push_back(1);
    FCNN net = make_fcnn(sizes, act, 1000 + trial);

    const int batch = 5;
    Eigen::MatrixXd x(n_in, batch);
    Eigen::VectorXd y(batch);
    for (int c = 0; c < batch; ++c) {
      for (int r = 0; r < n_in; ++r) x(r, c) = rng.uniform(-1.0, 1.0);
      y[c] = rng.uniform(-1.0, 1.0);
    }

    const Gradients g = gradients(net, x, y);
    const double h = 1e-5;
    double max_rel = 0.0;
    for (size_t l = 0; l < net.weights.size(); ++l) {
      for (int r = 0; r < net.weights[l].rows(); ++r)
        for (int c = 0; c < net.weights[l].cols(); ++c) {
          FCNN plus = net, minus = net;
          plus.weights[l](r, c) += h;
          minus.weights[l](r, c) -= h;
          const double fd =
              (loss_mse(plus, x, y) - loss_mse(minus, x, y)) / (2 * h);
          const double scale = std::max(std::abs(fd), 1e-6);
          max_rel = std::max(max_rel,
                             std::abs(fd - g.d_weights[l](r, c)) / scale);
        }
      for (int r = 0; r < net.biases[l].size(); ++r) {
        FCNN plus = net, minus = net;
        plus.biases[l][r] += h;
        minus.biases[l][r] -= h;
        const double fd =
            (loss_mse(plus, x, y) - loss_mse(minus, x, y)) / (2 * h);
        const double scale = std::max(std::abs(fd), 1e-6);
        max_rel =
            std::max(max_rel, std::abs(fd - g.d_biases[l][r]) / scale);
      }
    }
    CHECK(max_rel < 1e-6);
  }
}

TEST_CASE("gradient batch properties") {
  FCNN net = make_fcnn({2, 4, 1}, Activation::Softplus, 5);
  Eigen::MatrixXd x(2, 3);
  x << 0.1, -0.5, 0.9, 0.4, 0.2, -0.8;
  // Zero-error batch: y = net(x) -> zero gradient.
  const Eigen::MatrixXd yhat = forward(net, x);
  const Gradients g0 = gradients(net, x, yhat.row(0).transpose());
  for (const auto& gw : g0.d_weights) CHECK(gw.norm() == doctest::Approx(0.0));
  // Duplicated batch has the same (mean) gradient.
  Eigen::MatrixXd x2(2, 6);
  x2 << x, x;
  Eigen::VectorXd y(3);
  y << 0.2, -0.1, 0.6;
  Eigen::VectorXd y2(6);
  y2 << y, y;
  const Gradients g1 = gradients(net, x, y);
  const Gradients g2 = gradients(net, x2, y2);
  for (size_t l = 0; l < g1.d_weights.size(); ++l)
    CHECK((g1.d_weights[l] - g2.d_weights[l]).norm() ==
          doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("adam steps") {
  TrainConfig cfg;
  cfg.learning_rate = 1e-2;
  FCNN net = make_fcnn({1, 1}, Activation::Sigmoid, 9);
  const double w0 = net.weights[0](0, 0);
  AdamState adam(net);

  // Zero gradient: parameters unchanged.
  Gradients gz;
  gz.d_weights = {Eigen::MatrixXd::Zero(1, 1)};
  gz.d_biases = {Eigen::VectorXd::Zero(1)};
  adam_step(net, adam, gz, cfg);
  CHECK(net.weights[0](0, 0) == doctest::Approx(w0));

  // First step from fresh moments: delta = -lr * sign(g) + O(eps).
  FCNN net2 = make_fcnn({1, 1}, Activation::Sigmoid, 9);
  AdamState adam2(net2);
  const double w1 = net2.weights[0](0, 0);
  Gradients g;
  g.d_weights = {Eigen::MatrixXd::Constant(1, 1, 0.37)};
  g.d_biases = {Eigen::VectorXd::Constant(1, -0.9)};
  adam_step(net2, adam2, g, cfg);
  CHECK(net2.weights[0](0, 0) ==
        doctest::Approx(w1 - cfg.learning_rate).epsilon(1e-6));
  CHECK(net2.biases[0][0] == doctest::Approx(cfg.learning_rate).epsilon(1e-6));
}

TEST_CASE("training: realizable linear target") {
  const TrainData train_d = linear_data(128, 0.8, 1);
  const TrainData val_d = linear_data(32, 0.8, 2);
  TrainConfig cfg;
  cfg.learning_rate = 3e-2;
  cfg.batch_size = 128;
  cfg.max_epochs = 4000;
  cfg.patience = 4000;
  cfg.seed = 11;
  const TrainResult r = train(train_d, val_d, {}, Activation::Sigmoid, cfg);
  CHECK(r.history.best_val_loss < 1e-10);
}

TEST_CASE("training determinism and early stop") {
  const TrainData train_d = linear_data(64, 0.5, 3);
  const TrainData val_d = linear_data(16, 0.5, 4);
  TrainConfig cfg;
  cfg.learning_rate = 1e-3;
  cfg.batch_size = 16;
  cfg.max_epochs = 50;
  cfg.patience = 50;
  cfg.seed = 21;
  const TrainResult a = train(train_d, val_d, {8}, Activation::Softplus, cfg);
  const TrainResult b = train(train_d, val_d, {8}, Activation::Softplus, cfg);
  REQUIRE(a.history.val_loss.size() == b.history.val_loss.size());
  for (size_t i = 0; i < a.history.val_loss.size(); ++i)
    CHECK(a.history.val_loss[i] == b.history.val_loss[i]);
  for (size_t l = 0; l < a.net.weights.size(); ++l)
    CHECK((a.net.weights[l] - b.net.weights[l]).norm() == 0.0);

  // Effectively frozen training: the best epoch is 0 and the loop stops
  // after `patience` epochs.
  TrainConfig flat = cfg;
  flat.learning_rate = 1e-30;
  flat.max_epochs = 1000;
  flat.patience = 50;
  const TrainResult c = train(train_d, val_d, {8}, Activation::Softplus, flat);
  CHECK(c.history.best_epoch == 0);
  CHECK(c.history.val_loss.size() <= 51u);
}

TEST_CASE("model save/load round trip") {
  TrainedModel model;
  model.fspec = feature_spec_for(Family::CO22D);
  model.net = make_fcnn({3, 7, 1}, Activation::Softplus, 33);
  model.scaler.x_min = Eigen::Vector3d(1.0, -12.0, 0.0);
  model.scaler.x_max = Eigen::Vector3d(2.0e7, -9.0, 1.0e5);
  model.scaler.y_min = -7.3;
  model.scaler.y_max = -3.1;

  const std::string path = "test_model_roundtrip.txt";
  save_model(path, model);
  const TrainedModel back = load_model(path);
  CHECK(back.fspec.family == model.fspec.family);
  CHECK(back.fspec.log10_target == model.fspec.log10_target);

  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd x(3);
    for (int i = 0; i < 3; ++i) x[i] = rng.uniform(-1.0, 1.0);
    // Bit-exact round trip.
    CHECK(forward_one(back.net, x) == forward_one(model.net, x));
  }
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_model("does_not_exist.model"), std::runtime_error);
}

TEST_CASE("model load rejects corrupted shapes") {
  TrainedModel model;
  model.fspec = feature_spec_for(Family::CO22D);
  model.net = make_fcnn({3, 4, 1}, Activation::Sigmoid, 1);
  model.scaler.x_min = Eigen::Vector3d(0, 0, 0);
  model.scaler.x_max = Eigen::Vector3d(1, 1, 1);
  model.scaler.y_min = 0.0;
  model.scaler.y_max = 1.0;
  const std::string path = "test_model_corrupt.txt";
  save_model(path, model);

  // Corrupt the W0 shape line.
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  in.close();
  const auto pos = content.find("W0 4 3");
  REQUIRE(pos != std::string::npos);
  content.replace(pos, 6, "W0 9 3");
  std::ofstream out(path);
  out << content;
  out.close();

  CHECK_THROWS_WITH_AS(load_model(path), doctest::Contains("W0"),
                       std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("hyperparameter search") {
  const TrainData train_d = linear_data(64, 0.6, 5);
  const TrainData val_d = linear_data(16, 0.6, 6);
  TrainConfig cfg;
  cfg.batch_size = 32;
  cfg.max_epochs = 30;
  cfg.patience = 30;
  cfg.seed = 2;

  const SearchResult single = hyperparameter_search(
      train_d, val_d, {1}, {4}, {Activation::Sigmoid}, {1e-2}, cfg);
  CHECK(single.report.size() == 1u);
  CHECK(single.best.depth == 1);
  CHECK(single.best.width == 4);

  const SearchResult grid = hyperparameter_search(
      train_d, val_d, {1, 2}, {4, 8}, {Activation::Sigmoid, Activation::Tanh},
      {1e-3, 1e-2}, cfg);
  CHECK(grid.report.size() == 16u);
}

TEST_CASE("sensitivity sweeps") {
  // A network that ignores input 1: zero column in the first layer.
  FCNN net = make_fcnn({2, 4, 1}, Activation::Tanh, 12);
  net.weights[0].col(1).setZero();
  const SensitivityCurves dead = sensitivity(net, 1, 5, 99);
  CHECK(dead.mean_range == doctest::Approx(0.0));
  const SensitivityCurves alive = sensitivity(net, 0, 5, 99);
  CHECK(alive.mean_range > 0.0);

  // Identity one-input net sweeps the full [-1, 1] range.
  FCNN id = make_fcnn({1, 1}, Activation::Sigmoid, 0);
  id.weights[0](0, 0) = 1.0;
  id.biases[0][0] = 0.0;
  const SensitivityCurves full = sensitivity(id, 0, 3, 7);
  CHECK(full.mean_range == doctest::Approx(2.0));
  CHECK(full.curves.size() == 3u);
  CHECK(full.curves[0].size() == 101u);
}

TEST_CASE("forward input gradient matches finite differences") {
  Rng rng(44);
  for (int trial = 0; trial < 5; ++trial) {
    FCNN net = make_fcnn({4, 6, 6, 1}, Activation::Softplus, 100 + trial);
    Eigen::VectorXd x(4);
    for (int i = 0; i < 4; ++i) x[i] = rng.uniform(-1.0, 1.0);
    const ForwardWithGrad fg = forward_with_input_grad(net, x);
    CHECK(fg.y == doctest::Approx(forward_one(net, x)).epsilon(1e-14));
    for (int i = 0; i < 4; ++i) {
      Eigen::VectorXd xp = x, xm = x;
      xp[i] += 1e-6;
      xm[i] -= 1e-6;
      const double fd = (forward_one(net, xp) - forward_one(net, xm)) / 2e-6;
      CHECK(fg.dy_dx[i] == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}
