#include "nearwell/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nearwell/text_io.hpp"

namespace nearwell {

namespace {
constexpr const char* kMagic = "nearwell-model";
constexpr const char* kVersion = "1";
}  // namespace

void save_model(const std::string& path, const TrainedModel& model) {
  std::ostringstream out;
  out << kMagic << " v" << kVersion << '\n';
  out << "family " << family_name(model.fspec.family) << '\n';
  out << "target " << (model.fspec.log10_target ? "log10" : "identity")
      << '\n';
  out << "activation " << activation_name(model.net.activation) << '\n';

  out << "features " << model.fspec.n_features() << '\n';
  for (const auto& name : model.fspec.names()) out << name << ' ';
  out << '\n';
  out << "x_min";
  for (int i = 0; i < model.scaler.x_min.size(); ++i)
    out << ' ' << format_double(model.scaler.x_min[i]);
  out << '\n';
  out << "x_max";
  for (int i = 0; i < model.scaler.x_max.size(); ++i)
    out << ' ' << format_double(model.scaler.x_max[i]);
  out << '\n';
  out << "y_min " << format_double(model.scaler.y_min) << '\n';
  out << "y_max " << format_double(model.scaler.y_max) << '\n';

  const auto sizes = model.net.layer_sizes();
  out << "layers";
  for (int s : sizes) out << ' ' << s;
  out << '\n';
  for (size_t l = 0; l < model.net.weights.size(); ++l) {
    const auto& w = model.net.weights[l];
    out << "W" << l << ' ' << w.rows() << ' ' << w.cols() << '\n';
    for (int r = 0; r < w.rows(); ++r) {
      for (int c = 0; c < w.cols(); ++c)
        out << (c ? " " : "") << format_double(w(r, c));
      out << '\n';
    }
    const auto& b = model.net.biases[l];
    out << "b" << l << ' ' << b.size() << '\n';
    for (int r = 0; r < b.size(); ++r)
      out << (r ? " " : "") << format_double(b[r]);
    out << '\n';
  }
  out << "end\n";
  write_file(path, out.str());
}

namespace {

std::string next_line(std::istream& in, const std::string& path) {
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("model file '" + path + "': truncated");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

std::vector<std::string> expect_key(std::istream& in, const std::string& path,
                                    const std::string& key) {
  auto toks = split_ws(next_line(in, path));
  if (toks.empty() || toks[0] != key)
    throw std::runtime_error("model file '" + path + "': expected '" + key +
                             "'");
  toks.erase(toks.begin());
  return toks;
}

}  // namespace

TrainedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");

  const auto head = split_ws(next_line(in, path));
  if (head.size() != 2 || head[0] != kMagic || head[1] != std::string("v") + kVersion)
    throw std::runtime_error("model file '" + path +
                             "': bad magic or version");

  TrainedModel model;
  model.fspec.family = family_from_name(expect_key(in, path, "family").at(0));
  const std::string target = expect_key(in, path, "target").at(0);
  model.fspec.log10_target = target == "log10";
  if (!model.fspec.log10_target && target != "identity")
    throw std::runtime_error("model file '" + path + "': bad target tag");
  model.net.activation =
      activation_from_name(expect_key(in, path, "activation").at(0));

  const int n_features = std::stoi(expect_key(in, path, "features").at(0));
  const auto names = split_ws(next_line(in, path));
  if (static_cast<int>(names.size()) != n_features)
    throw std::runtime_error("model file '" + path +
                             "': feature name count mismatch");
  for (const auto& name : names)
    model.fspec.kinds.push_back(feature_kind_from_name(name));
  model.fspec.validate();

  auto read_vec = [&](const std::string& key, int n) {
    const auto toks = expect_key(in, path, key);
    if (static_cast<int>(toks.size()) != n)
      throw std::runtime_error("model file '" + path + "': bad '" + key +
                               "' length");
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = parse_double(toks[i]);
    return v;
  };
  model.scaler.x_min = read_vec("x_min", n_features);
  model.scaler.x_max = read_vec("x_max", n_features);
  model.scaler.y_min = parse_double(expect_key(in, path, "y_min").at(0));
  model.scaler.y_max = parse_double(expect_key(in, path, "y_max").at(0));

  const auto size_toks = expect_key(in, path, "layers");
  std::vector<int> sizes;
  for (const auto& t : size_toks) sizes.push_back(std::stoi(t));
  if (sizes.size() < 2 || sizes.front() != n_features || sizes.back() != 1)
    throw std::runtime_error("model file '" + path + "': bad layer sizes");

  for (size_t l = 0; l + 1 < sizes.size(); ++l) {
    const auto wh = expect_key(in, path, "W" + std::to_string(l));
    const int rows = std::stoi(wh.at(0));
    const int cols = std::stoi(wh.at(1));
    if (rows != sizes[l + 1] || cols != sizes[l])
      throw std::runtime_error("model file '" + path + "': layer W" +
                               std::to_string(l) + " has shape " +
                               std::to_string(rows) + "x" +
                               std::to_string(cols) + ", expected " +
                               std::to_string(sizes[l + 1]) + "x" +
                               std::to_string(sizes[l]));
    Eigen::MatrixXd w(rows, cols);
    for (int r = 0; r < rows; ++r) {
      const auto vals = split_ws(next_line(in, path));
      if (static_cast<int>(vals.size()) != cols)
        throw std::runtime_error("model file '" + path + "': layer W" +
                                 std::to_string(l) + " row " +
                                 std::to_string(r) + " is malformed");
      for (int c = 0; c < cols; ++c) w(r, c) = parse_double(vals[c]);
    }
    const auto bh = expect_key(in, path, "b" + std::to_string(l));
    if (std::stoi(bh.at(0)) != rows)
      throw std::runtime_error("model file '" + path + "': layer b" +
                               std::to_string(l) + " has wrong size");
    const auto bvals = split_ws(next_line(in, path));
    if (static_cast<int>(bvals.size()) != rows)
      throw std::runtime_error("model file '" + path + "': layer b" +
                               std::to_string(l) + " is malformed");
    Eigen::VectorXd b(rows);
    for (int r = 0; r < rows; ++r) b[r] = parse_double(bvals[r]);
    model.net.weights.push_back(std::move(w));
    model.net.biases.push_back(std::move(b));
  }
  return model;
}

}  // namespace nearwell
