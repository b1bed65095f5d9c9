#include "nearwell/upscale.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nearwell/rng.hpp"
#include "nearwell/text_io.hpp"
#include "nearwell/wells.hpp"

namespace nearwell {

std::optional<double> data_driven_wi(double q, double p_well, double p_i,
                                     double eps_dp) {
  const double dp = p_well - p_i;
  if (std::abs(dp) < eps_dp) return std::nullopt;
  const double wi = q / dp;
  if (!(wi > 0.0) || !std::isfinite(wi)) return std::nullopt;
  return wi;
}

double upscale_pressure(const RadialGrid& grid,
                        std::span<const double> p_layer, double r_e) {
  if (!(r_e > grid.r_w && r_e < grid.r_outer))
    throw std::invalid_argument("upscale_pressure: r_e outside the fine grid");
  if (static_cast<int>(p_layer.size()) != grid.n_r)
    throw std::invalid_argument("upscale_pressure: field size mismatch");
  int best = 0;
  double best_dist = std::abs(grid.cell_center_radius(0) - r_e);
  for (int i = 1; i < grid.n_r; ++i) {
    const double dist = std::abs(grid.cell_center_radius(i) - r_e);
    if (dist < best_dist) {  // ties keep the smaller radius
      best_dist = dist;
      best = i;
    }
  }
  return p_layer[best];
}

double upscale_saturation(const RadialGrid& grid,
                          std::span<const double> s_layer, double half_width) {
  if (static_cast<int>(s_layer.size()) != grid.n_r)
    throw std::invalid_argument("upscale_saturation: field size mismatch");
  if (!(half_width > 0.0))
    throw std::invalid_argument("upscale_saturation: degenerate rectangle");
  const Rect rect{-half_width, half_width, -half_width, half_width};
  double weighted = 0.0, total = 0.0;
  for (int i = 0; i < grid.n_r; ++i) {
    const double w =
        annulus_rect_overlap(grid.r_faces[i], grid.r_faces[i + 1], rect);
    weighted += w * s_layer[i];
    total += w;
  }
  if (!(total > 0.0))
    throw std::invalid_argument("upscale_saturation: no overlap with grid");
  return weighted / total;
}

double expert_feature(double k, double h, double r_e, double r_w) {
  return std::log10(wi_geometric(k, h, r_e, r_w));
}

namespace {

// Values one (member, time, coarse size) tuple provides; layer resolved
// per connection below.
struct LayerView {
  std::vector<double> p_re;  // pressure at r_e, per layer
  std::vector<double> s_avg; // overlap-averaged saturation, per layer
};

}  // namespace

Dataset assemble_dataset(const std::vector<MemberRecord>& records,
                         const FeatureSpec& fspec,
                         std::span<const double> coarse_sizes,
                         std::array<double, 3> split_fractions, uint64_t seed,
                         double eps_dp) {
  fspec.validate();
  const double fsum =
      split_fractions[0] + split_fractions[1] + split_fractions[2];
  if (std::abs(fsum - 1.0) > 1e-9)
    throw std::invalid_argument("assemble_dataset: split fractions must sum to 1");
  if (coarse_sizes.empty())
    throw std::invalid_argument("assemble_dataset: no coarse sizes");

  Dataset ds;
  ds.fspec = fspec;
  std::vector<WellIndexSample> all;

  for (const MemberRecord& rec : records) {
    if (rec.failed) {
      ++ds.drops.failed_members;
      continue;
    }
    const RadialGrid grid = build_radial_log_grid(
        rec.r_w, rec.r_outer, rec.n_r, rec.layer_heights);
    const int n_layers = grid.n_z();
    const int n_times = static_cast<int>(rec.report_times.size());

    for (double size : coarse_sizes) {
      const double r_e = equivalent_radius(size, size, 1.0, 1.0);
      for (int t = 0; t < n_times; ++t) {
        LayerView view;
        view.p_re.resize(n_layers);
        view.s_avg.resize(n_layers);
        for (int l = 0; l < n_layers; ++l) {
          std::span<const double> p_layer(rec.p_field[t].data() + l * grid.n_r,
                                          grid.n_r);
          std::span<const double> s_layer(rec.s_field[t].data() + l * grid.n_r,
                                          grid.n_r);
          view.p_re[l] = upscale_pressure(grid, p_layer, r_e);
          view.s_avg[l] = upscale_saturation(grid, s_layer, 0.5 * size);
        }
        for (int l = 0; l < n_layers; ++l) {
          const auto wi = data_driven_wi(rec.q_conn[t][l], rec.p_well[t][l],
                                         view.p_re[l], eps_dp);
          if (!wi) {
            const double dp = rec.p_well[t][l] - view.p_re[l];
            (std::abs(dp) < eps_dp ? ds.drops.dropped_small_dp
                                   : ds.drops.dropped_nonpositive)++;
            continue;
          }
          WellIndexSample sample;
          sample.member_id = rec.params.id;
          sample.time = rec.report_times[t];
          sample.coarse_size = size;
          sample.layer = l;
          sample.wi = *wi;
          sample.x.reserve(fspec.n_features());
          const bool has_up = l > 0;
          const bool has_down = l < n_layers - 1;
          for (FeatureKind kind : fspec.kinds) {
            double v = 0.0;
            switch (kind) {
              case FeatureKind::PressureSelf: v = view.p_re[l]; break;
              case FeatureKind::PressureUp:
                v = has_up ? view.p_re[l - 1] : view.p_re[l];
                break;
              case FeatureKind::PressureDown:
                v = has_down ? view.p_re[l + 1] : view.p_re[l];
                break;
              case FeatureKind::SatSelf: v = view.s_avg[l]; break;
              case FeatureKind::SatUp: v = has_up ? view.s_avg[l - 1] : 0.0; break;
              case FeatureKind::SatDown:
                v = has_down ? view.s_avg[l + 1] : 0.0;
                break;
              case FeatureKind::KSelf: v = rec.params.k_layers[l]; break;
              case FeatureKind::KUp:
                v = has_up ? rec.params.k_layers[l - 1] : 0.0;
                break;
              case FeatureKind::KDown:
                v = has_down ? rec.params.k_layers[l + 1] : 0.0;
                break;
              case FeatureKind::Vtot: v = rec.v_tot[t]; break;
              case FeatureKind::Re: v = r_e; break;
              case FeatureKind::Expert:
                v = expert_feature(rec.params.k_layers[l],
                                   grid.layer_heights[l], r_e, rec.r_w);
                break;
              case FeatureKind::K: v = rec.params.k_layers[l]; break;
              case FeatureKind::H: v = rec.params.h; break;
            }
            sample.x.push_back(v);
          }
          all.push_back(std::move(sample));
          ++ds.drops.kept;
        }
      }
    }
  }

  if (all.empty())
    throw std::runtime_error(
        "assemble_dataset: no samples retained (failed members: " +
        std::to_string(ds.drops.failed_members) + ", small-dp drops: " +
        std::to_string(ds.drops.dropped_small_dp) + ", non-positive drops: " +
        std::to_string(ds.drops.dropped_nonpositive) + ")");

  // Split by member id to keep all rows of a member in one split.
  std::vector<int> ids;
  for (const auto& rec : records)
    if (!rec.failed) ids.push_back(rec.params.id);
  Rng rng(seed);
  rng.shuffle(ids);
  const long n = static_cast<long>(ids.size());
  const long n_train = std::lround(split_fractions[0] * n);
  const long n_val = std::min<long>(
      n - n_train, std::lround((split_fractions[0] + split_fractions[1]) * n) -
                       n_train);
  std::map<int, int> split_of;
  for (long i = 0; i < n; ++i)
    split_of[ids[i]] = i < n_train ? 0 : (i < n_train + n_val ? 1 : 2);
  for (auto& sample : all) {
    switch (split_of.at(sample.member_id)) {
      case 0: ds.train.push_back(std::move(sample)); break;
      case 1: ds.val.push_back(std::move(sample)); break;
      default: ds.test.push_back(std::move(sample)); break;
    }
  }
  return ds;
}

TrainData to_train_data(const std::vector<WellIndexSample>& samples,
                        const FeatureSpec& fspec) {
  TrainData d;
  d.x.resize(samples.size(), fspec.n_features());
  d.y.resize(samples.size());
  for (size_t i = 0; i < samples.size(); ++i) {
    for (int j = 0; j < fspec.n_features(); ++j) d.x(i, j) = samples[i].x[j];
    d.y[i] = fspec.log10_target ? std::log10(samples[i].wi) : samples[i].wi;
  }
  return d;
}

void write_dataset_csv(const std::string& path, const FeatureSpec& fspec,
                       const std::vector<WellIndexSample>& samples) {
  CsvTable table;
  table.header = fspec.names();
  table.header.insert(table.header.end(),
                      {"wi", "member_id", "time_s", "coarse_size_m", "layer"});
  for (const auto& s : samples) {
    std::vector<std::string> row;
    for (double v : s.x) row.push_back(format_double(v));
    row.push_back(format_double(s.wi));
    row.push_back(std::to_string(s.member_id));
    row.push_back(format_double(s.time));
    row.push_back(format_double(s.coarse_size));
    row.push_back(std::to_string(s.layer));
    table.rows.push_back(std::move(row));
  }
  write_csv(path, table);
}

std::vector<WellIndexSample> read_dataset_csv(const std::string& path,
                                              const FeatureSpec& fspec) {
  const CsvTable table = read_csv(path);
  const auto names = fspec.names();
  std::vector<int> cols;
  for (const auto& name : names) cols.push_back(table.column(name));
  const int c_wi = table.column("wi");
  const int c_id = table.column("member_id");
  const int c_t = table.column("time_s");
  const int c_size = table.column("coarse_size_m");
  const int c_layer = table.column("layer");

  std::vector<WellIndexSample> out;
  out.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    WellIndexSample s;
    for (int c : cols) s.x.push_back(parse_double(row[c]));
    s.wi = parse_double(row[c_wi]);
    s.member_id = std::stoi(row[c_id]);
    s.time = parse_double(row[c_t]);
    s.coarse_size = parse_double(row[c_size]);
    s.layer = std::stoi(row[c_layer]);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace nearwell
