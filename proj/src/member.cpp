#include "nearwell/member.hpp"

#include <fstream>
#include <json.hpp>
#include <stdexcept>

namespace nearwell {

using nlohmann::json;

void save_member(const std::string& path, const MemberRecord& r) {
  json j;
  j["params"] = {{"id", r.params.id},
                 {"p_init", r.params.p_init},
                 {"k_layers", r.params.k_layers},
                 {"h", r.params.h}};
  j["failed"] = r.failed;
  j["grid"] = {{"r_w", r.r_w},
               {"r_outer", r.r_outer},
               {"n_r", r.n_r},
               {"layer_heights", r.layer_heights}};
  j["report_times"] = r.report_times;
  j["v_tot"] = r.v_tot;
  j["q_conn"] = r.q_conn;
  j["p_well"] = r.p_well;
  j["p_field"] = r.p_field;
  j["s_field"] = r.s_field;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write member file '" + path + "'");
  out << j.dump(1) << '\n';
}

MemberRecord load_member(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open member file '" + path + "'");
  json j;
  in >> j;

  MemberRecord r;
  r.params.id = j.at("params").at("id").get<int>();
  r.params.p_init = j.at("params").at("p_init").get<double>();
  r.params.k_layers = j.at("params").at("k_layers").get<std::vector<double>>();
  r.params.h = j.at("params").at("h").get<double>();
  r.failed = j.at("failed").get<bool>();
  r.r_w = j.at("grid").at("r_w").get<double>();
  r.r_outer = j.at("grid").at("r_outer").get<double>();
  r.n_r = j.at("grid").at("n_r").get<int>();
  r.layer_heights = j.at("grid").at("layer_heights").get<std::vector<double>>();
  r.report_times = j.at("report_times").get<std::vector<double>>();
  r.v_tot = j.at("v_tot").get<std::vector<double>>();
  r.q_conn = j.at("q_conn").get<std::vector<std::vector<double>>>();
  r.p_well = j.at("p_well").get<std::vector<std::vector<double>>>();
  r.p_field = j.at("p_field").get<std::vector<std::vector<double>>>();
  r.s_field = j.at("s_field").get<std::vector<std::vector<double>>>();
  return r;
}

}  // namespace nearwell
