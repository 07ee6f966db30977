#include "report_json.hpp"

#include "qsl/error.hpp"
#include "qsl/text_io.hpp"

namespace qsl::cli {

using nlohmann::json;

json density_to_json(const Matrix4c& m) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 4; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix4c density_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) throw ParseError("density must be a 4x4 array of [re, im] pairs");
  Matrix4c m;
  for (int r = 0; r < 4; ++r) {
    if (!j[r].is_array() || j[r].size() != 4) throw ParseError("density must be a 4x4 array of [re, im] pairs");
    for (int c = 0; c < 4; ++c) {
      const json& e = j[r][c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ParseError("density entries must be [re, im] number pairs");
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json measures_to_json(const MeasureReport& m) {
  return {{"tangle", m.tangle}, {"linear_entropy", m.linear_entropy}, {"purity", m.purity}, {"chsh_max", m.chsh_max}};
}

json point_to_json(const PlanePoint& p) {
  return {{"label", p.label}, {"s_l", p.s_l}, {"s_l_err", p.s_l_err}, {"t", p.t}, {"t_err", p.t_err}};
}

PlanePoint point_from_json(const json& j) {
  try {
    PlanePoint p;
    p.label = j.at("label").get<std::string>();
    p.s_l = j.at("s_l").get<double>();
    p.s_l_err = j.at("s_l_err").get<double>();
    p.t = j.at("t").get<double>();
    p.t_err = j.at("t_err").get<double>();
    return p;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed plane point: ") + e.what());
  }
}

json report_to_json(const ExperimentReport& r) {
  const ProjectorSet& set = standard_projectors();
  json counts = json::object();
  for (int nu = 0; nu < kNumSettings; ++nu) counts[set[nu].label] = r.counts.counts[nu];

  json rec = {
      {"method", r.reconstruction.method == Method::kMle ? "mle" : "linear"},
      {"density", density_to_json(r.reconstruction.matrix)},
      {"log_likelihood", r.reconstruction.log_likelihood},
      {"iterations", r.reconstruction.iterations},
      {"gradient_norm", r.reconstruction.gradient_norm},
      {"min_eigenvalue", r.reconstruction.report.min_eigenvalue},
  };
  return {
      {"label", r.config.label},
      {"seed", r.seed},
      {"config", serialize_config(r.config)},
      {"true_state", {{"density", density_to_json(r.true_state.matrix())}, {"measures", measures_to_json(r.true_measures)}}},
      {"counts", {{"n_per_basis", r.counts.n_per_basis}, {"values", counts}}},
      {"reconstruction", rec},
      {"reconstructed_measures", measures_to_json(r.reconstructed_measures)},
      {"fidelity_to_truth", r.fidelity_to_truth},
      {"point", point_to_json(r.point)},
      {"monte_carlo", {{"trials", r.mc_trials}, {"failures", r.mc_failures}}},
  };
}

std::string dump_report(const ExperimentReport& r) { return report_to_json(r).dump(2) + "\n"; }

PlanePoint point_from_report_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("report is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("point")) throw ParseError("report has no 'point' entry");
  return point_from_json(j["point"]);
}

}  // namespace qsl::cli
