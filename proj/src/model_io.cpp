#include "unmix/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "unmix/csv.hpp"

namespace unmix {

namespace {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& rows, const std::string& what) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array())
    throw std::runtime_error("model JSON: '" + what + "' must be an array of arrays");
  Matrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols())
      throw std::runtime_error("model JSON: ragged rows in '" + what + "'");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

RotationMode mode_from_string(const std::string& s) {
  if (s == "sym-evd") return RotationMode::SymmetrizedEvd;
  if (s == "plain-svd") return RotationMode::PlainSvd;
  throw std::runtime_error("unknown rotation mode: " + s);
}

std::string decision_to_string(SignVerdict::Decision d) {
  return d == SignVerdict::Decision::Keep ? "keep" : "flip";
}

SignRule rule_from_string(const std::string& s) {
  if (s == "both-above-baseline") return SignRule::BothAboveBaseline;
  if (s == "positive-dominant") return SignRule::PositiveDominant;
  if (s == "both-below-baseline") return SignRule::BothBelowBaseline;
  if (s == "negative-dominant") return SignRule::NegativeDominant;
  if (s == "boundary") return SignRule::Boundary;
  throw std::runtime_error("unknown sign rule: " + s);
}

}  // namespace

std::string model_to_json(const UnmixingModel& model) {
  json doc;
  doc["n_sources"] = model.n_sources;
  doc["delay"] = model.delay;
  doc["rotation_mode"] = to_string(model.mode);
  doc["grid"] = {{"start_nm", model.grid.start_nm},
                 {"step_nm", model.grid.step_nm},
                 {"count", model.grid.count}};
  doc["mixing_estimate"] = matrix_to_json(model.mixing_estimate);
  doc["rotation"] = matrix_to_json(model.rotation);
  doc["sources"] = matrix_to_json(model.sources);
  doc["delayed_spectrum"] = model.delayed_spectrum;
  doc["warnings"] = model.warnings;

  json sc;
  sc["applied"] = model.sign_corrected();
  if (model.sign_corrected()) {
    sc["bins"] = model.sign_bins;
    json verdicts = json::array();
    for (std::size_t i = 0; i < model.sign_verdicts.size(); ++i) {
      const SignVerdict& v = model.sign_verdicts[i];
      verdicts.push_back({{"component", i},
                          {"decision", decision_to_string(v.decision)},
                          {"baseline", v.baseline},
                          {"p_max", v.p_max},
                          {"p_min", v.p_min},
                          {"rule", to_string(v.rule_fired)}});
    }
    sc["verdicts"] = std::move(verdicts);
  }
  doc["sign_correction"] = std::move(sc);
  return doc.dump(2) + "\n";
}

UnmixingModel model_from_json(const std::string& text) {
  const json doc = json::parse(text);
  UnmixingModel model;
  model.n_sources = doc.at("n_sources").get<std::size_t>();
  model.delay = doc.at("delay").get<std::size_t>();
  model.mode = mode_from_string(doc.at("rotation_mode").get<std::string>());
  const json& grid = doc.at("grid");
  model.grid = WavelengthGrid{grid.at("start_nm").get<double>(), grid.at("step_nm").get<double>(),
                              grid.at("count").get<std::size_t>()};
  model.mixing_estimate = matrix_from_json(doc.at("mixing_estimate"), "mixing_estimate");
  model.rotation = matrix_from_json(doc.at("rotation"), "rotation");
  model.sources = matrix_from_json(doc.at("sources"), "sources");
  model.delayed_spectrum = doc.at("delayed_spectrum").get<std::vector<double>>();
  model.warnings = doc.at("warnings").get<std::vector<std::string>>();

  const json& sc = doc.at("sign_correction");
  if (sc.at("applied").get<bool>()) {
    model.sign_bins = sc.at("bins").get<std::size_t>();
    for (const json& v : sc.at("verdicts")) {
      SignVerdict verdict;
      verdict.decision = v.at("decision").get<std::string>() == "flip"
                             ? SignVerdict::Decision::Flip
                             : SignVerdict::Decision::Keep;
      verdict.baseline = v.at("baseline").get<double>();
      verdict.p_max = v.at("p_max").get<double>();
      verdict.p_min = v.at("p_min").get<double>();
      verdict.rule_fired = rule_from_string(v.at("rule").get<std::string>());
      model.sign_verdicts.push_back(verdict);
    }
  }
  return model;
}

void write_model_json(const std::filesystem::path& path, const UnmixingModel& model) {
  csv::atomic_write_text(path, model_to_json(model));
}

UnmixingModel read_model_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

std::string metrics_to_json(const MetricsReport& report) {
  json doc;
  doc["n_sources"] = report.n_sources;
  doc["permutation"] = report.match.permutation;
  doc["signs"] = report.match.signs;
  doc["scales"] = report.match.scales;
  doc["correlations"] = report.match.correlations;
  doc["amari_index"] = report.amari;
  doc["sign_accuracy"] = report.sign_accuracy;
  return doc.dump(2) + "\n";
}

void write_metrics_json(const std::filesystem::path& path, const MetricsReport& report) {
  csv::atomic_write_text(path, metrics_to_json(report));
}

}  // namespace unmix
