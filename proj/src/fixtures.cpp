#include "unmix/fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "unmix/csv.hpp"
#include "unmix/spectra_model.hpp"

namespace unmix {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  throw std::runtime_error("scenario field '" + field + "': " + why);
}

const json& require(const json& doc, const char* field) {
  if (!doc.contains(field)) bad_field(field, "missing");
  return doc.at(field);
}

double require_number(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number()) bad_field(field, "must be a number");
  return v.get<double>();
}

std::size_t require_count(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number_unsigned()) bad_field(field, "must be a nonnegative integer");
  return v.get<std::size_t>();
}

std::string require_string(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_string()) bad_field(field, "must be a string");
  return v.get<std::string>();
}

}  // namespace

Scenario paper_two_component_scenario() {
  Scenario s;
  s.name = "paper2";
  s.grid = WavelengthGrid::default_visible();
  s.components = {
      ComponentSpec{"P1", 0.05, {PeakModel{520.0, 9.0, 1.0}, PeakModel{556.0, 7.0, 0.45}}},
      ComponentSpec{"P2", 0.08, {PeakModel{690.0, 12.0, 0.85}}},
  };
  s.mixing = MixingSource{MixingSource::Kind::Fixture, "paper2", {}};
  s.noise = NoiseSpec::none();
  s.output_dir = "paper2_out";
  return s;
}

Scenario paper_three_component_scenario() {
  Scenario s;
  s.name = "paper3";
  s.grid = WavelengthGrid::default_visible();
  s.components = {
      ComponentSpec{"P1", 0.05, {PeakModel{470.0, 9.0, 1.0}}},
      ComponentSpec{"P2", 0.07, {PeakModel{620.0, 8.0, 0.9}, PeakModel{668.0, 7.0, 0.5}}},
      ComponentSpec{"P3", 0.04, {PeakModel{845.0, 11.0, 0.95}}},
  };
  s.mixing = MixingSource{MixingSource::Kind::Fixture, "paper3", {}};
  s.noise = NoiseSpec::none();
  s.output_dir = "paper3_out";
  return s;
}

std::optional<Scenario> builtin_scenario(const std::string& name) {
  if (name == "paper2") return paper_two_component_scenario();
  if (name == "paper3") return paper_three_component_scenario();
  return std::nullopt;
}

Spectrum component_spectrum(const ComponentSpec& component, const WavelengthGrid& grid) {
  return synth_spectrum(component.peaks, component.baseline, grid);
}

std::vector<Spectrum> scenario_sources(const Scenario& scenario) {
  std::vector<Spectrum> out;
  out.reserve(scenario.components.size());
  for (const ComponentSpec& c : scenario.components)
    out.push_back(component_spectrum(c, scenario.grid));
  return out;
}

MixingMatrix resolve_mixing(const Scenario& scenario, const std::filesystem::path& base_dir) {
  switch (scenario.mixing.kind) {
    case MixingSource::Kind::Fixture: {
      if (scenario.mixing.ref == "paper2") return paper_two_component_matrix();
      if (scenario.mixing.ref == "paper3") return paper_three_component_matrix();
      bad_field("mixing.fixture", "unknown fixture '" + scenario.mixing.ref + "'");
    }
    case MixingSource::Kind::Csv:
      return MixingMatrix(csv::read_matrix(base_dir / scenario.mixing.ref));
    case MixingSource::Kind::Inline:
      return MixingMatrix(scenario.mixing.inline_entries);
  }
  throw std::logic_error("unreachable");
}

HyperspectralCube scenario_cube(const Scenario& scenario, const std::filesystem::path& base_dir) {
  const MixingMatrix a = resolve_mixing(scenario, base_dir);
  if (a.components() != scenario.components.size())
    bad_field("mixing", "column count does not match the component list");
  return mix(a, scenario_sources(scenario), scenario.noise);
}

AmuseOptions scenario_options(const Scenario& scenario) {
  AmuseOptions options;
  options.n_sources = scenario.n_sources;
  options.delay = scenario.delay;
  options.mode = scenario.mode;
  return options;
}

Scenario scenario_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("scenario JSON is malformed: ") + e.what());
  }

  Scenario s;
  s.name = require_string(doc, "name");

  const json& grid = require(doc, "grid");
  s.grid = WavelengthGrid{require_number(grid, "start_nm"), require_number(grid, "step_nm"),
                          require_count(grid, "count")};
  try {
    s.grid.validate();
  } catch (const std::exception& e) {
    bad_field("grid", e.what());
  }

  const json& components = require(doc, "components");
  if (!components.is_array() || components.empty())
    bad_field("components", "must be a nonempty array");
  for (const json& c : components) {
    ComponentSpec spec;
    spec.name = require_string(c, "name");
    spec.baseline = require_number(c, "baseline");
    const json& peaks = require(c, "peaks");
    if (!peaks.is_array()) bad_field("components.peaks", "must be an array");
    for (const json& p : peaks) {
      PeakModel peak{require_number(p, "center_nm"), require_number(p, "width_nm"),
                     require_number(p, "height")};
      try {
        peak.validate();
      } catch (const std::exception& e) {
        bad_field("components.peaks", e.what());
      }
      spec.peaks.push_back(peak);
    }
    s.components.push_back(std::move(spec));
  }

  const json& mixing = require(doc, "mixing");
  if (mixing.contains("fixture")) {
    s.mixing = MixingSource{MixingSource::Kind::Fixture, require_string(mixing, "fixture"), {}};
  } else if (mixing.contains("csv")) {
    s.mixing = MixingSource{MixingSource::Kind::Csv, require_string(mixing, "csv"), {}};
  } else if (mixing.contains("inline")) {
    const json& rows = mixing.at("inline");
    if (!rows.is_array() || rows.empty() || !rows[0].is_array())
      bad_field("mixing.inline", "must be an array of arrays");
    Matrix entries(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != entries.cols()) bad_field("mixing.inline", "ragged rows");
      for (std::size_t j = 0; j < entries.cols(); ++j) {
        if (!rows[i][j].is_number()) bad_field("mixing.inline", "entries must be numbers");
        entries(i, j) = rows[i][j].get<double>();
      }
    }
    s.mixing = MixingSource{MixingSource::Kind::Inline, "", std::move(entries)};
  } else {
    bad_field("mixing", "need one of 'fixture', 'csv' or 'inline'");
  }

  const json& noise = require(doc, "noise");
  const std::string kind = require_string(noise, "kind");
  if (kind == "none") {
    s.noise = NoiseSpec::none();
  } else if (kind == "gaussian") {
    s.noise = NoiseSpec::gaussian(require_number(noise, "sigma"),
                                  require_count(noise, "seed"));
  } else {
    bad_field("noise.kind", "must be 'none' or 'gaussian'");
  }
  try {
    s.noise.validate();
  } catch (const std::exception& e) {
    bad_field("noise", e.what());
  }

  if (doc.contains("delay")) s.delay = require_count(doc, "delay");
  if (s.delay < 1) bad_field("delay", "must be at least 1");

  if (doc.contains("n_sources")) {
    const json& n = doc.at("n_sources");
    if (n.is_string() && n.get<std::string>() == "auto") {
      s.n_sources.reset();
    } else if (n.is_number_unsigned() && n.get<std::size_t>() >= 1) {
      s.n_sources = n.get<std::size_t>();
    } else {
      bad_field("n_sources", "must be 'auto' or a positive integer");
    }
  }

  if (doc.contains("rotation_mode")) {
    const std::string mode = require_string(doc, "rotation_mode");
    if (mode == "sym-evd")
      s.mode = RotationMode::SymmetrizedEvd;
    else if (mode == "plain-svd")
      s.mode = RotationMode::PlainSvd;
    else
      bad_field("rotation_mode", "must be 'sym-evd' or 'plain-svd'");
  }

  if (doc.contains("bins")) s.bins = require_count(doc, "bins");
  if (s.bins < 2) bad_field("bins", "must be at least 2");

  if (doc.contains("output_dir")) s.output_dir = require_string(doc, "output_dir");
  return s;
}

Scenario scenario_from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

std::string scenario_to_json(const Scenario& s) {
  json doc;
  doc["name"] = s.name;
  doc["grid"] = {{"start_nm", s.grid.start_nm}, {"step_nm", s.grid.step_nm},
                 {"count", s.grid.count}};
  json components = json::array();
  for (const ComponentSpec& c : s.components) {
    json peaks = json::array();
    for (const PeakModel& p : c.peaks)
      peaks.push_back({{"center_nm", p.center_nm}, {"width_nm", p.width_nm},
                       {"height", p.height}});
    components.push_back({{"name", c.name}, {"baseline", c.baseline}, {"peaks", peaks}});
  }
  doc["components"] = std::move(components);
  switch (s.mixing.kind) {
    case MixingSource::Kind::Fixture:
      doc["mixing"] = {{"fixture", s.mixing.ref}};
      break;
    case MixingSource::Kind::Csv:
      doc["mixing"] = {{"csv", s.mixing.ref}};
      break;
    case MixingSource::Kind::Inline: {
      json rows = json::array();
      for (std::size_t i = 0; i < s.mixing.inline_entries.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < s.mixing.inline_entries.cols(); ++j)
          row.push_back(s.mixing.inline_entries(i, j));
        rows.push_back(std::move(row));
      }
      doc["mixing"] = {{"inline", std::move(rows)}};
      break;
    }
  }
  if (s.noise.kind == NoiseSpec::Kind::None) {
    doc["noise"] = {{"kind", "none"}};
  } else {
    doc["noise"] = {{"kind", "gaussian"}, {"sigma", s.noise.sigma}, {"seed", s.noise.seed}};
  }
  doc["delay"] = s.delay;
  if (s.n_sources.has_value())
    doc["n_sources"] = *s.n_sources;
  else
    doc["n_sources"] = "auto";
  doc["rotation_mode"] = to_string(s.mode);
  doc["bins"] = s.bins;
  if (!s.output_dir.empty()) doc["output_dir"] = s.output_dir;
  return doc.dump(2) + "\n";
}

}  // namespace unmix
