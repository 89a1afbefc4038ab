#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "unmix/amuse.hpp"
#include "unmix/types.hpp"

namespace unmix {

// One pure component: a named flat-baseline spectrum with Gaussian bands.
struct ComponentSpec {
  std::string name;
  double baseline = 0.0;
  std::vector<PeakModel> peaks;
};

// Where a scenario's mixing matrix comes from.
struct MixingSource {
  enum class Kind { Fixture, Csv, Inline };
  Kind kind = Kind::Inline;
  std::string ref;        // fixture name or CSV path (relative to the scenario file)
  Matrix inline_entries;  // used when kind == Inline
};

// A full simulated experiment: grid, pure components, mixing weights,
// noise, and the separation parameters to use on the result.
struct Scenario {
  std::string name;
  WavelengthGrid grid;
  std::vector<ComponentSpec> components;
  MixingSource mixing;
  NoiseSpec noise;
  std::size_t delay = 1;
  std::optional<std::size_t> n_sources;  // unset = automatic
  RotationMode mode = RotationMode::SymmetrizedEvd;
  std::size_t bins = 10;
  std::string output_dir;  // optional default output location
};

// The bundled experiments. "paper2" is the 7-pixel two-component run,
// "paper3" the 9-pixel three-component run.
Scenario paper_two_component_scenario();
Scenario paper_three_component_scenario();
std::optional<Scenario> builtin_scenario(const std::string& name);

Spectrum component_spectrum(const ComponentSpec& component, const WavelengthGrid& grid);
std::vector<Spectrum> scenario_sources(const Scenario& scenario);
MixingMatrix resolve_mixing(const Scenario& scenario, const std::filesystem::path& base_dir);
HyperspectralCube scenario_cube(const Scenario& scenario, const std::filesystem::path& base_dir);
AmuseOptions scenario_options(const Scenario& scenario);

// Scenario JSON (schema documented in docs/). Parse errors name the
// offending field. `base_dir` resolves relative CSV references.
Scenario scenario_from_json_text(const std::string& text);
Scenario scenario_from_file(const std::filesystem::path& path);
std::string scenario_to_json(const Scenario& scenario);

}  // namespace unmix
