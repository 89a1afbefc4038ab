#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "unmix/amuse.hpp"

namespace unmix::cli {

// Output directory resolution order: explicit --out flag, then the
// UNMIX_OUT environment variable, then the command's own default.
std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag,
                                      const std::string& fallback);

struct SimulateArgs {
  std::string scenario_path;              // file path or builtin name
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;      // overrides the scenario's noise seed
};

struct UnmixArgs {
  std::string cube_path;
  std::optional<std::size_t> n_sources;   // unset = automatic
  std::size_t delay = 1;
  RotationMode mode = RotationMode::SymmetrizedEvd;
  std::size_t bins = 10;
  bool sign_correction = true;
  std::optional<std::string> out_dir;
};

struct EvaluateArgs {
  std::string model_path;
  std::string truth_sources_path;
  std::string truth_mixing_path;
  std::optional<std::string> out_dir;
};

struct DemoArgs {
  std::string name;  // builtin scenario name
  std::optional<std::string> out_dir;
};

// Each command writes its artifacts and returns 0 exactly when all of
// them landed. Errors go to `err`; the demo summary table goes to `out`.
int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err);
int cmd_unmix(const UnmixArgs& args, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int cmd_demo(const DemoArgs& args, std::ostream& out, std::ostream& err);

}  // namespace unmix::cli
