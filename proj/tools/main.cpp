#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "unmix/cli_commands.hpp"

namespace {

using unmix::RotationMode;

RotationMode parse_mode(const std::string& mode) {
  if (mode == "plain-svd") return RotationMode::PlainSvd;
  return RotationMode::SymmetrizedEvd;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Blind recovery of pure component spectra from hyperspectral mixtures"};
  app.require_subcommand(1);

  // simulate
  std::string scenario_path;
  std::string sim_out;
  std::uint64_t sim_seed = 0;
  auto* simulate = app.add_subcommand(
      "simulate", "Generate a mixture cube plus ground-truth sidecars from a scenario");
  simulate->add_option("scenario", scenario_path,
                       "Scenario JSON path or builtin name (paper2, paper3)")
      ->required();
  simulate->add_option("--out", sim_out, "Output directory");
  auto* seed_opt = simulate->add_option("--seed", sim_seed, "Override the scenario noise seed");

  // unmix
  std::string cube_path;
  std::string unmix_out;
  std::size_t n_sources = 0;
  std::size_t tau = 1;
  std::string mode = "sym-evd";
  std::size_t bins = 10;
  bool no_sign_correction = false;
  auto* unmix_cmd = app.add_subcommand("unmix", "Separate a cube into estimated pure spectra");
  unmix_cmd->add_option("cube", cube_path, "Cube CSV path")->required();
  unmix_cmd->add_option("--n", n_sources, "Number of sources (omit for automatic detection)");
  unmix_cmd->add_option("--tau", tau, "Wavelength-sample delay for the lagged covariance");
  unmix_cmd->add_option("--mode", mode, "Rotation mode: sym-evd or plain-svd")
      ->check(CLI::IsMember({"sym-evd", "plain-svd"}));
  unmix_cmd->add_option("--bins", bins, "Histogram bin count for sign correction");
  unmix_cmd->add_flag("--no-sign-correction", no_sign_correction,
                      "Keep the raw peak directions");
  unmix_cmd->add_option("--out", unmix_out, "Output directory");

  // evaluate
  std::string model_path, truth_sources, truth_mixing, eval_out;
  auto* evaluate = app.add_subcommand("evaluate", "Score a model against ground truth");
  evaluate->add_option("--model", model_path, "Model JSON path")->required();
  evaluate->add_option("--sources", truth_sources, "Ground-truth sources CSV")->required();
  evaluate->add_option("--mixing", truth_mixing, "Ground-truth mixing matrix CSV")->required();
  evaluate->add_option("--out", eval_out, "Output directory");

  // demo
  std::string demo_name, demo_out;
  auto* demo = app.add_subcommand("demo", "Run a bundled experiment end to end");
  demo->add_option("name", demo_name, "paper2 or paper3")->required();
  demo->add_option("--out", demo_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  if (simulate->parsed()) {
    unmix::cli::SimulateArgs args;
    args.scenario_path = scenario_path;
    if (!sim_out.empty()) args.out_dir = sim_out;
    if (seed_opt->count() > 0) args.seed = sim_seed;
    return unmix::cli::cmd_simulate(args, std::cout, std::cerr);
  }
  if (unmix_cmd->parsed()) {
    if (tau < 1) {
      std::cerr << "unmix: error: --tau must be a nonzero delay\n";
      return 1;
    }
    unmix::cli::UnmixArgs args;
    args.cube_path = cube_path;
    if (n_sources > 0) args.n_sources = n_sources;
    args.delay = tau;
    args.mode = parse_mode(mode);
    args.bins = bins;
    args.sign_correction = !no_sign_correction;
    if (!unmix_out.empty()) args.out_dir = unmix_out;
    return unmix::cli::cmd_unmix(args, std::cout, std::cerr);
  }
  if (evaluate->parsed()) {
    unmix::cli::EvaluateArgs args;
    args.model_path = model_path;
    args.truth_sources_path = truth_sources;
    args.truth_mixing_path = truth_mixing;
    if (!eval_out.empty()) args.out_dir = eval_out;
    return unmix::cli::cmd_evaluate(args, std::cout, std::cerr);
  }
  if (demo->parsed()) {
    unmix::cli::DemoArgs args;
    args.name = demo_name;
    if (!demo_out.empty()) args.out_dir = demo_out;
    return unmix::cli::cmd_demo(args, std::cout, std::cerr);
  }
  return 1;
}
