#include "unmix/cli_commands.hpp"

#include <cstdlib>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "unmix/csv.hpp"
#include "unmix/errors.hpp"
#include "unmix/evaluation.hpp"
#include "unmix/fixtures.hpp"
#include "unmix/model_io.hpp"
#include "unmix/sign_correction.hpp"
#include "unmix/spectra_model.hpp"

namespace unmix::cli {

namespace {

namespace fs = std::filesystem;

Scenario load_scenario(const std::string& ref) {
  if (auto builtin = builtin_scenario(ref)) return *builtin;
  return scenario_from_file(ref);
}

fs::path scenario_base_dir(const std::string& ref) {
  if (builtin_scenario(ref)) return fs::current_path();
  const fs::path dir = fs::path(ref).parent_path();
  return dir.empty() ? fs::current_path() : dir;
}

void write_profiles(const fs::path& path, const Matrix& mixing) {
  std::ostringstream out;
  out << "pixel";
  for (std::size_t j = 0; j < mixing.cols(); ++j) out << ",component_" << j;
  out << '\n';
  for (std::size_t i = 0; i < mixing.rows(); ++i) {
    out << i;
    for (std::size_t j = 0; j < mixing.cols(); ++j)
      out << ',' << csv::format_double(mixing(i, j));
    out << '\n';
  }
  csv::atomic_write_text(path, out.str());
}

MetricsReport evaluate_model(const UnmixingModel& model, const Matrix& truth_sources,
                             const Matrix& truth_mixing) {
  if (model.sources.rows() != truth_sources.rows() ||
      model.sources.cols() != truth_sources.cols())
    throw DimensionError("evaluate: model sources and truth sources have different shapes");
  if (model.mixing_estimate.rows() != truth_mixing.rows() ||
      model.mixing_estimate.cols() != truth_mixing.cols())
    throw DimensionError("evaluate: mixing estimate and truth matrix have different shapes");

  MetricsReport report;
  report.match = match_sources(truth_sources, model.sources);
  report.amari = amari_index(truth_mixing, model.mixing_estimate);
  report.n_sources = model.n_sources;
  std::size_t positive = 0;
  for (double r : report.match.correlations)
    if (r > 0.0) ++positive;
  report.sign_accuracy =
      static_cast<double>(positive) / static_cast<double>(report.match.correlations.size());
  return report;
}

void print_warnings(const UnmixingModel& model, std::ostream& err) {
  for (const std::string& w : model.warnings) err << "warning: " << w << '\n';
}

UnmixingModel run_unmix(const HyperspectralCube& cube, const UnmixArgs& args,
                        std::ostream& err) {
  AmuseOptions options;
  options.n_sources = args.n_sources;
  options.delay = args.delay;
  options.mode = args.mode;
  UnmixingModel model = amuse(cube, options);
  print_warnings(model, err);
  if (args.sign_correction) model = correct_signs(model, args.bins);
  return model;
}

int guarded(std::ostream& err, const char* what, const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    err << what << ": error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace

std::filesystem::path resolve_out_dir(const std::optional<std::string>& flag,
                                      const std::string& fallback) {
  if (flag.has_value() && !flag->empty()) return *flag;
  if (const char* env = std::getenv("UNMIX_OUT"); env && *env) return env;
  return fallback.empty() ? std::string(".") : fallback;
}

int cmd_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "simulate", [&] {
    Scenario scenario = load_scenario(args.scenario_path);
    if (args.seed.has_value()) {
      if (scenario.noise.kind == NoiseSpec::Kind::None)
        throw std::runtime_error("--seed given but the scenario uses no noise");
      scenario.noise.seed = *args.seed;
    }
    const fs::path base = scenario_base_dir(args.scenario_path);
    const fs::path dir = resolve_out_dir(args.out_dir, scenario.output_dir);

    const MixingMatrix a = resolve_mixing(scenario, base);
    const std::vector<Spectrum> sources = scenario_sources(scenario);
    const HyperspectralCube cube = mix(a, sources, scenario.noise);

    Matrix source_rows(sources.size(), scenario.grid.count);
    for (std::size_t i = 0; i < sources.size(); ++i) source_rows.set_row(i, sources[i].values);

    csv::write_cube(dir / "cube.csv", cube);
    csv::write_spectra(dir / "true_sources.csv", scenario.grid, source_rows, "source");
    csv::write_matrix(dir / "true_mixing.csv", a.entries());
    csv::atomic_write_text(dir / "scenario.json", scenario_to_json(scenario));
    out << "simulate: wrote " << (dir / "cube.csv").string() << " (" << cube.pixels()
        << " pixels x " << cube.grid.count << " samples)\n";
  });
}

int cmd_unmix(const UnmixArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "unmix", [&] {
    const HyperspectralCube cube = csv::read_cube(args.cube_path);
    const UnmixingModel model = run_unmix(cube, args, err);
    const fs::path dir = resolve_out_dir(args.out_dir, ".");
    write_model_json(dir / "model.json", model);
    csv::write_spectra(dir / "sources.csv", model.grid, model.sources, "source");
    out << "unmix: recovered " << model.n_sources << " sources -> "
        << (dir / "model.json").string() << '\n';
  });
}

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "evaluate", [&] {
    const UnmixingModel model = read_model_json(args.model_path);
    const csv::SpectraFile truth_sources = csv::read_spectra(args.truth_sources_path);
    const Matrix truth_mixing = csv::read_matrix(args.truth_mixing_path);

    const MetricsReport report =
        evaluate_model(model, truth_sources.rows, truth_mixing);

    const fs::path dir = resolve_out_dir(args.out_dir, ".");
    write_metrics_json(dir / "metrics.json", report);
    write_profiles(dir / "profiles_true.csv", truth_mixing);
    write_profiles(dir / "profiles_estimated.csv", model.mixing_estimate);
    out << "evaluate: sign_accuracy " << report.sign_accuracy << ", amari "
        << report.amari << " -> " << (dir / "metrics.json").string() << '\n';
  });
}

int cmd_demo(const DemoArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, "demo", [&] {
    const std::optional<Scenario> scenario = builtin_scenario(args.name);
    if (!scenario)
      throw std::runtime_error("unknown demo '" + args.name + "' (expected paper2 or paper3)");
    const fs::path dir = resolve_out_dir(args.out_dir, "demo_" + args.name);

    // Simulate.
    const MixingMatrix a = resolve_mixing(*scenario, fs::current_path());
    const std::vector<Spectrum> sources = scenario_sources(*scenario);
    const HyperspectralCube cube = mix(a, sources, scenario->noise);
    Matrix source_rows(sources.size(), scenario->grid.count);
    for (std::size_t i = 0; i < sources.size(); ++i) source_rows.set_row(i, sources[i].values);
    csv::write_cube(dir / "cube.csv", cube);
    csv::write_spectra(dir / "true_sources.csv", scenario->grid, source_rows, "source");
    csv::write_matrix(dir / "true_mixing.csv", a.entries());

    // Separate, raw and corrected.
    const UnmixingModel raw = amuse(cube, scenario_options(*scenario));
    print_warnings(raw, err);
    const UnmixingModel corrected = correct_signs(raw, scenario->bins);
    write_model_json(dir / "model_raw.json", raw);
    write_model_json(dir / "model_corrected.json", corrected);
    csv::write_spectra(dir / "sources_raw.csv", raw.grid, raw.sources, "source");
    csv::write_spectra(dir / "sources_corrected.csv", corrected.grid, corrected.sources,
                       "source");

    // Evaluate both.
    const MetricsReport raw_metrics = evaluate_model(raw, source_rows, a.entries());
    const MetricsReport corrected_metrics = evaluate_model(corrected, source_rows, a.entries());
    write_metrics_json(dir / "metrics_raw.json", raw_metrics);
    write_metrics_json(dir / "metrics_corrected.json", corrected_metrics);
    write_profiles(dir / "profiles_true.csv", a.entries());
    write_profiles(dir / "profiles_estimated.csv", corrected.mixing_estimate);

    // Summary table.
    std::ostringstream table;
    table << args.name << ": " << corrected.n_sources << " sources, delay " << corrected.delay
          << ", mode " << to_string(corrected.mode) << "\n";
    table << "component  r_raw      r_corrected  verdict\n";
    for (std::size_t i = 0; i < corrected.n_sources; ++i) {
      const SignVerdict& v = corrected.sign_verdicts[i];
      table << std::left << std::setw(11) << i << std::setw(11) << std::setprecision(4)
            << std::showpos << raw_metrics.match.correlations[i] << std::setw(13)
            << corrected_metrics.match.correlations[i] << std::noshowpos
            << (v.decision == SignVerdict::Decision::Flip ? "flip" : "keep") << " ("
            << to_string(v.rule_fired) << ")\n";
    }
    table << "sign_accuracy: raw " << raw_metrics.sign_accuracy << ", corrected "
          << corrected_metrics.sign_accuracy << "\n";
    table << "amari_index: " << corrected_metrics.amari << "\n";
    csv::atomic_write_text(dir / "summary.txt", table.str());
    out << table.str();
  });
}

}  // namespace unmix::cli
