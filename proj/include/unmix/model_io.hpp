#pragma once

#include <filesystem>
#include <string>

#include "unmix/amuse.hpp"
#include "unmix/evaluation.hpp"

namespace unmix {

// Evaluation summary written by the evaluate command.
struct MetricsReport {
  MatchResult match;
  double amari = 0.0;
  double sign_accuracy = 0.0;
  std::size_t n_sources = 0;
};

std::string model_to_json(const UnmixingModel& model);
UnmixingModel model_from_json(const std::string& text);

void write_model_json(const std::filesystem::path& path, const UnmixingModel& model);
UnmixingModel read_model_json(const std::filesystem::path& path);

std::string metrics_to_json(const MetricsReport& report);
void write_metrics_json(const std::filesystem::path& path, const MetricsReport& report);

}  // namespace unmix
