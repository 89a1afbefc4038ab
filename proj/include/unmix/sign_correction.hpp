#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "unmix/types.hpp"

namespace unmix {

struct UnmixingModel;

// Equal-width intensity histogram of a spectrum.
struct Histogram {
  std::vector<double> bin_centers;  // strictly increasing, uniformly spaced
  std::vector<std::size_t> counts;  // sums to the sample count

  std::size_t bin_count() const { return bin_centers.size(); }
};

// Interior extrema located from the sign pattern of the first difference.
// Indices are 0-based sample positions; a plateau reports its first sample.
struct ExtremaSet {
  std::vector<std::pair<std::size_t, double>> maxima;
  std::vector<std::pair<std::size_t, double>> minima;
  double p_max = 0.0;  // largest extremum value (endpoint fallback if none)
  double p_min = 0.0;  // smallest extremum value
};

// Which of the direction conditions decided the verdict.
enum class SignRule {
  BothAboveBaseline,   // keep: p_max and p_min both above baseline
  PositiveDominant,    // keep: straddling, upward deviation larger
  BothBelowBaseline,   // flip: p_max and p_min both below baseline
  NegativeDominant,    // flip: straddling, downward deviation larger
  Boundary,            // keep: a compared quantity is exactly zero or tied
};

std::string to_string(SignRule rule);

struct SignVerdict {
  enum class Decision { Keep, Flip };
  Decision decision = Decision::Keep;
  double baseline = 0.0;
  double p_max = 0.0;
  double p_min = 0.0;
  SignRule rule_fired = SignRule::Boundary;
};

// Equal-width histogram over [min, max] with the stated binning: a value
// lands in bin ceil((v - min)/w) clamped to [1, bins]. A constant
// spectrum degenerates to a single bin holding every sample.
Histogram histogram(const Spectrum& s, std::size_t bins = 10);

// Center of the most-populated bin; ties break toward the lowest center.
double baseline(const Histogram& h);

// First-difference sign scan; needs at least 3 samples. Zero differences
// are skipped (plateaus compare the nearest nonzero differences on each
// side). Without interior extrema, p_max/p_min fall back to the global
// extremes of the samples.
ExtremaSet find_extrema(const Spectrum& s);

// The direction decision given baseline b and the extreme peak values.
// Boundary cases (an exactly-zero comparison or tied magnitudes) keep.
SignVerdict judge_direction(double b, double p_max, double p_min);

// Applies the judgment to every estimated source of the model. A flip
// negates source row i together with column i of the mixing estimate
// (and of the rotation), so the reconstruction product is unchanged.
// Verdicts are recorded on the returned model.
UnmixingModel correct_signs(const UnmixingModel& model, std::size_t bins = 10);

}  // namespace unmix
