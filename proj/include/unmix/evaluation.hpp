#pragma once

#include <cstddef>
#include <vector>

#include "unmix/types.hpp"

namespace unmix {

// Component matching between an estimate and ground truth, resolving the
// permutation/sign/scale ambiguity of blind separation.
struct MatchResult {
  std::vector<std::size_t> permutation;  // estimated row i matches truth row permutation[i]
  std::vector<int> signs;                // ±1 per estimated row
  std::vector<double> scales;            // positive least-squares scales
  std::vector<double> correlations;      // signed Pearson r after matching
};

// Assignment maximizing the summed |Pearson r| over mean-removed rows.
// Exhaustive (exactly optimal) for n <= 6, greedy beyond that.
// Throws UndefinedCorrelationError for a zero-variance row.
MatchResult match_sources(const Matrix& truth, const Matrix& estimate);

// Standard permutation/scale-invariant recovery error of a mixing-matrix
// estimate; 0 iff pinv(A_est)·A_true is a scaled permutation.
double amari_index(const Matrix& a_true, const Matrix& a_est);

// One mixing-matrix column viewed as a per-pixel abundance curve.
struct ConcentrationProfile {
  std::size_t component = 0;
  std::vector<double> weights;
};

std::vector<ConcentrationProfile> concentration_profiles(const Matrix& a);
std::vector<ConcentrationProfile> concentration_profiles(const MixingMatrix& a);

// Fraction of components whose matched signed correlation is positive.
double sign_accuracy(const Matrix& truth, const Matrix& corrected);

// Signed Pearson correlation of two equal-length rows (mean-removed).
double pearson(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace unmix
