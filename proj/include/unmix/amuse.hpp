#pragma once

#include <optional>
#include <string>
#include <vector>

#include "unmix/sign_correction.hpp"
#include "unmix/types.hpp"

namespace unmix {

// Cube with per-pixel means removed.
struct CenteredCube {
  Matrix data;                // pixels x samples, rows sum to ~0
  std::vector<double> means;  // per-pixel means that were removed
};

// Dominant/noise eigenpair split of the zero-lag covariance.
struct SubspaceSplit {
  Matrix signal_vectors;              // m x n, orthonormal columns
  std::vector<double> signal_values;  // n, descending, positive
  Matrix noise_vectors;               // m x (m-n)
  std::vector<double> noise_values;   // m-n, descending
  std::vector<std::string> warnings;
};

// Q maps centered pixels into the white n-dimensional signal space;
// q_pinv maps back. q · q_pinv is the n x n identity.
struct Whitener {
  Matrix q;       // n x m
  Matrix q_pinv;  // m x n
};

struct WhitenResult {
  Matrix whitened;  // n x T
  Whitener whitener;
};

enum class RotationMode {
  SymmetrizedEvd,  // EVD of (Rτ + Rτᵀ)/2 (default)
  PlainSvd,        // left singular vectors of Rτ as-is
};

std::string to_string(RotationMode mode);

struct RotationResult {
  Matrix rotation;              // n x n orthogonal
  std::vector<double> spectrum; // eigenvalues (signed) or singular values
  std::vector<std::string> warnings;
};

// Full separation result.
struct UnmixingModel {
  Matrix mixing_estimate;  // m x n
  Matrix sources;          // n x T, row = estimated pure spectrum
  Matrix rotation;         // n x n orthogonal
  std::vector<double> delayed_spectrum;  // diagnostics from the rotation step
  std::size_t delay = 1;
  std::size_t n_sources = 0;
  WavelengthGrid grid;
  RotationMode mode = RotationMode::SymmetrizedEvd;
  std::vector<std::string> warnings;

  // Filled by correct_signs.
  std::vector<SignVerdict> sign_verdicts;
  std::size_t sign_bins = 0;

  bool sign_corrected() const { return !sign_verdicts.empty(); }
};

CenteredCube center(const HyperspectralCube& cube);

// (1/T) · data · dataᵀ of the centered rows.
Matrix covariance_zero_lag(const CenteredCube& c);

// Eigendecomposition split into the n dominant (signal) pairs and the
// rest. With n unset the count is chosen automatically as the number of
// eigenvalues above rank_rel_tol times the largest. Attaches an
// ill-separated-subspace warning when λ_n and λ_{n+1} coincide.
SubspaceSplit signal_subspace(const Matrix& r, std::optional<std::size_t> n,
                              double rank_rel_tol = 1e-9);

// Scales the signal-space projection to unit covariance.
WhitenResult whiten(const CenteredCube& c, const SubspaceSplit& split);

// (1/(T-delay)) · Σ_{k=delay}^{T-1} w[:,k] · w[:,k-delay]ᵀ
Matrix delayed_covariance(const Matrix& whitened, std::size_t delay);

// Orthogonal rotation extracted from the delayed covariance, with the
// associated spectrum sorted by descending magnitude. Attaches a
// non-identifiable-delay warning when two spectrum entries coincide.
RotationResult rotation_from_delayed(const Matrix& r_tau,
                                     RotationMode mode = RotationMode::SymmetrizedEvd);

// Â = q_pinv · rotation
Matrix estimate_mixing(const Whitener& w, const Matrix& rotation);

// Ŝ = rotationᵀ · whitened
Matrix estimate_sources(const Matrix& rotation, const Matrix& whitened);

struct AmuseOptions {
  std::optional<std::size_t> n_sources;  // unset = automatic
  std::size_t delay = 1;
  RotationMode mode = RotationMode::SymmetrizedEvd;
  double rank_rel_tol = 1e-9;
};

// The whole pipeline: center, zero-lag covariance, subspace split,
// whitening, delayed covariance, rotation, source and mixing estimates.
// Warnings from inner steps propagate to the model.
UnmixingModel amuse(const HyperspectralCube& cube, const AmuseOptions& options = {});

}  // namespace unmix
