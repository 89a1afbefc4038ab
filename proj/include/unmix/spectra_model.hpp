#pragma once

#include <vector>

#include "unmix/types.hpp"

namespace unmix {

// Sum-of-Gaussians spectrum over a flat baseline:
//   value(λ) = baseline + Σ_p height_p · exp(-(λ - center_p)² / (2 width_p²))
Spectrum synth_spectrum(const std::vector<PeakModel>& peaks, double baseline,
                        const WavelengthGrid& grid);

// Forward model x = A·s + noise. All sources must share one grid and
// their count must equal A's component count. With the same NoiseSpec
// the output is bit-identical across calls.
HyperspectralCube mix(const MixingMatrix& a, const std::vector<Spectrum>& sources,
                      const NoiseSpec& noise);

// The 7-pixel, 2-component concentration layout used by the bundled
// two-component experiment.
MixingMatrix paper_two_component_matrix();

// The 9-pixel, 3-component layout used by the bundled three-component
// experiment (stored pixels x components).
MixingMatrix paper_three_component_matrix();

}  // namespace unmix
