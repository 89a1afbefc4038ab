#include "unmix/spectra_model.hpp"

#include <cmath>
#include <stdexcept>

#include "unmix/errors.hpp"
#include "unmix/kernels.hpp"

namespace unmix {

Spectrum synth_spectrum(const std::vector<PeakModel>& peaks, double baseline,
                        const WavelengthGrid& grid) {
  grid.validate();
  if (!std::isfinite(baseline)) throw std::invalid_argument("synth_spectrum: non-finite baseline");
  for (const PeakModel& p : peaks) p.validate();

  Spectrum s{grid, std::vector<double>(grid.count, 0.0)};
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(grid.count); ++i) {
    const double lambda = grid.wavelength(static_cast<std::size_t>(i));
    double v = baseline;
    for (const PeakModel& p : peaks) {
      const double d = (lambda - p.center_nm) / p.width_nm;
      v += p.height * std::exp(-0.5 * d * d);
    }
    s.values[static_cast<std::size_t>(i)] = v;
  }
  return s;
}

HyperspectralCube mix(const MixingMatrix& a, const std::vector<Spectrum>& sources,
                      const NoiseSpec& noise) {
  noise.validate();
  if (sources.empty() || sources.size() != a.components())
    throw DimensionError("mix: source count must equal mixing matrix column count");
  const WavelengthGrid grid = sources.front().grid;
  for (const Spectrum& s : sources) {
    s.validate();
    if (!(s.grid == grid)) throw DimensionError("mix: sources must share one wavelength grid");
  }

  Matrix source_rows(sources.size(), grid.count);
  for (std::size_t i = 0; i < sources.size(); ++i) source_rows.set_row(i, sources[i].values);

  HyperspectralCube cube{grid, kernels::matmul(a.entries(), source_rows)};
  if (noise.kind == NoiseSpec::Kind::Gaussian)
    kernels::add_gaussian_noise(cube.data, noise.sigma, noise.seed);
  cube.validate();
  return cube;
}

MixingMatrix paper_two_component_matrix() {
  return MixingMatrix(Matrix{{0.2, 0.8},
                             {0.8, 0.2},
                             {0.4, 0.6},
                             {0.3, 0.7},
                             {0.9, 0.1},
                             {0.0, 1.0},
                             {1.0, 0.0}});
}

MixingMatrix paper_three_component_matrix() {
  // Component columns; row = pixel.
  return MixingMatrix(Matrix{{0.2, 0.1, 0.7},
                             {0.7, 0.5, 0.1},
                             {0.1, 0.4, 0.2},
                             {0.6, 0.7, 0.0},
                             {0.1, 0.1, 0.7},
                             {0.3, 0.2, 0.3},
                             {0.2, 0.0, 0.7},
                             {0.4, 0.7, 0.2},
                             {0.4, 0.3, 0.1}});
}

}  // namespace unmix
