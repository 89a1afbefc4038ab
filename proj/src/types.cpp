#include "unmix/types.hpp"

#include <cmath>
#include <stdexcept>

#include "unmix/errors.hpp"

namespace unmix {

void WavelengthGrid::validate() const {
  if (!std::isfinite(start_nm) || !std::isfinite(step_nm))
    throw std::invalid_argument("WavelengthGrid: non-finite bounds");
  if (step_nm <= 0.0) throw std::invalid_argument("WavelengthGrid: step must be positive");
  if (count < 2) throw std::invalid_argument("WavelengthGrid: need at least 2 samples");
}

void Spectrum::validate() const {
  grid.validate();
  if (values.size() != grid.count)
    throw DimensionError("Spectrum: value count does not match grid");
  for (double v : values)
    if (!std::isfinite(v)) throw std::invalid_argument("Spectrum: non-finite value");
}

void PeakModel::validate() const {
  if (!std::isfinite(center_nm) || !std::isfinite(width_nm) || !std::isfinite(height))
    throw std::invalid_argument("PeakModel: non-finite parameter");
  if (width_nm <= 0.0) throw std::invalid_argument("PeakModel: width must be positive");
  if (height == 0.0) throw std::invalid_argument("PeakModel: height must be nonzero");
}

void NoiseSpec::validate() const {
  if (!std::isfinite(sigma) || sigma < 0.0)
    throw std::invalid_argument("NoiseSpec: sigma must be finite and nonnegative");
  if ((sigma == 0.0) != (kind == Kind::None))
    throw std::invalid_argument("NoiseSpec: sigma must be zero exactly when kind is none");
}

MixingMatrix::MixingMatrix(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.cols() < 1 || entries_.rows() < entries_.cols())
    throw DimensionError("MixingMatrix: need pixels >= components >= 1");
  if (!entries_.all_finite()) throw std::invalid_argument("MixingMatrix: non-finite entry");
  for (std::size_t i = 0; i < entries_.rows(); ++i)
    for (std::size_t j = 0; j < entries_.cols(); ++j)
      if (entries_(i, j) < 0.0)
        throw std::invalid_argument("MixingMatrix: concentration weights must be nonnegative");
}

void HyperspectralCube::validate() const {
  grid.validate();
  if (data.rows() < 1 || data.cols() != grid.count)
    throw DimensionError("HyperspectralCube: data must be pixels x grid.count");
  if (!data.all_finite()) throw std::invalid_argument("HyperspectralCube: non-finite entry");
}

}  // namespace unmix
