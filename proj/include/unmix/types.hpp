#pragma once

#include <cstdint>
#include <vector>

#include "unmix/matrix.hpp"

namespace unmix {

// Uniform wavelength sampling. The default covers the visible to
// short-wave range, 400-1000 nm in 2 nm steps.
struct WavelengthGrid {
  double start_nm = 400.0;
  double step_nm = 2.0;
  std::size_t count = 301;

  double wavelength(std::size_t i) const { return start_nm + step_nm * static_cast<double>(i); }
  void validate() const;  // step > 0, count >= 2, finite

  static WavelengthGrid default_visible() { return WavelengthGrid{}; }

  friend bool operator==(const WavelengthGrid&, const WavelengthGrid&) = default;
};

// Intensity sampled on a wavelength grid (arbitrary absorbance units).
struct Spectrum {
  WavelengthGrid grid;
  std::vector<double> values;

  void validate() const;  // values.size() == grid.count, all finite
};

// One Gaussian band: baseline-relative bump of the given height centered
// at center_nm with standard deviation width_nm.
struct PeakModel {
  double center_nm = 0.0;
  double width_nm = 1.0;
  double height = 1.0;

  void validate() const;  // width > 0, height != 0, finite
};

struct NoiseSpec {
  enum class Kind { None, Gaussian };
  Kind kind = Kind::None;
  double sigma = 0.0;
  std::uint64_t seed = 0;

  static NoiseSpec none() { return NoiseSpec{}; }
  static NoiseSpec gaussian(double sigma, std::uint64_t seed) {
    return NoiseSpec{Kind::Gaussian, sigma, seed};
  }
  void validate() const;  // sigma >= 0, sigma == 0 iff kind == None
};

// Pixel-by-component concentration weights. Simulation inputs are
// physical, so construction enforces nonnegative entries and
// pixels >= components >= 1. Estimated mixing matrices are plain
// Matrix values and carry no such constraint.
class MixingMatrix {
 public:
  explicit MixingMatrix(Matrix entries);

  const Matrix& entries() const { return entries_; }
  std::size_t pixels() const { return entries_.rows(); }
  std::size_t components() const { return entries_.cols(); }

  friend bool operator==(const MixingMatrix&, const MixingMatrix&) = default;

 private:
  Matrix entries_;
};

// Measured mixture intensities: one row per pixel, one column per
// wavelength sample.
struct HyperspectralCube {
  WavelengthGrid grid;
  Matrix data;

  std::size_t pixels() const { return data.rows(); }
  void validate() const;  // data is pixels x grid.count, all finite
};

}  // namespace unmix
