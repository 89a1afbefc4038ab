#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "unmix/types.hpp"

namespace unmix::csv {

// Shortest decimal form that parses back to the same double, so every
// CSV round-trips bit-exactly.
std::string format_double(double v);
double parse_double(std::string_view token);

// Writes to a temporary file in the target directory, then renames.
// Parent directories are created as needed.
void atomic_write_text(const std::filesystem::path& path, const std::string& content);

// Matrix: one row per line. The optional header row is "c0,c1,...".
void write_matrix(const std::filesystem::path& path, const Matrix& m, bool header = true);
Matrix read_matrix(const std::filesystem::path& path);

// Single spectrum: header "wavelength,value", one row per sample.
void write_spectrum(const std::filesystem::path& path, const Spectrum& s);
Spectrum read_spectrum(const std::filesystem::path& path);

// A set of spectra sharing one grid (rows of `rows`), stored one sample
// per line: "wavelength,<prefix>_0,...,<prefix>_{n-1}".
void write_spectra(const std::filesystem::path& path, const WavelengthGrid& grid,
                   const Matrix& rows, std::string_view column_prefix);

struct SpectraFile {
  WavelengthGrid grid;
  Matrix rows;  // one row per file column
};
SpectraFile read_spectra(const std::filesystem::path& path);

// Cube file: "wavelength,pixel_0,...,pixel_{m-1}", one row per sample.
void write_cube(const std::filesystem::path& path, const HyperspectralCube& cube);
HyperspectralCube read_cube(const std::filesystem::path& path);

}  // namespace unmix::csv
