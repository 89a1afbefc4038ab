#include "unmix/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

#include "unmix/errors.hpp"

namespace unmix::csv {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

bool is_numeric(std::string_view token) {
  double v;
  const char* end = token.data() + token.size();
  auto [p, ec] = std::from_chars(token.data(), end, v);
  return ec == std::errc{} && p == end;
}

WavelengthGrid grid_from_wavelengths(const std::vector<double>& w,
                                     const std::filesystem::path& path) {
  if (w.size() < 2) throw std::runtime_error("too few samples in " + path.string());
  WavelengthGrid grid{w.front(), w[1] - w[0], w.size()};
  grid.validate();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double expected = grid.wavelength(i);
    if (std::abs(w[i] - expected) > 1e-9 * std::max(1.0, std::abs(expected)))
      throw std::runtime_error("non-uniform wavelength column in " + path.string());
  }
  return grid;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, p);
}

double parse_double(std::string_view token) {
  double v;
  const char* end = token.data() + token.size();
  auto [p, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc{} || p != end)
    throw std::runtime_error("bad numeric field: '" + std::string(token) + "'");
  return v;
}

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path dir = path.parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("short write: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_matrix(const std::filesystem::path& path, const Matrix& m, bool header) {
  std::ostringstream out;
  if (header) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? "," : "") << 'c' << j;
    out << '\n';
  }
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

Matrix read_matrix(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw std::runtime_error("empty matrix file: " + path.string());
  std::size_t first = 0;
  if (!is_numeric(split_fields(lines[0]).front())) first = 1;  // skip header
  if (first >= lines.size()) throw std::runtime_error("matrix file has no data: " + path.string());

  const std::size_t cols = split_fields(lines[first]).size();
  Matrix m(lines.size() - first, cols);
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto fields = split_fields(lines[i]);
    if (fields.size() != cols)
      throw std::runtime_error("ragged row in matrix file: " + path.string());
    for (std::size_t j = 0; j < cols; ++j) m(i - first, j) = parse_double(fields[j]);
  }
  return m;
}

void write_spectrum(const std::filesystem::path& path, const Spectrum& s) {
  s.validate();
  std::ostringstream out;
  out << "wavelength,value\n";
  for (std::size_t i = 0; i < s.values.size(); ++i)
    out << format_double(s.grid.wavelength(i)) << ',' << format_double(s.values[i]) << '\n';
  atomic_write_text(path, out.str());
}

Spectrum read_spectrum(const std::filesystem::path& path) {
  const SpectraFile file = read_spectra(path);
  if (file.rows.rows() != 1)
    throw std::runtime_error("expected a single value column in " + path.string());
  return Spectrum{file.grid, file.rows.row_copy(0)};
}

void write_spectra(const std::filesystem::path& path, const WavelengthGrid& grid,
                   const Matrix& rows, std::string_view column_prefix) {
  grid.validate();
  if (rows.cols() != grid.count)
    throw DimensionError("write_spectra: row length does not match grid");
  std::ostringstream out;
  out << "wavelength";
  for (std::size_t i = 0; i < rows.rows(); ++i) out << ',' << column_prefix << '_' << i;
  out << '\n';
  for (std::size_t t = 0; t < grid.count; ++t) {
    out << format_double(grid.wavelength(t));
    for (std::size_t i = 0; i < rows.rows(); ++i) out << ',' << format_double(rows(i, t));
    out << '\n';
  }
  atomic_write_text(path, out.str());
}

SpectraFile read_spectra(const std::filesystem::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  const std::size_t first = !lines.empty() && is_numeric(split_fields(lines[0]).front()) ? 0 : 1;
  if (lines.size() < first + 2) throw std::runtime_error("too few rows in " + path.string());
  const std::size_t fields_per_line = split_fields(lines[first]).size();
  if (fields_per_line < 2)
    throw std::runtime_error("expected wavelength plus value columns in " + path.string());

  const std::size_t samples = lines.size() - first;
  const std::size_t series = fields_per_line - 1;
  std::vector<double> wavelengths(samples);
  Matrix rows(series, samples);
  for (std::size_t t = 0; t < samples; ++t) {
    const auto fields = split_fields(lines[first + t]);
    if (fields.size() != fields_per_line)
      throw std::runtime_error("ragged row in " + path.string());
    wavelengths[t] = parse_double(fields[0]);
    for (std::size_t i = 0; i < series; ++i) rows(i, t) = parse_double(fields[i + 1]);
  }
  return SpectraFile{grid_from_wavelengths(wavelengths, path), std::move(rows)};
}

void write_cube(const std::filesystem::path& path, const HyperspectralCube& cube) {
  cube.validate();
  write_spectra(path, cube.grid, cube.data, "pixel");
}

HyperspectralCube read_cube(const std::filesystem::path& path) {
  SpectraFile file = read_spectra(path);
  HyperspectralCube cube{file.grid, std::move(file.rows)};
  cube.validate();
  return cube;
}

}  // namespace unmix::csv
