#pragma once

// Tabular output shared by the library and the command-line tool.
// CSV: comma separator, header row, LF line endings. JSON: an array of
// objects, one per row. Reals use 17 significant digits in both.

#include "dcoul/resolvent.hpp"
#include "dcoul/scattering.hpp"
#include "dcoul/spectrum.hpp"
#include "dcoul/wavefunction.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dcoul::io {

enum class Format { csv, json };

/// "csv" or "json"; ConfigError otherwise.
Format parse_format(std::string_view s);

using Cell = std::variant<long long, double, bool, std::string>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_row(std::vector<Cell> row);
};

std::string format_real(double v);

std::string render(const Table &t, Format f);

Table to_table(const spectrum::SpectrumTable &s);
Table to_table(const std::vector<scattering::PhaseShiftResult> &rows);
Table to_table(const std::vector<resolvent::DensityEstimate> &rows);
Table to_table(const wavefunction::CoefficientVector &c);

/// Columns r, phi_plus, phi_minus.
Table wavefunction_table(std::span<const double> r,
                         std::span<const double> upper,
                         std::span<const double> lower);

} // namespace dcoul::io
