#pragma once

// CSV and JSON serialization of run records. Numbers are printed with 17
// significant digits; a divergent gamma is printed as `inf`.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dephase/scenario.hpp"

namespace dephase {

/// 17 significant digits, `inf` / `-inf` for infinities.
std::string format_double(double v);

/// Column names of a CSV record: t, then the requested outputs in the fixed
/// order gamma, delta, negativity, negativity_ideal, purity.
std::vector<std::string> csv_columns(const std::set<OutputField>& outputs);

void write_csv(std::ostream& out, const RunRecord& rec);
/// Long format with a leading sweep_value column, grouped by value then t.
void write_sweep_csv(std::ostream& out, const SweepRecord& rec);

void write_json(std::ostream& out, const RunRecord& rec);
void write_sweep_json(std::ostream& out, const SweepRecord& rec);

/// (omega, J) table with header `omega,J`.
void write_spectrum_csv(std::ostream& out, const std::vector<std::pair<double, double>>& rows);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Reads a numeric CSV with a header line; accepts `inf`. Throws IoError on
/// malformed input.
CsvTable read_csv(std::istream& in);

}  // namespace dephase
