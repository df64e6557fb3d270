#pragma once

#include <string>
#include <vector>

#include "dgbo/evolve.hpp"
#include "dgbo/grid.hpp"

namespace dgbo::io {

struct StoredField {
    Field field;
    double t = 0.0;
};

// <stem>.json holds {n, L, t}; <stem>.bin holds n little-endian float64 values.
void write_field(const std::string& stem, const Field& f, double t);
StoredField read_field(const std::string& stem);

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows);

// Writes to a temporary name and renames, so readers never see a partial file.
void write_text_atomic(const std::string& path, const std::string& text);

}  // namespace dgbo::io
