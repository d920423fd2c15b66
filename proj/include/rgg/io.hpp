#pragma once

// Text output helpers.  CSV files open with a "# schema: 1" line and print
// floats with 17 significant digits, enough to round-trip doubles exactly,
// so identical configurations produce byte-identical files.

#include <cstdio>
#include <ostream>
#include <string>

#include "rgg/eigen.hpp"
#include "rgg/matrix.hpp"

namespace rgg {

inline constexpr int kOutputSchemaVersion = 1;

// Shortest text that still round-trips: %.17g.
inline std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_csv_schema_header(std::ostream& os) {
  os << "# schema: " << kOutputSchemaVersion << "\n";
}

// One row per matrix row, comma-separated.
inline void write_matrix_csv(const SymmetricMatrix& m, std::ostream& os) {
  write_csv_schema_header(os);
  for (std::size_t i = 0; i < m.n; ++i) {
    const double* row = m.row(i);
    for (std::size_t j = 0; j < m.n; ++j) {
      if (j) os << ',';
      os << format_double17(row[j]);
    }
    os << '\n';
  }
}

// Rows (rank, value), rank starting at 1, values in stored (descending) order.
inline void write_spectrum_csv(const Spectrum& spec, std::ostream& os) {
  write_csv_schema_header(os);
  os << "rank,value\n";
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    os << (i + 1) << ',' << format_double17(spec.values[i]) << '\n';
  }
}

}  // namespace rgg
