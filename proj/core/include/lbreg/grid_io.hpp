#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>

#include "lbreg/grid.hpp"

namespace lbreg {

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Grid CSV: header line "rows,cols", then one line per row with cols
// comma-separated values written with 17 significant digits.
void write_grid_csv(std::ostream& out, const Grid& g);
void write_grid_csv(const std::filesystem::path& path, const Grid& g);
Grid read_grid_csv(std::istream& in);
Grid read_grid_csv(const std::filesystem::path& path);

struct PgmScaling {
  double min = 0.0;
  double max = 0.0;
};

/// Writes an 8-bit binary PGM (P5) using linear min-max scaling, plus a
/// "<path>.meta" sidecar listing min, max, rows and cols. A constant grid
/// renders as all zeros.
PgmScaling write_pgm(const std::filesystem::path& path, const Grid& g);

}  // namespace lbreg
