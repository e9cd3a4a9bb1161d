#pragma once

#include <string>

#include "ratchet/grid.hpp"
#include "ratchet/hierarchy.hpp"

namespace ratchet {

// Scalar diagnostics of the physical (0th) element.
struct Diagnostics {
  double norm = 0.0;
  double mean_p = 0.0;
  double mean_p2 = 0.0;
  double negativity = 0.0;
  double t = 0.0;
};

// Volume of the negative part, integral of (|f| - f)/2 with the same
// trapezoid-in-p / rectangle-in-q weights as integrate().
double negative_volume(const GridField& f, const PhaseGrid& g);

Diagnostics diagnostics(const HierarchyState& state, const PhaseGrid& g);

// Snapshot file: one text header line "nq np dq dp t", then nq*np raw
// little-endian 64-bit floats, row-major with q fastest.
struct Snapshot {
  int nq = 0;
  int np = 0;
  double dq = 0.0;
  double dp = 0.0;
  double t = 0.0;
  GridField field;
};

void export_snapshot(const HierarchyState& state, const PhaseGrid& g,
                     const std::string& path);
Snapshot import_snapshot(const std::string& path);

}  // namespace ratchet
