#pragma once

// Reference designs: 18 composite pulses (FSM and delta
// modulation, n = 2..4, three frequency selections) with their amplitudes,
// frequencies, pulse listings, tabulated L2 errors and total flip angles.
// Used as a golden corpus by the tests and by `rfcomp table1` / `roundtrip`.

#include <span>
#include <string_view>
#include <vector>

#include "rfcomp/pulse.hpp"

namespace rfcomp {

struct ReferenceDesign {
  std::string_view name;
  Method method;
  Selection selection;
  int terms;
  std::vector<double> alphas_deg;
  std::vector<double> gammas_deg;
  std::string_view pulse_text;
  double table_error;     // L2 error against (1, 0, 0)
  double table_flip_rad;  // total flip angle, FlipConvention::table
};

std::span<const ReferenceDesign> reference_designs();

/// Lookup by (method, selection, terms). Throws PreconditionError if absent.
const ReferenceDesign& reference_design(Method method, Selection selection, int terms);

/// DesignRecord view of a reference entry (theta 90, delta 0.5).
DesignRecord to_design(const ReferenceDesign& ref);

}  // namespace rfcomp
