#pragma once

// Regeneration of the reference performance table: each (method, selection,
// terms) cell is checked twice, once from the reference design listing and
// once from a design produced here from scratch.

#include <optional>
#include <string>
#include <vector>

#include "rfcomp/pulse.hpp"
#include "rfcomp/reference_corpus.hpp"
#include "rfcomp/search.hpp"

namespace rfcomp::cli {

struct Tolerance {
  double error_abs = 0.003;
  double error_rel = 0.10;
  double flip_rad = 0.5;
  double gradient_factor = 1.05;
};

/// |value - expected| <= max(error_abs, error_rel * expected).
bool error_within(double value, double expected, const Tolerance& tol = {});

struct Oracles {
  double simulated = 0.0;  // compiled program on the ensemble grid
  double ideal = 0.0;      // state error of the ideal effective rotation
  double residual = 0.0;   // angle-domain profile residual
};

struct CellReport {
  Method method = Method::fsm;
  Selection selection = Selection::heuristic;
  int terms = 0;
  double table_error = 0.0;
  double table_flip = 0.0;

  // Reference design.
  Oracles listed;
  double listed_flip = 0.0;
  bool listed_error_ok = false;
  bool listed_flip_ok = false;

  // Design regenerated by the requested selection method.
  std::optional<SearchResult> regenerated;
  Oracles regen;
  double regen_flip = 0.0;
  bool regen_error_ok = false;
};

struct Table1Options {
  std::vector<Selection> selections = {Selection::heuristic, Selection::greedy,
                                       Selection::gradient};
  bool regenerate = true;
  SearchOptions search;
  int grid_points = 201;
  double threshold_deg = 9.0;
  Tolerance tol;
};

struct Table1Report {
  std::vector<CellReport> cells;
  // Per (selection, terms): delta modulation beats Fourier synthesis.
  int dominance_checked = 0;
  int dominance_failed = 0;
  bool all_pass() const;
};

/// Simulates the reference pulse text and evaluates the reference amplitudes.
Oracles listed_oracles(const ReferenceDesign& ref, int grid_points);

/// Compiles the design and evaluates all three error measures.
Oracles design_oracles(const DesignRecord& design, int grid_points, double threshold_deg);

Table1Report run_table1(const Table1Options& options);

std::string format_table1(const Table1Report& report);

}  // namespace rfcomp::cli
