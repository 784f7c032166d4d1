#pragma once

// Frequency selection for the synthesis basis: a closed-form heuristic, a
// greedy one-frequency-at-a-time search, and multistart descent over all
// frequencies. Amplitudes always come from the Gram solve; derivatives are
// central differences.

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "rfcomp/pulse.hpp"
#include "rfcomp/synthesis.hpp"

namespace rfcomp {

struct SearchOptions {
  double fd_step = 1e-5;          // radians
  double step_init = 0.05;        // length of the first trial step, radians
  double backtrack_factor = 0.5;
  double tol = 1e-10;             // relative residual decrease for convergence
  int max_iters = 10000;
  int starts = 100;
  std::uint64_t seed = 0;
  double min_gamma = 0.05;        // frequency floor, radians
  double greedy_grid_step = 0.25; // spacing of greedy 1-D starting points, radians
};

/// Throws PreconditionError unless all step sizes are positive, the backtrack
/// factor is in (0, 1) and starts >= 1.
void validate(const SearchOptions& options);

struct SearchResult {
  DesignRecord design;              // degrees, as written to disk
  std::vector<double> gammas;       // radians
  std::vector<double> alphas;       // radians
  double residual = 0.0;            // profile residual at the Gram optimum
  double state_error = 0.0;         // ideal-state L2 error against (sin theta, 0, cos theta)
  long evaluations = 0;
  bool converged = true;
};

/// Raised when a descent exhausts max_iters; carries the best point found.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SearchResult best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const SearchResult& best() const noexcept { return best_; }

 private:
  SearchResult best_;
};

using Objective = std::function<double(std::span<const double>)>;

/// Delta modulation: (2k+1) pi / 2. FSM: the first n positive roots of
/// cos g - g sin g, by bisection.
std::vector<double> heuristic_frequencies(Method method, int n);

/// Central differences (f(x + h e_k) - f(x - h e_k)) / 2h.
std::vector<double> numerical_gradient(const Objective& f, std::span<const double> x, double h);

struct DescentResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
  std::vector<double> history;  // accepted objective values, first entry is the start
};

/// Steepest descent with Barzilai-Borwein trial steps and Armijo
/// backtracking. Iterates are sorted ascending and clamped at `floor`.
/// Objective evaluations that throw IllConditionedError count as +inf.
DescentResult descend(const Objective& f, std::vector<double> x0, const SearchOptions& options,
                      double floor);

/// Heuristic frequencies with Gram-optimal amplitudes.
SearchResult heuristic_search(Method method, int n, double theta_deg, double delta);

SearchResult greedy_search(Method method, int n, double theta_deg, double delta,
                           const SearchOptions& options = {});

SearchResult gradient_search(Method method, int n, double theta_deg, double delta,
                             const SearchOptions& options = {});

/// Dispatch on `selection`.
SearchResult run_search(Method method, int n, double theta_deg, double delta,
                        Selection selection, const SearchOptions& options = {});

}  // namespace rfcomp
