#pragma once

// Ensemble simulation of pulse programs under RF amplitude dispersion eps.
//
// An RF segment (f)_p rotates by eps * f about (cos p, sin p, 0); a z-shift
// rotates by its exact angle about z. With a constant offset omega, each RF
// segment lasts |f| (radians at unit nominal amplitude) and precesses about
// eps * sign(f) * n + omega * z for that duration.

#include <functional>
#include <iosfwd>
#include <vector>

#include "rfcomp/pulse.hpp"
#include "rfcomp/so3.hpp"

namespace rfcomp {

struct EnsembleGrid {
  double eps_min = 0.5;
  double eps_max = 1.5;
  int count = 201;

  /// [1 - delta, 1 + delta] with `count` samples.
  static EnsembleGrid centered(double delta, int count = 201);

  /// Throws PreconditionError unless eps_min < eps_max and count is odd and >= 3.
  void validate() const;

  double step() const { return (eps_max - eps_min) / (count - 1); }
  double at(int i) const { return i + 1 == count ? eps_max : eps_min + i * step(); }
  std::vector<double> points() const;
};

struct SimOptions {
  double offset_omega = 0.0;
  int substeps = 1000;
};

struct StateProfile {
  std::vector<double> epsilons;
  std::vector<Vec3> states;
};

struct ErrorReport {
  double l2_error = 0.0;
  double flip_table = 0.0;   // radians, FlipConvention::table
  double flip_rf_sum = 0.0;  // radians, FlipConvention::rf_sum
  std::vector<double> per_eps_residual;
};

using StateTarget = std::function<Vec3(double eps)>;

inline const Vec3 kInitialState = Vec3::UnitZ();
inline const Vec3 kDefaultTarget = Vec3::UnitX();

Rotation event_rotation(const Event& event, double eps, const SimOptions& options = {});

Vec3 apply_event(const Vec3& state, const Event& event, double eps,
                 const SimOptions& options = {});

/// One repetition of a block, events composed in time order.
Rotation block_rotation(const Block& block, double eps, const SimOptions& options = {});

/// Net rotation of the whole program, repetitions expanded.
Rotation program_rotation(const PulseProgram& program, double eps,
                          const SimOptions& options = {});

/// Final state at each grid point, starting from (0, 0, 1).
StateProfile simulate_program(const PulseProgram& program, const EnsembleGrid& grid,
                              const SimOptions& options = {});

/// E = sqrt(Simpson integral of |X(eps) - target(eps)|^2). The profile must
/// sit on a uniform grid with an odd number of points.
ErrorReport l2_error(const StateProfile& profile, const StateTarget& target);
ErrorReport l2_error(const StateProfile& profile, const Vec3& target);

/// Simulate, score against `target`, and fill both flip-angle conventions.
ErrorReport evaluate_program(const PulseProgram& program, const EnsembleGrid& grid,
                             const Vec3& target = kDefaultTarget,
                             const SimOptions& options = {});

/// CSV with header `epsilon,x,y,z`.
void write_profile_csv(std::ostream& out, const StateProfile& profile);

/// CSV with header `epsilon,residual`.
void write_residual_csv(std::ostream& out, const StateProfile& profile,
                        const ErrorReport& report);

}  // namespace rfcomp
