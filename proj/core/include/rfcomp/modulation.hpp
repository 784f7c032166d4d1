#pragma once

// Phase-modulated inversion-pair elements and their first-order analysis.
//
// In the frame following the modulation phase phi2 the generator is
//   A eps cos(phi1) Wx - phi2'(t) Wz
// with phi1 = 0, pi, pi, 0 over four intervals of length dt = pi / A. For a
// modulation rate f(t) on the first interval the four intervals use
//   f(t), f(2dt - t), -f(t - 2dt), -f(4dt - t)
// (the linear scheme is f = -B). To first order in B / A the net rotation is
// exp(c Wy) with c = -4 * integral_0^dt f(t) sin(A eps t) dt.

#include <iosfwd>
#include <span>
#include <vector>

#include "rfcomp/pulse.hpp"
#include "rfcomp/so3.hpp"

namespace rfcomp {

struct ModulationSpec {
  enum class Shape { linear, sampled };

  double amplitude = 1.0;  // A, radians per unit time
  double rate = 0.01;      // B, radians per unit time
  Shape shape = Shape::linear;
  std::vector<double> samples;  // f at uniform times covering [0, dt] (sampled shape)

  double delta_t() const;

  /// Throws PreconditionError for A <= 0, B < 0, or sampled shapes with
  /// fewer than 2 samples or |f| > B.
  void validate() const;

  /// B / A below 0.2, where the first-order picture is trustworthy.
  bool first_order_regime() const { return rate / amplitude < 0.2; }

  /// Modulation rate f(t) on the first interval (linear interpolation of samples).
  double rate_at(double t) const;
};

/// (4B / (A eps)) (1 - cos(pi eps)). Throws PreconditionError for eps <= 0.
double linear_first_order_coefficient(const ModulationSpec& spec, double eps);

/// exp(c Wy) with c from linear_first_order_coefficient.
Rotation linear_first_order(const ModulationSpec& spec, double eps);

/// -4 * integral_0^dt f(t) sin(A eps t) dt by Simpson over the samples.
/// Throws PreconditionError for fewer than 3 samples.
double arbitrary_first_order_coefficient(const ModulationSpec& spec, double eps);

Rotation arbitrary_first_order(const ModulationSpec& spec, double eps);

/// Exact propagator over [0, 4 dt]. The linear shape is four constant
/// generators; sampled shapes use `substeps` fourth-order Magnus slices per
/// interval.
Rotation simulate_modulated(const ModulationSpec& spec, double eps, int substeps = 1000);

/// Signed rotation angle about +y (the y component of the rotation vector).
double y_angle(const Rotation& r);

struct RobustReport {
  std::vector<double> epsilons;
  std::vector<double> net_angle;  // radians, about +y
  double angle_at_one = 0.0;
  double derivative_at_one = 0.0;  // central difference, h = 1e-4
};

struct RobustComposite {
  PulseProgram program;
  RobustReport report;
};

/// Linear modulated element followed by a direct y-phase pulse of nominal
/// flip 8B/A. The program realizes the modulated element as `program_substeps`
/// symmetric slices per interval; the report uses the exact propagator.
RobustComposite robust_composite(const ModulationSpec& spec, std::span<const double> epsilons,
                                 int program_substeps = 1000);

/// Reads `t,f` CSV rows (header required) for a rate shape on [0, pi / A].
/// Throws PreconditionError on non-uniform spacing or a wrong time range.
ModulationSpec read_shape_csv(std::istream& in, double amplitude, double rate);

}  // namespace rfcomp
