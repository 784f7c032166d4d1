#include "rfcomp/bloch.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "rfcomp/error.hpp"
#include "rfcomp/quadrature.hpp"

namespace rfcomp {

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
}

EnsembleGrid EnsembleGrid::centered(double delta, int count) {
  EnsembleGrid g{1.0 - delta, 1.0 + delta, count};
  g.validate();
  return g;
}

void EnsembleGrid::validate() const {
  if (!(eps_min < eps_max)) {
    throw PreconditionError("ensemble grid: eps_min must be below eps_max");
  }
  if (count < 3 || count % 2 == 0) {
    throw PreconditionError("ensemble grid: count must be odd and >= 3");
  }
}

std::vector<double> EnsembleGrid::points() const {
  std::vector<double> pts(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) pts[static_cast<std::size_t>(i)] = at(i);
  return pts;
}

Rotation event_rotation(const Event& event, double eps, const SimOptions& options) {
  if (const auto* z = std::get_if<ZShift>(&event)) {
    return axis_exp(Axis::z, z->angle_deg * kDeg);
  }
  const auto& seg = std::get<RfSegment>(event);
  const double phase = seg.phase_deg * kDeg;
  const Vec3 n(std::cos(phase), std::sin(phase), 0.0);
  const double flip = seg.flip_deg * kDeg;
  if (options.offset_omega == 0.0) {
    return axis_angle_exp(n, eps * flip);
  }
  const double duration = std::abs(flip);
  const double sign = flip < 0.0 ? -1.0 : 1.0;
  const Vec3 v = duration * (eps * sign * n + options.offset_omega * Vec3::UnitZ());
  const double angle = v.norm();
  if (angle == 0.0) return Rotation::identity();
  return axis_angle_exp(v / angle, angle);
}

Vec3 apply_event(const Vec3& state, const Event& event, double eps, const SimOptions& options) {
  return event_rotation(event, eps, options).apply(state);
}

Rotation block_rotation(const Block& block, double eps, const SimOptions& options) {
  Rotation r;
  for (const Event& e : block.events) r = event_rotation(e, eps, options) * r;
  return r;
}

Rotation program_rotation(const PulseProgram& program, double eps, const SimOptions& options) {
  Rotation r;
  for (const Block& b : program.blocks) {
    const Rotation once = block_rotation(b, eps, options);
    for (int k = 0; k < b.reps; ++k) r = once * r;
  }
  return r;
}

StateProfile simulate_program(const PulseProgram& program, const EnsembleGrid& grid,
                              const SimOptions& options) {
  validate(program);
  grid.validate();
  StateProfile profile;
  profile.epsilons = grid.points();
  profile.states.reserve(profile.epsilons.size());
  for (double eps : profile.epsilons) {
    Vec3 x = kInitialState;
    for (const Block& b : program.blocks) {
      const Rotation once = block_rotation(b, eps, options);
      for (int k = 0; k < b.reps; ++k) x = once.apply(x);
    }
    profile.states.push_back(x);
  }
  return profile;
}

ErrorReport l2_error(const StateProfile& profile, const StateTarget& target) {
  const std::size_t n = profile.epsilons.size();
  if (n != profile.states.size()) {
    throw PreconditionError("l2_error: profile epsilons and states differ in length");
  }
  if (n < 3 || n % 2 == 0) {
    throw PreconditionError("l2_error: Simpson quadrature needs an odd number (>= 3) of points");
  }
  const double h = (profile.epsilons.back() - profile.epsilons.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    const double d = profile.epsilons[i] - profile.epsilons[i - 1];
    if (!(h > 0.0) || std::abs(d - h) > 1e-9 * std::max(1.0, h)) {
      throw PreconditionError("l2_error: profile grid is not uniform");
    }
  }
  ErrorReport report;
  report.per_eps_residual.resize(n);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (profile.states[i] - target(profile.epsilons[i])).norm();
    report.per_eps_residual[i] = r;
    sq[i] = r * r;
  }
  report.l2_error = std::sqrt(std::max(0.0, quad::simpson_samples(sq, h)));
  return report;
}

ErrorReport l2_error(const StateProfile& profile, const Vec3& target) {
  return l2_error(profile, [&target](double) { return target; });
}

ErrorReport evaluate_program(const PulseProgram& program, const EnsembleGrid& grid,
                             const Vec3& target, const SimOptions& options) {
  ErrorReport report = l2_error(simulate_program(program, grid, options), target);
  report.flip_table = total_flip_angle(program, FlipConvention::table);
  report.flip_rf_sum = total_flip_angle(program, FlipConvention::rf_sum);
  return report;
}

void write_profile_csv(std::ostream& out, const StateProfile& profile) {
  out << "epsilon,x,y,z\n";
  char buf[160];
  for (std::size_t i = 0; i < profile.epsilons.size(); ++i) {
    const Vec3& s = profile.states[i];
    std::snprintf(buf, sizeof buf, "%.10g,%.15g,%.15g,%.15g\n", profile.epsilons[i], s.x(), s.y(),
                  s.z());
    out << buf;
  }
}

void write_residual_csv(std::ostream& out, const StateProfile& profile,
                        const ErrorReport& report) {
  out << "epsilon,residual\n";
  char buf[96];
  for (std::size_t i = 0; i < profile.epsilons.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g,%.15g\n", profile.epsilons[i],
                  report.per_eps_residual[i]);
    out << buf;
  }
}

}  // namespace rfcomp
