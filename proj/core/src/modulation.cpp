#include "rfcomp/modulation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <sstream>
#include <string>

#include "rfcomp/error.hpp"
#include "rfcomp/quadrature.hpp"

namespace rfcomp {

namespace {

constexpr double kPi = std::numbers::pi;

// Constant generator a Wx + b Wz applied for `duration`.
Rotation xz_step(double a, double b, double duration) {
  const Vec3 v = duration * Vec3(a, 0.0, b);
  const double angle = v.norm();
  if (angle == 0.0) return Rotation::identity();
  return axis_angle_exp(v / angle, angle);
}

// Sign of cos(phi1) and of the rate mapping on each of the four intervals.
constexpr double kCosPhi1[4] = {1.0, -1.0, -1.0, 1.0};

// Rate on interval `k` at local time s in [0, dt], expressed through f on the
// first interval.
double scheduled_rate(const ModulationSpec& spec, int k, double s) {
  const double dt = spec.delta_t();
  switch (k) {
    case 0:
      return spec.rate_at(s);
    case 1:
      return spec.rate_at(dt - s);
    case 2:
      return -spec.rate_at(s);
    default:
      return -spec.rate_at(dt - s);
  }
}

}  // namespace

double ModulationSpec::delta_t() const { return kPi / amplitude; }

void ModulationSpec::validate() const {
  if (!(amplitude > 0.0)) throw PreconditionError("modulation: amplitude A must be positive");
  if (!(rate >= 0.0)) throw PreconditionError("modulation: rate B must be non-negative");
  if (shape == Shape::sampled) {
    if (samples.size() < 2) throw PreconditionError("modulation: sampled shape needs >= 2 samples");
    for (double f : samples) {
      if (!(std::abs(f) <= rate * (1.0 + 1e-12))) {
        throw PreconditionError("modulation: sampled rate exceeds B in magnitude");
      }
    }
  }
}

double ModulationSpec::rate_at(double t) const {
  if (shape == Shape::linear) return -rate;
  const double u = std::clamp(t / delta_t(), 0.0, 1.0) * static_cast<double>(samples.size() - 1);
  const auto i = std::min(static_cast<std::size_t>(u), samples.size() - 2);
  const double w = u - static_cast<double>(i);
  return (1.0 - w) * samples[i] + w * samples[i + 1];
}

double linear_first_order_coefficient(const ModulationSpec& spec, double eps) {
  if (!(eps > 0.0)) throw PreconditionError("linear_first_order: eps must be positive");
  return 4.0 * spec.rate / (spec.amplitude * eps) * (1.0 - std::cos(kPi * eps));
}

Rotation linear_first_order(const ModulationSpec& spec, double eps) {
  if (spec.shape != ModulationSpec::Shape::linear) {
    throw PreconditionError("linear_first_order: modulation shape is not linear");
  }
  return axis_exp(Axis::y, linear_first_order_coefficient(spec, eps));
}

double arbitrary_first_order_coefficient(const ModulationSpec& spec, double eps) {
  if (spec.shape != ModulationSpec::Shape::sampled) {
    throw PreconditionError("arbitrary_first_order: modulation shape is not sampled");
  }
  if (spec.samples.size() < 3) {
    throw PreconditionError("arbitrary_first_order: need at least 3 samples");
  }
  const double dt = spec.delta_t();
  const double h = dt / static_cast<double>(spec.samples.size() - 1);
  std::vector<double> integrand(spec.samples.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) {
    const double t = static_cast<double>(i) * h;
    integrand[i] = spec.samples[i] * std::sin(spec.amplitude * eps * t);
  }
  return -4.0 * quad::simpson_samples(integrand, h);
}

Rotation arbitrary_first_order(const ModulationSpec& spec, double eps) {
  return axis_exp(Axis::y, arbitrary_first_order_coefficient(spec, eps));
}

Rotation simulate_modulated(const ModulationSpec& spec, double eps, int substeps) {
  spec.validate();
  if (substeps < 1) throw PreconditionError("simulate_modulated: substeps must be >= 1");
  const double dt = spec.delta_t();
  const double a = spec.amplitude * eps;
  Rotation r;
  if (spec.shape == ModulationSpec::Shape::linear) {
    // phi2' = -B on the first half, +B on the second; the generator carries -phi2'.
    const double b[4] = {spec.rate, spec.rate, -spec.rate, -spec.rate};
    for (int k = 0; k < 4; ++k) r = xz_step(kCosPhi1[k] * a, b[k], dt) * r;
    return r;
  }
  // Fourth-order Magnus step per slice: G(t) = c Wx + b(t) Wz sampled at the
  // two Gauss points, plus the commutator term (sqrt(3) h^2 / 12) [G2, G1]
  // = (sqrt(3) h^2 / 12) c (b2 - b1) Wy.
  const double h = dt / substeps;
  const double off = 0.5 * h / std::numbers::sqrt3;
  const double comm = std::numbers::sqrt3 * h * h / 12.0;
  for (int k = 0; k < 4; ++k) {
    const double c = kCosPhi1[k] * a;
    for (int j = 0; j < substeps; ++j) {
      const double mid = (j + 0.5) * h;
      const double b1 = -scheduled_rate(spec, k, mid - off);
      const double b2 = -scheduled_rate(spec, k, mid + off);
      const Vec3 v(h * c, comm * c * (b2 - b1), 0.5 * h * (b1 + b2));
      const double angle = v.norm();
      if (angle > 0.0) r = axis_angle_exp(v / angle, angle) * r;
    }
  }
  return r;
}

double y_angle(const Rotation& r) { return rotation_vector(r).y(); }

RobustComposite robust_composite(const ModulationSpec& spec, std::span<const double> epsilons,
                                 int program_substeps) {
  spec.validate();
  if (spec.shape != ModulationSpec::Shape::linear) {
    throw PreconditionError("robust_composite: modulation shape is not linear");
  }
  if (program_substeps < 1) {
    throw PreconditionError("robust_composite: program_substeps must be >= 1");
  }
  constexpr double kToDeg = 180.0 / kPi;
  const double direct_rad = 8.0 * spec.rate / spec.amplitude;

  RobustComposite out;
  // Each interval: symmetric slices Z(-phi2' h / 2) RF(A h) Z(-phi2' h / 2).
  const double h = spec.delta_t() / program_substeps;
  const double rf_deg = spec.amplitude * h * kToDeg;
  const double phase[4] = {0.0, 180.0, 180.0, 0.0};
  const double minus_rate[4] = {spec.rate, spec.rate, -spec.rate, -spec.rate};
  for (int k = 0; k < 4; ++k) {
    Block b;
    const double half_z = 0.5 * minus_rate[k] * h * kToDeg;
    b.events = {ZShift{half_z}, rf(rf_deg, phase[k]), ZShift{half_z}};
    b.reps = program_substeps;
    out.program.blocks.push_back(std::move(b));
  }
  Block direct;
  direct.events = {rf(direct_rad * kToDeg, 90.0)};
  out.program.blocks.push_back(std::move(direct));

  auto net = [&](double eps) {
    return y_angle(axis_exp(Axis::y, eps * direct_rad) * simulate_modulated(spec, eps));
  };
  out.report.epsilons.assign(epsilons.begin(), epsilons.end());
  for (double eps : epsilons) out.report.net_angle.push_back(net(eps));
  out.report.angle_at_one = net(1.0);
  constexpr double kH = 1e-4;
  out.report.derivative_at_one = (net(1.0 + kH) - net(1.0 - kH)) / (2.0 * kH);
  return out;
}

ModulationSpec read_shape_csv(std::istream& in, double amplitude, double rate) {
  ModulationSpec spec;
  spec.amplitude = amplitude;
  spec.rate = rate;
  spec.shape = ModulationSpec::Shape::sampled;
  if (!(amplitude > 0.0)) throw PreconditionError("shape csv: amplitude must be positive");

  std::string line;
  if (!std::getline(in, line)) throw PreconditionError("shape csv: empty input");
  {
    std::string header;
    for (char c : line) {
      if (c != ' ' && c != '\r' && c != '\t') header += c;
    }
    if (header != "t,f") throw PreconditionError("shape csv: header must be 't,f'");
  }
  std::vector<double> times;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ss(line);
    double t = 0.0, f = 0.0;
    char comma = 0;
    if (!(ss >> t >> comma >> f) || comma != ',') {
      throw PreconditionError("shape csv: malformed row " + std::to_string(row));
    }
    times.push_back(t);
    spec.samples.push_back(f);
  }
  if (times.size() < 2) throw PreconditionError("shape csv: need at least 2 rows");
  const double dt = spec.delta_t();
  const double h = dt / static_cast<double>(times.size() - 1);
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (std::abs(times[i] - static_cast<double>(i) * h) > 1e-6 * dt) {
      throw PreconditionError("shape csv: times must be uniform on [0, pi/A]");
    }
  }
  spec.validate();
  return spec;
}

}  // namespace rfcomp
