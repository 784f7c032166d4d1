#include <doctest.h>

#include <Eigen/Geometry>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "rfcomp/error.hpp"
#include "rfcomp/so3.hpp"

using namespace rfcomp;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("generators match the written-out matrices") {
  CHECK(max_abs(generator(Axis::x) - oracle::wx()) == 0.0);
  CHECK(max_abs(generator(Axis::y) - oracle::wy()) == 0.0);
  CHECK(max_abs(generator(Axis::z) - oracle::wz()) == 0.0);
  const Vec3 n(0.3, -0.4, 0.5);
  const Vec3 v(1.0, 2.0, -0.7);
  CHECK((skew(n) * v - n.cross(v)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("axis-angle exponential examples") {
  const Vec3 z = Vec3::UnitZ();
  const Vec3 r = axis_angle_exp(Vec3::UnitY(), kPi / 2).apply(z);
  CHECK(r.x() == Approx(1.0));
  CHECK(std::abs(r.y()) < 1e-15);
  CHECK(std::abs(r.z()) < 1e-15);
  CHECK(max_abs(axis_angle_exp(Vec3::UnitX(), 0.0).matrix() - Mat3::Identity()) == 0.0);
  const Vec3 f = axis_angle_exp(Vec3::UnitX(), kPi).apply(z);
  CHECK(f.z() == Approx(-1.0));
  CHECK(std::abs(f.y()) < 1e-15);
}

TEST_CASE("non-unit axis is rejected") {
  CHECK_THROWS_AS(axis_angle_exp(Vec3(1.0, 1.0, 0.0), 0.3), PreconditionError);
  CHECK_THROWS_AS(axis_angle_exp(Vec3::Zero(), 0.3), PreconditionError);
  CHECK_NOTHROW(axis_angle_exp(Vec3(1.0 + 5e-10, 0.0, 0.0), 0.3));
}

TEST_CASE("Rodrigues agrees with a series exponential") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ang(-12.0, 12.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 n = oracle::random_unit(rng);
    const double a = ang(rng);
    const Mat3 ref = oracle::expm(a * (n.x() * oracle::wx() + n.y() * oracle::wy() + n.z() * oracle::wz()));
    CHECK(max_abs(axis_angle_exp(n, a).matrix() - ref) < 1e-12);
  }
}

TEST_CASE("compose follows time order") {
  const Rotation a = axis_exp(Axis::x, 0.4);
  const Rotation b = axis_exp(Axis::y, 1.1);
  const Rotation c = axis_exp(Axis::z, -0.7);
  const std::vector<Rotation> seq = {a, b, c};
  CHECK(max_abs(compose(seq).matrix() - c.matrix() * b.matrix() * a.matrix()) < 1e-15);
  const std::vector<Rotation> single = {b};
  CHECK(max_abs(compose(single).matrix() - b.matrix()) == 0.0);
  const std::vector<Rotation> pair = {b, b.inverse()};
  CHECK(max_abs(compose(pair).matrix() - Mat3::Identity()) < 1e-15);
  CHECK_THROWS_AS(compose(std::vector<Rotation>{}), PreconditionError);
}

TEST_CASE("element built from conjugated pulses equals the five-segment product") {
  // U1 = exp(-g Wx) exp(b/2 Wy) exp(g Wx), U2 = exp(g Wx) exp(b/2 Wy) exp(-g Wx).
  const double g = 49.3 * kDeg, hb = 4.5 * kDeg;
  const std::vector<Rotation> u1 = {axis_exp(Axis::x, g), axis_exp(Axis::y, hb),
                                    axis_exp(Axis::x, -g)};
  const std::vector<Rotation> u2 = {axis_exp(Axis::x, -g), axis_exp(Axis::y, hb),
                                    axis_exp(Axis::x, g)};
  const Rotation v = compose(u2) * compose(u1);
  const Mat3 ref = oracle::rf(g, 0, 1) * oracle::rf(hb, kPi / 2, 1) *
                   oracle::rf(2 * g, kPi, 1) * oracle::rf(hb, kPi / 2, 1) * oracle::rf(g, 0, 1);
  CHECK(max_abs(v.matrix() - ref) < 1e-12);
}

TEST_CASE("geodesic distance examples") {
  const Rotation r = axis_exp(Axis::z, 0.8);
  CHECK(geodesic_distance(r, r) < 1e-7);
  for (const double t : {0.0, 0.3, 1.2, 2.9, kPi}) {
    CHECK(geodesic_distance(Rotation::identity(), axis_exp(Axis::y, t)) == Approx(t));
  }
  // exp(pi Wx) exp(pi Wy) = diag(-1, -1, 1), a half turn about z.
  const Rotation h = axis_exp(Axis::x, kPi) * axis_exp(Axis::y, kPi);
  Mat3 expected = Mat3::Zero();
  expected.diagonal() << -1, -1, 1;
  CHECK(max_abs(h.matrix() - expected) < 1e-15);
  CHECK(geodesic_distance(Rotation::identity(), h) == Approx(kPi));
}

TEST_CASE("axis-angle decomposition and half-turn tie-break") {
  const AxisAngle id = Rotation::identity().axis_angle();
  CHECK(id.angle == 0.0);
  CHECK(id.axis == Vec3::UnitZ());
  const AxisAngle h = axis_angle_exp(Vec3(0.0, -0.6, 0.8), kPi).axis_angle();
  CHECK(h.angle == Approx(kPi));
  CHECK(h.axis.y() == Approx(0.6));
  CHECK(h.axis.z() == Approx(-0.8));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, kPi);
  for (int i = 0; i < 200; ++i) {
    const Vec3 n = oracle::random_unit(rng);
    const double a = ang(rng);
    const Rotation r = axis_angle_exp(n, a);
    CHECK(r.angle() == Approx(a).epsilon(1e-10));
    const Vec3 rv = rotation_vector(r);
    CHECK(max_abs(axis_angle_exp(rv.normalized(), rv.norm()).matrix() - r.matrix()) < 1e-10);
  }
}

TEST_CASE("from_matrix validates orthogonality") {
  CHECK_NOTHROW(Rotation::from_matrix(axis_exp(Axis::y, 0.3).matrix()));
  Mat3 m = Mat3::Identity();
  m(0, 0) = 1.01;
  CHECK_THROWS_AS(Rotation::from_matrix(m), PreconditionError);
  CHECK_THROWS_AS(Rotation::from_matrix(-Mat3::Identity()), PreconditionError);
}

TEST_CASE("random compositions stay in SO(3)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ang(-20.0, 20.0);
  Rotation acc;
  for (int i = 0; i < 5000; ++i) {
    acc = axis_angle_exp(oracle::random_unit(rng), ang(rng)) * acc;
  }
  CHECK(acc.orthogonality_defect() < 1e-12);
  CHECK(acc.matrix().determinant() == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geodesic distance is a metric on random samples") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  for (int i = 0; i < 200; ++i) {
    const Rotation a = axis_angle_exp(oracle::random_unit(rng), ang(rng));
    const Rotation b = axis_angle_exp(oracle::random_unit(rng), ang(rng));
    const Rotation c = axis_angle_exp(oracle::random_unit(rng), ang(rng));
    const double ab = geodesic_distance(a, b);
    CHECK(ab == Approx(geodesic_distance(b, a)).epsilon(1e-12));
    CHECK(ab >= 0.0);
    CHECK(ab <= kPi + 1e-12);
    CHECK(geodesic_distance(a, c) <= ab + geodesic_distance(b, c) + 1e-10);
    // Left invariance.
    CHECK(geodesic_distance(c * a, c * b) == Approx(ab).epsilon(1e-9));
  }
}
