#include "rfcomp/so3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "rfcomp/error.hpp"

namespace rfcomp {

Mat3 generator(Axis axis) {
  return skew(unit(axis));
}

Vec3 unit(Axis axis) {
  switch (axis) {
    case Axis::x:
      return Vec3::UnitX();
    case Axis::y:
      return Vec3::UnitY();
    case Axis::z:
      return Vec3::UnitZ();
  }
  return Vec3::UnitZ();
}

Mat3 skew(const Vec3& n) {
  Mat3 k;
  k << 0.0, -n.z(), n.y(),
       n.z(), 0.0, -n.x(),
       -n.y(), n.x(), 0.0;
  return k;
}

namespace {

Mat3 rodrigues(const Vec3& n, double angle) {
  const Mat3 k = skew(n);
  return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

}  // namespace

Rotation Rotation::from_matrix(const Mat3& m, double tol) {
  Rotation r(m, Unchecked{});
  if (!(r.orthogonality_defect() <= tol)) {
    throw PreconditionError("matrix is not a proper rotation");
  }
  return r;
}

double Rotation::orthogonality_defect() const {
  const double orth = (m_.transpose() * m_ - Mat3::Identity()).cwiseAbs().maxCoeff();
  return std::max(orth, std::abs(m_.determinant() - 1.0));
}

double Rotation::angle() const {
  // acos of the trace loses precision near 0 and pi; atan2 of the
  // antisymmetric part against the trace is accurate across the range.
  const Vec3 w(m_(2, 1) - m_(1, 2), m_(0, 2) - m_(2, 0), m_(1, 0) - m_(0, 1));
  const double s = 0.5 * w.norm();
  const double c = 0.5 * (m_.trace() - 1.0);
  return std::atan2(s, c);
}

AxisAngle Rotation::axis_angle() const {
  const double a = angle();
  const Vec3 w(m_(2, 1) - m_(1, 2), m_(0, 2) - m_(2, 0), m_(1, 0) - m_(0, 1));
  if (a < 1e-12) {
    return {Vec3::UnitZ(), 0.0};
  }
  if (std::numbers::pi - a > 1e-6) {
    return {w.normalized(), a};
  }
  // Near pi the antisymmetric part vanishes; recover the axis from the
  // symmetric part (m + I) / 2 = n n^T + O(pi - a).
  const Mat3 b = 0.5 * (m_ + Mat3::Identity());
  Eigen::Index col = 0;
  b.diagonal().maxCoeff(&col);
  Vec3 n = b.col(col).normalized();
  // Orient by the residual antisymmetric part when it is informative.
  if (w.norm() > 1e-14 && n.dot(w) < 0.0) {
    n = -n;
  } else if (w.norm() <= 1e-14) {
    for (int i = 0; i < 3; ++i) {
      if (std::abs(n[i]) > 1e-12) {
        if (n[i] < 0.0) n = -n;
        break;
      }
    }
  }
  return {n, a};
}

Rotation axis_angle_exp(const Vec3& axis, double angle) {
  if (!(std::abs(axis.norm() - 1.0) <= 1e-9)) {
    throw PreconditionError("axis_angle_exp: axis is not a unit vector");
  }
  return Rotation(rodrigues(axis, angle), Rotation::Unchecked{});
}

Rotation axis_exp(Axis axis, double angle) {
  return Rotation(rodrigues(unit(axis), angle), Rotation::Unchecked{});
}

Rotation compose(std::span<const Rotation> time_ordered) {
  if (time_ordered.empty()) {
    throw PreconditionError("compose: empty rotation sequence");
  }
  Rotation out = time_ordered.front();
  for (const Rotation& r : time_ordered.subspan(1)) {
    out = r * out;
  }
  return out;
}

double geodesic_distance(const Rotation& a, const Rotation& b) {
  return (a.inverse() * b).angle();
}

Vec3 rotation_vector(const Rotation& r) {
  const AxisAngle aa = r.axis_angle();
  return aa.axis * aa.angle;
}

}  // namespace rfcomp
