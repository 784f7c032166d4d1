#pragma once

// Rotation algebra on SO(3).
//
// Generators follow the right-handed convention
//
//        [0 0  0]        [ 0 0 1]        [0 -1 0]
//   Wx = [0 0 -1]   Wy = [ 0 0 0]   Wz = [1  0 0]
//        [0 1  0]        [-1 0 0]        [0  0 0]
//
// so exp(a Wy) takes (0,0,1) to (sin a, 0, cos a). All exponentials are
// evaluated with the closed-form Rodrigues formula.

#include <span>

#include <Eigen/Core>
#include <Eigen/LU>

namespace rfcomp {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

enum class Axis { x, y, z };

/// The antisymmetric generator of rotations about `axis`.
Mat3 generator(Axis axis);

/// Unit vector along `axis`.
Vec3 unit(Axis axis);

/// Skew matrix K with K v = n x v, i.e. n . (Wx, Wy, Wz).
Mat3 skew(const Vec3& n);

struct AxisAngle {
  Vec3 axis;     // unit
  double angle;  // radians, in [0, pi]
};

/// Proper rotation matrix. Construction from an arbitrary matrix is checked.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  /// Throws PreconditionError unless m^T m = I and det m = 1 within `tol`.
  static Rotation from_matrix(const Mat3& m, double tol = 1e-9);

  static Rotation identity() { return Rotation(); }

  const Mat3& matrix() const noexcept { return m_; }

  Vec3 apply(const Vec3& v) const { return m_ * v; }

  /// Matrix product: (a * b) applies b first, then a.
  Rotation operator*(const Rotation& rhs) const { return Rotation(m_ * rhs.m_, Unchecked{}); }

  Rotation inverse() const { return Rotation(m_.transpose(), Unchecked{}); }

  /// Rotation angle in [0, pi].
  double angle() const;

  /// Axis-angle decomposition. At angle 0 the axis is reported as +z. At
  /// angle pi the axis sign is chosen so its first nonzero component is positive.
  AxisAngle axis_angle() const;

  /// Largest deviation of m^T m from I and of det m from 1.
  double orthogonality_defect() const;

 private:
  struct Unchecked {};
  Rotation(const Mat3& m, Unchecked) : m_(m) {}

  friend Rotation axis_angle_exp(const Vec3& axis, double angle);
  friend Rotation axis_exp(Axis axis, double angle);

  Mat3 m_;
};

/// exp(angle * (axis . W)). Throws PreconditionError if |axis| differs from 1 by more than 1e-9.
Rotation axis_angle_exp(const Vec3& axis, double angle);

/// exp(angle * W_axis).
Rotation axis_exp(Axis axis, double angle);

/// Compose rotations listed in time order: the first element acts first, so
/// the result is seq[n-1] * ... * seq[0]. Throws PreconditionError when empty.
Rotation compose(std::span<const Rotation> time_ordered);

/// Angle of a^T b, in [0, pi].
double geodesic_distance(const Rotation& a, const Rotation& b);

/// Rotation vector (axis * angle) of r, the inverse of axis_angle_exp.
Vec3 rotation_vector(const Rotation& r);

}  // namespace rfcomp
