#pragma once

// Conversions among unit quaternions, rotation matrices, axis-angle and XYZ
// Euler angles, the Hamilton/JPL bridge, and the Rodrigues rotation formula.
//
// Direction convention: a UnitQuaternion q maps body (local) coordinates to
// world (global) coordinates, x_G = q∘x_L∘q̄, and to_rotation_matrix(q) is the
// matrix of that same map.

#include "attikit/linalg.hpp"
#include "attikit/quaternion.hpp"

namespace attikit {

/// Orthonormality tolerance for the RotationMatrix type.
inline constexpr double kRotationTolerance = 1e-9;
/// Looser tolerance accepted when converting an external matrix.
inline constexpr double kMatrixInputTolerance = 1e-6;
/// Distance from ±π/2 pitch within which Euler extraction is degenerate.
inline constexpr double kGimbalEpsilon = 1e-6;

/// 3x3 orthonormal matrix with det +1.
class RotationMatrix {
 public:
  RotationMatrix() : m_(Mat3::identity()) {}

  /// Throws InvalidRotation unless RᵀR = I and det R = 1 within `tolerance`.
  explicit RotationMatrix(const Mat3& m, double tolerance = kRotationTolerance);

  const Mat3& matrix() const { return m_; }
  double operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  RotationMatrix transpose() const { return RotationMatrix(Tag{}, m_.transpose()); }

  friend RotationMatrix operator*(const RotationMatrix& a, const RotationMatrix& b) {
    return RotationMatrix(Tag{}, a.m_ * b.m_);
  }
  friend Vec3 operator*(const RotationMatrix& r, const Vec3& v) { return r.m_ * v; }

 private:
  struct Tag {};
  RotationMatrix(Tag, const Mat3& m) : m_(m) {}

  friend RotationMatrix to_rotation_matrix(const UnitQuaternion& q);
  friend RotationMatrix trusted_rotation(const Mat3& m);

  Mat3 m_;
};

/// Largest entry of |RᵀR - I| and |det R - 1|, whichever is worse.
double orthonormality_error(const Mat3& m);

/// Rotation by `angle` radians about the unit vector `axis`.
struct AxisAngle {
  Vec3 axis{1.0, 0.0, 0.0};
  double angle{0.0};
};

/// Rotate about X by phi, then about the new Y by theta, then about the new Z
/// by psi. Radians.
struct EulerAnglesXYZ {
  double phi{0.0};
  double theta{0.0};
  double psi{0.0};
};

struct EulerExtraction {
  EulerAnglesXYZ angles;
  /// Pitch within kGimbalEpsilon of ±π/2; psi was set to 0 and the whole
  /// twist folded into phi.
  bool degenerate{false};
};

/// Vector-first JPL storage (x, y, z, w). Under JPL rules (ij = -k) it maps
/// global to local: x_L = q ⊗ x_G ⊗ q*.
struct JplQuaternion {
  double x{0.0};
  double y{0.0};
  double z{0.0};
  double w{1.0};

  friend constexpr bool operator==(const JplQuaternion&, const JplQuaternion&) = default;
};

/// (cos θ/2, n sin θ/2). Throws InvalidAxis if |n| is not 1 within 1e-9.
UnitQuaternion from_axis_angle(const AxisAngle& aa);
inline UnitQuaternion from_axis_angle(const Vec3& axis, double angle) {
  return from_axis_angle(AxisAngle{axis, angle});
}

/// Angle in [0, π] after canonicalization; identity yields axis (1,0,0).
AxisAngle to_axis_angle(const UnitQuaternion& q);

/// Local-to-global sandwich q∘(0,v)∘q̄.
Vec3 rotate_vector(const UnitQuaternion& q, const Vec3& v);

/// Global-to-local sandwich q̄∘(0,v)∘q.
Vec3 rotate_vector_inverse(const UnitQuaternion& q, const Vec3& v);

/// Rodrigues formula in the local-to-global direction:
/// (1 - cos θ)(n·v)n + cos θ v + sin θ (n × v).
Vec3 rodrigues_rotate(const AxisAngle& aa, const Vec3& v);

/// Rodrigues formula with the (v × n) term, i.e. the inverse direction; agrees
/// with rotate_vector_inverse.
Vec3 rodrigues_rotate_inverse(const AxisAngle& aa, const Vec3& v);

RotationMatrix to_rotation_matrix(const UnitQuaternion& q);

/// Largest-pivot (Shepperd) extraction. Accepts matrices orthonormal within
/// kMatrixInputTolerance; result is canonicalized.
UnitQuaternion from_rotation_matrix(const Mat3& m);
inline UnitQuaternion from_rotation_matrix(const RotationMatrix& r) {
  return from_rotation_matrix(r.matrix());
}

RotationMatrix euler_xyz_to_matrix(const EulerAnglesXYZ& e);
UnitQuaternion euler_xyz_to_quat(const EulerAnglesXYZ& e);
EulerExtraction quat_to_euler_xyz(const UnitQuaternion& q);

JplQuaternion hamilton_to_jpl(const UnitQuaternion& q);
/// Inverse of hamilton_to_jpl; result is canonicalized.
UnitQuaternion jpl_to_hamilton(const JplQuaternion& q);

}  // namespace attikit
