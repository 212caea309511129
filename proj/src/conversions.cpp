#include "attikit/conversions.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "attikit/errors.hpp"

namespace attikit {

namespace {

constexpr double kAxisTolerance = 1e-9;

void require_unit_axis(const Vec3& axis) {
  if (!is_finite(axis) || std::fabs(norm(axis) - 1.0) > kAxisTolerance) {
    throw InvalidAxis("rotation axis must be a unit vector (normalize it first)");
  }
}

Vec3 sandwich(const Quaternion& left, const Vec3& v, const Quaternion& right) {
  return quat_mul(quat_mul(left, PureQuaternion(v)), right).vec();
}

}  // namespace

RotationMatrix trusted_rotation(const Mat3& m) { return RotationMatrix(RotationMatrix::Tag{}, m); }

double orthonormality_error(const Mat3& m) {
  const Mat3 gram = m.transpose() * m;
  return std::fmax(max_abs_diff(gram, Mat3::identity()),
                   std::fabs(determinant(m) - 1.0));
}

RotationMatrix::RotationMatrix(const Mat3& m, double tolerance) : m_(m) {
  for (const double v : m.data) {
    if (!std::isfinite(v)) throw InvalidRotation("rotation matrix: non-finite entry");
  }
  if (!(orthonormality_error(m) <= tolerance)) {
    throw InvalidRotation("matrix is not orthonormal with determinant +1");
  }
}

UnitQuaternion from_axis_angle(const AxisAngle& aa) {
  require_unit_axis(aa.axis);
  if (!std::isfinite(aa.angle)) throw InvalidArgument("from_axis_angle: non-finite angle");
  const double half = 0.5 * aa.angle;
  const double s = std::sin(half);
  return UnitQuaternion(Quaternion{std::cos(half), aa.axis.x * s, aa.axis.y * s, aa.axis.z * s});
}

AxisAngle to_axis_angle(const UnitQuaternion& q) {
  const UnitQuaternion c = canonicalize(q);
  const Vec3 v = c.vec();
  const double s = norm(v);
  if (s == 0.0) return {{1.0, 0.0, 0.0}, 0.0};
  return {v / s, 2.0 * std::atan2(s, c.w())};
}

Vec3 rotate_vector(const UnitQuaternion& q, const Vec3& v) {
  return sandwich(q, v, conjugate(q.quaternion()));
}

Vec3 rotate_vector_inverse(const UnitQuaternion& q, const Vec3& v) {
  return sandwich(conjugate(q.quaternion()), v, q);
}

Vec3 rodrigues_rotate(const AxisAngle& aa, const Vec3& v) {
  require_unit_axis(aa.axis);
  const Vec3& n = aa.axis;
  const double c = std::cos(aa.angle);
  const double s = std::sin(aa.angle);
  return (1.0 - c) * dot(n, v) * n + c * v + s * cross(n, v);
}

Vec3 rodrigues_rotate_inverse(const AxisAngle& aa, const Vec3& v) {
  require_unit_axis(aa.axis);
  const Vec3& n = aa.axis;
  const double c = std::cos(aa.angle);
  const double s = std::sin(aa.angle);
  return (1.0 - c) * dot(n, v) * n + c * v + s * cross(v, n);
}

RotationMatrix to_rotation_matrix(const UnitQuaternion& uq) {
  const Quaternion& q = uq;
  const double ww = q.w * q.w, xx = q.x * q.x, yy = q.y * q.y, zz = q.z * q.z;
  Mat3 m{};
  m.data = {ww + xx - yy - zz,         2.0 * (q.x * q.y - q.w * q.z), 2.0 * (q.w * q.y + q.x * q.z),
            2.0 * (q.x * q.y + q.w * q.z), ww - xx + yy - zz,         2.0 * (q.y * q.z - q.w * q.x),
            2.0 * (q.x * q.z - q.w * q.y), 2.0 * (q.w * q.x + q.y * q.z), ww - xx - yy + zz};
  return RotationMatrix(RotationMatrix::Tag{}, m);
}

UnitQuaternion from_rotation_matrix(const Mat3& m) {
  for (const double v : m.data) {
    if (!std::isfinite(v)) throw InvalidRotation("rotation matrix: non-finite entry");
  }
  if (!(orthonormality_error(m) <= kMatrixInputTolerance)) {
    throw InvalidRotation("matrix is not orthonormal with determinant +1");
  }
  // 4w² = 1 + tr, 4x² = 1 + m00 - m11 - m22, ... ; divide by the largest.
  const double tr = m(0, 0) + m(1, 1) + m(2, 2);
  const double cand[4] = {1.0 + tr, 1.0 + m(0, 0) - m(1, 1) - m(2, 2),
                          1.0 - m(0, 0) + m(1, 1) - m(2, 2), 1.0 - m(0, 0) - m(1, 1) + m(2, 2)};
  const auto pivot = static_cast<int>(std::max_element(cand, cand + 4) - cand);
  const double r = std::sqrt(cand[pivot]);
  const double f = 0.5 / r;
  Quaternion q;
  switch (pivot) {
    case 0:
      q = {0.5 * r, (m(2, 1) - m(1, 2)) * f, (m(0, 2) - m(2, 0)) * f, (m(1, 0) - m(0, 1)) * f};
      break;
    case 1:
      q = {(m(2, 1) - m(1, 2)) * f, 0.5 * r, (m(0, 1) + m(1, 0)) * f, (m(0, 2) + m(2, 0)) * f};
      break;
    case 2:
      q = {(m(0, 2) - m(2, 0)) * f, (m(0, 1) + m(1, 0)) * f, 0.5 * r, (m(1, 2) + m(2, 1)) * f};
      break;
    default:
      q = {(m(1, 0) - m(0, 1)) * f, (m(0, 2) + m(2, 0)) * f, (m(1, 2) + m(2, 1)) * f, 0.5 * r};
      break;
  }
  return canonicalize(UnitQuaternion::normalized(q));
}

RotationMatrix euler_xyz_to_matrix(const EulerAnglesXYZ& e) {
  const double cf = std::cos(e.phi), sf = std::sin(e.phi);
  const double ct = std::cos(e.theta), st = std::sin(e.theta);
  const double cp = std::cos(e.psi), sp = std::sin(e.psi);
  Mat3 m{};
  m.data = {ct * cp,                 -ct * sp,                st,
            cf * sp + sf * st * cp,  cf * cp - sf * st * sp,  -sf * ct,
            sf * sp - cf * st * cp,  sf * cp + cf * st * sp,  cf * ct};
  return trusted_rotation(m);
}

UnitQuaternion euler_xyz_to_quat(const EulerAnglesXYZ& e) {
  const double cf = std::cos(0.5 * e.phi), sf = std::sin(0.5 * e.phi);
  const double ct = std::cos(0.5 * e.theta), st = std::sin(0.5 * e.theta);
  const double cp = std::cos(0.5 * e.psi), sp = std::sin(0.5 * e.psi);
  return UnitQuaternion(Quaternion{cf * ct * cp - sf * st * sp,
                                   cf * st * sp + sf * ct * cp,
                                   cf * cp * st - sf * ct * sp,
                                   cf * ct * sp + cp * st * sf});
}

EulerExtraction quat_to_euler_xyz(const UnitQuaternion& uq) {
  const Quaternion& q = uq;
  const double ww = q.w * q.w, xx = q.x * q.x, yy = q.y * q.y, zz = q.z * q.z;
  const double sin_theta = std::clamp(2.0 * (q.w * q.y + q.x * q.z), -1.0, 1.0);
  EulerExtraction out;
  out.angles.theta = std::asin(sin_theta);
  if (std::numbers::pi / 2 - std::fabs(out.angles.theta) < kGimbalEpsilon) {
    // Only phi ± psi is observable; with psi = 0 the (1,0)/(1,1) entries give
    // sin/cos of ±phi.
    const double sign = sin_theta >= 0.0 ? 1.0 : -1.0;
    const double r10 = 2.0 * (q.x * q.y + q.w * q.z);
    const double r11 = ww - xx + yy - zz;
    out.angles.phi = std::atan2(sign * r10, r11);
    out.angles.psi = 0.0;
    out.degenerate = true;
    return out;
  }
  out.angles.phi = std::atan2(-2.0 * (q.y * q.z - q.w * q.x), ww - xx - yy + zz);
  out.angles.psi = std::atan2(-2.0 * (q.x * q.y - q.w * q.z), ww + xx - yy - zz);
  return out;
}

JplQuaternion hamilton_to_jpl(const UnitQuaternion& q) {
  // Same numbers, vector-first: the JPL product flips the cross-product sign,
  // which turns q ⊗ x ⊗ q* into the Hamilton q̄∘x∘q, i.e. Rᵀ(q).
  return {q.x(), q.y(), q.z(), q.w()};
}

UnitQuaternion jpl_to_hamilton(const JplQuaternion& q) {
  return canonicalize(UnitQuaternion(Quaternion{q.w, q.x, q.y, q.z}));
}

}  // namespace attikit
