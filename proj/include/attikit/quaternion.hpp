#pragma once

// Hamilton quaternion algebra (ij = k), scalar-first storage.

#include <cmath>

#include "attikit/linalg.hpp"

namespace attikit {

/// Admission tolerance |norm - 1| for UnitQuaternion.
inline constexpr double kUnitTolerance = 1e-9;
/// Norms at or below this are treated as zero.
inline constexpr double kDegenerateNorm = 1e-12;

/// General quaternion w + xi + yj + zk. Used for intermediate arithmetic,
/// rates and accelerations; see UnitQuaternion for attitudes.
struct Quaternion {
  double w{1.0};
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Quaternion() = default;
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}
  constexpr Quaternion(double scalar, const Vec3& v)
      : w(scalar), x(v.x), y(v.y), z(v.z) {}

  static constexpr Quaternion zero() { return {0.0, 0.0, 0.0, 0.0}; }

  constexpr double scalar() const { return w; }
  constexpr Vec3 vec() const { return {x, y, z}; }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend constexpr Quaternion operator*(double s, const Quaternion& q) {
    return {s * q.w, s * q.x, s * q.y, s * q.z};
  }
  friend constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }
  friend constexpr Quaternion operator/(const Quaternion& q, double s) {
    return {q.w / s, q.x / s, q.y / s, q.z / s};
  }
};

/// Quaternion with identically zero scalar part; embeds a 3-vector.
class PureQuaternion {
 public:
  constexpr PureQuaternion() = default;
  constexpr explicit PureQuaternion(const Vec3& v) : v_(v) {}

  constexpr const Vec3& vec() const { return v_; }
  constexpr Quaternion quaternion() const { return {0.0, v_}; }
  constexpr operator Quaternion() const { return quaternion(); }

 private:
  Vec3 v_{};
};

bool is_finite(const Quaternion& q);

/// Hamilton product a∘b. Throws InvalidArgument on non-finite input.
Quaternion quat_mul(const Quaternion& a, const Quaternion& b);

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return quat_mul(a, b);
}

constexpr Quaternion conjugate(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double dot(const Quaternion& a, const Quaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline double norm(const Quaternion& q) { return std::sqrt(dot(q, q)); }

/// q̄/|q|², so that q∘q⁻¹ = 1. Throws SingularQuaternion when
/// |q| <= kDegenerateNorm.
Quaternion inverse(const Quaternion& q);

/// Q(q) with q∘p = Q(q)·p.
Mat4 product_matrix_left(const Quaternion& q);

/// Q̄(p) with q∘p = Q̄(p)·q.
Mat4 product_matrix_right(const Quaternion& p);

Quaternion operator*(const Mat4& m, const Quaternion& q);

double max_abs_diff(const Quaternion& a, const Quaternion& b);

/// Norm-1 quaternion representing an attitude (local-to-global).
///
/// The checked constructor rejects anything farther than the tolerance from
/// unit norm; normalized() is the explicit way to project onto S³.
class UnitQuaternion {
 public:
  /// Identity rotation.
  constexpr UnitQuaternion() = default;

  explicit UnitQuaternion(const Quaternion& q, double tolerance = kUnitTolerance);
  UnitQuaternion(double w, double x, double y, double z)
      : UnitQuaternion(Quaternion{w, x, y, z}) {}

  /// q/|q|. Throws SingularQuaternion for near-zero or InvalidArgument for
  /// non-finite input.
  static UnitQuaternion normalized(const Quaternion& q);

  static constexpr UnitQuaternion identity() { return {}; }

  constexpr const Quaternion& quaternion() const { return q_; }
  constexpr operator const Quaternion&() const { return q_; }

  constexpr double w() const { return q_.w; }
  constexpr double x() const { return q_.x; }
  constexpr double y() const { return q_.y; }
  constexpr double z() const { return q_.z; }
  constexpr Vec3 vec() const { return q_.vec(); }

  /// The antipodal representative; same rotation.
  UnitQuaternion operator-() const { return UnitQuaternion(Tag{}, -q_); }

  friend constexpr bool operator==(const UnitQuaternion&, const UnitQuaternion&) = default;

 private:
  struct Tag {};
  constexpr UnitQuaternion(Tag, const Quaternion& q) : q_(q) {}

  friend UnitQuaternion conjugate(const UnitQuaternion& q);
  friend UnitQuaternion canonicalize(const UnitQuaternion& q);

  Quaternion q_{};
};

inline UnitQuaternion conjugate(const UnitQuaternion& q) {
  return UnitQuaternion(UnitQuaternion::Tag{}, conjugate(q.quaternion()));
}

/// a∘b for attitudes. Composition of a local perturbation is compose(base, d),
/// of a global one compose(d, base).
UnitQuaternion compose(const UnitQuaternion& a, const UnitQuaternion& b);

/// Picks one of {q, -q}: positive scalar part, or, when the scalar part is
/// zero, positive first nonzero vector component.
UnitQuaternion canonicalize(const UnitQuaternion& q);

}  // namespace attikit
