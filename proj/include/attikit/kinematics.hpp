#pragma once

// Quaternion rates and accelerations, the E/G matrix forms, the rotation
// matrix derivative, and the 321 Euler-rate maps.

#include "attikit/conversions.hpp"
#include "attikit/linalg.hpp"
#include "attikit/quaternion.hpp"

namespace attikit {

/// |cos θ| at or below which the 321 Euler-rate inverse is refused.
inline constexpr double kSingularityThreshold = 1e-8;
/// Accepted |⟨q, q̇⟩| on rates handed to us (relative to max(1, |q̇|)).
inline constexpr double kRateOrthogonalityTolerance = 1e-6;

/// Angular velocity in the body frame [rad/s].
struct BodyRates {
  double p{0.0};
  double q{0.0};
  double r{0.0};

  constexpr Vec3 vec() const { return {p, q, r}; }
  static constexpr BodyRates from(const Vec3& v) { return {v.x, v.y, v.z}; }
  friend constexpr bool operator==(const BodyRates&, const BodyRates&) = default;
};

/// Angular velocity in the world frame [rad/s].
struct WorldRates {
  double x{0.0};
  double y{0.0};
  double z{0.0};

  constexpr Vec3 vec() const { return {x, y, z}; }
  static constexpr WorldRates from(const Vec3& v) { return {v.x, v.y, v.z}; }
  friend constexpr bool operator==(const WorldRates&, const WorldRates&) = default;
};

/// Roll phi, pitch theta, yaw psi of the 321 (yaw-pitch-roll) sequence.
/// Deliberately distinct from EulerAnglesXYZ.
struct EulerAngles321 {
  double phi{0.0};
  double theta{0.0};
  double psi{0.0};
};

struct EulerRates321 {
  double phi_dot{0.0};
  double theta_dot{0.0};
  double psi_dot{0.0};
};

/// Time derivative of a quaternion trajectory. Tag keeps rates [1/s] and
/// accelerations [1/s²] from being mixed up.
template <class Tag>
struct QuatDerivative {
  Quaternion value = Quaternion::zero();

  constexpr QuatDerivative() = default;
  constexpr explicit QuatDerivative(const Quaternion& q) : value(q) {}
  constexpr QuatDerivative(double w, double x, double y, double z) : value{w, x, y, z} {}
};

using QuatRate = QuatDerivative<struct QuatRateTag>;
using QuatAccel = QuatDerivative<struct QuatAccelTag>;

struct EGMatrices {
  Mat34 e;  ///< w = 2E q̇
  Mat34 g;  ///< w' = 2G q̇
};

/// q̇ = ½ q∘(0, w').
QuatRate qdot_from_body_rates(const UnitQuaternion& q, const BodyRates& w);

/// q̇ = ½ (0, w)∘q.
QuatRate qdot_from_world_rates(const UnitQuaternion& q, const WorldRates& w);

/// w' = 2 q̄∘q̇. Throws InconsistentRate if q̇ is not orthogonal to q.
BodyRates body_rates_from_qdot(const UnitQuaternion& q, const QuatRate& qd);

/// w = 2 q̇∘q̄. Throws InconsistentRate if q̇ is not orthogonal to q.
WorldRates world_rates_from_qdot(const UnitQuaternion& q, const QuatRate& qd);

EGMatrices eg_matrices(const Quaternion& q);

/// ẇ' = 2 G q̈. Validates the scalar identity scalar(2q̄∘q̈) = -2|q̇|²
/// (throws InconsistentTrajectory beyond 1e-6).
Vec3 body_accel_from_q(const UnitQuaternion& q, const QuatRate& qd, const QuatAccel& qdd);

/// World-frame angular acceleration R ẇ'. The transport term Ṙw' = R(w'×w')
/// vanishes, so this is exact.
Vec3 world_accel_from_q(const UnitQuaternion& q, const QuatRate& qd, const QuatAccel& qdd);

struct RotationRate {
  Mat3 r_dot;       ///< Ṙ = R Ω'
  Mat3 omega_body;  ///< Ω' = 2 G Ġᵀ, equal to skew(w')
};

RotationRate rotation_matrix_rate(const UnitQuaternion& q, const QuatRate& qd);

/// The matrix mapping 321 Euler rates to body rates; determinant cos θ.
Mat3 euler_rate_matrix_321(const EulerAngles321& e);

BodyRates body_rates_from_euler_321(const EulerAngles321& e, const EulerRates321& rates);

/// Inverse map. Throws GimbalLockSingularity when |cos θ| <= threshold.
EulerRates321 euler_rates_from_body_321(const EulerAngles321& e, const BodyRates& w,
                                        double threshold = kSingularityThreshold);

/// 1/|cos θ|, the growth factor of the inverse Euler-rate entries. Returns
/// +infinity when θ is ±π/2 to double resolution.
double euler_rate_conditioning(double theta);

}  // namespace attikit
