#include "attikit/kinematics.hpp"

#include <limits>

#include "attikit/errors.hpp"

namespace attikit {

namespace {

constexpr double kAccelIdentityTolerance = 1e-6;

void require_finite(const Vec3& v, const char* what) {
  if (!is_finite(v)) throw InvalidArgument(std::string(what) + ": non-finite angular rate");
}

void require_orthogonal(const UnitQuaternion& q, const Quaternion& qd) {
  if (!is_finite(qd)) throw InvalidArgument("quaternion rate: non-finite component");
  const double scale = std::fmax(1.0, norm(qd));
  if (std::fabs(dot(q.quaternion(), qd)) > kRateOrthogonalityTolerance * scale) {
    throw InconsistentRate("quaternion rate is not orthogonal to its quaternion");
  }
}

Mat34 e_matrix(const Quaternion& q) {
  Mat34 m{};
  m.data = {-q.x, q.w,  -q.z, q.y,   //
            -q.y, q.z,  q.w,  -q.x,  //
            -q.z, -q.y, q.x,  q.w};
  return m;
}

Mat34 g_matrix(const Quaternion& q) {
  Mat34 m{};
  m.data = {-q.x, q.w,  q.z,  -q.y,  //
            -q.y, -q.z, q.w,  q.x,   //
            -q.z, q.y,  -q.x, q.w};
  return m;
}

Vec3 apply(const Mat34& m, const Quaternion& q) {
  const double v[4] = {q.w, q.x, q.y, q.z};
  double out[3];
  for (std::size_t r = 0; r < 3; ++r) {
    out[r] = m(r, 0) * v[0] + m(r, 1) * v[1] + m(r, 2) * v[2] + m(r, 3) * v[3];
  }
  return {out[0], out[1], out[2]};
}

}  // namespace

QuatRate qdot_from_body_rates(const UnitQuaternion& q, const BodyRates& w) {
  require_finite(w.vec(), "qdot_from_body_rates");
  return QuatRate(0.5 * quat_mul(q, PureQuaternion(w.vec())));
}

QuatRate qdot_from_world_rates(const UnitQuaternion& q, const WorldRates& w) {
  require_finite(w.vec(), "qdot_from_world_rates");
  return QuatRate(0.5 * quat_mul(PureQuaternion(w.vec()), q));
}

BodyRates body_rates_from_qdot(const UnitQuaternion& q, const QuatRate& qd) {
  require_orthogonal(q, qd.value);
  return BodyRates::from(2.0 * quat_mul(conjugate(q.quaternion()), qd.value).vec());
}

WorldRates world_rates_from_qdot(const UnitQuaternion& q, const QuatRate& qd) {
  require_orthogonal(q, qd.value);
  return WorldRates::from(2.0 * quat_mul(qd.value, conjugate(q.quaternion())).vec());
}

EGMatrices eg_matrices(const Quaternion& q) { return {e_matrix(q), g_matrix(q)}; }

Vec3 body_accel_from_q(const UnitQuaternion& q, const QuatRate& qd, const QuatAccel& qdd) {
  require_orthogonal(q, qd.value);
  if (!is_finite(qdd.value)) throw InvalidArgument("quaternion acceleration: non-finite component");
  // d/dt(2q̄∘q̇) = 2q̄∘q̈ + 2(|q̇|², 0) must stay pure.
  const double qd_sq = dot(qd.value, qd.value);
  const double scalar = 2.0 * dot(q.quaternion(), qdd.value);
  const double scale = std::fmax(1.0, std::fmax(norm(qdd.value), qd_sq));
  if (std::fabs(scalar + 2.0 * qd_sq) > kAccelIdentityTolerance * scale) {
    throw InconsistentTrajectory(
        "quaternion acceleration is inconsistent with a unit-norm trajectory");
  }
  return 2.0 * apply(g_matrix(q), qdd.value);
}

Vec3 world_accel_from_q(const UnitQuaternion& q, const QuatRate& qd, const QuatAccel& qdd) {
  return to_rotation_matrix(q) * body_accel_from_q(q, qd, qdd);
}

RotationRate rotation_matrix_rate(const UnitQuaternion& q, const QuatRate& qd) {
  require_orthogonal(q, qd.value);
  const Mat3 omega = 2.0 * (g_matrix(q) * g_matrix(qd.value).transpose());
  return {to_rotation_matrix(q).matrix() * omega, omega};
}

Mat3 euler_rate_matrix_321(const EulerAngles321& e) {
  const double cf = std::cos(e.phi), sf = std::sin(e.phi);
  const double ct = std::cos(e.theta), st = std::sin(e.theta);
  Mat3 m{};
  m.data = {1.0, 0.0, -st,      //
            0.0, cf,  sf * ct,  //
            0.0, -sf, cf * ct};
  return m;
}

BodyRates body_rates_from_euler_321(const EulerAngles321& e, const EulerRates321& rates) {
  return BodyRates::from(euler_rate_matrix_321(e) * Vec3{rates.phi_dot, rates.theta_dot, rates.psi_dot});
}

EulerRates321 euler_rates_from_body_321(const EulerAngles321& e, const BodyRates& w,
                                        double threshold) {
  const double ct = std::cos(e.theta);
  if (!(std::fabs(ct) > threshold)) throw GimbalLockSingularity(ct);
  const double cf = std::cos(e.phi), sf = std::sin(e.phi);
  const double tt = std::sin(e.theta) / ct;
  const double sec = 1.0 / ct;
  return {w.p + sf * tt * w.q + cf * tt * w.r,  //
          cf * w.q - sf * w.r,                 //
          sf * sec * w.q + cf * sec * w.r};
}

double euler_rate_conditioning(double theta) {
  const double c = std::fabs(std::cos(theta));
  if (c <= std::numeric_limits<double>::epsilon()) return std::numeric_limits<double>::infinity();
  return 1.0 / c;
}

}  // namespace attikit
