#include <gtest/gtest.h>

#include "attikit/error_dynamics.hpp"
#include "attikit/errors.hpp"
#include "test_support.hpp"

using namespace attikit;
using attikit::testing::attitude_diff;
using attikit::testing::Sampler;

namespace {

Quaternion align(const Quaternion& q, const Quaternion& ref) { return dot(q, ref) < 0 ? -q : q; }

}  // namespace

TEST(ErrorQuaternion, ZeroErrorAndIdentityDesired) {
  Sampler s(201);
  for (int n = 0; n < 100; ++n) {
    const UnitQuaternion q = s.unit_quat();
    EXPECT_LE(max_abs_diff(error_quaternion(q, q).q, Quaternion{}), 1e-15);
    EXPECT_LE(max_abs_diff(error_quaternion(UnitQuaternion::identity(), q).q, canonicalize(q)), 0.0);
  }
}

TEST(ErrorQuaternion, RecomposesAndMapsBodyToDesired) {
  Sampler s(203);
  for (int n = 0; n < 10000; ++n) {
    const UnitQuaternion qd = s.unit_quat(), q = s.unit_quat();
    const ErrorQuaternion qe = error_quaternion(qd, q);
    EXPECT_GE(qe.q.w(), 0.0);
    ASSERT_LE(attitude_diff(quat_mul(qd, qe.q), q), 1e-12);
    const Vec3 v = s.vec();
    ASSERT_LE(max_abs_diff(rotate_vector(qd, rotate_vector(qe.q, v)), rotate_vector(q, v)), 1e-12);
  }
}

TEST(ErrorMatrix, ValuesAndConsistency) {
  Sampler s(207);
  for (int n = 0; n < 1000; ++n) {
    const UnitQuaternion qd = s.unit_quat(), q = s.unit_quat();
    const RotationMatrix rd = to_rotation_matrix(qd), r = to_rotation_matrix(q);
    EXPECT_LE(max_abs_diff(error_matrix(r, r).matrix(), Mat3::identity()), 1e-15);
    EXPECT_LE(max_abs_diff(error_matrix(RotationMatrix(), r).matrix(), r.matrix()), 0.0);
    const RotationMatrix re = error_matrix(rd, r);
    EXPECT_LE(max_abs_diff((rd * re).matrix(), r.matrix()), 1e-12);
    EXPECT_LE(max_abs_diff(to_rotation_matrix(error_quaternion(qd, q).q).matrix(), re.matrix()), 1e-12);
  }
}

TEST(ErrorRate, Values) {
  const ErrorQuaternion id{UnitQuaternion::identity()};
  EXPECT_EQ(error_quaternion_rate(id, {0, 0, 1}, {0, 0, 0}).value, (Quaternion{0, 0, 0, 0.5}));
  Sampler s(211);
  for (int n = 0; n < 100; ++n) {
    const ErrorQuaternion qe{canonicalize(s.unit_quat())};
    const BodyRates w = BodyRates::from(s.vec());
    EXPECT_EQ(norm(error_quaternion_rate(qe, w, w).value), 0.0);
  }
  // Stationary fixed point.
  EXPECT_EQ(norm(error_quaternion_rate(id, {}, {}).value), 0.0);
}

TEST(ErrorRate, IntermediateFormMatches) {
  Sampler s(213);
  for (int n = 0; n < 10000; ++n) {
    const ErrorQuaternion qe{canonicalize(s.unit_quat())};
    const Vec3 wb = s.vec(3.0), wd_desired = s.vec(3.0);
    const BodyRates wd_body = desired_rate_frame_transform(qe, BodyRates::from(wd_desired));
    const Quaternion intermediate =
        0.5 * (quat_mul(qe.q, PureQuaternion(wb)) - quat_mul(PureQuaternion(wd_desired), qe.q));
    ASSERT_LE(max_abs_diff(intermediate, error_quaternion_rate(qe, BodyRates::from(wb), wd_body).value), 1e-13);
  }
}

TEST(ErrorRate, MatchesFiniteDifferenceAlongCoupledTrajectories) {
  Sampler s(217);
  const double h = 1e-5;
  for (int n = 0; n < 200; ++n) {
    const auto actual = attikit::testing::random_trajectory(s);
    const auto desired = attikit::testing::random_trajectory(s);
    const double t = s.uniform(-1, 1);
    const ErrorQuaternion qe = error_quaternion(desired.q(t), actual.q(t));
    const BodyRates wd_body = desired_rate_frame_transform(qe, BodyRates::from(desired.body_rate(t)));
    const Quaternion rate = error_quaternion_rate(qe, BodyRates::from(actual.body_rate(t)), wd_body).value;

    const Quaternion ahead = align(error_quaternion(desired.q(t + h), actual.q(t + h)).q, qe.q);
    const Quaternion behind = align(error_quaternion(desired.q(t - h), actual.q(t - h)).q, qe.q);
    EXPECT_LE(max_abs_diff(rate, (ahead - behind) / (2 * h)), 1e-5);

    // Full chain q̄_d∘(q̇ - q̇_d∘q_e), with q_e on the sign branch that recomposes q.
    const Quaternion qe_branch = quat_mul(conjugate(desired.q(t).quaternion()), actual.q(t));
    const Quaternion chain = quat_mul(conjugate(desired.q(t).quaternion()),
                                      actual.qd(t) - quat_mul(desired.qd(t), qe_branch));
    const Quaternion rate_branch = dot(qe_branch, qe.q) < 0 ? -rate : rate;
    EXPECT_LE(max_abs_diff(rate_branch, chain), 1e-12);
  }
}

TEST(DesiredRateTransform, RoundTripAndNorm) {
  const ErrorQuaternion id{UnitQuaternion::identity()};
  EXPECT_EQ(desired_rate_frame_transform(id, {1, 2, 3}), (BodyRates{1, 2, 3}));
  Sampler s(219);
  for (int n = 0; n < 1000; ++n) {
    const ErrorQuaternion qe{canonicalize(s.unit_quat())};
    const Vec3 w = s.vec(4.0);
    const BodyRates body = desired_rate_frame_transform(qe, BodyRates::from(w));
    EXPECT_NEAR(norm(body.vec()), norm(w), 1e-13 * std::fmax(1.0, norm(w)));
    EXPECT_LE(max_abs_diff(desired_rate_to_desired_frame(qe, body).vec(), w), 1e-13);
  }
}
