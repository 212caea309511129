#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "attikit/conversions.hpp"
#include "attikit/errors.hpp"
#include "attikit/kinematics.hpp"
#include "test_support.hpp"

using namespace attikit;
using attikit::testing::Sampler;
using std::numbers::pi;

namespace {

void expect_vec_near(const Vec3& a, const Vec3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

Mat3 rows(std::initializer_list<double> v) {
  Mat3 m{};
  std::copy(v.begin(), v.end(), m.data.begin());
  return m;
}

const UnitQuaternion kZ45 = from_axis_angle({0, 0, 1}, pi / 4);
const UnitQuaternion kX90 = from_axis_angle({1, 0, 0}, pi / 2);

}  // namespace

TEST(AxisAngle, ForwardValues) {
  const UnitQuaternion q = from_axis_angle({0, 0, 1}, pi / 2);
  EXPECT_NEAR(q.w(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(q.z(), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(from_axis_angle({1, 0, 0}, 0.0), UnitQuaternion::identity());
  const UnitQuaternion qa = compose(kZ45, kX90);
  EXPECT_NEAR(qa.w(), 0.6533, 5e-5);
  EXPECT_NEAR(qa.x(), 0.6533, 5e-5);
  EXPECT_NEAR(qa.y(), 0.2706, 5e-5);
  EXPECT_NEAR(qa.z(), 0.2706, 5e-5);
}

TEST(AxisAngle, NegatedAxisAndAngleAgree) {
  Sampler s(31);
  for (int n = 0; n < 1000; ++n) {
    const Vec3 axis = s.unit_vec();
    const double angle = s.uniform(-2 * pi, 2 * pi);
    EXPECT_LE(max_abs_diff(from_axis_angle(axis, angle), from_axis_angle(-axis, -angle)), 1e-15);
  }
}

TEST(AxisAngle, RejectsNonUnitAxis) {
  EXPECT_THROW(from_axis_angle({0, 0, 2}, 1.0), InvalidAxis);
  EXPECT_THROW(from_axis_angle({0, 0, 0}, 1.0), InvalidAxis);
  EXPECT_THROW(rodrigues_rotate({{1, 1, 0}, 1.0}, {1, 0, 0}), InvalidAxis);
}

TEST(AxisAngle, Extraction) {
  const AxisAngle a = to_axis_angle(UnitQuaternion::normalized({0.70711, 0, 0, 0.70711}));
  expect_vec_near(a.axis, {0, 0, 1}, 1e-12);
  EXPECT_NEAR(a.angle, pi / 2, 1e-5);

  const AxisAngle id = to_axis_angle(UnitQuaternion::identity());
  EXPECT_EQ(id.angle, 0.0);
  EXPECT_EQ(id.axis, (Vec3{1, 0, 0}));

  const UnitQuaternion neg = UnitQuaternion::normalized({-0.70711, 0, 0, -0.70711});
  const AxisAngle b = to_axis_angle(neg);
  expect_vec_near(b.axis, {0, 0, 1}, 1e-12);
  EXPECT_NEAR(b.angle, pi / 2, 1e-12);
  EXPECT_LE(max_abs_diff(from_axis_angle(b), canonicalize(neg)), 1e-12);
}

TEST(AxisAngle, RoundTripIsCanonical) {
  Sampler s(37);
  for (int n = 0; n < 10000; ++n) {
    const UnitQuaternion q = s.unit_quat();
    const AxisAngle aa = to_axis_angle(q);
    EXPECT_GE(aa.angle, 0.0);
    EXPECT_LE(aa.angle, pi);
    ASSERT_LE(max_abs_diff(from_axis_angle(aa), canonicalize(q)), 1e-12);
  }
  // Half-turn and tiny rotations.
  const UnitQuaternion half(0, 0, -1, 0);
  EXPECT_LE(max_abs_diff(from_axis_angle(to_axis_angle(half)), canonicalize(half)), 1e-15);
  const UnitQuaternion tiny = UnitQuaternion::normalized({1, 1e-10, -2e-10, 0});
  EXPECT_LE(max_abs_diff(from_axis_angle(to_axis_angle(tiny)), tiny), 1e-16);
}

TEST(RotateVector, CompositionFixtures) {
  const UnitQuaternion qa = compose(kZ45, kX90);
  const UnitQuaternion qb = compose(kX90, kZ45);
  expect_vec_near(rotate_vector(qa, {0, 0, 1}), {std::sqrt(0.5), -std::sqrt(0.5), 0}, 1e-12);
  expect_vec_near(rotate_vector(qb, {0, 0, 1}), {0, -1, 0}, 1e-12);
  expect_vec_near(rotate_vector_inverse(qa, {0.7071, -0.7071, 0}), {0, 0, 1}, 1e-4);
  EXPECT_EQ(rotate_vector(UnitQuaternion::identity(), {3, -4, 5}), (Vec3{3, -4, 5}));
  EXPECT_EQ(rotate_vector_inverse(UnitQuaternion::identity(), {3, -4, 5}), (Vec3{3, -4, 5}));
}

TEST(RotateVector, SandwichScalarVanishesAndNormIsPreserved) {
  Sampler s(41);
  for (int n = 0; n < 1000; ++n) {
    const UnitQuaternion q = s.unit_quat();
    const Vec3 v = s.vec(10.0);
    const Quaternion full = quat_mul(quat_mul(q, PureQuaternion(v)), conjugate(q.quaternion()));
    EXPECT_LE(std::fabs(full.w), 1e-12 * std::fmax(1.0, norm(v)));
    const Vec3 r = rotate_vector(q, v);
    EXPECT_NEAR(norm(r), norm(v), 1e-12 * norm(v));
    EXPECT_LE(max_abs_diff(rotate_vector_inverse(q, r), v), 1e-13 * std::fmax(1.0, norm(v)));
  }
}

TEST(Rodrigues, HandEvaluatedValues) {
  const AxisAngle z90{{0, 0, 1}, pi / 2};
  expect_vec_near(rodrigues_rotate(z90, {1, 0, 0}), {0, 1, 0}, 1e-15);
  expect_vec_near(rodrigues_rotate_inverse(z90, {1, 0, 0}), {0, -1, 0}, 1e-15);
  expect_vec_near(to_rotation_matrix(from_axis_angle(z90)) * Vec3{1, 0, 0}, {0, 1, 0}, 1e-15);
  EXPECT_EQ(rodrigues_rotate({{0, 1, 0}, 0.0}, {3, 4, 5}), (Vec3{3, 4, 5}));
}

TEST(RotationMatrix, Values) {
  EXPECT_LE(max_abs_diff(to_rotation_matrix(UnitQuaternion::identity()).matrix(), Mat3::identity()), 0.0);
  const RotationMatrix r = to_rotation_matrix(UnitQuaternion::normalized({0.70711, 0, 0, 0.70711}));
  EXPECT_LE(max_abs_diff(r.matrix(), rows({0, -1, 0, 1, 0, 0, 0, 0, 1})), 1e-5);
}

TEST(RotationMatrix, EqualsEGt) {
  Sampler s(43);
  for (int n = 0; n < 1000; ++n) {
    const UnitQuaternion q = s.unit_quat();
    const EGMatrices eg = eg_matrices(q);
    EXPECT_LE(max_abs_diff(to_rotation_matrix(q).matrix(), eg.e * eg.g.transpose()), 1e-14);
    EXPECT_EQ(to_rotation_matrix(q).matrix(), to_rotation_matrix(-q).matrix());
  }
}

TEST(RotationMatrix, TypeRejectsNonRotations) {
  EXPECT_THROW(RotationMatrix(rows({1, 0, 0, 0, 1, 0, 0, 0, -1})), InvalidRotation);
  EXPECT_THROW(RotationMatrix(rows({2, 0, 0, 0, 1, 0, 0, 0, 1})), InvalidRotation);
  EXPECT_NO_THROW(RotationMatrix(rows({0, -1, 0, 1, 0, 0, 0, 0, 1})));
}

TEST(FromRotationMatrix, Values) {
  EXPECT_EQ(from_rotation_matrix(Mat3::identity()), UnitQuaternion::identity());
  const UnitQuaternion half_x = from_rotation_matrix(rows({1, 0, 0, 0, -1, 0, 0, 0, -1}));
  EXPECT_LE(max_abs_diff(half_x, Quaternion{0, 1, 0, 0}), 1e-15);
  EXPECT_LE(max_abs_diff(to_rotation_matrix(half_x).matrix(), rows({1, 0, 0, 0, -1, 0, 0, 0, -1})), 1e-15);
}

TEST(FromRotationMatrix, RoundTripAllBranches) {
  Sampler s(47);
  for (int n = 0; n < 10000; ++n) {
    const UnitQuaternion q = s.unit_quat();
    const RotationMatrix r = to_rotation_matrix(q);
    const UnitQuaternion back = from_rotation_matrix(r);
    ASSERT_LE(max_abs_diff(back, canonicalize(q)), 1e-12);
    ASSERT_LE(max_abs_diff(to_rotation_matrix(back).matrix(), r.matrix()), 1e-9);
  }
  // Near-half-turns about each axis exercise the non-trace pivots.
  for (const Vec3 axis : {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {
    const UnitQuaternion q = from_axis_angle(axis, pi - 1e-9);
    EXPECT_LE(max_abs_diff(from_rotation_matrix(to_rotation_matrix(q)), canonicalize(q)), 1e-12);
  }
}

TEST(FromRotationMatrix, RejectsInvalid) {
  EXPECT_THROW(from_rotation_matrix(rows({1, 0, 0, 0, 1, 0, 0, 0, -1})), InvalidRotation);
  EXPECT_THROW(from_rotation_matrix(rows({1, 0.01, 0, 0, 1, 0, 0, 0, 1})), InvalidRotation);
  EXPECT_NO_THROW(from_rotation_matrix(rows({0, -1, 0, 1, 0, 0, 0, 0, 1.0000001})));
}

TEST(EulerXyz, MatrixValues) {
  EXPECT_LE(max_abs_diff(euler_xyz_to_matrix({0, 0, 0}).matrix(), Mat3::identity()), 0.0);
  EXPECT_LE(max_abs_diff(euler_xyz_to_matrix({pi / 2, 0, 0}).matrix(), rows({1, 0, 0, 0, 0, -1, 0, 1, 0})),
            1e-15);
}

TEST(EulerXyz, MatrixIsProductOfElementaryRotations) {
  Sampler s(53);
  for (int n = 0; n < 1000; ++n) {
    const EulerAnglesXYZ e{s.uniform(-pi, pi), s.uniform(-pi / 2, pi / 2), s.uniform(-pi, pi)};
    const double cf = std::cos(e.phi), sf = std::sin(e.phi), ct = std::cos(e.theta),
                 st = std::sin(e.theta), cp = std::cos(e.psi), sp = std::sin(e.psi);
    const Mat3 product = rows({1, 0, 0, 0, cf, -sf, 0, sf, cf}) * rows({ct, 0, st, 0, 1, 0, -st, 0, ct}) *
                         rows({cp, -sp, 0, sp, cp, 0, 0, 0, 1});
    EXPECT_LE(max_abs_diff(euler_xyz_to_matrix(e).matrix(), product), 1e-14);
  }
}

TEST(EulerXyz, QuaternionValuesAndComposition) {
  EXPECT_EQ(euler_xyz_to_quat({0, 0, 0}), UnitQuaternion::identity());
  const UnitQuaternion q = euler_xyz_to_quat({pi / 2, 0, 0});
  EXPECT_LE(max_abs_diff(q, Quaternion{std::sqrt(0.5), std::sqrt(0.5), 0, 0}), 1e-15);
  Sampler s(59);
  for (int n = 0; n < 1000; ++n) {
    const EulerAnglesXYZ e{s.uniform(-pi, pi), s.uniform(-pi / 2, pi / 2), s.uniform(-pi, pi)};
    const Quaternion chained =
        quat_mul(quat_mul(from_axis_angle({1, 0, 0}, e.phi), from_axis_angle({0, 1, 0}, e.theta)),
                 from_axis_angle({0, 0, 1}, e.psi));
    EXPECT_LE(max_abs_diff(euler_xyz_to_quat(e), chained), 1e-14);
    EXPECT_LE(max_abs_diff(to_rotation_matrix(euler_xyz_to_quat(e)).matrix(), euler_xyz_to_matrix(e).matrix()),
              1e-12);
  }
}

TEST(EulerXyz, Extraction) {
  const EulerExtraction id = quat_to_euler_xyz(UnitQuaternion::identity());
  EXPECT_EQ(id.angles.phi, 0.0);
  EXPECT_EQ(id.angles.theta, 0.0);
  EXPECT_EQ(id.angles.psi, 0.0);
  EXPECT_FALSE(id.degenerate);
  const EulerExtraction roll = quat_to_euler_xyz(UnitQuaternion::normalized({0.70711, 0.70711, 0, 0}));
  EXPECT_NEAR(roll.angles.phi, pi / 2, 1e-12);
  EXPECT_NEAR(roll.angles.theta, 0.0, 1e-12);
  EXPECT_NEAR(roll.angles.psi, 0.0, 1e-12);
}

TEST(EulerXyz, ExtractionRoundTripAwayFromLock) {
  Sampler s(61);
  for (int n = 0; n < 10000; ++n) {
    const EulerAnglesXYZ e{s.uniform(-pi, pi), s.uniform(-1.4, 1.4), s.uniform(-pi, pi)};
    const EulerExtraction x = quat_to_euler_xyz(euler_xyz_to_quat(e));
    ASSERT_FALSE(x.degenerate);
    EXPECT_NEAR(x.angles.phi, e.phi, 1e-9);
    EXPECT_NEAR(x.angles.theta, e.theta, 1e-9);
    EXPECT_NEAR(x.angles.psi, e.psi, 1e-9);
  }
}

TEST(EulerXyz, GimbalLockIsFlaggedAndReproducesRotation) {
  Sampler s(67);
  for (int n = 0; n < 1000; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const EulerAnglesXYZ e{s.uniform(-pi, pi), sign * (pi / 2 - s.uniform(0, 5e-7)), s.uniform(-pi, pi)};
    const UnitQuaternion q = euler_xyz_to_quat(e);
    const EulerExtraction x = quat_to_euler_xyz(q);
    ASSERT_TRUE(x.degenerate);
    EXPECT_EQ(x.angles.psi, 0.0);
    EXPECT_LE(max_abs_diff(to_rotation_matrix(euler_xyz_to_quat(x.angles)).matrix(),
                           to_rotation_matrix(q).matrix()),
              1e-6);
  }
}

TEST(EulerXyz, ClampsDriftedSine) {
  // sin θ slightly above one must not produce NaN.
  const UnitQuaternion q(Quaternion{std::sqrt(0.5) + 3e-10, 0, std::sqrt(0.5) + 3e-10, 0});
  const EulerExtraction x = quat_to_euler_xyz(q);
  EXPECT_TRUE(x.degenerate);
  EXPECT_EQ(x.angles.theta, pi / 2);
}

TEST(Jpl, IdentityAndRoundTrip) {
  EXPECT_EQ(hamilton_to_jpl(UnitQuaternion::identity()), (JplQuaternion{0, 0, 0, 1}));
  Sampler s(71);
  for (int n = 0; n < 1000; ++n) {
    const UnitQuaternion q = s.unit_quat();
    EXPECT_LE(max_abs_diff(jpl_to_hamilton(hamilton_to_jpl(q)), canonicalize(q)), 1e-14);
  }
}

TEST(Jpl, GlobalToLocalMatrixIsTransposeOfHamilton) {
  Sampler s(73);
  std::vector<UnitQuaternion> qs{UnitQuaternion::normalized({0.70711, 0, 0, 0.70711})};
  for (int n = 0; n < 1000; ++n) qs.push_back(s.unit_quat());
  for (const UnitQuaternion& q : qs) {
    const JplQuaternion j = hamilton_to_jpl(q);
    const Quaternion jq{j.w, j.x, j.y, j.z};
    Mat3 global_to_local{};
    for (std::size_t c = 0; c < 3; ++c) {
      Vec3 e{};
      if (c == 0) e.x = 1;
      if (c == 1) e.y = 1;
      if (c == 2) e.z = 1;
      const Vec3 col =
          attikit::testing::jpl_product(attikit::testing::jpl_product(jq, {0, e}), conjugate(jq)).vec();
      global_to_local(0, c) = col.x;
      global_to_local(1, c) = col.y;
      global_to_local(2, c) = col.z;
    }
    EXPECT_LE(max_abs_diff(global_to_local, to_rotation_matrix(q).matrix().transpose()), 1e-14);
  }
}
