#include "attikit/quaternion.hpp"

#include <sstream>

#include "attikit/errors.hpp"

namespace attikit {

bool is_finite(const Quaternion& q) {
  return std::isfinite(q.w) && std::isfinite(q.x) && std::isfinite(q.y) &&
         std::isfinite(q.z);
}

Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  if (!is_finite(a) || !is_finite(b)) {
    throw InvalidArgument("quat_mul: non-finite component");
  }
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.x * b.w + a.w * b.x + a.y * b.z - a.z * b.y,
          a.y * b.w + a.w * b.y + a.z * b.x - a.x * b.z,
          a.z * b.w + a.w * b.z + a.x * b.y - a.y * b.x};
}

Quaternion inverse(const Quaternion& q) {
  const double n = norm(q);
  if (!(n > kDegenerateNorm)) {
    throw SingularQuaternion("inverse: quaternion norm is zero or not finite");
  }
  return conjugate(q) / (n * n);
}

Mat4 product_matrix_left(const Quaternion& q) {
  Mat4 m{};
  m.data = {q.w, -q.x, -q.y, -q.z,  //
            q.x, q.w,  -q.z, q.y,   //
            q.y, q.z,  q.w,  -q.x,  //
            q.z, -q.y, q.x,  q.w};
  return m;
}

Mat4 product_matrix_right(const Quaternion& p) {
  Mat4 m{};
  m.data = {p.w, -p.x, -p.y, -p.z,  //
            p.x, p.w,  p.z,  -p.y,  //
            p.y, -p.z, p.w,  p.x,   //
            p.z, p.y,  -p.x, p.w};
  return m;
}

Quaternion operator*(const Mat4& m, const Quaternion& q) {
  const double in[4] = {q.w, q.x, q.y, q.z};
  double out[4];
  for (std::size_t r = 0; r < 4; ++r) {
    out[r] = m(r, 0) * in[0] + m(r, 1) * in[1] + m(r, 2) * in[2] + m(r, 3) * in[3];
  }
  return {out[0], out[1], out[2], out[3]};
}

double max_abs_diff(const Quaternion& a, const Quaternion& b) {
  return std::fmax(std::fmax(std::fabs(a.w - b.w), std::fabs(a.x - b.x)),
                   std::fmax(std::fabs(a.y - b.y), std::fabs(a.z - b.z)));
}

UnitQuaternion::UnitQuaternion(const Quaternion& q, double tolerance) : q_(q) {
  if (!is_finite(q)) throw InvalidArgument("unit quaternion: non-finite component");
  const double n = norm(q);
  if (std::fabs(n - 1.0) > tolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "unit quaternion: norm " << n << " is not within " << tolerance
        << " of 1";
    throw InvalidArgument(msg.str());
  }
}

UnitQuaternion UnitQuaternion::normalized(const Quaternion& q) {
  if (!is_finite(q)) throw InvalidArgument("normalized: non-finite component");
  const double n = norm(q);
  if (!(n > kDegenerateNorm)) {
    throw SingularQuaternion("normalized: quaternion norm is zero");
  }
  return UnitQuaternion(Tag{}, q / n);
}

UnitQuaternion compose(const UnitQuaternion& a, const UnitQuaternion& b) {
  return UnitQuaternion(quat_mul(a, b));
}

UnitQuaternion canonicalize(const UnitQuaternion& q) {
  if (q.w() > 0.0) return q;
  if (q.w() < 0.0) return -q;
  // Scalar part is +0 or -0; store +0 so both representatives match bitwise.
  for (const double c : {q.x(), q.y(), q.z()}) {
    if (c > 0.0) return UnitQuaternion(UnitQuaternion::Tag{}, {0.0, q.vec()});
    if (c < 0.0) return UnitQuaternion(UnitQuaternion::Tag{}, {0.0, -q.vec()});
  }
  return q;
}

}  // namespace attikit
