#pragma once

#include <stdexcept>
#include <string>

namespace attikit {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite components, non-unit quaternion where a unit one is required.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Inverse or normalization of a quaternion with (near) zero norm.
class SingularQuaternion : public Error {
 public:
  using Error::Error;
};

class InvalidAxis : public Error {
 public:
  using Error::Error;
};

/// Matrix that is not orthonormal with determinant +1.
class InvalidRotation : public Error {
 public:
  using Error::Error;
};

/// Quaternion rate not orthogonal to its quaternion.
class InconsistentRate : public Error {
 public:
  using Error::Error;
};

/// Quaternion acceleration violating the unit-norm second-derivative identity.
class InconsistentTrajectory : public Error {
 public:
  using Error::Error;
};

/// The 321 Euler-rate map is singular at this pitch.
class GimbalLockSingularity : public Error {
 public:
  explicit GimbalLockSingularity(double cos_theta)
      : Error("euler rate matrix is singular: cos(theta) = " +
              std::to_string(cos_theta)),
        cos_theta_(cos_theta) {}

  double cos_theta() const noexcept { return cos_theta_; }

 private:
  double cos_theta_;
};

/// Non-positive step, gains, or other unusable simulation settings.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (numbers, CSV layout).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace attikit
