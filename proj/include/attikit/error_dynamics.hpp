#pragma once

// Attitude error between a desired and an actual attitude.
//
// With q: body -> world and q_d: desired -> world, the error q_e = q_d⁻¹∘q
// maps body -> desired, so q = q_d∘q_e (up to the sign chosen by
// canonicalization).

#include "attikit/conversions.hpp"
#include "attikit/kinematics.hpp"
#include "attikit/quaternion.hpp"

namespace attikit {

/// Error attitude q_e, always canonical (scalar part >= 0). The sign choice
/// is discontinuous where the scalar part crosses zero.
struct ErrorQuaternion {
  UnitQuaternion q;
};

ErrorQuaternion error_quaternion(const UnitQuaternion& desired, const UnitQuaternion& actual);

/// R̃ = R_d⁻¹ R = R_dᵀ R.
RotationMatrix error_matrix(const RotationMatrix& desired, const RotationMatrix& actual);

/// q̇_e = ½ q_e∘(w^B - w_d^B), both rates expressed in the body frame.
QuatRate error_quaternion_rate(const ErrorQuaternion& qe, const BodyRates& w_body,
                               const BodyRates& w_desired_body);

/// Desired angular velocity given in the desired frame, re-expressed in the
/// body frame: w_d^B = q̄_e∘w_d^D∘q_e.
BodyRates desired_rate_frame_transform(const ErrorQuaternion& qe,
                                       const BodyRates& w_desired_in_desired);

/// The forward transport w_d^D = q_e∘w_d^B∘q̄_e.
BodyRates desired_rate_to_desired_frame(const ErrorQuaternion& qe,
                                        const BodyRates& w_desired_in_body);

}  // namespace attikit
