#include "attikit/error_dynamics.hpp"

namespace attikit {

ErrorQuaternion error_quaternion(const UnitQuaternion& desired, const UnitQuaternion& actual) {
  return {canonicalize(compose(conjugate(desired), actual))};
}

RotationMatrix error_matrix(const RotationMatrix& desired, const RotationMatrix& actual) {
  return desired.transpose() * actual;
}

QuatRate error_quaternion_rate(const ErrorQuaternion& qe, const BodyRates& w_body,
                               const BodyRates& w_desired_body) {
  return qdot_from_body_rates(qe.q, BodyRates::from(w_body.vec() - w_desired_body.vec()));
}

BodyRates desired_rate_frame_transform(const ErrorQuaternion& qe,
                                       const BodyRates& w_desired_in_desired) {
  return BodyRates::from(rotate_vector_inverse(qe.q, w_desired_in_desired.vec()));
}

BodyRates desired_rate_to_desired_frame(const ErrorQuaternion& qe,
                                        const BodyRates& w_desired_in_body) {
  return BodyRates::from(rotate_vector(qe.q, w_desired_in_body.vec()));
}

}  // namespace attikit
