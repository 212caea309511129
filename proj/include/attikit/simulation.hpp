#pragma once

// Attitude propagation from angular-velocity profiles and the two
// representation pathologies: the 321 Euler-rate singularity (gimbal lock)
// and unwinding of a linear controller on the unwrapped angle.

#include <functional>
#include <iosfwd>
#include <limits>
#include <numbers>
#include <vector>

#include "attikit/kinematics.hpp"
#include "attikit/quaternion.hpp"

namespace attikit {

struct RateSample {
  double t{0.0};
  BodyRates w;
};

/// Body-rate history t -> w'(t) on [start, end].
class RateProfile {
 public:
  using Function = std::function<BodyRates(double)>;

  RateProfile(Function f, double start = 0.0,
              double end = std::numeric_limits<double>::infinity());

  static RateProfile constant(const BodyRates& w, double start = 0.0);

  /// Zero-order hold over strictly increasing sample times. The last sample is
  /// held indefinitely.
  static RateProfile from_samples(std::vector<RateSample> samples);

  /// CSV with header `t,p,q,r`, one sample per line, SI units.
  /// Throws ParseError on malformed text and InvalidConfig on unusable data.
  static RateProfile from_csv(std::istream& in);

  /// Throws InvalidArgument outside [start, end] or for non-finite output.
  BodyRates operator()(double t) const;

  double start() const { return start_; }
  double end() const { return end_; }

  /// Times after start() where a piecewise-constant profile changes value.
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool piecewise_constant() const { return piecewise_constant_; }

 private:
  Function f_;
  double start_;
  double end_;
  std::vector<double> breakpoints_;
  bool piecewise_constant_{false};
};

enum class Integrator { rk4, expmap };

struct AttitudeState {
  double t{0.0};
  UnitQuaternion q;
  BodyRates w_body;
};

/// One classical RK4 step of q̇ = ½ q∘w'(t), before renormalization. For a
/// piecewise-constant profile every stage uses the rate at t + h/2.
Quaternion rk4_step(const UnitQuaternion& q, const RateProfile& profile, double t, double h);

/// Exact step for a rate held at w'(t + h/2): q∘exp(w' h).
UnitQuaternion expmap_step(const UnitQuaternion& q, const RateProfile& profile, double t, double h);

/// States at t0 = profile.start(), t0 + dt, ..., t1 (last step shortened to
/// land on t1). Each state is renormalized.
std::vector<AttitudeState> propagate_quaternion(const UnitQuaternion& q0,
                                                const RateProfile& profile, double dt,
                                                double t1, Integrator method);

struct EulerSample {
  double t{0.0};
  EulerAngles321 angles;
  double conditioning{1.0};
  bool gimbal_lock{false};
};

struct EulerTrajectory {
  std::vector<EulerSample> samples;
  /// The run stopped at the Euler-rate singularity; the last sample is the
  /// flagged halt record.
  bool halted{false};
};

/// RK4 on the 321 Euler angles. A step that would reach or cross cos θ = 0 is
/// shortened by bisection until |cos θ| <= kSingularityThreshold, and that
/// state is emitted as a flagged halt record.
EulerTrajectory propagate_euler_321(const EulerAngles321& e0, const RateProfile& profile,
                                    double dt, double t1);

/// θ̈ + cθ̇ + kθ = 0 on the unwrapped angle, i.e. u = -kθ - cω.
struct UnwindingConfig {
  double theta0{2.0 * std::numbers::pi - 0.1};
  double omega0{0.0};
  double k{1.0};
  double c{2.0};
  double dt{1e-3};
  double t1{30.0};
};

struct PlanarState {
  double t{0.0};
  double theta{0.0};  ///< unwrapped, cumulative
  double omega{0.0};
};

struct UnwindingSummary {
  double final_theta{0.0};
  double final_omega{0.0};
  double path_length{0.0};  ///< ∫|ω| dt
  double short_way{0.0};    ///< min(θ0 mod 2π, 2π - θ0 mod 2π)
};

struct UnwindingResult {
  std::vector<PlanarState> states;
  UnwindingSummary summary;
};

double control_input(const UnwindingConfig& cfg, const PlanarState& s);

/// Throws InvalidConfig for non-positive k, c, dt or t1.
UnwindingResult simulate_unwinding(const UnwindingConfig& cfg);

}  // namespace attikit
