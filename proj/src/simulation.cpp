#include "attikit/simulation.hpp"

#include <algorithm>
#include <istream>
#include <optional>
#include <string>

#include "attikit/conversions.hpp"
#include "attikit/errors.hpp"
#include "attikit/text.hpp"

namespace attikit {

namespace {

void require_step(double dt, double t0, double t1) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidConfig("time step must be positive");
  if (!(t1 > t0) || !std::isfinite(t1)) throw InvalidConfig("end time must be after start time");
}

/// Number of steps covering [t0, t1] with the last one possibly shortened.
std::size_t step_count(double t0, double t1, double dt) {
  const double ratio = (t1 - t0) / dt;
  const double nearest = std::round(ratio);
  if (std::fabs(ratio - nearest) <= 1e-9 * std::fmax(1.0, ratio)) {
    return static_cast<std::size_t>(std::max(1.0, nearest));
  }
  return static_cast<std::size_t>(std::ceil(ratio));
}

double step_time(double t0, double t1, double dt, std::size_t k, std::size_t n) {
  return k == n ? t1 : t0 + static_cast<double>(k) * dt;
}

/// Breakpoints closer than this to a grid time do not split the step.
constexpr double kBreakpointSlack = 1e-12;

Quaternion body_derivative(const Quaternion& q, const BodyRates& w) {
  return 0.5 * quat_mul(q, PureQuaternion(w.vec()));
}

}  // namespace

RateProfile::RateProfile(Function f, double start, double end)
    : f_(std::move(f)), start_(start), end_(end) {
  if (!f_) throw InvalidConfig("rate profile: empty function");
  if (!std::isfinite(start_) || !(end_ >= start_)) {
    throw InvalidConfig("rate profile: invalid time interval");
  }
}

RateProfile RateProfile::constant(const BodyRates& w, double start) {
  if (!is_finite(w.vec())) throw InvalidConfig("rate profile: non-finite rate");
  RateProfile p([w](double) { return w; }, start);
  p.piecewise_constant_ = true;
  return p;
}

RateProfile RateProfile::from_samples(std::vector<RateSample> samples) {
  if (samples.empty()) throw InvalidConfig("rate profile: no samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].t) || !is_finite(samples[i].w.vec())) {
      throw InvalidConfig("rate profile: non-finite sample");
    }
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
      throw InvalidConfig("rate profile: sample times must be strictly increasing");
    }
  }
  const double start = samples.front().t;
  std::vector<double> breaks;
  for (std::size_t i = 1; i < samples.size(); ++i) breaks.push_back(samples[i].t);
  auto hold = [s = std::move(samples)](double t) {
    const auto it = std::upper_bound(s.begin(), s.end(), t,
                                     [](double v, const RateSample& r) { return v < r.t; });
    return std::prev(it)->w;
  };
  RateProfile p(std::move(hold), start);
  p.breakpoints_ = std::move(breaks);
  p.piecewise_constant_ = true;
  return p;
}

RateProfile RateProfile::from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("rate profile: empty input");
  const auto header = text::split(text::trim(line), ',');
  const char* expected[] = {"t", "p", "q", "r"};
  bool ok = header.size() == 4;
  for (std::size_t i = 0; ok && i < 4; ++i) ok = text::trim(header[i]) == expected[i];
  if (!ok) throw ParseError("rate profile: header must be 't,p,q,r'");

  std::vector<RateSample> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    try {
      const auto v = text::parse_list(line, 4);
      samples.push_back({v[0], {v[1], v[2], v[3]}});
    } catch (const ParseError& e) {
      throw ParseError("rate profile line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return from_samples(std::move(samples));
}

BodyRates RateProfile::operator()(double t) const {
  // Allow the last step to land a hair past the end through rounding.
  if (!(t >= start_ - 1e-12) || !(t <= end_ + 1e-12)) {
    throw InvalidArgument("rate profile evaluated outside its interval");
  }
  const BodyRates w = f_(t);
  if (!is_finite(w.vec())) throw InvalidArgument("rate profile produced a non-finite rate");
  return w;
}

Quaternion rk4_step(const UnitQuaternion& uq, const RateProfile& profile, double t, double h) {
  const Quaternion& q = uq;
  const BodyRates wm = profile(t + 0.5 * h);
  const BodyRates w0 = profile.piecewise_constant() ? wm : profile(t);
  const BodyRates w1 = profile.piecewise_constant() ? wm : profile(t + h);
  const Quaternion k1 = body_derivative(q, w0);
  const Quaternion k2 = body_derivative(q + (0.5 * h) * k1, wm);
  const Quaternion k3 = body_derivative(q + (0.5 * h) * k2, wm);
  const Quaternion k4 = body_derivative(q + h * k3, w1);
  return q + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

UnitQuaternion expmap_step(const UnitQuaternion& q, const RateProfile& profile, double t,
                           double h) {
  const Vec3 w = profile(t + 0.5 * h).vec();
  const double rate = norm(w);
  if (rate == 0.0) return q;
  const UnitQuaternion delta = from_axis_angle(AxisAngle{w / rate, rate * h});
  return UnitQuaternion::normalized(quat_mul(q, delta));
}

std::vector<AttitudeState> propagate_quaternion(const UnitQuaternion& q0,
                                                const RateProfile& profile, double dt,
                                                double t1, Integrator method) {
  const double t0 = profile.start();
  require_step(dt, t0, t1);
  const std::size_t n = step_count(t0, t1, dt);

  std::vector<AttitudeState> states;
  states.reserve(n + 1);
  states.push_back({t0, q0, profile(t0)});
  UnitQuaternion q = q0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = step_time(t0, t1, dt, k, n);
    const double t_next = step_time(t0, t1, dt, k + 1, n);
    // Sub-steps between the breakpoints inside (t, t_next).
    const auto& breaks = profile.breakpoints();
    auto it = std::upper_bound(breaks.begin(), breaks.end(), t + kBreakpointSlack);
    double a = t;
    while (a < t_next) {
      double b = t_next;
      if (it != breaks.end() && *it < t_next - kBreakpointSlack) b = *it++;
      q = method == Integrator::rk4 ? UnitQuaternion::normalized(rk4_step(q, profile, a, b - a))
                                    : expmap_step(q, profile, a, b - a);
      a = b;
    }
    states.push_back({t_next, q, profile(t_next)});
  }
  return states;
}

namespace {

EulerAngles321 add_scaled(const EulerAngles321& e, double h, const EulerRates321& r) {
  return {e.phi + h * r.phi_dot, e.theta + h * r.theta_dot, e.psi + h * r.psi_dot};
}

/// Intermediate RK4 stages may pass closer to the singular surface than the
/// halt threshold; only step endpoints are held to kSingularityThreshold.
constexpr double kStageThreshold = 1e-14;

/// One RK4 step, or nullopt if a stage hits the singularity or the step
/// crosses it.
std::optional<EulerAngles321> euler_step(const EulerAngles321& e, const RateProfile& profile,
                                         double t, double h) {
  try {
    const auto f = [&](const EulerAngles321& x, double tt) {
      return euler_rates_from_body_321(x, profile(tt), kStageThreshold);
    };
    const EulerRates321 k1 = f(e, t);
    const EulerRates321 k2 = f(add_scaled(e, 0.5 * h, k1), t + 0.5 * h);
    const EulerRates321 k3 = f(add_scaled(e, 0.5 * h, k2), t + 0.5 * h);
    const EulerRates321 k4 = f(add_scaled(e, h, k3), t + h);
    const EulerAngles321 next{
        e.phi + h / 6.0 * (k1.phi_dot + 2.0 * k2.phi_dot + 2.0 * k3.phi_dot + k4.phi_dot),
        e.theta + h / 6.0 * (k1.theta_dot + 2.0 * k2.theta_dot + 2.0 * k3.theta_dot + k4.theta_dot),
        e.psi + h / 6.0 * (k1.psi_dot + 2.0 * k2.psi_dot + 2.0 * k3.psi_dot + k4.psi_dot)};
    if (!std::isfinite(next.phi) || !std::isfinite(next.theta) || !std::isfinite(next.psi)) {
      return std::nullopt;
    }
    const double c0 = std::cos(e.theta);
    const double c1 = std::cos(next.theta);
    if ((c0 > 0.0) != (c1 > 0.0)) return std::nullopt;
    return next;
  } catch (const GimbalLockSingularity&) {
    return std::nullopt;
  }
}

bool near_singular(const EulerAngles321& e) {
  return std::fabs(std::cos(e.theta)) <= kSingularityThreshold;
}

EulerSample euler_sample(double t, const EulerAngles321& e, bool flagged) {
  return {t, e, euler_rate_conditioning(e.theta), flagged};
}

}  // namespace

EulerTrajectory propagate_euler_321(const EulerAngles321& e0, const RateProfile& profile,
                                    double dt, double t1) {
  const double t0 = profile.start();
  require_step(dt, t0, t1);
  if (!std::isfinite(e0.phi) || !std::isfinite(e0.theta) || !std::isfinite(e0.psi)) {
    throw InvalidArgument("propagate_euler_321: non-finite initial angles");
  }
  const std::size_t n = step_count(t0, t1, dt);

  EulerTrajectory out;
  if (near_singular(e0)) {
    out.samples.push_back(euler_sample(t0, e0, true));
    out.halted = true;
    return out;
  }
  out.samples.push_back(euler_sample(t0, e0, false));

  EulerAngles321 e = e0;
  for (std::size_t k = 0; k < n; ++k) {
    const double t = step_time(t0, t1, dt, k, n);
    const double h = step_time(t0, t1, dt, k + 1, n) - t;
    const auto next = euler_step(e, profile, t, h);
    if (next && !near_singular(*next)) {
      e = *next;
      out.samples.push_back(euler_sample(t + h, e, false));
      continue;
    }
    out.halted = true;
    if (next) {
      out.samples.push_back(euler_sample(t + h, *next, true));
      return out;
    }
    // Shrink the step onto the singular surface.
    double lo = 0.0;
    double hi = h;
    EulerAngles321 e_lo = e;
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const auto trial = euler_step(e, profile, t, mid);
      if (!trial) {
        hi = mid;
        continue;
      }
      lo = mid;
      e_lo = *trial;
      if (near_singular(e_lo)) break;
    }
    out.samples.push_back(euler_sample(t + lo, e_lo, true));
    return out;
  }
  return out;
}

double control_input(const UnwindingConfig& cfg, const PlanarState& s) {
  return -cfg.k * s.theta - cfg.c * s.omega;
}

UnwindingResult simulate_unwinding(const UnwindingConfig& cfg) {
  if (!(cfg.k > 0.0) || !(cfg.c > 0.0)) throw InvalidConfig("gains k and c must be positive");
  if (!std::isfinite(cfg.k) || !std::isfinite(cfg.c) || !std::isfinite(cfg.theta0) ||
      !std::isfinite(cfg.omega0)) {
    throw InvalidConfig("unwinding configuration must be finite");
  }
  require_step(cfg.dt, 0.0, cfg.t1);
  const std::size_t n = step_count(0.0, cfg.t1, cfg.dt);

  const auto accel = [&](double theta, double omega) { return -cfg.k * theta - cfg.c * omega; };

  UnwindingResult out;
  out.states.reserve(n + 1);
  out.states.push_back({0.0, cfg.theta0, cfg.omega0});
  double path = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const PlanarState& s = out.states.back();
    const double h = step_time(0.0, cfg.t1, cfg.dt, k + 1, n) - s.t;
    const double a1 = s.omega, b1 = accel(s.theta, s.omega);
    const double a2 = s.omega + 0.5 * h * b1;
    const double b2 = accel(s.theta + 0.5 * h * a1, a2);
    const double a3 = s.omega + 0.5 * h * b2;
    const double b3 = accel(s.theta + 0.5 * h * a2, a3);
    const double a4 = s.omega + h * b3;
    const double b4 = accel(s.theta + h * a3, a4);
    const PlanarState next{step_time(0.0, cfg.t1, cfg.dt, k + 1, n),
                           s.theta + h / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4),
                           s.omega + h / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4)};
    path += 0.5 * h * (std::fabs(s.omega) + std::fabs(next.omega));
    out.states.push_back(next);
  }

  constexpr double two_pi = 2.0 * std::numbers::pi;
  double wrapped = std::fmod(cfg.theta0, two_pi);
  if (wrapped < 0.0) wrapped += two_pi;
  out.summary = {out.states.back().theta, out.states.back().omega, path,
                 std::fmin(wrapped, two_pi - wrapped)};
  return out;
}

}  // namespace attikit
