#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "attikit/cli.hpp"
#include "attikit/conversions.hpp"
#include "attikit/error_dynamics.hpp"
#include "attikit/errors.hpp"
#include "attikit/kinematics.hpp"
#include "attikit/simulation.hpp"

namespace py = pybind11;
using namespace attikit;

namespace {

// Quaternions cross the boundary as (w, x, y, z) tuples, vectors as (x, y, z).
using Q = std::array<double, 4>;
using V = std::array<double, 3>;
using M = std::array<std::array<double, 3>, 3>;

Quaternion raw(const Q& q) { return {q[0], q[1], q[2], q[3]}; }
UnitQuaternion unit(const Q& q) { return UnitQuaternion(q[0], q[1], q[2], q[3]); }
Q out(const Quaternion& q) { return {q.w, q.x, q.y, q.z}; }
Vec3 vec(const V& v) { return {v[0], v[1], v[2]}; }
V out(const Vec3& v) { return {v.x, v.y, v.z}; }

M out(const Mat3& m) {
  M r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m(i, j);
  return r;
}

Mat3 mat(const M& m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m[i][j];
  return r;
}

}  // namespace

PYBIND11_MODULE(_attikit, m) {
  m.doc() = "Quaternion attitude toolkit";

  auto base = py::register_exception<Error>(m, "AttikitError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<GimbalLockSingularity>(m, "GimbalLockSingularity", base.ptr());

  m.def("quat_mul", [](const Q& a, const Q& b) { return out(quat_mul(raw(a), raw(b))); });
  m.def("conjugate", [](const Q& q) { return out(conjugate(raw(q))); });
  m.def("inverse", [](const Q& q) { return out(inverse(raw(q))); });
  m.def("canonicalize", [](const Q& q) { return out(canonicalize(unit(q))); });

  m.def("from_axis_angle", [](const V& axis, double angle) { return out(from_axis_angle(vec(axis), angle)); });
  m.def("to_axis_angle", [](const Q& q) {
    const AxisAngle aa = to_axis_angle(unit(q));
    return std::make_tuple(out(aa.axis), aa.angle);
  });
  m.def("rotate_vector", [](const Q& q, const V& v) { return out(rotate_vector(unit(q), vec(v))); });
  m.def("rotate_vector_inverse", [](const Q& q, const V& v) { return out(rotate_vector_inverse(unit(q), vec(v))); });
  m.def("to_rotation_matrix", [](const Q& q) { return out(to_rotation_matrix(unit(q)).matrix()); });
  m.def("from_rotation_matrix", [](const M& r) { return out(from_rotation_matrix(mat(r))); });
  m.def("euler_xyz_to_quat", [](double phi, double theta, double psi) {
    return out(euler_xyz_to_quat({phi, theta, psi}));
  });
  m.def("quat_to_euler_xyz", [](const Q& q) {
    const EulerExtraction e = quat_to_euler_xyz(unit(q));
    return std::make_tuple(e.angles.phi, e.angles.theta, e.angles.psi, e.degenerate);
  });
  m.def("hamilton_to_jpl", [](const Q& q) {
    const JplQuaternion j = hamilton_to_jpl(unit(q));
    return std::array<double, 4>{j.x, j.y, j.z, j.w};
  }, "Returns (x, y, z, w).");
  m.def("jpl_to_hamilton", [](const std::array<double, 4>& j) {
    return out(jpl_to_hamilton({j[0], j[1], j[2], j[3]}));
  }, "Takes (x, y, z, w).");

  m.def("qdot_from_body_rates", [](const Q& q, const V& w) {
    return out(qdot_from_body_rates(unit(q), BodyRates::from(vec(w))).value);
  });
  m.def("body_rates_from_qdot", [](const Q& q, const Q& qd) {
    return out(body_rates_from_qdot(unit(q), QuatRate(raw(qd))).vec());
  });
  m.def("euler_rates_from_body_321", [](double phi, double theta, double psi, const V& w) {
    const EulerRates321 r = euler_rates_from_body_321({phi, theta, psi}, BodyRates::from(vec(w)));
    return V{r.phi_dot, r.theta_dot, r.psi_dot};
  });
  m.def("euler_rate_conditioning", &euler_rate_conditioning);

  m.def("error_quaternion", [](const Q& desired, const Q& actual) {
    return out(error_quaternion(unit(desired), unit(actual)).q);
  });

  m.def("propagate_constant_rate",
        [](const Q& q0, const V& w, double dt, double t1, const std::string& method) {
          if (method != "rk4" && method != "expmap") throw InvalidConfig("method must be rk4 or expmap");
          const auto states = propagate_quaternion(unit(q0), RateProfile::constant(BodyRates::from(vec(w))), dt, t1,
                                                   method == "rk4" ? Integrator::rk4 : Integrator::expmap);
          std::vector<std::tuple<double, Q>> r;
          r.reserve(states.size());
          for (const auto& s : states) r.emplace_back(s.t, out(s.q.quaternion()));
          return r;
        },
        py::arg("q0"), py::arg("rate"), py::arg("dt") = 1e-3, py::arg("t1") = 1.0, py::arg("method") = "rk4");

  m.def("simulate_unwinding",
        [](double theta0, double omega0, double k, double c, double dt, double t1) {
          const UnwindingSummary s = simulate_unwinding({theta0, omega0, k, c, dt, t1}).summary;
          py::dict d;
          d["final_theta"] = s.final_theta;
          d["final_omega"] = s.final_omega;
          d["path_length"] = s.path_length;
          d["short_way"] = s.short_way;
          return d;
        },
        py::arg("theta0") = UnwindingConfig{}.theta0, py::arg("omega0") = 0.0, py::arg("k") = 1.0,
        py::arg("c") = 2.0, py::arg("dt") = 1e-3, py::arg("t1") = 30.0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    return std::make_tuple(code, o.str(), e.str());
  }, "Runs the command-line front end in-process; returns (exit_code, stdout, stderr).");
}
