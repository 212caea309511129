#include "attikit/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <variant>

#include "attikit/conversions.hpp"
#include "attikit/errors.hpp"
#include "attikit/kinematics.hpp"
#include "attikit/simulation.hpp"
#include "attikit/text.hpp"

namespace attikit::cli {

namespace {

/// File could not be opened; reported like a parse failure.
class IoError : public ParseError {
 public:
  using ParseError::ParseError;
};

// ---------------------------------------------------------------------------
// Output records

using FieldValue = std::variant<double, bool, std::vector<double>>;

struct Field {
  std::string name;
  FieldValue value;
};

using Record = std::vector<Field>;

std::string json_value(const FieldValue& v, int digits) {
  if (const auto* b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  if (const auto* d = std::get_if<double>(&v)) return text::format_real(*d, digits);
  std::string out = "[";
  const auto& arr = std::get<std::vector<double>>(v);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += ", ";
    out += text::format_real(arr[i], digits);
  }
  return out + "]";
}

void write_json(std::ostream& out, const Record& rec, int digits) {
  out << '{';
  for (std::size_t i = 0; i < rec.size(); ++i) {
    if (i) out << ", ";
    out << '"' << rec[i].name << "\": " << json_value(rec[i].value, digits);
  }
  out << "}\n";
}

void write_csv(std::ostream& out, const Record& rec, int digits) {
  std::vector<std::string> header;
  std::vector<std::string> values;
  for (const auto& f : rec) {
    if (const auto* arr = std::get_if<std::vector<double>>(&f.value)) {
      for (std::size_t i = 0; i < arr->size(); ++i) {
        header.push_back(f.name + std::to_string(i));
        values.push_back(text::format_real((*arr)[i], digits));
      }
    } else {
      header.push_back(f.name);
      values.push_back(json_value(f.value, digits));
    }
  }
  const auto join = [](const std::vector<std::string>& parts) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
    return s;
  };
  out << join(header) << '\n' << join(values) << '\n';
}

void emit(std::ostream& out, const Record& rec, const CliConfig& cfg) {
  if (cfg.output_format == OutputFormat::json) {
    write_json(out, rec, cfg.precision);
  } else {
    write_csv(out, rec, cfg.precision);
  }
}

// ---------------------------------------------------------------------------
// Input parsing

double to_radians(double a, const CliConfig& cfg) {
  return cfg.angle_unit == AngleUnit::deg ? a * std::numbers::pi / 180.0 : a;
}

double from_radians(double a, const CliConfig& cfg) {
  return cfg.angle_unit == AngleUnit::deg ? a * 180.0 / std::numbers::pi : a;
}

UnitQuaternion admit_quaternion(const Quaternion& q, const CliConfig& cfg) {
  if (!is_finite(q)) throw InvalidArgument("quaternion has non-finite components");
  if (!cfg.normalize && std::fabs(norm(q) - 1.0) > cfg.unit_tolerance) {
    throw InvalidArgument("quaternion norm " + std::to_string(norm(q)) +
                          " is not 1 (use --normalize to accept it)");
  }
  return UnitQuaternion::normalized(q);
}

Vec3 admit_axis(const Vec3& axis, const CliConfig& cfg) {
  const double n = norm(axis);
  if (!is_finite(axis) || !(n > kDegenerateNorm) ||
      (!cfg.normalize && std::fabs(n - 1.0) > cfg.unit_tolerance)) {
    throw InvalidAxis("axis is not a unit vector (use --normalize to accept it)");
  }
  return axis / n;
}

UnitQuaternion parse_quat(const std::string& s, const CliConfig& cfg) {
  const auto v = text::parse_list(s, 4);
  return admit_quaternion({v[0], v[1], v[2], v[3]}, cfg);
}

Vec3 parse_vec(const std::string& s) {
  const auto v = text::parse_list(s, 3);
  return {v[0], v[1], v[2]};
}

UnitQuaternion parse_representation(const std::string& repr, const std::string& value,
                                    const CliConfig& cfg) {
  if (repr == "quat") return parse_quat(value, cfg);
  if (repr == "jpl") {
    const auto v = text::parse_list(value, 4);
    const UnitQuaternion q = admit_quaternion({v[3], v[0], v[1], v[2]}, cfg);
    return jpl_to_hamilton({q.x(), q.y(), q.z(), q.w()});
  }
  if (repr == "matrix") {
    const auto v = text::parse_list(value, 9);
    Mat3 m{};
    std::copy(v.begin(), v.end(), m.data.begin());
    return from_rotation_matrix(m);
  }
  if (repr == "axis-angle") {
    const auto v = text::parse_list(value, 4);
    return from_axis_angle(admit_axis({v[0], v[1], v[2]}, cfg), to_radians(v[3], cfg));
  }
  // euler-xyz
  const auto v = text::parse_list(value, 3);
  return euler_xyz_to_quat({to_radians(v[0], cfg), to_radians(v[1], cfg), to_radians(v[2], cfg)});
}

Record quat_record(const UnitQuaternion& q) {
  return {{"q0", q.w()}, {"q1", q.x()}, {"q2", q.y()}, {"q3", q.z()}};
}

Record render_representation(const std::string& repr, const UnitQuaternion& q,
                             const CliConfig& cfg) {
  if (repr == "quat") return quat_record(canonicalize(q));
  if (repr == "jpl") {
    const JplQuaternion j = hamilton_to_jpl(canonicalize(q));
    return {{"q1", j.x}, {"q2", j.y}, {"q3", j.z}, {"q0", j.w}};
  }
  if (repr == "matrix") {
    const RotationMatrix r = to_rotation_matrix(q);
    return {{"r", std::vector<double>(r.matrix().data.begin(), r.matrix().data.end())}};
  }
  if (repr == "axis-angle") {
    const AxisAngle aa = to_axis_angle(q);
    return {{"axis", std::vector<double>{aa.axis.x, aa.axis.y, aa.axis.z}},
            {"angle", from_radians(aa.angle, cfg)}};
  }
  const EulerExtraction e = quat_to_euler_xyz(q);
  return {{"phi", from_radians(e.angles.phi, cfg)},
          {"theta", from_radians(e.angles.theta, cfg)},
          {"psi", from_radians(e.angles.psi, cfg)},
          {"degenerate", e.degenerate}};
}

RateProfile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open rate profile '" + path + "'");
  return RateProfile::from_csv(in);
}

/// Trajectory sink: the --out file when given, otherwise stdout.
class TrajectoryOutput {
 public:
  TrajectoryOutput(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open output file '" + path + "'");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return file_.is_open(); }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

std::string row(std::initializer_list<std::string> cells) {
  std::string s;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) s += ',';
    s += c;
    first = false;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Commands

struct ConvertArgs {
  std::string from;
  std::string to;
  std::string value;
};

struct ComposeArgs {
  std::string base;
  std::string perturbation;
  std::string frame{"local"};
};

struct RotateArgs {
  std::string quat;
  std::string vec;
  std::string direction{"local-to-global"};
};

struct IntegrateArgs {
  std::string q0{"1,0,0,0"};
  std::string profile;
  std::string rate;
  double dt{1e-3};
  double t1{1.0};
  std::string method{"rk4"};
  std::string out;
};

struct GimbalArgs {
  std::string profile;
  std::string e0{"0,0,0"};
  double pitch_rate{0.5};
  double dt{1e-3};
  double t1{4.0};
  std::string out;
};

struct UnwindingArgs {
  UnwindingConfig sim;
  std::string out;
};

void cmd_convert(const ConvertArgs& a, const CliConfig& cfg, std::ostream& out) {
  emit(out, render_representation(a.to, parse_representation(a.from, a.value, cfg), cfg), cfg);
}

void cmd_compose(const ComposeArgs& a, const CliConfig& cfg, std::ostream& out) {
  const UnitQuaternion base = parse_quat(a.base, cfg);
  const UnitQuaternion delta = parse_quat(a.perturbation, cfg);
  const UnitQuaternion q = a.frame == "local" ? compose(base, delta) : compose(delta, base);
  emit(out, quat_record(q), cfg);
}

void cmd_rotate(const RotateArgs& a, const CliConfig& cfg, std::ostream& out) {
  const UnitQuaternion q = parse_quat(a.quat, cfg);
  const Vec3 v = parse_vec(a.vec);
  if (!is_finite(v)) throw InvalidArgument("vector has non-finite components");
  const Vec3 r = a.direction == "local-to-global" ? rotate_vector(q, v) : rotate_vector_inverse(q, v);
  emit(out, {{"v", std::vector<double>{r.x, r.y, r.z}}}, cfg);
}

void cmd_integrate(const IntegrateArgs& a, const CliConfig& cfg, std::ostream& out) {
  if (a.profile.empty() == a.rate.empty()) {
    throw ParseError("integrate needs exactly one of --profile or --rate");
  }
  const UnitQuaternion q0 = parse_quat(a.q0, cfg);
  const RateProfile profile = a.profile.empty()
                                  ? RateProfile::constant(BodyRates::from(parse_vec(a.rate)))
                                  : load_profile(a.profile);
  const auto states = propagate_quaternion(
      q0, profile, a.dt, a.t1, a.method == "expmap" ? Integrator::expmap : Integrator::rk4);

  TrajectoryOutput sink(a.out, out);
  const int d = cfg.precision;
  sink.stream() << "t,q0,q1,q2,q3,p,q,r\n";
  for (const auto& s : states) {
    sink.stream() << row({text::format_real(s.t, d), text::format_real(s.q.w(), d),
                          text::format_real(s.q.x(), d), text::format_real(s.q.y(), d),
                          text::format_real(s.q.z(), d), text::format_real(s.w_body.p, d),
                          text::format_real(s.w_body.q, d), text::format_real(s.w_body.r, d)})
                  << '\n';
  }
  if (sink.to_file()) {
    Record rec{{"t", states.back().t}};
    for (auto& f : quat_record(states.back().q)) rec.push_back(f);
    write_json(out, rec, d);
  }
}

void cmd_demo_gimbal_lock(const GimbalArgs& a, const CliConfig& cfg, std::ostream& out) {
  const auto e = text::parse_list(a.e0, 3);
  const EulerAngles321 e0{to_radians(e[0], cfg), to_radians(e[1], cfg), to_radians(e[2], cfg)};
  const RateProfile profile = a.profile.empty()
                                  ? RateProfile::constant(BodyRates{0.0, a.pitch_rate, 0.0})
                                  : load_profile(a.profile);
  const EulerTrajectory traj = propagate_euler_321(e0, profile, a.dt, a.t1);

  TrajectoryOutput sink(a.out, out);
  const int d = cfg.precision;
  sink.stream() << "t,phi,theta,psi,conditioning,flag\n";
  for (const auto& s : traj.samples) {
    sink.stream() << row({text::format_real(s.t, d), text::format_real(s.angles.phi, d),
                          text::format_real(s.angles.theta, d), text::format_real(s.angles.psi, d),
                          text::format_real(s.conditioning, d), s.gimbal_lock ? "true" : "false"})
                  << '\n';
  }
  if (sink.to_file()) {
    const EulerSample& last = traj.samples.back();
    write_json(out,
               {{"gimbal_lock", traj.halted},
                {"t", last.t},
                {"theta", last.angles.theta},
                {"conditioning", last.conditioning}},
               d);
  }
}

void cmd_demo_unwinding(const UnwindingArgs& a, const CliConfig& cfg, std::ostream& out) {
  const UnwindingResult res = simulate_unwinding(a.sim);
  const int d = cfg.precision;
  if (!a.out.empty()) {
    TrajectoryOutput sink(a.out, out);
    sink.stream() << "t,theta,omega,u\n";
    for (const auto& s : res.states) {
      sink.stream() << row({text::format_real(s.t, d), text::format_real(s.theta, d),
                            text::format_real(s.omega, d),
                            text::format_real(control_input(a.sim, s), d)})
                    << '\n';
    }
  }
  write_json(out,
             {{"theta0", a.sim.theta0},
              {"final_theta", res.summary.final_theta},
              {"final_omega", res.summary.final_omega},
              {"path_length", res.summary.path_length},
              {"short_way", res.summary.short_way},
              {"unwinding", res.summary.path_length > res.summary.short_way + 1e-6}},
             d);
}

int precision_from_env() {
  const char* env = std::getenv("ATTIKIT_PRECISION");
  if (env == nullptr || *env == '\0') return CliConfig{}.precision;
  const double v = text::parse_real(env);
  if (v != std::floor(v)) throw ParseError("ATTIKIT_PRECISION must be an integer");
  return static_cast<int>(v);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attitude representation and kinematics toolkit", "attikit"};
  app.require_subcommand(1);
  app.fallthrough();

  CliConfig cfg;
  int precision = -1;
  const std::map<std::string, AngleUnit> units{{"rad", AngleUnit::rad}, {"deg", AngleUnit::deg}};
  const std::map<std::string, OutputFormat> formats{{"json", OutputFormat::json},
                                                    {"csv", OutputFormat::csv}};
  app.add_option("--angle-unit", cfg.angle_unit, "Unit of angles read and printed (rad|deg)")
      ->transform(CLI::CheckedTransformer(units));
  app.add_option("--format", cfg.output_format, "Output format of single results (json|csv)")
      ->transform(CLI::CheckedTransformer(formats));
  app.add_option("--precision", precision,
                 "Digits after the decimal point, 4..17 (default 12, env ATTIKIT_PRECISION)");
  app.add_option("--unit-tol", cfg.unit_tolerance,
                 "Accepted |norm - 1| for typed quaternions and axes")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--normalize", cfg.normalize, "Normalize any non-degenerate quaternion or axis");

  const std::vector<std::string> reprs{"quat", "matrix", "axis-angle", "euler-xyz", "jpl"};

  ConvertArgs convert;
  auto* c = app.add_subcommand("convert", "Convert between attitude representations");
  c->add_option("--from", convert.from)->required()->check(CLI::IsMember(reprs));
  c->add_option("--to", convert.to)->required()->check(CLI::IsMember(reprs));
  c->add_option("--value", convert.value, "Comma-separated components")->required();

  ComposeArgs compose_args;
  auto* cp = app.add_subcommand("compose", "Compose an attitude with a perturbation");
  cp->add_option("--base", compose_args.base, "q0,q1,q2,q3")->required();
  cp->add_option("--perturbation", compose_args.perturbation, "q0,q1,q2,q3")->required();
  cp->add_option("--frame", compose_args.frame, "local (post-multiply) or global (pre-multiply)")
      ->check(CLI::IsMember({"local", "global"}));

  RotateArgs rotate;
  auto* rt = app.add_subcommand("rotate", "Rotate a vector by a quaternion");
  rt->add_option("--quat", rotate.quat, "q0,q1,q2,q3")->required();
  rt->add_option("--vec", rotate.vec, "x,y,z")->required();
  rt->add_option("--direction", rotate.direction)
      ->check(CLI::IsMember({"local-to-global", "global-to-local"}));

  IntegrateArgs integrate;
  auto* in = app.add_subcommand("integrate", "Propagate an attitude from body rates");
  in->add_option("--q0", integrate.q0, "Initial quaternion");
  in->add_option("--profile", integrate.profile, "CSV with header t,p,q,r");
  in->add_option("--rate", integrate.rate, "Constant body rate p,q,r");
  in->add_option("--dt", integrate.dt);
  in->add_option("--t1", integrate.t1);
  in->add_option("--method", integrate.method)->check(CLI::IsMember({"rk4", "expmap"}));
  in->add_option("--out", integrate.out, "Write the trajectory CSV here");

  UnwindingArgs unwinding;
  auto* uw = app.add_subcommand("demo-unwinding", "Planar linear controller on the unwrapped angle");
  uw->add_option("--theta0", unwinding.sim.theta0);
  uw->add_option("--omega0", unwinding.sim.omega0);
  uw->add_option("--k", unwinding.sim.k);
  uw->add_option("--c", unwinding.sim.c);
  uw->add_option("--dt", unwinding.sim.dt);
  uw->add_option("--t1", unwinding.sim.t1);
  uw->add_option("--out", unwinding.out, "Write the trajectory CSV here");

  GimbalArgs gimbal;
  auto* gl = app.add_subcommand("demo-gimbal-lock", "Integrate 321 Euler rates into gimbal lock");
  gl->add_option("--profile", gimbal.profile, "CSV with header t,p,q,r (default: pitch sweep)");
  gl->add_option("--e0", gimbal.e0, "Initial roll,pitch,yaw");
  gl->add_option("--pitch-rate", gimbal.pitch_rate, "Body pitch rate of the built-in sweep");
  gl->add_option("--dt", gimbal.dt);
  gl->add_option("--t1", gimbal.t1);
  gl->add_option("--out", gimbal.out, "Write the trajectory CSV here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    cfg.precision = precision >= 0 ? precision : precision_from_env();
    if (cfg.precision < 4 || cfg.precision > 17) {
      throw InvalidConfig("precision must be between 4 and 17");
    }
    std::ostringstream buffer;
    if (c->parsed()) cmd_convert(convert, cfg, buffer);
    if (cp->parsed()) cmd_compose(compose_args, cfg, buffer);
    if (rt->parsed()) cmd_rotate(rotate, cfg, buffer);
    if (in->parsed()) cmd_integrate(integrate, cfg, buffer);
    if (uw->parsed()) cmd_demo_unwinding(unwinding, cfg, buffer);
    if (gl->parsed()) cmd_demo_gimbal_lock(gimbal, cfg, buffer);
    out << buffer.str();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitMath;
  }
  return kExitOk;
}

}  // namespace attikit::cli
