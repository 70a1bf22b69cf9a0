#include <g5/config.hpp>

#include <cmath>
#include <cstdio>
#include <sstream>

namespace g5 {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_double(const std::string& s, int line) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ConfigError(line, "malformed number '" + s + "'");
  }
}

int parse_int(const std::string& s, int line) {
  const double v = parse_double(s, line);
  const int i = static_cast<int>(std::llround(v));
  if (i != v) throw ConfigError(line, "expected an integer, got '" + s + "'");
  return i;
}

Vec3 parse_vec3(const std::string& s, int line) {
  const auto parts = split(s, ',');
  if (parts.size() != 3)
    throw ConfigError(line, "expected three comma-separated values, got '" + s + "'");
  return Vec3(parse_double(parts[0], line), parse_double(parts[1], line),
              parse_double(parts[2], line));
}

Vec3 parse_vec3_or_scalar(const std::string& s, int line) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return Vec3::Constant(parse_double(parts[0], line));
  return parse_vec3(s, line);
}

StateSpec parse_state(const std::string& s, int line) {
  StateSpec spec;
  const auto open = s.find('(');
  const auto close = s.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ConfigError(line, "malformed state '" + s + "'");
  const std::string kind = trim(s.substr(0, open));
  const std::string args = s.substr(open + 1, close - open - 1);
  if (kind == "gaussian") {
    const auto groups = split(args, ';');
    if (groups.size() != 3)
      throw ConfigError(line, "gaussian state needs center; momentum; sigma");
    spec.kind = StateSpec::Gaussian;
    spec.center = parse_vec3(groups[0], line);
    spec.momentum = parse_vec3(groups[1], line);
    spec.sigma = parse_vec3_or_scalar(groups[2], line);
  } else if (kind == "plane_wave") {
    spec.kind = StateSpec::PlaneWave;
    spec.momentum = parse_vec3(args, line);
  } else {
    throw ConfigError(line, "unknown state kind '" + kind + "'");
  }
  return spec;
}

// Split a trajectory sequence into segments, respecting parentheses.
std::vector<std::string> traj_segments(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == ' ' || ch == '\t') && depth == 0) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

TrajectoryPtr build_segment(const std::string& seg, double u, int line) {
  if (seg == "inertial") return std::make_shared<InertialFrame>(u);
  const auto open = seg.find('(');
  const auto close = seg.rfind(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw ConfigError(line, "malformed trajectory segment '" + seg + "'");
  const std::string kind = trim(seg.substr(0, open));
  const std::string args = seg.substr(open + 1, close - open - 1);
  if (kind == "boost") return std::make_shared<BoostFrame>(parse_vec3(args, line), u);
  if (kind == "accel") return std::make_shared<AccelFrame>(parse_vec3(args, line), u);
  if (kind == "rotate") {
    const auto parts = split(args, ',');
    Vec3 axis;
    double rate = 0.0;
    if (parts.size() == 2) {
      if (parts[0] == "x") axis = Vec3::UnitX();
      else if (parts[0] == "y") axis = Vec3::UnitY();
      else if (parts[0] == "z") axis = Vec3::UnitZ();
      else throw ConfigError(line, "rotate axis must be x, y, z or a triple");
      rate = parse_double(parts[1], line);
    } else if (parts.size() == 4) {
      axis = Vec3(parse_double(parts[0], line), parse_double(parts[1], line),
                  parse_double(parts[2], line));
      rate = parse_double(parts[3], line);
    } else {
      throw ConfigError(line, "rotate needs (axis, rate)");
    }
    if (axis.norm() == 0.0) throw ConfigError(line, "rotate axis must be nonzero");
    return std::make_shared<RotatingFrame>(axis, rate, u);
  }
  if (kind == "poly") {
    std::vector<Vec3> coeffs;
    for (const auto& grp : split(args, ';')) coeffs.push_back(parse_vec3(grp, line));
    return std::make_shared<PolyFrame>(std::move(coeffs), u);
  }
  throw ConfigError(line, "unknown trajectory kind '" + kind + "'");
}

}  // namespace

ConfigError::ConfigError(int line, const std::string& msg)
    : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

std::string to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Check: return "check";
    case ScenarioKind::Covariance: return "covariance";
    case ScenarioKind::Equivalence: return "equivalence";
    case ScenarioKind::SpinFrame: return "spin_frame";
    case ScenarioKind::Em: return "em";
    case ScenarioKind::CustomEvolve: return "custom-evolve";
  }
  return "?";
}

TrajectoryPtr build_trajectory(const std::string& spec, double u) {
  const auto segments = traj_segments(spec);
  if (segments.empty()) throw ConfigError(0, "empty trajectory");
  TrajectoryPtr tr = build_segment(segments[0], u, 0);
  for (std::size_t i = 1; i < segments.size(); ++i)
    tr = std::make_shared<ComposedFrame>(build_segment(segments[i], u, 0), tr);
  return tr;
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  bool saw_scenario = false;
  int traj_line = 0;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (val.empty()) throw ConfigError(lineno, "empty value for '" + key + "'");

    if (key == "scenario") {
      saw_scenario = true;
      if (val == "check") cfg.scenario = ScenarioKind::Check;
      else if (val == "covariance") cfg.scenario = ScenarioKind::Covariance;
      else if (val == "equivalence") cfg.scenario = ScenarioKind::Equivalence;
      else if (val == "spin_frame") cfg.scenario = ScenarioKind::SpinFrame;
      else if (val == "em") cfg.scenario = ScenarioKind::Em;
      else if (val == "custom-evolve") cfg.scenario = ScenarioKind::CustomEvolve;
      else throw ConfigError(lineno, "unknown scenario '" + val + "'");
    } else if (key == "points") {
      cfg.points.clear();
      for (const auto& p : split(val, ',')) cfg.points.push_back(parse_int(p, lineno));
    } else if (key == "lengths") {
      cfg.lengths.clear();
      for (const auto& p : split(val, ','))
        cfg.lengths.push_back(parse_double(p, lineno));
    } else if (key == "trajectory") {
      cfg.trajectory = val;
      traj_line = lineno;
    } else if (key == "state") {
      cfg.state = parse_state(val, lineno);
    } else if (key == "m") cfg.m = parse_double(val, lineno);
    else if (key == "hbar") cfg.hbar = parse_double(val, lineno);
    else if (key == "u") cfg.u = parse_double(val, lineno);
    else if (key == "e") cfg.e = parse_double(val, lineno);
    else if (key == "c") cfg.c = parse_double(val, lineno);
    else if (key == "horizon") cfg.horizon = parse_double(val, lineno);
    else if (key == "nsteps") cfg.nsteps = parse_int(val, lineno);
    else if (key == "stride") cfg.stride = parse_int(val, lineno);
    else if (key == "out") cfg.out = val;
    else if (key == "g") cfg.g = parse_vec3(val, lineno);
    else if (key == "a") cfg.a = parse_vec3(val, lineno);
    else if (key == "omega") cfg.omega = parse_vec3(val, lineno);
    else if (key == "B") cfg.B = parse_vec3(val, lineno);
    else if (key == "spin") cfg.spin = parse_vec3(val, lineno);
    else if (key == "potential_linear") cfg.potential_linear = parse_vec3(val, lineno);
    else if (key == "potential_harmonic")
      cfg.potential_harmonic = parse_double(val, lineno);
    else if (key == "seed") cfg.seed = static_cast<unsigned>(parse_int(val, lineno));
    else throw ConfigError(lineno, "unknown key '" + key + "'");
  }

  if (!saw_scenario) throw ConfigError(0, "missing scenario");
  if (cfg.points.size() != cfg.lengths.size() || cfg.points.empty() ||
      cfg.points.size() > 3)
    throw ConfigError(0, "points and lengths must list 1-3 matching axes");
  for (int n : cfg.points)
    if (n < 2 || (n & (n - 1)) != 0)
      throw ConfigError(0, "grid points must be powers of two");
  for (double l : cfg.lengths)
    if (!(l > 0.0)) throw ConfigError(0, "grid lengths must be positive");
  if (cfg.nsteps < 1) throw ConfigError(0, "nsteps must be >= 1");
  if (cfg.stride < 1) throw ConfigError(0, "stride must be >= 1");
  if (!(cfg.m > 0.0) || !(cfg.hbar > 0.0) || !(cfg.u > 0.0) || !(cfg.c > 0.0))
    throw ConfigError(0, "m, hbar, u, c must be positive");
  // Validate the trajectory grammar eagerly for a line-numbered error.
  try {
    build_trajectory(cfg.trajectory, cfg.u);
  } catch (const ConfigError& err) {
    throw ConfigError(traj_line, err.what());
  }
  return cfg;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt(const Vec3& v) { return fmt(v.x()) + "," + fmt(v.y()) + "," + fmt(v.z()); }

}  // namespace

std::string dump_config(const ScenarioConfig& c) {
  std::ostringstream out;
  out << "scenario = " << to_string(c.scenario) << "\n";
  out << "points = ";
  for (std::size_t i = 0; i < c.points.size(); ++i)
    out << (i ? "," : "") << c.points[i];
  out << "\nlengths = ";
  for (std::size_t i = 0; i < c.lengths.size(); ++i)
    out << (i ? "," : "") << fmt(c.lengths[i]);
  out << "\ntrajectory = " << c.trajectory << "\n";
  if (c.state.kind == StateSpec::Gaussian)
    out << "state = gaussian(" << fmt(c.state.center) << "; " << fmt(c.state.momentum)
        << "; " << fmt(c.state.sigma) << ")\n";
  else
    out << "state = plane_wave(" << fmt(c.state.momentum) << ")\n";
  out << "m = " << fmt(c.m) << "\nhbar = " << fmt(c.hbar) << "\nu = " << fmt(c.u)
      << "\ne = " << fmt(c.e) << "\nc = " << fmt(c.c) << "\n";
  out << "horizon = " << fmt(c.horizon) << "\nnsteps = " << c.nsteps
      << "\nstride = " << c.stride << "\n";
  out << "out = " << c.out << "\n";
  out << "g = " << fmt(c.g) << "\na = " << fmt(c.a) << "\nomega = " << fmt(c.omega)
      << "\nB = " << fmt(c.B) << "\nspin = " << fmt(c.spin) << "\n";
  out << "potential_linear = " << fmt(c.potential_linear) << "\n";
  out << "potential_harmonic = " << fmt(c.potential_harmonic) << "\n";
  out << "seed = " << c.seed << "\n";
  return out.str();
}

}  // namespace g5
