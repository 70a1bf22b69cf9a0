// Flat key-value scenario configuration: one `key = value` per line,
// `#` comments, vectors as comma-separated triples. The trajectory grammar
// composes the built-in analytic families by sequence.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <g5/trajectory.hpp>

namespace g5 {

enum class ScenarioKind { Check, Covariance, Equivalence, SpinFrame, Em, CustomEvolve };

std::string to_string(ScenarioKind k);

struct StateSpec {
  enum Kind { Gaussian, PlaneWave } kind = Gaussian;
  Vec3 center = Vec3::Zero();
  Vec3 momentum = Vec3::Zero();
  Vec3 sigma = Vec3::Constant(0.5);
};

struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::Check;
  std::vector<int> points{1024};
  std::vector<double> lengths{24.0};
  std::string trajectory = "inertial";
  StateSpec state;
  double m = 1.0;
  double hbar = 1.0;
  double u = 1.0;
  double e = 1.0;
  double c = 1.0;
  double horizon = 1.0;
  int nsteps = 1024;
  int stride = 16;
  std::string out = "out";
  Vec3 g = Vec3::Zero();
  Vec3 a = Vec3::Zero();
  Vec3 omega = Vec3::Zero();
  Vec3 B = Vec3::Zero();
  Vec3 spin = Vec3(1.0, 0.0, 0.0);
  Vec3 potential_linear = Vec3::Zero();
  double potential_harmonic = 0.0;
  unsigned seed = 12345;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parse and validate; throws ConfigError with a line number on syntax
/// errors, unknown keys, malformed values or invariant violations.
ScenarioConfig parse_config(const std::string& text);

/// Normalized form with every effective value spelled out;
/// parse(dump(c)) round-trips.
std::string dump_config(const ScenarioConfig& c);

/// Build a trajectory from the grammar
///   inertial | boost(vx,vy,vz) | accel(ax,ay,az) |
///   rotate(x|y|z|nx,ny,nz, rate) | poly(c0x,c0y,c0z; c1x,c1y,c1z; ...)
/// composed by sequence, first segment applied first.
TrajectoryPtr build_trajectory(const std::string& spec, double u);

}  // namespace g5
