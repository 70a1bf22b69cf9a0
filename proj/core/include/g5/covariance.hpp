// Frame-change engine: maps wavefunctions between the inertial system and a
// moving frame via the coordinate map plus the fifth-coordinate phase, and
// the end-to-end covariance, equivalence-principle and spin-precession
// experiments built on it.
#pragma once

#include <g5/evolve.hpp>
#include <g5/geometry5.hpp>

namespace g5 {

/// Direction-tagged frame map; round trips are the identity on states.
struct FrameMap {
  TrajectoryPtr tr;
  bool to_moving = true;

  FrameMap inverted() const { return FrameMap{tr, !to_moving}; }
};

/// Map a grid state across frames at the state's own time. Translations use
/// an exact Fourier shift; trajectories with rotation are rejected (grid
/// resampling under rotation is unsupported; use the packet overload).
ScalarWavefunction transform_state(const FrameMap& map, const ScalarWavefunction& psi);

/// Closed-form transform of an analytic packet onto a grid at time t
/// (S0 -> S only). Supports rotating trajectories exactly.
ScalarWavefunction transform_packet(const FrameMap& map, const GaussianPacket& packet,
                                    const Grid& grid, double t);

struct ComparisonReport {
  double l2_distance = 0.0;
  double fidelity = 0.0;
  double max_density_diff = 0.0;
};

struct SeriesHooks {
  std::function<void(const ScalarWavefunction&)> path_a;
  std::function<void(const ScalarWavefunction&)> path_b;
  int stride = 1;
};

/// Compare evolve-then-transform (path A, free in the inertial system)
/// against transform-then-evolve (path B, kinetic plus the inertial-force
/// terms of tr). Both paths use nsteps steps.
ComparisonReport covariance_residual(TrajectoryPtr tr, const GaussianPacket& psi0,
                                     const Grid& grid, double T, int nsteps,
                                     const SeriesHooks* hooks = nullptr);

struct EquivalenceReport {
  Vec3 fitted_slope = Vec3::Zero();
  Vec3 expected_slope = Vec3::Zero();
  double slope_residual = 0.0;
  /// Max pointwise density difference against free evolution; meaningful
  /// only when a == g (NaN otherwise).
  double max_density_diff = 0.0;
};

/// Uniform gravity Phi = g.x seen from the frame A(t) = a t^2 / 2: evolves
/// under the transformed potential plus the inertial terms and fits
/// d<p>/dt over the middle 80% of samples; expected slope -m (g - a).
EquivalenceReport equivalence_principle_run(const Vec3& g, const Vec3& a,
                                            const GaussianPacket& psi0,
                                            const Grid& grid, double T, int nsteps,
                                            const SeriesHooks* hooks = nullptr);

struct SpinFrameReport {
  double fitted_rate = 0.0;
  Vec3 fitted_axis = Vec3::Zero();
  double rate_abs_error = 0.0;
  double axis_error = 0.0;
  std::vector<double> times;
  std::vector<Vec3> spin_series;
};

/// Precession of the spin expectation under the spin-rotation coupling of a
/// frame rotating uniformly at omega, starting from spin direction spin0.
SpinFrameReport spin_frame_run(const Vec3& omega, const Vec3& spin0, double T,
                               int nsteps, double hbar = 1.0);

}  // namespace g5
