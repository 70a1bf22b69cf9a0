// Composable Hamiltonian terms for the spectral evolver, and the physics
// constructors: inertial-force terms of a moving frame, the spin-rotation
// matrix, Newtonian potential coupling, and minimal electromagnetic coupling
// for a uniform magnetic field.
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <g5/geometry5.hpp>
#include <g5/linalg.hpp>
#include <g5/trajectory.hpp>

namespace g5 {

/// V(x, t) = w(t).x + c(t). A null time callable means the constant part.
struct LinearPotentialTerm {
  Vec3 w = Vec3::Zero();
  std::function<Vec3(double)> w_t;
  double c = 0.0;
  std::function<double(double)> c_t;

  Vec3 w_at(double t) const { return w_t ? w_t(t) : w; }
  double c_at(double t) const { return c_t ? c_t(t) : c; }
  bool time_dependent() const { return static_cast<bool>(w_t) || static_cast<bool>(c_t); }
};

/// Static position-diagonal potential V(x).
struct GeneralPotentialTerm {
  std::function<double(const Vec3&)> phi;
};

/// H += -omega(t) . L with L = x cross (-i hbar grad).
struct RotationTerm {
  Vec3 omega = Vec3::Zero();
  std::function<Vec3(double)> omega_t;

  Vec3 omega_at(double t) const { return omega_t ? omega_t(t) : omega; }
  bool time_dependent() const { return static_cast<bool>(omega_t); }
};

/// Spatially uniform 2x2 Hermitian term acting on the spinor index.
struct SpinMatrixTerm {
  CMat2 M = CMat2::Zero();
  std::function<CMat2(double)> M_t;

  CMat2 at(double t) const { return M_t ? M_t(t) : M; }
  bool time_dependent() const { return static_cast<bool>(M_t); }
};

/// Minimal coupling restricted to the split-step zoo: a uniform magnetic
/// field in symmetric gauge, A(x, t) = B cross x / 2 + a(t), plus a scalar
/// potential A0(x, t). General vector potentials are handled only by the
/// operator-application path, not by evolution.
struct EmTerm {
  Vec3 B = Vec3::Zero();
  Vec3 a = Vec3::Zero();
  std::function<Vec3(double)> a_t;
  std::function<double(const Vec3&, double)> A0;
  double e = 1.0;
  double c = 1.0;

  Vec3 a_at(double t) const { return a_t ? a_t(t) : a; }
};

struct HamiltonianSpec {
  bool kinetic = true;
  std::vector<LinearPotentialTerm> linear;
  std::vector<GeneralPotentialTerm> potential;
  std::vector<RotationTerm> rotation;
  std::vector<SpinMatrixTerm> spin;
  std::optional<EmTerm> em;

  static HamiltonianSpec free_particle() { return HamiltonianSpec{}; }
  static HamiltonianSpec none() { return HamiltonianSpec{false, {}, {}, {}, {}, {}}; }
};

/// Inertial-force terms of a frame trajectory for a particle of mass m:
/// a linear potential w(t) = -m R(t) Add~(t) and the rotation coupling with
/// generator Rd R^T. Throws when the generator fails antisymmetry by more
/// than 1e-10.
HamiltonianSpec h_inert(TrajectoryPtr tr, double m);

/// Instantaneous inertial-term data, for inspection and tests.
Vec3 h_inert_linear_w(const FrameTrajectory& tr, double m, double t);
Vec3 h_inert_rotation_omega(const FrameTrajectory& tr, double t);

/// Spin-rotation coupling of a rotated local frame:
/// (hbar/4) Rtd^l_j Rt^{kj} eps_{klm} sigma_m, evaluated at t.
CMat2 h_spin(const SpinGauge& rtilde, double t, double hbar);
SpinMatrixTerm h_spin_term(const SpinGauge& rtilde, double hbar);

/// Newtonian potential coupling: V = m Phi(x).
GeneralPotentialTerm newton_coupling(std::function<double(const Vec3&)> phi, double m);

/// Terms for minimal coupling to (A = B cross x / 2 + a(t), A0):
/// kinetic momentum expansion plus, for spinor states, the magnetic moment
/// term -(e hbar / 2 m c) sigma.B produced by the lower-spinor elimination.
HamiltonianSpec em_coupling(const EmTerm& em, double m, double hbar, bool spinor);

}  // namespace g5
