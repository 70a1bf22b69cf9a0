// Geometry of non-inertial frames generated by time-dependent (R(t), A(t)):
// the extended coordinate map, the induced upper metric, the affine
// connection, funfbein fields in two gauges and the spin connection.
#pragma once

#include <array>
#include <functional>

#include <g5/group5.hpp>
#include <g5/trajectory.hpp>

namespace g5 {
struct GammaRep;

/// Map an event of the inertial system into the moving frame; the fifth
/// coordinate picks up the trajectory-dependent shift.
Event5 apply_g5p(const FrameTrajectory& tr, const Event5& e);

/// Upper metric g'^{mu nu}(x', t). Fixed entries: spatial identity,
/// g'(3,4) = -1, g'(3,3) = 0; the (i,4) row and (4,4) entry carry the frame
/// rotation and acceleration.
Mat5 metric_upper(const FrameTrajectory& tr, const Vec3& xp, double t);

/// Lower metric by matrix inversion; throws on a singular input and checks
/// the product residual to 1e-12.
Mat5 lower_metric(const Mat5& g_upper);

/// Affine connection components Gamma^lam_{mu nu}, symmetric in (mu, nu).
struct Connection5 {
  // gamma[lam][mu][nu]
  std::array<std::array<std::array<double, 5>, 5>, 5> gamma{};
  double operator()(int lam, int mu, int nu) const { return gamma[lam][mu][nu]; }
};

Connection5 connection(const FrameTrajectory& tr, const Vec3& xp, double t);

enum class FunfbeinGauge { Jacobian, Rotated };

/// Local frame rotation for the Rotated gauge: an orthogonal matrix of time
/// together with its derivative.
struct SpinGauge {
  std::function<Mat3(double)> R;
  std::function<Mat3(double)> Rd;

  static SpinGauge uniform(const Vec3& axis, double rate);
  /// Follow the frame rotation of a trajectory (undoes the spatial triad's
  /// time dependence in the Rotated gauge).
  static SpinGauge from_trajectory(TrajectoryPtr tr);
};

/// Funfbein h^mu_a. Jacobian gauge: the derivative matrix of the coordinate
/// map. Rotated gauge: spatial frame columns mixed by rtilde(t). Both satisfy
/// h eta h^T = g'.
Mat5 funfbein(const FrameTrajectory& tr, const Vec3& xp, double t,
              FunfbeinGauge gauge, const SpinGauge* rtilde = nullptr);

/// Spin connection Gamma'_lam = (1/8) [gamma^a, gamma^b] g'_{mu nu} h^mu_a
/// D_lam h^nu_b. Identically zero in the Jacobian gauge.
std::array<CMat4, 5> spin_connection(const FrameTrajectory& tr, const Vec3& xp,
                                     double t, FunfbeinGauge gauge,
                                     const GammaRep& rep,
                                     const SpinGauge* rtilde = nullptr);

}  // namespace g5
