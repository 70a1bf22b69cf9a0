// Time-dependent frame data for the generalized transformations: a rotation
// R(t) and a translation A(t) with derivatives through third order, plus the
// running integral of |d/dt(R^T A)|^2 that feeds the fifth-coordinate shift.
//
// Built-in families carry exact derivatives and, where available, a closed
// form for the integral; everything else falls back to panel quadrature
// refined to a relative tolerance of 1e-10.
#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <g5/linalg.hpp>

namespace g5 {

/// Frame data at one instant. Dots are d/dt.
struct FrameState {
  Mat3 R = Mat3::Identity();
  Mat3 Rd = Mat3::Zero();
  Mat3 Rdd = Mat3::Zero();
  Mat3 Rddd = Mat3::Zero();
  Vec3 A = Vec3::Zero();
  Vec3 Ad = Vec3::Zero();
  Vec3 Add = Vec3::Zero();
  Vec3 Addd = Vec3::Zero();

  /// Atilde = R^T A and its time derivatives (full product rule).
  Vec3 atilde() const { return R.transpose() * A; }
  Vec3 atilde_d() const { return Rd.transpose() * A + R.transpose() * Ad; }
  Vec3 atilde_dd() const {
    return Rdd.transpose() * A + 2.0 * Rd.transpose() * Ad + R.transpose() * Add;
  }
  Vec3 atilde_ddd() const {
    return Rddd.transpose() * A + 3.0 * Rdd.transpose() * Ad +
           3.0 * Rd.transpose() * Add + R.transpose() * Addd;
  }
  /// Angular-velocity matrix Rd R^T (antisymmetric for orthogonal R).
  Mat3 omega_mat() const { return Rd * R.transpose(); }
};

class FrameTrajectory {
 public:
  explicit FrameTrajectory(double u);
  virtual ~FrameTrajectory() = default;

  double u() const { return u_; }
  virtual FrameState state(double t) const = 0;

  /// W(t) = integral_0^t |d/dtau (R^T A)|^2 dtau.
  /// Throws std::runtime_error when the quadrature fails to converge.
  virtual double velocity_sq_integral(double t) const;

  /// True when R(t) is not constant; grid states can only be mapped through
  /// translation-only trajectories.
  virtual bool has_rotation() const { return true; }

  /// Shift of the fifth coordinate for a point at spatial position x, time t:
  /// x5' - x5 = (Ad~.x + A~.Ad~ - W(t)/2) / u.
  double x5_shift(const Vec3& x, double t) const;

 private:
  double u_;
};

using TrajectoryPtr = std::shared_ptr<const FrameTrajectory>;

/// Constant R0, A0.
class InertialFrame final : public FrameTrajectory {
 public:
  explicit InertialFrame(double u = 1.0, const Mat3& R0 = Mat3::Identity(),
                         const Vec3& A0 = Vec3::Zero());
  FrameState state(double t) const override;
  double velocity_sq_integral(double t) const override { return 0.0 * t; }
  bool has_rotation() const override { return false; }

 private:
  Mat3 r0_;
  Vec3 a0_;
};

/// A(t) = -v t with constant R0; reproduces the homogeneous boost.
class BoostFrame final : public FrameTrajectory {
 public:
  explicit BoostFrame(const Vec3& v, double u = 1.0, const Mat3& R0 = Mat3::Identity());
  FrameState state(double t) const override;
  double velocity_sq_integral(double t) const override;
  bool has_rotation() const override { return false; }
  const Vec3& v() const { return v_; }

 private:
  Vec3 v_;
  Mat3 r0_;
};

/// A(t) = a t^2 / 2 with R = I.
class AccelFrame final : public FrameTrajectory {
 public:
  explicit AccelFrame(const Vec3& a, double u = 1.0);
  FrameState state(double t) const override;
  double velocity_sq_integral(double t) const override;
  bool has_rotation() const override { return false; }
  const Vec3& a() const { return a_; }

 private:
  Vec3 a_;
};

/// Frame spinning at constant rate about a fixed axis: R(t) = exp(-rate t K) R0
/// with K the cross-product matrix of the unit axis. Coordinates of inertial
/// points rotate at -rate in this frame.
class RotatingFrame final : public FrameTrajectory {
 public:
  RotatingFrame(const Vec3& axis, double rate, double u = 1.0,
                const Mat3& R0 = Mat3::Identity());
  FrameState state(double t) const override;
  double velocity_sq_integral(double t) const override { return 0.0 * t; }
  double rate() const { return rate_; }
  const Vec3& axis() const { return axis_; }

 private:
  Vec3 axis_;
  double rate_;
  Mat3 r0_;
};

/// A(t) = sum_k c_k t^k with R = I; the integral is evaluated exactly.
class PolyFrame final : public FrameTrajectory {
 public:
  explicit PolyFrame(std::vector<Vec3> coeffs, double u = 1.0);
  FrameState state(double t) const override;
  double velocity_sq_integral(double t) const override;
  bool has_rotation() const override { return false; }
  const std::vector<Vec3>& coeffs() const { return coeffs_; }

 private:
  std::vector<Vec3> coeffs_;
};

/// Composition x' = outer(inner(x)): R = Ro Ri, A = Ro Ai + Ao.
class ComposedFrame final : public FrameTrajectory {
 public:
  ComposedFrame(TrajectoryPtr outer, TrajectoryPtr inner);
  FrameState state(double t) const override;
  bool has_rotation() const override;

 private:
  TrajectoryPtr outer_;
  TrajectoryPtr inner_;
};

/// Adapter over sampled/callable R(t), A(t); derivatives by 5-point central
/// differences. First and second orders use a step of cbrt(eps) times the
/// time scale; the third difference uses the wider step that balances its
/// rounding noise.
class SampledFrame final : public FrameTrajectory {
 public:
  SampledFrame(std::function<Mat3(double)> R, std::function<Vec3(double)> A,
               double time_scale, double u = 1.0);
  FrameState state(double t) const override;

 private:
  std::function<Mat3(double)> rfun_;
  std::function<Vec3(double)> afun_;
  double h12_;
  double h3_;
};

}  // namespace g5
