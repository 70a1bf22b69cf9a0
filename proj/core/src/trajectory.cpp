#include <g5/trajectory.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace g5 {
namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; symmetric).
constexpr int kGlHalf = 8;
constexpr double kGlNode[kGlHalf] = {
    0.0,
    0.2011940939974345,
    0.3941513470775634,
    0.5709721726085388,
    0.7244177313601700,
    0.8482065834104272,
    0.9372733924007059,
    0.9879925180204854,
};
constexpr double kGlWeight[kGlHalf] = {
    0.2025782419255613,
    0.1984314853271116,
    0.1861610000155622,
    0.1662692058169939,
    0.1395706779261543,
    0.1071592204671719,
    0.0703660474881081,
    0.0307532419961173,
};

double panel_gauss(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = kGlWeight[0] * f(mid);
  for (int i = 1; i < kGlHalf; ++i) {
    const double d = half * kGlNode[i];
    sum += kGlWeight[i] * (f(mid - d) + f(mid + d));
  }
  return half * sum;
}

// Composite fixed-panel quadrature, doubling the panel count until the
// relative change drops below rtol. Fixed panel layout keeps the result
// smooth in the upper limit, which matters when callers differentiate it.
double integrate_to(const std::function<double(double)>& f, double t, double rtol) {
  if (t == 0.0) return 0.0;
  int panels = 16;
  auto run = [&](int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += panel_gauss(f, t * i / n, t * (i + 1) / n);
    return acc;
  };
  double prev = run(panels);
  for (int level = 0; level < 12; ++level) {
    panels *= 2;
    const double cur = run(panels);
    if (std::abs(cur - prev) <= rtol * std::abs(cur) + 1e-14) return cur;
    prev = cur;
  }
  throw std::runtime_error("velocity_sq_integral: quadrature did not converge");
}

}  // namespace

FrameTrajectory::FrameTrajectory(double u) : u_(u) {
  if (!(u > 0.0))
    throw std::invalid_argument("FrameTrajectory: scale u must be positive");
}

double FrameTrajectory::velocity_sq_integral(double t) const {
  auto integrand = [this](double tau) {
    return state(tau).atilde_d().squaredNorm();
  };
  return integrate_to(integrand, t, 1e-10);
}

double FrameTrajectory::x5_shift(const Vec3& x, double t) const {
  const FrameState s = state(t);
  const Vec3 ad = s.atilde_d();
  return (ad.dot(x) + s.atilde().dot(ad) - 0.5 * velocity_sq_integral(t)) / u_;
}

InertialFrame::InertialFrame(double u, const Mat3& R0, const Vec3& A0)
    : FrameTrajectory(u), r0_(R0), a0_(A0) {}

FrameState InertialFrame::state(double) const {
  FrameState s;
  s.R = r0_;
  s.A = a0_;
  return s;
}

BoostFrame::BoostFrame(const Vec3& v, double u, const Mat3& R0)
    : FrameTrajectory(u), v_(v), r0_(R0) {}

FrameState BoostFrame::state(double t) const {
  FrameState s;
  s.R = r0_;
  s.A = -v_ * t;
  s.Ad = -v_;
  return s;
}

double BoostFrame::velocity_sq_integral(double t) const {
  return v_.squaredNorm() * t;
}

AccelFrame::AccelFrame(const Vec3& a, double u) : FrameTrajectory(u), a_(a) {}

FrameState AccelFrame::state(double t) const {
  FrameState s;
  s.A = 0.5 * a_ * t * t;
  s.Ad = a_ * t;
  s.Add = a_;
  return s;
}

double AccelFrame::velocity_sq_integral(double t) const {
  return a_.squaredNorm() * t * t * t / 3.0;
}

RotatingFrame::RotatingFrame(const Vec3& axis, double rate, double u, const Mat3& R0)
    : FrameTrajectory(u), axis_(axis.normalized()), rate_(rate), r0_(R0) {
  if (axis.norm() == 0.0)
    throw std::invalid_argument("RotatingFrame: axis must be nonzero");
}

FrameState RotatingFrame::state(double t) const {
  const Mat3 w = -rate_ * hat(axis_);
  FrameState s;
  s.R = rotation_about(axis_, -rate_ * t) * r0_;
  s.Rd = w * s.R;
  s.Rdd = w * s.Rd;
  s.Rddd = w * s.Rdd;
  return s;
}

PolyFrame::PolyFrame(std::vector<Vec3> coeffs, double u)
    : FrameTrajectory(u), coeffs_(std::move(coeffs)) {}

FrameState PolyFrame::state(double t) const {
  FrameState s;
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    s.A = s.A * t + coeffs_[k];
    if (k >= 1) s.Ad = s.Ad * t + static_cast<double>(k) * coeffs_[k];
    if (k >= 2) s.Add = s.Add * t + static_cast<double>(k * (k - 1)) * coeffs_[k];
    if (k >= 3)
      s.Addd = s.Addd * t + static_cast<double>(k * (k - 1) * (k - 2)) * coeffs_[k];
  }
  return s;
}

double PolyFrame::velocity_sq_integral(double t) const {
  // |A'(t)|^2 is a polynomial; integrate its coefficients exactly.
  const int n = static_cast<int>(coeffs_.size());
  if (n < 2) return 0.0;
  std::vector<Vec3> d(n - 1);
  for (int k = 1; k < n; ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  std::vector<double> prod(2 * d.size() - 1, 0.0);
  for (size_t i = 0; i < d.size(); ++i)
    for (size_t j = 0; j < d.size(); ++j) prod[i + j] += d[i].dot(d[j]);
  double acc = 0.0;
  for (int k = static_cast<int>(prod.size()) - 1; k >= 0; --k)
    acc = acc * t + prod[k] / (k + 1);
  return acc * t;
}

ComposedFrame::ComposedFrame(TrajectoryPtr outer, TrajectoryPtr inner)
    : FrameTrajectory(outer ? outer->u() : 1.0), outer_(std::move(outer)),
      inner_(std::move(inner)) {
  if (!outer_ || !inner_)
    throw std::invalid_argument("ComposedFrame: null component");
  if (outer_->u() != inner_->u())
    throw std::invalid_argument("ComposedFrame: mismatched velocity scales");
}

FrameState ComposedFrame::state(double t) const {
  const FrameState o = outer_->state(t);
  const FrameState i = inner_->state(t);
  FrameState s;
  s.R = o.R * i.R;
  s.Rd = o.Rd * i.R + o.R * i.Rd;
  s.Rdd = o.Rdd * i.R + 2.0 * o.Rd * i.Rd + o.R * i.Rdd;
  s.Rddd = o.Rddd * i.R + 3.0 * o.Rdd * i.Rd + 3.0 * o.Rd * i.Rdd + o.R * i.Rddd;
  s.A = o.R * i.A + o.A;
  s.Ad = o.Rd * i.A + o.R * i.Ad + o.Ad;
  s.Add = o.Rdd * i.A + 2.0 * o.Rd * i.Ad + o.R * i.Add + o.Add;
  s.Addd = o.Rddd * i.A + 3.0 * o.Rdd * i.Ad + 3.0 * o.Rd * i.Add + o.R * i.Addd + o.Addd;
  return s;
}

bool ComposedFrame::has_rotation() const {
  return outer_->has_rotation() || inner_->has_rotation();
}

SampledFrame::SampledFrame(std::function<Mat3(double)> R, std::function<Vec3(double)> A,
                           double time_scale, double u)
    : FrameTrajectory(u), rfun_(std::move(R)), afun_(std::move(A)) {
  const double eps = std::numeric_limits<double>::epsilon();
  h12_ = std::cbrt(eps) * time_scale;
  h3_ = std::pow(eps, 1.0 / 6.0) * time_scale;
}

namespace {

template <typename T, typename F>
void central_stencils(const F& f, double t, double h12, double h3, T& d1, T& d2, T& d3) {
  const T p1 = f(t + h12), m1 = f(t - h12), p2 = f(t + 2 * h12), m2 = f(t - 2 * h12);
  d1 = (m2 - p2 + 8.0 * (p1 - m1)) / (12.0 * h12);
  d2 = (-p2 + 16.0 * p1 - 30.0 * f(t) + 16.0 * m1 - m2) / (12.0 * h12 * h12);
  const T q1 = f(t + h3), n1 = f(t - h3), q2 = f(t + 2 * h3), n2 = f(t - 2 * h3);
  d3 = (q2 - 2.0 * q1 + 2.0 * n1 - n2) / (2.0 * h3 * h3 * h3);
}

}  // namespace

FrameState SampledFrame::state(double t) const {
  FrameState s;
  s.R = rfun_(t);
  s.A = afun_(t);
  central_stencils<Mat3>(rfun_, t, h12_, h3_, s.Rd, s.Rdd, s.Rddd);
  central_stencils<Vec3>(afun_, t, h12_, h3_, s.Ad, s.Add, s.Addd);
  return s;
}

}  // namespace g5
