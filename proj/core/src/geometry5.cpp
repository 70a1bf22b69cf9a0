#include <g5/geometry5.hpp>

#include <stdexcept>

#include <g5/clifford.hpp>

namespace g5 {

Event5 apply_g5p(const FrameTrajectory& tr, const Event5& e) {
  const double t = e.time(tr.u());
  const FrameState s = tr.state(t);
  Event5 out;
  out.x = s.R * e.x + s.A;
  out.x4 = e.x4;
  out.x5 = e.x5 + tr.x5_shift(e.x, t);
  return out;
}

Mat5 metric_upper(const FrameTrajectory& tr, const Vec3& xp, double t) {
  const FrameState s = tr.state(t);
  const double u = tr.u();
  Mat5 g = eta();
  const Vec3 gi5 = -(s.omega_mat() * xp) / u;
  g.block<3, 1>(0, 4) = gi5;
  g.block<1, 3>(4, 0) = gi5.transpose();
  g(4, 4) = -2.0 * (s.R * s.atilde_dd()).dot(xp) / (u * u);
  return g;
}

Mat5 lower_metric(const Mat5& g_upper) {
  Eigen::FullPivLU<Mat5> lu(g_upper);
  if (!lu.isInvertible())
    throw std::invalid_argument("lower_metric: singular metric");
  Mat5 inv = lu.inverse();
  if ((g_upper * inv - Mat5::Identity()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::runtime_error("lower_metric: inversion residual too large");
  return inv;
}

Connection5 connection(const FrameTrajectory& tr, const Vec3& xp, double t) {
  const FrameState s = tr.state(t);
  const double u = tr.u();
  const double u2 = u * u;
  Connection5 c{};

  const Mat3 rrd = s.R * s.Rd.transpose();
  const Vec3 radd = s.R * s.atilde_dd();
  const Vec3 gi44 = (s.R * s.Rdd.transpose() * xp - radd) / u2;
  const Vec3 g54 = -radd / u2;
  const double g544 =
      -(2.0 * (s.Rd * s.atilde_dd()) + s.R * s.atilde_ddd()).dot(xp) / (u2 * u);

  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      c.gamma[i][3][j] = rrd(i, j) / u;
      c.gamma[i][j][3] = c.gamma[i][3][j];
    }
    c.gamma[i][3][3] = gi44[i];
    c.gamma[4][3][i] = g54[i];
    c.gamma[4][i][3] = g54[i];
  }
  c.gamma[4][3][3] = g544;
  return c;
}

SpinGauge SpinGauge::uniform(const Vec3& axis, double rate) {
  const Vec3 n = axis.normalized();
  return SpinGauge{
      [n, rate](double t) -> Mat3 { return rotation_about(n, rate * t); },
      [n, rate](double t) -> Mat3 {
        return rate * hat(n) * rotation_about(n, rate * t);
      }};
}

SpinGauge SpinGauge::from_trajectory(TrajectoryPtr tr) {
  return SpinGauge{[tr](double t) { return tr->state(t).R; },
                   [tr](double t) { return tr->state(t).Rd; }};
}

namespace {

Mat5 frame_mixer(const Mat3& rt) {
  Mat5 s = Mat5::Identity();
  s.block<3, 3>(0, 0) = rt.transpose();
  return s;
}

Mat5 jacobian_funfbein(const FrameState& s, double u, const Vec3& xp) {
  const Vec3 x = s.R.transpose() * (xp - s.A);
  const Vec3 ad = s.atilde_d();
  Mat5 h = Mat5::Zero();
  h.block<3, 3>(0, 0) = s.R;
  h.block<3, 1>(0, 3) = (s.omega_mat() * (xp - s.A) + s.Ad) / u;
  h(3, 3) = 1.0;
  h.block<1, 3>(4, 0) = ad.transpose() / u;
  h(4, 3) = (s.atilde_dd().dot(x) + 0.5 * ad.squaredNorm() + s.atilde().dot(s.atilde_dd())) /
            (u * u);
  h(4, 4) = 1.0;
  return h;
}

// d/dt of the Jacobian-gauge funfbein at fixed x'.
Mat5 jacobian_funfbein_dt(const FrameState& s, double u, const Vec3& xp) {
  const Vec3 x = s.R.transpose() * (xp - s.A);
  const Vec3 xdot = s.Rd.transpose() * (xp - s.A) - s.R.transpose() * s.Ad;
  const Mat3 omega_dot = s.Rdd * s.R.transpose() + s.Rd * s.Rd.transpose();
  const Vec3 ad = s.atilde_d();
  const Vec3 add = s.atilde_dd();
  const Vec3 addd = s.atilde_ddd();
  Mat5 dh = Mat5::Zero();
  dh.block<3, 3>(0, 0) = s.Rd;
  dh.block<3, 1>(0, 3) =
      (omega_dot * (xp - s.A) - s.omega_mat() * s.Ad + s.Add) / u;
  dh.block<1, 3>(4, 0) = add.transpose() / u;
  dh(4, 3) = (addd.dot(x) + add.dot(xdot) + 2.0 * ad.dot(add) + s.atilde().dot(addd)) /
             (u * u);
  return dh;
}

// Spatial derivative d/dx'_k of the Jacobian-gauge funfbein.
Mat5 jacobian_funfbein_dx(const FrameState& s, double u, int k) {
  Mat5 dh = Mat5::Zero();
  const Mat3 omega = s.omega_mat();
  for (int i = 0; i < 3; ++i) dh(i, 3) = omega(i, k) / u;
  dh(4, 3) = (s.R * s.atilde_dd())[k] / (u * u);
  return dh;
}

}  // namespace

Mat5 funfbein(const FrameTrajectory& tr, const Vec3& xp, double t,
              FunfbeinGauge gauge, const SpinGauge* rtilde) {
  const FrameState s = tr.state(t);
  Mat5 h = jacobian_funfbein(s, tr.u(), xp);
  if (gauge == FunfbeinGauge::Rotated) {
    if (!rtilde) throw std::invalid_argument("funfbein: Rotated gauge needs a rotation");
    h = h * frame_mixer(rtilde->R(t));
  }
  return h;
}

std::array<CMat4, 5> spin_connection(const FrameTrajectory& tr, const Vec3& xp,
                                     double t, FunfbeinGauge gauge,
                                     const GammaRep& rep, const SpinGauge* rtilde) {
  const FrameState s = tr.state(t);
  const double u = tr.u();
  const Mat5 g_low = lower_metric(metric_upper(tr, xp, t));
  const Connection5 gam = connection(tr, xp, t);

  Mat5 h = jacobian_funfbein(s, u, xp);
  std::array<Mat5, 5> dh;  // dh[lam] = partial'_lam h
  for (int k = 0; k < 3; ++k) dh[k] = jacobian_funfbein_dx(s, u, k);
  dh[3] = jacobian_funfbein_dt(s, u, xp) / u;
  dh[4] = Mat5::Zero();

  if (gauge == FunfbeinGauge::Rotated) {
    if (!rtilde)
      throw std::invalid_argument("spin_connection: Rotated gauge needs a rotation");
    const Mat5 mix = frame_mixer(rtilde->R(t));
    Mat5 mix_dot = Mat5::Zero();
    mix_dot.block<3, 3>(0, 0) = rtilde->Rd(t).transpose();
    for (int lam = 0; lam < 5; ++lam) dh[lam] = dh[lam] * mix;
    dh[3] += h * mix_dot / u;
    h = h * mix;
  }

  // Precompute commutators [gamma^a, gamma^b].
  std::array<std::array<CMat4, 5>, 5> comm;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      comm[a][b] = rep.gamma[a] * rep.gamma[b] - rep.gamma[b] * rep.gamma[a];

  std::array<CMat4, 5> out;
  for (int lam = 0; lam < 5; ++lam) {
    Mat5 cov = dh[lam];  // D_lam h^nu_b
    for (int nu = 0; nu < 5; ++nu)
      for (int b = 0; b < 5; ++b)
        for (int rho = 0; rho < 5; ++rho)
          cov(nu, b) += gam(nu, lam, rho) * h(rho, b);
    const Mat5 m = h.transpose() * g_low * cov;
    CMat4 acc = CMat4::Zero();
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        if (m(a, b) != 0.0) acc += m(a, b) * comm[a][b];
    out[lam] = acc / 8.0;
  }
  return out;
}

}  // namespace g5
