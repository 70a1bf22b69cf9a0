#include <g5/hamiltonian.hpp>

#include <stdexcept>

#include <g5/geometry5.hpp>

namespace g5 {

namespace {

Mat3 checked_omega(const FrameState& s) {
  const Mat3 om = s.omega_mat();
  if ((om + om.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw std::runtime_error("h_inert: frame generator is not antisymmetric");
  return om;
}

}  // namespace

Vec3 h_inert_linear_w(const FrameTrajectory& tr, double m, double t) {
  const FrameState s = tr.state(t);
  return -m * (s.R * s.atilde_dd());
}

Vec3 h_inert_rotation_omega(const FrameTrajectory& tr, double t) {
  return -axial(checked_omega(tr.state(t)));
}

HamiltonianSpec h_inert(TrajectoryPtr tr, double m) {
  HamiltonianSpec spec;
  // Probe a few times to prune identically vanishing terms.
  const double probes[] = {0.0, 0.318309886, 0.636619772, 1.27323954, 2.0};
  bool any_accel = false, any_rot = false;
  for (double t : probes) {
    const FrameState s = tr->state(t);
    if ((s.R * s.atilde_dd()).norm() > 0.0) any_accel = true;
    if (s.Rd.cwiseAbs().maxCoeff() > 0.0) any_rot = true;
  }
  if (any_accel) {
    LinearPotentialTerm lin;
    lin.w_t = [tr, m](double t) { return h_inert_linear_w(*tr, m, t); };
    spec.linear.push_back(std::move(lin));
  }
  if (any_rot) {
    RotationTerm rot;
    rot.omega_t = [tr](double t) { return h_inert_rotation_omega(*tr, t); };
    spec.rotation.push_back(std::move(rot));
  }
  return spec;
}

CMat2 h_spin(const SpinGauge& rtilde, double t, double hbar) {
  const Mat3 w = rtilde.Rd(t) * rtilde.R(t).transpose();
  const auto& sigma = pauli_matrices();
  CMat2 out = CMat2::Zero();
  // (hbar/4) W_{lk} eps_{klm} sigma_m with W = Rtd Rt^T.
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l)
      for (int mm = 0; mm < 3; ++mm) {
        const int eps = (k == l || l == mm || k == mm)
                            ? 0
                            : (((l - k + 3) % 3 == 1 && (mm - l + 3) % 3 == 1) ? 1 : -1);
        if (eps != 0) out += 0.25 * hbar * eps * w(l, k) * sigma[mm];
      }
  return out;
}

SpinMatrixTerm h_spin_term(const SpinGauge& rtilde, double hbar) {
  SpinMatrixTerm term;
  term.M_t = [rtilde, hbar](double t) { return h_spin(rtilde, t, hbar); };
  return term;
}

GeneralPotentialTerm newton_coupling(std::function<double(const Vec3&)> phi, double m) {
  return GeneralPotentialTerm{
      [phi = std::move(phi), m](const Vec3& x) { return m * phi(x); }};
}

HamiltonianSpec em_coupling(const EmTerm& em, double m, double hbar, bool spinor) {
  HamiltonianSpec spec;
  spec.em = em;
  if (spinor && em.B.norm() > 0.0) {
    SpinMatrixTerm zeeman;
    zeeman.M = -(em.e * hbar / (2.0 * m * em.c)) * pauli_dot(em.B);
    spec.spin.push_back(std::move(zeeman));
  }
  return spec;
}

}  // namespace g5
