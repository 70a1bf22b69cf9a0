#include <g5/clifford.hpp>

#include <cmath>
#include <stdexcept>

#include <Eigen/Geometry>

namespace g5 {

const GammaRep& standard_rep() {
  static const GammaRep rep = [] {
    GammaRep r;
    r.c = std::sqrt(2.0);
    r.d = -std::sqrt(2.0);
    const auto& sigma = pauli_matrices();
    for (int i = 0; i < 3; ++i) {
      CMat4 g = CMat4::Zero();
      g.block<2, 2>(0, 0) = sigma[i];
      g.block<2, 2>(2, 2) = -sigma[i];
      r.gamma[i] = g;
    }
    CMat4 g3 = CMat4::Zero();
    g3.block<2, 2>(2, 0) = r.c * CMat2::Identity();
    r.gamma[3] = g3;
    CMat4 g4 = CMat4::Zero();
    g4.block<2, 2>(0, 2) = r.d * CMat2::Identity();
    r.gamma[4] = g4;
    return r;
  }();
  return rep;
}

CMat4 boost_rep(const Boost5& b, const GammaRep& rep) {
  // Lambda(R, v) = Lambda(v) Lambda(R); T composes in the same order.
  const Eigen::AngleAxisd aa(b.R());
  const Complex i(0.0, 1.0);
  const CMat2 u2 = std::cos(0.5 * aa.angle()) * CMat2::Identity() -
                   i * std::sin(0.5 * aa.angle()) * pauli_dot(aa.axis());
  CMat4 t_rot = CMat4::Zero();
  t_rot.block<2, 2>(0, 0) = u2;
  t_rot.block<2, 2>(2, 2) = u2;

  CMat4 t_vel = CMat4::Identity();
  t_vel.block<2, 2>(2, 0) = (rep.c / (2.0 * b.u())) * pauli_dot(b.v());

  return t_vel * t_rot;
}

namespace {

struct SpinorPair {
  std::vector<Complex> up, dn;
};

// sigma . (grad - i kappa A) acting on a two-component field.
SpinorPair sigma_dot_d(const Grid& grid, const std::vector<Complex>& up,
                       const std::vector<Complex>& dn, double kappa,
                       const std::function<Vec3(const Vec3&)>& a_field) {
  const std::size_t n = grid.size();
  std::array<std::vector<Complex>, 3> dup, ddn;
  for (int d = 0; d < 3; ++d) {
    if (d < grid.dims()) {
      dup[d] = gradient_axis(grid, up, d);
      ddn[d] = gradient_axis(grid, dn, d);
    } else {
      dup[d].assign(n, Complex(0.0));
      ddn[d].assign(n, Complex(0.0));
    }
  }
  if (kappa != 0.0 && a_field) {
    const Complex i(0.0, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      const Vec3 a = a_field(grid.coords(j));
      for (int d = 0; d < 3; ++d) {
        dup[d][j] -= i * kappa * a[d] * up[j];
        ddn[d][j] -= i * kappa * a[d] * dn[j];
      }
    }
  }
  SpinorPair out;
  out.up.resize(n);
  out.dn.resize(n);
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < n; ++j) {
    out.up[j] = dup[2][j] + ddn[0][j] - i * ddn[1][j];
    out.dn[j] = dup[0][j] + i * dup[1][j] - ddn[2][j];
  }
  return out;
}

}  // namespace

PauliSpinor eliminate_lower(const PauliSpinor& psi1, double u, const GammaRep& rep) {
  const SpinorPair sd = sigma_dot_d(psi1.grid, psi1.up, psi1.dn, 0.0, nullptr);
  const Complex coef = psi1.hbar / (Complex(0.0, 1.0) * psi1.m * u * rep.d);
  PauliSpinor psi2 = psi1;
  for (std::size_t j = 0; j < psi1.grid.size(); ++j) {
    psi2.up[j] = coef * sd.up[j];
    psi2.dn[j] = coef * sd.dn[j];
  }
  return psi2;
}

double DiracResidual::max_abs() const {
  double worst = 0.0;
  for (const auto& c : comp)
    for (const auto& z : c) worst = std::max(worst, std::abs(z));
  return worst;
}

DiracResidual dirac_residual(const PauliSpinor& psi1, const PauliSpinor& psi2,
                             const PauliSpinor& dpsi1_dt, const PauliSpinor& dpsi2_dt,
                             double u, const GammaRep& rep,
                             const std::optional<EmPotentials>& em) {
  if (!(psi1.grid == psi2.grid) || !(psi1.grid == dpsi1_dt.grid) ||
      !(psi1.grid == dpsi2_dt.grid))
    throw std::invalid_argument("dirac_residual: grid mismatch between components");
  const Grid& grid = psi1.grid;
  const std::size_t n = grid.size();
  const double m = psi1.m, hbar = psi1.hbar;
  const Complex i(0.0, 1.0);

  const double kappa = em ? em->e / (em->c * hbar) : 0.0;
  const auto a_field = em ? em->A : std::function<Vec3(const Vec3&)>();

  const SpinorPair d1 = sigma_dot_d(grid, psi1.up, psi1.dn, kappa, a_field);
  const SpinorPair d2 = sigma_dot_d(grid, psi2.up, psi2.dn, kappa, a_field);

  DiracResidual r;
  for (auto& c : r.comp) c.resize(n);
  const Complex mass_term = i * m * u * rep.d / hbar;
  for (std::size_t j = 0; j < n; ++j) {
    // gamma^i D_i + gamma^3 D_4 + gamma^4 D_5 on (psi1, psi2).
    Complex t1_up = dpsi1_dt.up[j], t1_dn = dpsi1_dt.dn[j];
    if (em) {
      const double a0 = em->A0(grid.coords(j));
      t1_up += i * em->e * a0 / hbar * psi1.up[j];
      t1_dn += i * em->e * a0 / hbar * psi1.dn[j];
    }
    r.comp[0][j] = d1.up[j] - mass_term * psi2.up[j];
    r.comp[1][j] = d1.dn[j] - mass_term * psi2.dn[j];
    r.comp[2][j] = -d2.up[j] + rep.c / u * t1_up;
    r.comp[3][j] = -d2.dn[j] + rep.c / u * t1_dn;
  }
  (void)dpsi2_dt;
  return r;
}

PauliCouplingOperator::PauliCouplingOperator(EmPotentials em, double u,
                                             const GammaRep& rep)
    : em_(std::move(em)), u_(u), d_(rep.d) {}

PauliSpinor PauliCouplingOperator::apply(const PauliSpinor& psi) const {
  const Grid& grid = psi.grid;
  const double hbar = psi.hbar;
  const double kappa = em_.e / (em_.c * hbar);
  const Complex i(0.0, 1.0);

  // Eliminate the lower spinor: psi2 = hbar/(i m u d) sigma.D psi1 ...
  const SpinorPair s1 = sigma_dot_d(grid, psi.up, psi.dn, kappa, em_.A);
  const Complex coef2 = hbar / (i * psi.m * u_ * d_);
  std::vector<Complex> p2u(grid.size()), p2d(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    p2u[j] = coef2 * s1.up[j];
    p2d[j] = coef2 * s1.dn[j];
  }
  // ... and substitute back: H psi1 = (u d / 2) sigma.pi psi2 + e A0 psi1.
  const SpinorPair s2 = sigma_dot_d(grid, p2u, p2d, kappa, em_.A);
  const Complex coefh = 0.5 * u_ * d_ * (-i * hbar);
  PauliSpinor out = psi;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double a0 = em_.A0 ? em_.A0(grid.coords(j)) : 0.0;
    out.up[j] = coefh * s2.up[j] + em_.e * a0 * psi.up[j];
    out.dn[j] = coefh * s2.dn[j] + em_.e * a0 * psi.dn[j];
  }
  return out;
}

PauliCouplingOperator pauli_from_coupling(const EmPotentials& em, double u,
                                          const GammaRep& rep) {
  return PauliCouplingOperator(em, u, rep);
}

}  // namespace g5
