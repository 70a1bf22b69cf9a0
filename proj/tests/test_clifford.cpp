#include <doctest.h>

#include <random>

#include <g5/clifford.hpp>
#include <g5/evolve.hpp>
#include <g5/random.hpp>

#include "oracles.hpp"

using namespace g5;

namespace {

PauliSpinor random_bandlimited_spinor(const Grid& grid, std::mt19937_64& rng,
                                      int kmax_index, double m = 1.0,
                                      double hbar = 1.0) {
  PauliSpinor s{grid, std::vector<Complex>(grid.size(), Complex(0.0)),
                std::vector<Complex>(grid.size(), Complex(0.0)), 0.0, m, hbar};
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> mode(-kmax_index, kmax_index);
  const Complex i(0.0, 1.0);
  for (int trial = 0; trial < 6; ++trial) {
    Vec3 kvec = Vec3::Zero();
    for (int d = 0; d < grid.dims(); ++d)
      kvec[d] = 2.0 * M_PI / grid.length(d) * mode(rng);
    const Complex cu(gauss(rng), gauss(rng));
    const Complex cd(gauss(rng), gauss(rng));
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const Vec3 x = grid.coords(j);
      const Complex ph = std::exp(i * kvec.dot(x));
      s.up[j] += cu * ph;
      s.dn[j] += cd * ph;
    }
  }
  return s;
}

}  // namespace

TEST_CASE("standard representation satisfies the algebra exactly") {
  const GammaRep& rep = standard_rep();
  CHECK(rep.c == doctest::Approx(std::sqrt(2.0)));
  CHECK(rep.d == doctest::Approx(-std::sqrt(2.0)));
  CHECK(rep.c * rep.d == doctest::Approx(-2.0));

  for (int mu = 0; mu < 5; ++mu)
    for (int nu = 0; nu < 5; ++nu) {
      const CMat4 anti = rep.gamma[mu] * rep.gamma[nu] + rep.gamma[nu] * rep.gamma[mu];
      CHECK((anti - 2.0 * eta()(mu, nu) * CMat4::Identity()).cwiseAbs().maxCoeff() <
            1e-15);
    }
  // gamma^3 and gamma^4 are nilpotent.
  CHECK((rep.gamma[3] * rep.gamma[3]).cwiseAbs().maxCoeff() == 0.0);
  CHECK((rep.gamma[4] * rep.gamma[4]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("boost representation intertwines and is projective") {
  const GammaRep& rep = standard_rep();
  CHECK((boost_rep(Boost5::identity(), rep) - CMat4::Identity()).cwiseAbs().maxCoeff() <
        1e-15);

  // Pure rotation about z: block-diagonal half-angle rotor.
  const double theta = 0.73;
  const Boost5 rz = Boost5::pure_rotation(rotation_about(Vec3::UnitZ(), theta));
  const CMat4 trot = boost_rep(rz, rep);
  const Complex i(0.0, 1.0);
  const CMat2 expect = std::cos(theta / 2) * CMat2::Identity() -
                       i * std::sin(theta / 2) * pauli_matrices()[2];
  CHECK((trot.block<2, 2>(0, 0) - expect).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((trot.block<2, 2>(2, 2) - expect).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(trot.block<2, 2>(0, 2).cwiseAbs().maxCoeff() == 0.0);

  // Pure velocity boost: unipotent, (T - 1)^2 = 0.
  const Boost5 bv = Boost5::pure_boost(Vec3(0.4, -1.2, 0.9));
  const CMat4 tv = boost_rep(bv, rep);
  const CMat4 n = tv - CMat4::Identity();
  CHECK((n * n).cwiseAbs().maxCoeff() < 1e-15);

  std::mt19937_64 rng(61);
  for (int k = 0; k < 200; ++k) {
    const Boost5 b = random_boost(rng);
    const CMat4 t = boost_rep(b, rep);
    CHECK(std::abs(std::abs(t.determinant()) - 1.0) < 1e-12);
    const CMat4 tinv = t.inverse();
    const Mat5 l = matrix5(b);
    for (int mu = 0; mu < 5; ++mu) {
      CMat4 rhs = CMat4::Zero();
      for (int nu = 0; nu < 5; ++nu) rhs += l(mu, nu) * rep.gamma[nu];
      CHECK((tinv * rep.gamma[mu] * t - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  // Representation property up to a global phase.
  for (int k = 0; k < 50; ++k) {
    const Boost5 b1 = random_boost(rng);
    const Boost5 b2 = random_boost(rng);
    const CMat4 prod = boost_rep(b1, rep) * boost_rep(b2, rep);
    const CMat4 direct = boost_rep(compose(b1, b2), rep);
    const CMat4 ratio = direct.inverse() * prod;
    const Complex lambda = ratio(0, 0);
    CHECK(std::abs(std::abs(lambda) - 1.0) < 1e-12);
    CHECK((ratio - lambda * CMat4::Identity()).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("eliminate_lower closed forms") {
  const GammaRep& rep = standard_rep();
  const Grid grid({64}, {8.0});
  const double m = 1.4, u = 1.7, hbar = 0.9;

  PauliSpinor constant{grid, std::vector<Complex>(grid.size(), Complex(0.3, -0.1)),
                       std::vector<Complex>(grid.size(), Complex(0.2, 0.5)), 0.0, m,
                       hbar};
  const PauliSpinor zero = eliminate_lower(constant, u, rep);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    CHECK(std::abs(zero.up[j]) < 1e-13);
    CHECK(std::abs(zero.dn[j]) < 1e-13);
  }

  // Plane wave: psi2 = (sigma.p)/(m u d) psi1.
  const double p = hbar * 2.0 * M_PI * 3.0 / grid.length(0);
  PauliSpinor wave = constant;
  const Complex i(0.0, 1.0);
  const Complex w1(0.8, 0.1), w2(-0.3, 0.4);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Complex ph = std::exp(i * p * grid.x(0, j) / hbar);
    wave.up[j] = w1 * ph;
    wave.dn[j] = w2 * ph;
  }
  const PauliSpinor lower = eliminate_lower(wave, u, rep);
  const CMat2 sp = pauli_dot(Vec3(p, 0, 0)) / (m * u * rep.d);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const Complex ph = std::exp(i * p * grid.x(0, j) / hbar);
    CHECK(std::abs(lower.up[j] - (sp(0, 0) * w1 + sp(0, 1) * w2) * ph) < 1e-12);
    CHECK(std::abs(lower.dn[j] - (sp(1, 0) * w1 + sp(1, 1) * w2) * ph) < 1e-12);
  }
}

namespace {

PauliSpinor schrodinger_rhs(const PauliSpinor& psi) {
  PauliSpinor out = psi;
  const Complex coef = Complex(0.0, 1.0) * psi.hbar / (2.0 * psi.m);
  const auto lup = laplacian(psi.grid, psi.up);
  const auto ldn = laplacian(psi.grid, psi.dn);
  for (std::size_t j = 0; j < psi.grid.size(); ++j) {
    out.up[j] = coef * lup[j];
    out.dn[j] = coef * ldn[j];
  }
  return out;
}

}  // namespace

TEST_CASE("free reduction: the pair solves the first-order system") {
  const GammaRep& rep = standard_rep();
  const Grid grid({256}, {16.0});
  std::mt19937_64 rng(67);
  const double u = 1.3;
  for (int k = 0; k < 10; ++k) {
    PauliSpinor psi1 = random_bandlimited_spinor(grid, rng, 20, 1.2, 0.8);
    const PauliSpinor psi2 = eliminate_lower(psi1, u, rep);
    const PauliSpinor d1 = schrodinger_rhs(psi1);
    const PauliSpinor d2 = schrodinger_rhs(psi2);
    const DiracResidual r = dirac_residual(psi1, psi2, d1, d2, u, rep);
    CHECK(r.max_abs() < 1e-10);
  }

  // Zero state and constant state are exact solutions.
  PauliSpinor flat{grid, std::vector<Complex>(grid.size(), Complex(1.0)),
                   std::vector<Complex>(grid.size(), Complex(0.0)), 0.0, 1.0, 1.0};
  PauliSpinor still = flat;
  for (auto& z : still.up) z = 0.0;
  const DiracResidual r0 = dirac_residual(flat, still, still, still, 1.0, rep);
  CHECK(r0.max_abs() < 1e-14);
}

TEST_CASE("dirac_residual rejects mismatched grids") {
  const GammaRep& rep = standard_rep();
  const Grid g1({64}, {8.0}), g2({32}, {8.0});
  PauliSpinor a{g1, std::vector<Complex>(64), std::vector<Complex>(64), 0, 1, 1};
  PauliSpinor b{g2, std::vector<Complex>(32), std::vector<Complex>(32), 0, 1, 1};
  CHECK_THROWS_AS(dirac_residual(a, b, a, a, 1.0, rep), std::invalid_argument);
}

TEST_CASE("coupled operator yields the magnetic moment term") {
  const GammaRep& rep = standard_rep();
  const double b_field = 1.1, e = 0.9, c = 1.3, m = 1.2, hbar = 0.8;
  const Grid grid({128, 128}, {16.0, 16.0});

  EmPotentials em;
  em.A = [b_field](const Vec3& x) {
    return Vec3(-0.5 * b_field * x.y(), 0.5 * b_field * x.x(), 0.0);
  };
  em.A0 = [](const Vec3&) { return 0.0; };
  em.e = e;
  em.c = c;
  const PauliCouplingOperator op = pauli_from_coupling(em, 1.0, rep);

  // Spin-free magnetic operator applied per component, different code route.
  HamiltonianSpec sf;
  EmTerm uniform;
  uniform.B = Vec3(0, 0, b_field);
  uniform.e = e;
  uniform.c = c;
  sf.em = uniform;

  std::mt19937_64 rng(71);
  const double envelope_sigma = grid.length(0) / 24.0;
  double worst = 0.0;
  for (int k = 0; k < 25; ++k) {
    PauliSpinor psi = random_bandlimited_spinor(grid, rng, 4, m, hbar);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const double env =
          std::exp(-grid.coords(j).squaredNorm() / (4.0 * envelope_sigma * envelope_sigma));
      psi.up[j] *= env;
      psi.dn[j] *= env;
    }
    const PauliSpinor full = op.apply(psi);
    ScalarWavefunction up{grid, psi.up, 0.0, m, hbar};
    ScalarWavefunction dn{grid, psi.dn, 0.0, m, hbar};
    const auto sf_up = apply_hamiltonian(up, sf, 0.0);
    const auto sf_dn = apply_hamiltonian(dn, sf, 0.0);
    const double coef = e * hbar * b_field / (2.0 * m * c);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      // Expected difference: -(e hbar / 2 m c) B sigma_z psi.
      const Complex want_up = -coef * psi.up[j];
      const Complex want_dn = +coef * psi.dn[j];
      num += std::norm(full.up[j] - sf_up[j] - want_up) +
             std::norm(full.dn[j] - sf_dn[j] - want_dn);
      den += std::norm(want_up) + std::norm(want_dn);
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  CHECK(worst < 1e-8);

  // Scalar potential alone acts additively.
  EmPotentials pot;
  pot.A = [](const Vec3&) { return Vec3::Zero(); };
  pot.A0 = [](const Vec3& x) { return 0.3 * x.x() * x.x(); };
  pot.e = e;
  pot.c = c;
  const PauliCouplingOperator op2 = pauli_from_coupling(pot, 1.0, rep);
  PauliSpinor psi = random_bandlimited_spinor(grid, rng, 3, m, hbar);
  const PauliSpinor got = op2.apply(psi);
  const auto lup = laplacian(grid, psi.up);
  for (std::size_t j = 0; j < grid.size(); j += 997) {
    const Complex kinetic = -hbar * hbar / (2.0 * m) * lup[j];
    const Complex want = kinetic + e * pot.A0(grid.coords(j)) * psi.up[j];
    CHECK(std::abs(got.up[j] - want) < 1e-9);
  }
}
