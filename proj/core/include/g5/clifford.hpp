// 4x4 realization of the degenerate five-gamma algebra
// {gamma^mu, gamma^nu} = 2 eta^{mu nu}, the spinor representation T of group
// elements, elimination of the dependent lower spinor, residual of the
// first-order spinor equation, and the coupled-operator construction that
// yields the spin-magnetic term.
#pragma once

#include <array>
#include <functional>
#include <optional>

#include <g5/fields.hpp>
#include <g5/group5.hpp>

namespace g5 {

struct GammaRep {
  std::array<CMat4, 5> gamma;
  /// Block constants of gamma^3 (lower-left) and gamma^4 (upper-right);
  /// their product is -2. The second one enters the lower-spinor elimination.
  double c = 0.0;
  double d = 0.0;
};

/// The fixed representation: gamma^i = diag(sigma_i, -sigma_i),
/// gamma^3 = [[0,0],[c I,0]], gamma^4 = [[0,d I],[0,0]] with c = sqrt(2),
/// d = -sqrt(2). All anticommutation relations hold exactly.
const GammaRep& standard_rep();

/// Spinor representative: T^{-1} gamma^mu T = Lambda^mu_nu gamma^nu, built as
/// the exponential of the generator (1/8) omega_{ab} [gamma^a, gamma^b] for
/// the boost and rotation factors separately; det T = 1.
CMat4 boost_rep(const Boost5& b, const GammaRep& rep);

/// psi2 = hbar/(i m u d) (sigma . grad) psi1 with spectral derivatives: the
/// unique lower spinor annihilating the upper rows of the first-order
/// equation.
PauliSpinor eliminate_lower(const PauliSpinor& psi1, double u, const GammaRep& rep);

/// External potentials for minimal coupling, as general smooth maps.
struct EmPotentials {
  std::function<Vec3(const Vec3&)> A;    // vector potential
  std::function<double(const Vec3&)> A0; // scalar potential
  double e = 1.0;
  double c = 1.0;
};

/// Residual of the first-order equation gamma^mu D_mu chi for
/// chi = (psi1, psi2), with d/dx4 realized through the supplied time
/// derivatives and d/dx5 through the mass factorization. Optional minimal
/// coupling per A^mu = (A, 0, (c/u) A0).
struct DiracResidual {
  std::array<std::vector<Complex>, 4> comp;
  double max_abs() const;
};

DiracResidual dirac_residual(const PauliSpinor& psi1, const PauliSpinor& psi2,
                             const PauliSpinor& dpsi1_dt, const PauliSpinor& dpsi2_dt,
                             double u, const GammaRep& rep,
                             const std::optional<EmPotentials>& em = std::nullopt);

/// Operator on upper spinors obtained by eliminating the lower spinor from
/// the minimally coupled equation: H = (sigma.pi)^2 / 2m + e A0 with
/// pi = -i hbar grad - (e/c) A. The sigma.B term emerges from the double
/// application, it is not inserted by hand.
class PauliCouplingOperator {
 public:
  PauliCouplingOperator(EmPotentials em, double u, const GammaRep& rep);
  PauliSpinor apply(const PauliSpinor& psi) const;

 private:
  EmPotentials em_;
  double u_;
  double d_;
};

PauliCouplingOperator pauli_from_coupling(const EmPotentials& em, double u,
                                          const GammaRep& rep);

}  // namespace g5
