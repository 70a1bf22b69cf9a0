// Wavefunctions on periodic spectral grids, analytic Gaussian packets with
// their free-evolution closed form, and the spectral helpers built on them.
#pragma once

#include <optional>
#include <vector>

#include <g5/grid.hpp>

namespace g5 {

struct ScalarWavefunction {
  Grid grid;
  std::vector<Complex> amp;
  double t = 0.0;
  double m = 1.0;
  double hbar = 1.0;
};

/// Two-component spinor field (the independent upper spinor of the reduced
/// equation); same grid conventions as the scalar case.
struct PauliSpinor {
  Grid grid;
  std::vector<Complex> up;
  std::vector<Complex> dn;
  double t = 0.0;
  double m = 1.0;
  double hbar = 1.0;
};

/// Gaussian wave packet descriptor with closed-form free evolution.
/// At t = 0 the amplitude is prod_d (2 pi s_d^2)^(-1/4)
/// exp(-(x-c)_d^2/(4 s_d^2)) exp(i p.(x-c)/hbar).
struct GaussianPacket {
  Vec3 center = Vec3::Zero();
  Vec3 momentum = Vec3::Zero();
  Vec3 sigma = Vec3::Ones();
  double m = 1.0;
  double hbar = 1.0;

  /// Free-evolution closed form at position x, time t (dims = number of grid
  /// axes actually used; trailing axes ignored).
  Complex eval(const Vec3& x, double t, int dims) const;
  /// Width of axis d after free evolution for time t.
  double width(int d, double t) const;
};

/// Sample a packet on a grid at t = 0 and normalize the discrete norm to 1.
ScalarWavefunction make_gaussian(const Grid& grid, const GaussianPacket& packet);
ScalarWavefunction make_gaussian(const Grid& grid, const Vec3& center,
                                 const Vec3& momentum, const Vec3& sigma,
                                 double m = 1.0, double hbar = 1.0);

/// Box-normalized plane wave; the momentum must sit on the discrete Fourier
/// lattice (throws std::invalid_argument otherwise).
ScalarWavefunction make_plane_wave(const Grid& grid, const Vec3& p, double m = 1.0,
                                   double hbar = 1.0);

double norm(const ScalarWavefunction& s);
double norm(const PauliSpinor& s);
double l2_distance(const ScalarWavefunction& a, const ScalarWavefunction& b);
/// |<a|b>| / (|a| |b|).
double fidelity(const ScalarWavefunction& a, const ScalarWavefunction& b);
double max_density_diff(const ScalarWavefunction& a, const ScalarWavefunction& b);

/// chi(x) = psi(x - d) by exact Fourier phase shift.
std::vector<Complex> fourier_shift(const Grid& grid, const std::vector<Complex>& amp,
                                   const Vec3& d);

/// Spectral partial derivative along one axis.
std::vector<Complex> gradient_axis(const Grid& grid, const std::vector<Complex>& amp,
                                   int axis);
std::vector<Complex> laplacian(const Grid& grid, const std::vector<Complex>& amp);

}  // namespace g5
