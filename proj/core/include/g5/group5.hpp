// Homogeneous 5-dimensional Galilei group: events, the invariant quadratic
// form, boosts and their 5x5 matrices, and the phase relating wavefunctions
// across inertial frames.
//
// Index convention throughout the library: 0,1,2 are the spatial axes,
// index 3 is the time-like coordinate x4 = u*t and index 4 is x5 = s/u,
// with u a positive velocity scale carried by each transformation.
#pragma once

#include <g5/linalg.hpp>

namespace g5 {

/// A point of the extended event space (x, x4 = u t, x5 = s/u).
struct Event5 {
  Vec3 x = Vec3::Zero();
  double x4 = 0.0;
  double x5 = 0.0;

  Vec5 vec() const;
  static Event5 from_vec(const Vec5& v);
  /// Coordinate time for a given velocity scale.
  double time(double u) const { return x4 / u; }
};

/// Homogeneous group element: rotation R, velocity v, scale u.
class Boost5 {
 public:
  Boost5(const Mat3& R, const Vec3& v, double u = 1.0);
  static Boost5 identity(double u = 1.0);
  static Boost5 pure_boost(const Vec3& v, double u = 1.0);
  static Boost5 pure_rotation(const Mat3& R, double u = 1.0);

  const Mat3& R() const { return r_; }
  const Vec3& v() const { return v_; }
  double u() const { return u_; }

 private:
  Mat3 r_;
  Vec3 v_;
  double u_;
};

/// The constant degenerate metric: spatial identity block and
/// eta(3,4) = eta(4,3) = -1. It equals its own inverse.
const Mat5& eta();

/// 5x5 matrix of a group element.
Mat5 matrix5(const Boost5& b);

/// Transform an event.
Event5 apply_g5(const Boost5& b, const Event5& e);

/// eta_{mu nu} x^mu x^nu = x.x - 2 * x4 * x5.
double quadratic_form(const Event5& e);

/// Group product: matrix5(compose(a, b)) == matrix5(a) * matrix5(b).
/// Throws std::invalid_argument when the scales differ.
Boost5 compose(const Boost5& a, const Boost5& b);

Boost5 inverse(const Boost5& b);

/// Phase f(x, t) such that psi'(x', t) = exp(i m f / hbar) psi(x, t) maps
/// solutions of the free equation onto solutions. Equals u times the shift
/// of the fifth coordinate: f = -v.(R x) + v^2 t / 2.
double boost_phase(const Boost5& b, const Vec3& x, double t);

/// Dispersion E = p^2 / 2m. Throws for m <= 0.
double onshell_energy(const Vec3& p, double m);

/// Momentum vector (p, m u, E/u); on-shell states null the quadratic form.
struct Momentum5 {
  Vec3 p = Vec3::Zero();
  double p4 = 0.0;
  double p5 = 0.0;

  static Momentum5 onshell(const Vec3& p, double m, double u = 1.0);
  Vec5 vec() const;
};

}  // namespace g5
