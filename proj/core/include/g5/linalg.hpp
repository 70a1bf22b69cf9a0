// Small fixed-size linear algebra aliases and helpers shared across the library.
#pragma once

#include <complex>
#include <Eigen/Dense>

namespace g5 {

using Complex = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;
using CVec2 = Eigen::Vector2cd;
using CMat2 = Eigen::Matrix2cd;
using CMat4 = Eigen::Matrix4cd;

/// Cross-product matrix: hat(w) * x == w.cross(x).
inline Mat3 hat(const Vec3& w) {
  Mat3 m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
       -w.y(), w.x(), 0.0;
  return m;
}

/// Inverse of hat() for an antisymmetric matrix.
inline Vec3 axial(const Mat3& m) {
  return Vec3(m(2, 1), m(0, 2), m(1, 0));
}

inline bool is_rotation(const Mat3& r, double tol = 1e-12) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() <= tol &&
         r.determinant() > 0.0;
}

/// Rotation by angle about a unit axis (Rodrigues form).
inline Mat3 rotation_about(const Vec3& axis, double angle) {
  const Mat3 k = hat(axis);
  return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * k * k;
}

inline const std::array<CMat2, 3>& pauli_matrices() {
  static const std::array<CMat2, 3> sigma = [] {
    const Complex i(0.0, 1.0);
    std::array<CMat2, 3> s;
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -i, i, 0;
    s[2] << 1, 0, 0, -1;
    return s;
  }();
  return sigma;
}

/// n·σ for a real 3-vector.
inline CMat2 pauli_dot(const Vec3& n) {
  const auto& s = pauli_matrices();
  return n.x() * s[0] + n.y() * s[1] + n.z() * s[2];
}

}  // namespace g5
