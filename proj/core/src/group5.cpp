#include <g5/group5.hpp>

#include <stdexcept>

namespace g5 {

Vec5 Event5::vec() const {
  Vec5 v;
  v << x.x(), x.y(), x.z(), x4, x5;
  return v;
}

Event5 Event5::from_vec(const Vec5& v) {
  return Event5{Vec3(v[0], v[1], v[2]), v[3], v[4]};
}

Boost5::Boost5(const Mat3& R, const Vec3& v, double u) : r_(R), v_(v), u_(u) {
  if (!(u > 0.0)) throw std::invalid_argument("Boost5: scale u must be positive");
  if (!is_rotation(R, 1e-12))
    throw std::invalid_argument("Boost5: R must be a proper rotation");
}

Boost5 Boost5::identity(double u) { return Boost5(Mat3::Identity(), Vec3::Zero(), u); }

Boost5 Boost5::pure_boost(const Vec3& v, double u) {
  return Boost5(Mat3::Identity(), v, u);
}

Boost5 Boost5::pure_rotation(const Mat3& R, double u) {
  return Boost5(R, Vec3::Zero(), u);
}

const Mat5& eta() {
  static const Mat5 m = [] {
    Mat5 e = Mat5::Zero();
    e(0, 0) = e(1, 1) = e(2, 2) = 1.0;
    e(3, 4) = e(4, 3) = -1.0;
    return e;
  }();
  return m;
}

Mat5 matrix5(const Boost5& b) {
  Mat5 l = Mat5::Zero();
  l.block<3, 3>(0, 0) = b.R();
  l.block<3, 1>(0, 3) = -b.v() / b.u();
  l(3, 3) = 1.0;
  l.block<1, 3>(4, 0) = -(b.v().transpose() * b.R()) / b.u();
  l(4, 3) = b.v().squaredNorm() / (2.0 * b.u() * b.u());
  l(4, 4) = 1.0;
  return l;
}

Event5 apply_g5(const Boost5& b, const Event5& e) {
  return Event5::from_vec(matrix5(b) * e.vec());
}

double quadratic_form(const Event5& e) {
  return e.x.squaredNorm() - 2.0 * e.x4 * e.x5;
}

Boost5 compose(const Boost5& a, const Boost5& b) {
  if (a.u() != b.u())
    throw std::invalid_argument("compose: mismatched velocity scales");
  return Boost5(a.R() * b.R(), a.v() + a.R() * b.v(), a.u());
}

Boost5 inverse(const Boost5& b) {
  const Mat3 rt = b.R().transpose();
  return Boost5(rt, -(rt * b.v()), b.u());
}

double boost_phase(const Boost5& b, const Vec3& x, double t) {
  return -b.v().dot(b.R() * x) + 0.5 * b.v().squaredNorm() * t;
}

double onshell_energy(const Vec3& p, double m) {
  if (!(m > 0.0)) throw std::invalid_argument("onshell_energy: mass must be positive");
  return p.squaredNorm() / (2.0 * m);
}

Momentum5 Momentum5::onshell(const Vec3& p, double m, double u) {
  return Momentum5{p, m * u, onshell_energy(p, m) / u};
}

Vec5 Momentum5::vec() const {
  Vec5 v;
  v << p.x(), p.y(), p.z(), p4, p5;
  return v;
}

}  // namespace g5
