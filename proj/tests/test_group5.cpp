#include <doctest.h>

#include <random>

#include <g5/group5.hpp>
#include <g5/random.hpp>

#include "oracles.hpp"

using namespace g5;

TEST_CASE("eta is the degenerate metric and its own inverse") {
  const Mat5& e = eta();
  CHECK(e(0, 0) == 1.0);
  CHECK(e(3, 4) == -1.0);
  CHECK(e(4, 3) == -1.0);
  CHECK(e(3, 3) == 0.0);
  CHECK(((e * e) - Mat5::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("matrix5 blocks") {
  CHECK((matrix5(Boost5::identity()) - Mat5::Identity()).cwiseAbs().maxCoeff() == 0.0);

  const Boost5 b = Boost5::pure_boost(Vec3(1, 0, 0));
  const Mat5 l = matrix5(b);
  CHECK(l(0, 3) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(l(4, 0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(l(4, 3) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(l(0, 0) == 1.0);
  CHECK(l(4, 4) == 1.0);
  CHECK(l(3, 3) == 1.0);
}

TEST_CASE("apply_g5 hand case and invariance of the quadratic form") {
  const Boost5 b = Boost5::pure_boost(Vec3(1, 0, 0));
  const Event5 e{Vec3(0, 0, 0), 2.0, 0.0};
  const Event5 ep = apply_g5(b, e);
  CHECK(ep.x.x() == doctest::Approx(-2.0));
  CHECK(ep.x4 == 2.0);
  CHECK(ep.x5 == doctest::Approx(1.0));

  const Event5 f{Vec3(1, 0, 0), 1.0, 1.0};
  CHECK(quadratic_form(f) == doctest::Approx(-1.0));
  CHECK(quadratic_form(apply_g5(b, f)) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(quadratic_form(Event5{}) == 0.0);
}

TEST_CASE("light-cone combination of the quadratic form") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 50; ++k) {
    const Event5 e = random_event(rng);
    const double xp = (e.x4 + e.x5) / std::sqrt(2.0);
    const double xm = (e.x4 - e.x5) / std::sqrt(2.0);
    CHECK(quadratic_form(e) ==
          doctest::Approx(e.x.squaredNorm() + xm * xm - xp * xp).epsilon(1e-12));
  }
}

TEST_CASE("compose and inverse") {
  std::mt19937_64 rng(11);
  const Boost5 b1 = Boost5::pure_boost(Vec3(0.3, -0.2, 0.1));
  const Boost5 b2 = Boost5::pure_boost(Vec3(-1.0, 0.5, 2.0));
  const Boost5 b12 = compose(b1, b2);
  CHECK((b12.v() - (b1.v() + b2.v())).norm() < 1e-15);
  CHECK((b12.R() - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);

  for (int k = 0; k < 200; ++k) {
    const Boost5 a = random_boost(rng);
    const Boost5 b = random_boost(rng);
    CHECK((matrix5(compose(a, b)) - matrix5(a) * matrix5(b)).cwiseAbs().maxCoeff() <
          1e-12);
    const Boost5 id = compose(a, inverse(a));
    CHECK((matrix5(id) - Mat5::Identity()).cwiseAbs().maxCoeff() < 1e-12);
    const Boost5 dbl = inverse(inverse(a));
    CHECK((dbl.R() - a.R()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((dbl.v() - a.v()).norm() < 1e-12);
  }

  const Boost5 neg = inverse(Boost5::pure_boost(Vec3(1, 2, 3)));
  CHECK((neg.v() + Vec3(1, 2, 3)).norm() < 1e-15);
  CHECK_THROWS_AS(compose(Boost5::identity(1.0), Boost5::identity(2.0)),
                  std::invalid_argument);
}

TEST_CASE("boost validation") {
  Mat3 notrot = Mat3::Identity();
  notrot(0, 0) = 1.5;
  CHECK_THROWS_AS(Boost5(notrot, Vec3::Zero()), std::invalid_argument);
  Mat3 reflect = Mat3::Identity();
  reflect(2, 2) = -1.0;
  CHECK_THROWS_AS(Boost5(reflect, Vec3::Zero()), std::invalid_argument);
  CHECK_THROWS_AS(Boost5(Mat3::Identity(), Vec3::Zero(), -1.0), std::invalid_argument);
}

TEST_CASE("boost_phase values and the fifth-row identity") {
  const Boost5 zero = Boost5::identity();
  CHECK(boost_phase(zero, Vec3(1, 2, 3), 4.0) == 0.0);

  const Boost5 b = Boost5::pure_boost(Vec3(1, 0, 0));
  CHECK(boost_phase(b, Vec3::Zero(), 2.0) == doctest::Approx(1.0));

  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const Boost5 r = random_boost(rng, 1.0 + 0.5 * (k % 3));
    const Event5 e = random_event(rng);
    const double t = e.time(r.u());
    const double f = boost_phase(r, e.x, t);
    const double d5 = apply_g5(r, e).x5 - e.x5;
    CHECK(f == doctest::Approx(r.u() * d5).epsilon(1e-10));
  }
}

TEST_CASE("boost_phase maps plane-wave solutions onto boosted solutions") {
  // exp(i m f / hbar) psi(x, t) must equal the plane wave with p' = Rp - mv
  // evaluated at x' = Rx - vt, for E = p^2/2m and E' = p'^2/2m.
  std::mt19937_64 rng(17);
  const double m = 1.3, hbar = 0.7;
  for (int k = 0; k < 100; ++k) {
    const Boost5 b = random_boost(rng);
    const Vec3 p = random_vec3(rng, 2.0);
    const auto bw = oracle::boosted_plane_wave(b.R(), b.v(), p, m);
    const Vec3 x = random_vec3(rng, 2.0);
    const double t = 0.7;
    const Vec3 xp = b.R() * x - b.v() * t;
    const Complex i(0.0, 1.0);
    const Complex lhs =
        std::exp(i * m * boost_phase(b, x, t) / hbar) *
        std::exp(i * (p.dot(x) - onshell_energy(p, m) * t) / hbar);
    const Complex rhs = std::exp(i * (bw.p_prime.dot(xp) - bw.e_prime * t) / hbar);
    CHECK(std::abs(lhs - rhs) < 1e-12);
  }
}

TEST_CASE("onshell energy and five-momentum") {
  CHECK(onshell_energy(Vec3::Zero(), 2.0) == 0.0);
  CHECK(onshell_energy(Vec3(1, 0, 0), 1.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(onshell_energy(Vec3(1, 0, 0), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(onshell_energy(Vec3(1, 0, 0), -1.0), std::invalid_argument);

  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const Vec3 p = random_vec3(rng, 3.0);
    const double m = 0.1 + 2.0 * (k % 7) / 7.0;
    const double u = 0.5 + (k % 5) * 0.3;
    const Vec5 pv = Momentum5::onshell(p, m, u).vec();
    CHECK(std::abs(pv.transpose() * eta() * pv) < 1e-14);
  }
}

TEST_CASE("phase cocycle along composed maps") {
  std::mt19937_64 rng(29);
  for (int k = 0; k < 200; ++k) {
    const Boost5 b1 = random_boost(rng);
    const Boost5 b2 = random_boost(rng);
    const Event5 e = random_event(rng);
    const double t = e.time(1.0);
    const Event5 mid = apply_g5(b2, e);
    const double f12 = boost_phase(compose(b1, b2), e.x, t);
    const double fsum =
        boost_phase(b2, e.x, t) + boost_phase(b1, mid.x, mid.time(1.0));
    CHECK(std::abs(f12 - fsum) < 1e-10);
  }
}
