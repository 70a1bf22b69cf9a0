#include <doctest.h>

#include <g5/covariance.hpp>
#include <g5/random.hpp>

#include "oracles.hpp"

using namespace g5;

TEST_CASE("identity map leaves states unchanged") {
  const Grid g({128}, {16.0});
  const ScalarWavefunction s =
      make_gaussian(g, Vec3(0.3, 0, 0), Vec3(0.5, 0, 0), Vec3::Constant(0.6));
  const FrameMap map{std::make_shared<InertialFrame>(), true};
  const ScalarWavefunction out = transform_state(map, s);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(out.amp[i] - s.amp[i]));
  CHECK(worst < 1e-13);
}

TEST_CASE("boost maps plane waves onto boosted plane waves") {
  const Grid g({256}, {16.0});
  const double k0 = 2.0 * M_PI / 16.0;
  const double m = 1.0;
  const Vec3 p(6.0 * k0, 0, 0);
  const Vec3 v(4.0 * k0 / m, 0, 0);  // m v on the lattice as well
  ScalarWavefunction w = make_plane_wave(g, p, m);

  const FrameMap map{std::make_shared<BoostFrame>(v), true};
  const ScalarWavefunction out = transform_state(map, w);
  const auto expect = oracle::boosted_plane_wave(Mat3::Identity(), v, p, m);
  const ScalarWavefunction ref = make_plane_wave(g, expect.p_prime, m);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(out.amp[i] - ref.amp[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("accelerating map at t = 0 is the identity") {
  const Grid g({128}, {16.0});
  const ScalarWavefunction s =
      make_gaussian(g, Vec3::Zero(), Vec3::Zero(), Vec3::Constant(0.5));
  const FrameMap map{std::make_shared<AccelFrame>(Vec3(1.2, 0, 0)), true};
  const ScalarWavefunction out = transform_state(map, s);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(out.amp[i] - s.amp[i]));
  CHECK(worst < 1e-13);
}

TEST_CASE("round trip and norm preservation") {
  const Grid g({256}, {20.0});
  ScalarWavefunction s =
      make_gaussian(g, Vec3(0.4, 0, 0), Vec3(-0.3, 0, 0), Vec3::Constant(0.5));
  s.t = 0.8;
  const auto tr = std::make_shared<AccelFrame>(Vec3(0.9, 0, 0));
  const FrameMap fwd{tr, true};
  const ScalarWavefunction there = transform_state(fwd, s);
  CHECK(std::abs(norm(there) - norm(s)) < 1e-12);
  const ScalarWavefunction back = transform_state(fwd.inverted(), there);
  CHECK(l2_distance(back, s) < 1e-10);
}

TEST_CASE("rotating grids are rejected, packets are not") {
  const Grid g({32, 32}, {8.0, 8.0});
  ScalarWavefunction s =
      make_gaussian(g, Vec3::Zero(), Vec3::Zero(), Vec3::Constant(0.6));
  s.t = 0.5;
  const auto rot = std::make_shared<RotatingFrame>(Vec3::UnitZ(), 0.7);
  CHECK_THROWS_AS(transform_state(FrameMap{rot, true}, s), std::invalid_argument);

  const GaussianPacket packet{Vec3(0.5, 0, 0), Vec3::Zero(), Vec3::Constant(0.6), 1.0,
                              1.0};
  const ScalarWavefunction mapped = transform_packet(FrameMap{rot, true}, packet, g, 0.5);
  // Rotation is an isometry with no phase; the norm is that of the packet.
  CHECK(norm(mapped) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("covariance residual vanishes for the inertial frame") {
  const Grid g({256}, {20.0});
  const GaussianPacket packet{Vec3::Zero(), Vec3(0.4, 0, 0), Vec3::Constant(0.5), 1.0,
                              1.0};
  const auto rep = covariance_residual(std::make_shared<InertialFrame>(), packet, g,
                                       1.0, 128);
  CHECK(rep.l2_distance < 1e-12);
  CHECK(rep.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.fidelity <= 1.0 + 1e-12);
}

TEST_CASE("boost covariance is transform-exact") {
  const Grid g({512}, {24.0});
  const GaussianPacket packet{Vec3::Zero(), Vec3::Zero(), Vec3::Constant(0.5), 1.0,
                              1.0};
  const auto rep = covariance_residual(std::make_shared<BoostFrame>(Vec3(0.7, 0, 0)),
                                       packet, g, 1.0, 256);
  CHECK(rep.l2_distance < 1e-10);
}

TEST_CASE("accelerated-frame covariance at unit-test scale") {
  const Grid g({512}, {24.0});
  const GaussianPacket packet{Vec3::Zero(), Vec3::Zero(), Vec3::Constant(0.5), 1.0,
                              1.0};
  const auto rep = covariance_residual(std::make_shared<AccelFrame>(Vec3(1.0, 0, 0)),
                                       packet, g, 1.0, 512);
  CHECK(rep.l2_distance < 1e-6);
}

TEST_CASE("rotating-frame covariance at unit-test scale") {
  const Grid g({128, 128}, {24.0, 24.0});
  const GaussianPacket packet{Vec3(0.5, 0.5, 0), Vec3(0.3, -0.2, 0),
                              Vec3::Constant(1.0), 1.0, 1.0};
  const auto rep = covariance_residual(
      std::make_shared<RotatingFrame>(Vec3::UnitZ(), 0.5), packet, g, 1.0, 512);
  CHECK(rep.l2_distance < 1e-4);
}

TEST_CASE("equivalence principle: slopes and disappearance of gravity") {
  const Grid g({512}, {24.0});
  const GaussianPacket packet{Vec3::Zero(), Vec3::Zero(), Vec3::Constant(0.5), 1.0,
                              1.0};

  const auto plain = equivalence_principle_run(Vec3(0.8, 0, 0), Vec3::Zero(), packet,
                                               g, 1.0, 512);
  CHECK((plain.expected_slope + Vec3(0.8, 0, 0)).norm() < 1e-15);
  CHECK(plain.slope_residual < 1e-8);
  CHECK(std::isnan(plain.max_density_diff));

  const auto cancel = equivalence_principle_run(Vec3(0.8, 0, 0), Vec3(0.8, 0, 0),
                                                packet, g, 1.0, 512);
  CHECK(cancel.slope_residual < 1e-8);
  CHECK(cancel.max_density_diff < 1e-8);

  const auto general = equivalence_principle_run(Vec3(1.2, 0, 0), Vec3(0.4, 0, 0),
                                                 packet, g, 1.0, 512);
  CHECK((general.expected_slope + Vec3(0.8, 0, 0)).norm() < 1e-15);
  CHECK(general.slope_residual < 1e-8);
}

TEST_CASE("spin precession about the frame rotation axis") {
  const auto still = spin_frame_run(Vec3::Zero(), Vec3::UnitX(), 1.0, 64);
  CHECK(still.fitted_rate == 0.0);
  for (const auto& s : still.spin_series) CHECK((s - Vec3::UnitX()).norm() < 1e-12);

  const auto zrun = spin_frame_run(Vec3(0, 0, 0.9), Vec3::UnitX(), 8.0, 2048);
  CHECK(std::abs(zrun.fitted_rate) == doctest::Approx(0.9).epsilon(1e-8));
  CHECK(zrun.axis_error < 1e-8);
  CHECK((zrun.fitted_axis - Vec3::UnitZ()).norm() < 1e-8);

  const Vec3 tilted = Vec3(1, 0, 1).normalized() * 0.6;
  const auto trun = spin_frame_run(tilted, Vec3::UnitY(), 8.0, 2048);
  CHECK(std::abs(trun.fitted_rate) == doctest::Approx(0.6).epsilon(1e-8));
  CHECK((trun.fitted_axis - tilted.normalized()).norm() < 1e-8);
}
