// Seeded samplers for randomized invariant checks: rotations, group
// elements, and bounded analytic trajectories.
#pragma once

#include <random>

#include <g5/group5.hpp>
#include <g5/trajectory.hpp>

namespace g5 {

inline Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::Vector4d q;
  do {
    for (int i = 0; i < 4; ++i) q[i] = gauss(rng);
  } while (q.norm() < 1e-6);
  q.normalize();
  return Eigen::Quaterniond(q[0], q[1], q[2], q[3]).toRotationMatrix();
}

inline Vec3 random_vec3(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  return Vec3(uni(rng), uni(rng), uni(rng));
}

inline Boost5 random_boost(std::mt19937_64& rng, double u = 1.0) {
  return Boost5(random_rotation(rng), random_vec3(rng, 2.0), u);
}

inline Event5 random_event(std::mt19937_64& rng, double scale = 2.0) {
  std::uniform_real_distribution<double> uni(-scale, scale);
  return Event5{random_vec3(rng, scale), uni(rng), uni(rng)};
}

/// Bounded smooth trajectory: rotation about a random axis composed with a
/// random cubic translation, plus the plain families. Coefficient scales
/// keep |d/dt (R^T A)| of order one, which finite-difference oracles at
/// step 1e-4 need to stay clear of their rounding floor.
inline TrajectoryPtr random_trajectory(std::mt19937_64& rng, double u = 1.0) {
  std::uniform_int_distribution<int> kind(0, 5);
  std::uniform_real_distribution<double> rate(-0.7, 0.7);
  auto poly = [&] {
    const double scale[4] = {0.25, 0.2, 0.1, 0.04};
    std::vector<Vec3> c(4);
    for (int k = 0; k < 4; ++k) c[k] = random_vec3(rng, scale[k]);
    return std::make_shared<PolyFrame>(std::move(c), u);
  };
  auto rot = [&] {
    return std::make_shared<RotatingFrame>(random_vec3(rng, 1.0).normalized(),
                                           rate(rng), u, random_rotation(rng));
  };
  switch (kind(rng)) {
    case 0: return std::make_shared<InertialFrame>(u, random_rotation(rng),
                                                   random_vec3(rng, 1.0));
    case 1: return std::make_shared<BoostFrame>(random_vec3(rng, 1.0), u,
                                                random_rotation(rng));
    case 2: return std::make_shared<AccelFrame>(random_vec3(rng, 1.0), u);
    case 3: return rot();
    case 4: return poly();
    default: return std::make_shared<ComposedFrame>(rot(), poly());
  }
}

}  // namespace g5
