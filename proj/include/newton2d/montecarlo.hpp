#pragma once

// Particle-level check of the resistance law: immovable particles hit the
// body once and reflect elastically; the momentum each transfers along the
// motion axis, averaged over uniform impact abscissae, is the drag.

#include <cstdint>
#include <vector>

#include "newton2d/geometry.hpp"

namespace newton2d {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Specular reflection v - 2(v.n)n off a surface of slope u, with unit
/// normal n = (-u, 1)/sqrt(1+u^2).
Vec2 reflect(Vec2 velocity, double slope);

struct ImpactRecord {
  double x = 0.0;
  double slope = 0.0;
  Vec2 incoming{0.0, -1.0};
  Vec2 reflected;
  double axial_impulse = 0.0;  // reflected.y - incoming.y
};

/// Particle arriving along (0, -1) at abscissa x.
ImpactRecord impact(const Profile& profile, double x);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Unbiased estimate of the 2-D resistance: (r/n) * sum(axial_impulse/2)
/// over uniform impact abscissae. Samples are drawn in fixed-size batches
/// with per-batch derived seeds, so the result is independent of `workers`.
McEstimate estimate_resistance(const Profile& profile, std::uint64_t n_samples,
                               std::uint64_t rng_seed, unsigned workers = 1);

struct SegmentCollision {
  std::size_t segment = 0;
  double slope = 0.0;
  bool reintersects = false;
  double hit_x = 0.0;  // first re-entry abscissa when reintersects
};

struct CollisionReport {
  bool single_collision = true;
  std::vector<SegmentCollision> segments;
};

/// Ray-traces the reflected ray from sample points of every segment and
/// reports whether it enters the body again. The body is the profile
/// mirrored about x = 0, nose pointing into the stream: {(x, z) : |x| <= r,
/// z >= y(|x|)}, struck by particles travelling along +z.
CollisionReport single_collision_check(const Profile& profile);

}  // namespace newton2d
