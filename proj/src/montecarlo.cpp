#include "newton2d/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "newton2d/kernels.hpp"
#include "newton2d/rng.hpp"

namespace newton2d {

namespace {

constexpr std::uint64_t kBatch = 1u << 16;

struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double v) {
    ++n;
    const double delta = v - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (v - mean);
  }

  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * (static_cast<double>(o.n) / total);
    m2 += o.m2 + delta * delta * (static_cast<double>(n) *
                                  static_cast<double>(o.n) / total);
    n += o.n;
  }
};

Moments run_batch(const Profile& profile, std::uint64_t count,
                  std::uint64_t seed) {
  const double r = profile.breakpoints().back().x;
  Rng rng(seed);
  std::vector<double> slopes(count), vx(count), vy(count);
  for (auto& s : slopes) s = profile.slope_at(r * uniform01(rng));
  kernels::active().reflect_batch(slopes.data(), 0.0, -1.0, vx.data(),
                                  vy.data(), count);
  Moments m;
  for (std::uint64_t j = 0; j < count; ++j) m.add(0.5 * (vy[j] + 1.0));
  return m;
}

// Body boundary z = y(|x|) on [-r, r].
struct MirroredBoundary {
  std::vector<Point> pts;  // ascending x

  explicit MirroredBoundary(const Profile& profile) {
    const auto& bp = profile.breakpoints();
    for (auto it = bp.rbegin(); it != bp.rend(); ++it)
      if (it->x > 0.0) pts.push_back({-it->x, it->y});
    pts.insert(pts.end(), bp.begin(), bp.end());
  }

  double lo() const { return pts.front().x; }
  double hi() const { return pts.back().x; }

  double at(double x) const {
    auto it = std::upper_bound(pts.begin(), pts.end(), x,
                               [](double v, const Point& p) { return v < p.x; });
    if (it == pts.begin()) return pts.front().y;
    if (it == pts.end()) return pts.back().y;
    const Point& b = *it;
    const Point& a = *(it - 1);
    return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
  }
};

// First abscissa where the ray from p along d enters {z > boundary}, if any.
bool trace(const MirroredBoundary& body, Point p, Vec2 d, double tol,
           double& hit_x) {
  if (d.x == 0.0) return false;  // vertical rays run along no face
  const double t_exit = ((d.x > 0.0 ? body.hi() : body.lo()) - p.x) / d.x;
  std::vector<double> ts;
  for (const auto& q : body.pts) {
    const double t = (q.x - p.x) / d.x;
    if (t > 0.0 && t < t_exit) ts.push_back(t);
  }
  ts.push_back(t_exit);
  std::sort(ts.begin(), ts.end());

  double t_prev = 0.0;
  double g_prev = 0.0;
  for (double t : ts) {
    const double x = p.x + t * d.x;
    const double g = (p.y + t * d.y) - body.at(x);
    if (g > tol) {
      const double frac = g_prev < g ? (0.0 - g_prev) / (g - g_prev) : 0.0;
      hit_x = p.x + (t_prev + std::clamp(frac, 0.0, 1.0) * (t - t_prev)) * d.x;
      return true;
    }
    t_prev = t;
    g_prev = g;
  }
  return false;
}

}  // namespace

Vec2 reflect(Vec2 velocity, double slope) {
  Vec2 out;
  kernels::scalar_table().reflect_batch(&slope, velocity.x, velocity.y, &out.x,
                                        &out.y, 1);
  return out;
}

ImpactRecord impact(const Profile& profile, double x) {
  ImpactRecord rec;
  rec.x = x;
  rec.slope = profile.slope_at(x);
  rec.reflected = reflect(rec.incoming, rec.slope);
  rec.axial_impulse = rec.reflected.y - rec.incoming.y;
  return rec;
}

McEstimate estimate_resistance(const Profile& profile, std::uint64_t n_samples,
                               std::uint64_t rng_seed, unsigned workers) {
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  if (profile.segment_count() == 0)
    throw std::invalid_argument("profile has no segments");
  const std::uint64_t batches = (n_samples + kBatch - 1) / kBatch;
  std::vector<Moments> parts(batches);
  auto batch_size = [&](std::uint64_t b) {
    return std::min(kBatch, n_samples - b * kBatch);
  };
  workers = static_cast<unsigned>(
      std::clamp<std::uint64_t>(workers, 1, batches));
  auto work = [&](unsigned w) {
    for (std::uint64_t b = w; b < batches; b += workers)
      parts[b] = run_batch(profile, batch_size(b), derive_seed(rng_seed, b));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  Moments total;
  for (const auto& m : parts) total.merge(m);
  const double r = profile.breakpoints().back().x;
  McEstimate est;
  est.n_samples = n_samples;
  est.seed = rng_seed;
  est.estimate = r * total.mean;
  const double var =
      total.n > 1 ? total.m2 / static_cast<double>(total.n - 1) : 0.0;
  est.std_error = r * std::sqrt(std::max(var, 0.0) /
                                static_cast<double>(total.n));
  return est;
}

CollisionReport single_collision_check(const Profile& profile) {
  CollisionReport rep;
  if (profile.segment_count() == 0) return rep;
  const MirroredBoundary body(profile);
  const auto& bp = profile.breakpoints();
  double scale = 1.0;
  for (const auto& p : bp) scale = std::max(scale, std::abs(p.y));
  const double tol = 1e-12 * scale;

  for (std::size_t s = 0; s < profile.segment_count(); ++s) {
    SegmentCollision sc;
    sc.segment = s;
    sc.slope = profile.slope(s);
    const Vec2 dir = reflect({0.0, 1.0}, sc.slope);
    for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double x = bp[s].x + f * profile.width(s);
      const Point start{x, bp[s].y + sc.slope * (x - bp[s].x)};
      double hit = 0.0;
      if (trace(body, start, dir, tol, hit)) {
        sc.reintersects = true;
        sc.hit_x = hit;
        break;
      }
    }
    rep.single_collision = rep.single_collision && !sc.reintersects;
    rep.segments.push_back(sc);
  }
  return rep;
}

}  // namespace newton2d
