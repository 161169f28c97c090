#include "platoonsim/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace platoonsim {

namespace {

double cross(Vec2 o, Vec2 a, Vec2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int orientation(Vec2 o, Vec2 a, Vec2 b) {
  const double c = cross(o, a, b);
  if (c > 0.0) return 1;
  if (c < 0.0) return -1;
  return 0;
}

bool on_segment(Vec2 p, Vec2 a, Vec2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

}  // namespace

double norm(Vec2 v) { return std::hypot(v.x, v.y); }

double distance(Vec2 a, Vec2 b) { return norm(a - b); }

double distance(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

bool BoundingBox::overlaps(const BoundingBox& other) const {
  return lo.x <= other.hi.x && other.lo.x <= hi.x && lo.y <= other.hi.y &&
         other.lo.y <= hi.y;
}

BoundingBox bounding_box(std::span<const Vec2> points) {
  if (points.empty()) return {};
  BoundingBox box{points.front(), points.front()};
  for (const Vec2& p : points) {
    box.lo.x = std::min(box.lo.x, p.x);
    box.lo.y = std::min(box.lo.y, p.y);
    box.hi.x = std::max(box.hi.x, p.x);
    box.hi.y = std::max(box.hi.y, p.y);
  }
  return box;
}

bool segments_intersect(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2) {
  const int o1 = orientation(a1, a2, b1);
  const int o2 = orientation(a1, a2, b2);
  const int o3 = orientation(b1, b2, a1);
  const int o4 = orientation(b1, b2, a2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(b1, a1, a2)) return true;
  if (o2 == 0 && on_segment(b2, a1, a2)) return true;
  if (o3 == 0 && on_segment(a1, b1, b2)) return true;
  if (o4 == 0 && on_segment(a2, b1, b2)) return true;
  return false;
}

bool point_in_polygon(Vec2 p, std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = ring[i];
    const Vec2 b = ring[j];
    if (orientation(a, b, p) == 0 && on_segment(p, a, b)) return true;
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x_cross) inside = !inside;
    }
  }
  return inside;
}

bool is_simple_polygon(std::span<const Vec2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (ring[i] == ring[(i + 1) % n]) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a1 = ring[i];
    const Vec2 a2 = ring[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2 b1 = ring[j];
      const Vec2 b2 = ring[(j + 1) % n];
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges may only share the common vertex: reject folds back
        // along the same line.
        const Vec2 shared = (j == i + 1) ? a2 : a1;
        const Vec2 p = (j == i + 1) ? a1 : a2;
        const Vec2 q = (j == i + 1) ? b2 : b1;
        if (orientation(shared, p, q) == 0) {
          const Vec2 u = p - shared;
          const Vec2 v = q - shared;
          if (u.x * v.x + u.y * v.y > 0.0) return false;
        }
        continue;
      }
      if (segments_intersect(a1, a2, b1, b2)) return false;
    }
  }
  return true;
}

Footprint::Footprint(std::vector<Vec2> vertices) : ring(std::move(vertices)) {
  if (ring.size() > 1 && ring.front() == ring.back()) ring.pop_back();
  box = bounding_box(ring);
}

bool Footprint::intersects_segment(Vec2 a, Vec2 b) const {
  const Vec2 pts[] = {a, b};
  if (!box.overlaps(bounding_box(pts))) return false;
  if (point_in_polygon(a, ring) || point_in_polygon(b, ring)) return true;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (segments_intersect(a, b, ring[i], ring[(i + 1) % n])) return true;
  }
  return false;
}

Polyline::Polyline(std::vector<Vec2> waypoints) : points_(std::move(waypoints)) {
  if (points_.size() < 2) throw std::invalid_argument("polyline needs at least two waypoints");
  cumulative_.reserve(points_.size());
  cumulative_.push_back(0.0);
  for (std::size_t i = 1; i < points_.size(); ++i) {
    cumulative_.push_back(cumulative_.back() + distance(points_[i - 1], points_[i]));
  }
}

Vec2 Polyline::position(double s) const {
  const double total = length();
  const double u = wrap(s, total);
  // First vertex whose cumulative length exceeds u.
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) return points_.back();
  const std::size_t hi = static_cast<std::size_t>(it - cumulative_.begin());
  const std::size_t lo = hi - 1;
  const double seg = cumulative_[hi] - cumulative_[lo];
  const double frac = seg > 0.0 ? (u - cumulative_[lo]) / seg : 0.0;
  return points_[lo] + frac * (points_[hi] - points_[lo]);
}

double wrap(double value, double period) {
  double r = std::fmod(value, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

}  // namespace platoonsim
