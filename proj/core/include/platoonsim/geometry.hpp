#pragma once

#include <span>
#include <vector>

namespace platoonsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  bool operator==(const Vec2&) const = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec2 xy() const { return {x, y}; }
  bool operator==(const Vec3&) const = default;
};

double norm(Vec2 v);
double distance(Vec2 a, Vec2 b);
double distance(const Vec3& a, const Vec3& b);

struct BoundingBox {
  Vec2 lo;
  Vec2 hi;

  bool overlaps(const BoundingBox& other) const;
};

BoundingBox bounding_box(std::span<const Vec2> points);

/// True if the closed segments [a1,a2] and [b1,b2] share at least one point.
/// Touching endpoints and collinear overlaps count as intersections.
bool segments_intersect(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2);

/// Point-in-polygon including the boundary.
bool point_in_polygon(Vec2 p, std::span<const Vec2> ring);

/// A polygon is simple when no two non-adjacent edges meet and adjacent
/// edges share only their common vertex.
bool is_simple_polygon(std::span<const Vec2> ring);

/// Closed footprint with its precomputed bounding box. The ring is stored
/// without repeating the first vertex.
struct Footprint {
  std::vector<Vec2> ring;
  BoundingBox box;

  explicit Footprint(std::vector<Vec2> vertices);

  /// True if the closed segment touches the interior or boundary.
  bool intersects_segment(Vec2 a, Vec2 b) const;
};

/// Closed polyline parameterised by arc length.
class Polyline {
 public:
  /// `waypoints` must be closed (first == last); validated by the caller.
  explicit Polyline(std::vector<Vec2> waypoints);

  double length() const { return cumulative_.back(); }
  const std::vector<Vec2>& waypoints() const { return points_; }
  const std::vector<double>& cumulative() const { return cumulative_; }

  /// Linear interpolation at `s` modulo the total length.
  Vec2 position(double s) const;

 private:
  std::vector<Vec2> points_;
  std::vector<double> cumulative_;
};

/// Floored modulo into [0, period).
double wrap(double value, double period);

}  // namespace platoonsim
