#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace swb {

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

using Polyline = std::vector<Point>;

/// Vector strokes of a glyph. Catalog geometry lives in the unit box [0,1]^2,
/// y pointing down.
using Geometry = std::vector<Polyline>;

struct BoundingBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

/// Bounding box of all points, or nullopt when there are none.
std::optional<BoundingBox> bounds(const Geometry& geometry);

/// Parses the inline path form "M x,y L x,y ... M x,y L x,y". Each M starts a
/// stroke; commands may be glued to their coordinates ("M0,0").
Geometry parse_path(std::string_view text);

/// Canonical path text. Numbers use the shortest round-trip representation.
std::string format_path(const Geometry& geometry);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_number(double value);

/// 2x3 affine map: x' = a*x + b*y + c, y' = d*x + e*y + f.
struct Affine {
  double a = 1, b = 0, c = 0;
  double d = 0, e = 1, f = 0;

  Point apply(Point p) const { return {a * p.x + b * p.y + c, d * p.x + e * p.y + f}; }
  bool operator==(const Affine&) const = default;
};

Geometry transform(const Geometry& geometry, const Affine& map);

/// Uniformly scales and centers `geometry` into the unit box (aspect preserved).
Geometry fit_unit_box(const Geometry& geometry);

/// Shortest distance between two segments (0 when they intersect).
double segment_distance(Point p1, Point p2, Point q1, Point q2);

}  // namespace swb
