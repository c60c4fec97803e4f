#include "swb/geometry.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>

#include "swb/error.hpp"

namespace swb {

std::optional<BoundingBox> bounds(const Geometry& geometry) {
  std::optional<BoundingBox> box;
  for (const auto& stroke : geometry) {
    for (const auto& p : stroke) {
      if (!box) {
        box = BoundingBox{p.x, p.y, p.x, p.y};
        continue;
      }
      box->min_x = std::min(box->min_x, p.x);
      box->min_y = std::min(box->min_y, p.y);
      box->max_x = std::max(box->max_x, p.x);
      box->max_y = std::max(box->max_y, p.y);
    }
  }
  return box;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

double parse_double(std::string_view text, std::string_view context) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw Error(ErrorCode::parse, "bad number '" + std::string(text) + "' in path " + std::string(context));
  }
  return value;
}

}  // namespace

Geometry parse_path(std::string_view text) {
  Geometry geometry;
  std::size_t i = 0;
  char command = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    if (text[i] == 'M' || text[i] == 'L') {
      command = text[i++];
      if (command == 'M') geometry.emplace_back();
      continue;
    }
    if (command == 0) throw Error(ErrorCode::parse, "path must start with M: '" + std::string(text) + "'");
    if (command == 'L' && geometry.empty()) throw Error(ErrorCode::parse, "path has L before M");
    std::size_t end = i;
    while (end < text.size() && !is_space(text[end]) && text[end] != 'M' && text[end] != 'L') ++end;
    auto token = text.substr(i, end - i);
    auto comma = token.find(',');
    if (comma == std::string_view::npos) {
      throw Error(ErrorCode::parse, "expected x,y in path, got '" + std::string(token) + "'");
    }
    geometry.back().push_back(
        {parse_double(token.substr(0, comma), text), parse_double(token.substr(comma + 1), text)});
    i = end;
  }
  for (const auto& stroke : geometry) {
    if (stroke.empty()) throw Error(ErrorCode::parse, "path has an empty stroke");
  }
  return geometry;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

std::string format_path(const Geometry& geometry) {
  std::string out;
  for (const auto& stroke : geometry) {
    for (std::size_t i = 0; i < stroke.size(); ++i) {
      if (!out.empty()) out += ' ';
      out += (i == 0 ? 'M' : 'L');
      out += format_number(stroke[i].x);
      out += ',';
      out += format_number(stroke[i].y);
    }
  }
  return out;
}

Geometry transform(const Geometry& geometry, const Affine& map) {
  Geometry out;
  out.reserve(geometry.size());
  for (const auto& stroke : geometry) {
    Polyline mapped;
    mapped.reserve(stroke.size());
    for (const auto& p : stroke) mapped.push_back(map.apply(p));
    out.push_back(std::move(mapped));
  }
  return out;
}

Geometry fit_unit_box(const Geometry& geometry) {
  auto box = bounds(geometry);
  if (!box) return geometry;
  double extent = std::max(box->width(), box->height());
  if (extent == 0.0) {
    return transform(geometry, Affine{0, 0, 0.5, 0, 0, 0.5});
  }
  double s = 1.0 / extent;
  double ox = (1.0 - box->width() * s) / 2.0 - box->min_x * s;
  double oy = (1.0 - box->height() * s) / 2.0 - box->min_y * s;
  return transform(geometry, Affine{s, 0, ox, 0, s, oy});
}

namespace {

double point_segment_distance(Point p, Point a, Point b) {
  double dx = b.x - a.x, dy = b.y - a.y;
  double len2 = dx * dx + dy * dy;
  double t = len2 == 0.0 ? 0.0 : std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

double cross(Point o, Point a, Point b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  double d1 = cross(q1, q2, p1), d2 = cross(q1, q2, p2);
  double d3 = cross(p1, p2, q1), d4 = cross(p1, p2, q2);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

}  // namespace

double segment_distance(Point p1, Point p2, Point q1, Point q2) {
  if (segments_intersect(p1, p2, q1, q2)) return 0.0;
  return std::min({point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2),
                   point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)});
}

}  // namespace swb
