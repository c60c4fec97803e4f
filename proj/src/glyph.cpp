#include "swb/glyph.hpp"

#include <charconv>

#include "swb/error.hpp"

namespace swb {

std::string_view to_string(GlyphStatus status) {
  switch (status) {
    case GlyphStatus::official_2004: return "official-2004";
    case GlyphStatus::official_2008: return "official-2008";
    case GlyphStatus::extension: return "extension";
    case GlyphStatus::user: return "user";
  }
  return "?";
}

GlyphStatus parse_status(std::string_view text) {
  for (auto status : kAllStatuses) {
    if (to_string(status) == text) return status;
  }
  throw Error(ErrorCode::parse, "unknown glyph status '" + std::string(text) + "'");
}

std::string_view to_string(Plane plane) {
  switch (plane) {
    case Plane::V: return "V";
    case Plane::H: return "H";
    case Plane::S_down: return "S_down";
    case Plane::S_lateral: return "S_lateral";
  }
  return "?";
}

Plane parse_plane(std::string_view text) {
  for (auto plane : kAllPlanes) {
    if (to_string(plane) == text) return plane;
  }
  throw Error(ErrorCode::parse, "unknown plane '" + std::string(text) + "'");
}

MotionCell parse_motion_cell(std::string_view text) {
  auto first = text.find(':');
  auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || first == 0) {
    throw Error(ErrorCode::parse, "motion cell must be shape:plane:repetition, got '" + std::string(text) + "'");
  }
  MotionCell cell;
  cell.shape_class = std::string(text.substr(0, first));
  cell.plane = parse_plane(text.substr(first + 1, second - first - 1));
  auto rep = text.substr(second + 1);
  auto [ptr, ec] = std::from_chars(rep.data(), rep.data() + rep.size(), cell.repetition);
  if (ec != std::errc() || ptr != rep.data() + rep.size() || cell.repetition < 1 || cell.repetition > 3) {
    throw Error(ErrorCode::parse, "repetition must be 1..3 in '" + std::string(text) + "'");
  }
  return cell;
}

std::string to_string(const MotionCell& cell) {
  return cell.shape_class + ":" + std::string(to_string(cell.plane)) + ":" + std::to_string(cell.repetition);
}

}  // namespace swb
