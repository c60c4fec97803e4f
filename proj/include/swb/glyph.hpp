#pragma once

#include <array>
#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "swb/geometry.hpp"
#include "swb/symbol_id.hpp"

namespace swb {

enum class GlyphStatus { official_2004, official_2008, extension, user };

inline constexpr std::array<GlyphStatus, 4> kAllStatuses{GlyphStatus::official_2004, GlyphStatus::official_2008,
                                                         GlyphStatus::extension, GlyphStatus::user};

std::string_view to_string(GlyphStatus status);
GlyphStatus parse_status(std::string_view text);

/// Movement plane rows: vertical, horizontal, sagittal downward, sagittal lateral.
enum class Plane { V, H, S_down, S_lateral };

inline constexpr std::array<Plane, 4> kAllPlanes{Plane::V, Plane::H, Plane::S_down, Plane::S_lateral};

std::string_view to_string(Plane plane);
Plane parse_plane(std::string_view text);

/// One point of the movement lattice.
struct MotionCell {
  std::string shape_class;
  Plane plane = Plane::V;
  int repetition = 1;  // 1..3

  auto operator<=>(const MotionCell&) const = default;
};

/// Text form `shape:plane:repetition`, e.g. `curve:S_down:3`.
MotionCell parse_motion_cell(std::string_view text);
std::string to_string(const MotionCell& cell);

struct Provenance {
  std::string author;
  std::string created_at;
  std::string session;                 // sign context a user glyph was drawn in
  std::optional<SymbolId> template_id;  // set on synthesized extension glyphs

  bool operator==(const Provenance&) const = default;
};

inline constexpr int kDefaultGlyphSize = 30;

/// Tag names with fixed meaning across modules.
namespace tags {
inline constexpr std::string_view motion = "motion";
inline constexpr std::string_view annotation = "annotation";
inline constexpr std::string_view face_circle = "face-circle";
inline constexpr std::string_view head_movement = "head-movement";
inline constexpr std::string_view forearm = "forearm-involvement";
}  // namespace tags

struct GlyphEntry {
  GlyphRef id;
  std::string name;
  GlyphStatus status = GlyphStatus::official_2004;
  std::array<std::string, 3> taxonomy;  // category, group, family
  std::set<std::string> feature_tags;
  Geometry geometry;                    // unit box
  std::optional<MotionCell> motion;
  int width = kDefaultGlyphSize;        // canvas units
  int height = kDefaultGlyphSize;
  std::optional<Provenance> provenance;

  bool has_tag(std::string_view tag) const { return feature_tags.contains(std::string(tag)); }
  const SymbolId* symbol_id() const { return std::get_if<SymbolId>(&id); }
  bool operator==(const GlyphEntry&) const = default;
};

}  // namespace swb
