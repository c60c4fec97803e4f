#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace swb {

/// Structured catalog code, text form `CC-GG-BBB-VV-FF-RR`.
///
/// Rotation folds mirroring into one field: 1..8 are 45 degree steps
/// counterclockwise, 9..16 the mirrored counterparts of 1..8. Use
/// rotation_step()/mirrored() rather than the raw field.
struct SymbolId {
  int category = 1;   // 1..8
  int group = 1;      // 1..99
  int base = 1;       // 1..999
  int variation = 1;  // 1..99
  int fill = 1;       // 1..6
  int rotation = 1;   // 1..16

  /// 0..7
  int rotation_step() const { return (rotation - 1) % 8; }
  bool mirrored() const { return rotation > 8; }

  /// Builds the rotation field from a step (any integer, reduced mod 8) and mirror flag.
  static int encode_rotation(int step, bool mirror);

  auto operator<=>(const SymbolId&) const = default;
};

/// Throws Error(parse) naming the offending field.
SymbolId parse_symbol_id(std::string_view text);
std::string to_string(const SymbolId& id);
/// Throws Error(parse) when any field is outside its declared range.
void check_ranges(const SymbolId& id);

/// Opaque id of a user-drawn glyph, text form `U-<n>`.
struct UserGlyphId {
  std::uint64_t serial = 0;
  auto operator<=>(const UserGlyphId&) const = default;
};

UserGlyphId parse_user_glyph_id(std::string_view text);
std::string to_string(const UserGlyphId& id);

/// Anything a sign can reference. Orders catalog ids before user ids.
using GlyphRef = std::variant<SymbolId, UserGlyphId>;

GlyphRef parse_glyph_ref(std::string_view text);
std::string to_string(const GlyphRef& ref);

inline bool is_user(const GlyphRef& ref) { return std::holds_alternative<UserGlyphId>(ref); }

}  // namespace swb
