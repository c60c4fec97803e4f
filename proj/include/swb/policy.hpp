#pragma once

#include <string>
#include <string_view>

#include "swb/glyph.hpp"

namespace swb {

enum class Role { user, researcher };

std::string_view to_string(Role role);
Role parse_role(std::string_view text);

/// Who is acting and in which sign context (the session's current document).
struct Actor {
  Role role = Role::user;
  std::string session;
};

/// Users may only place user glyphs drawn in their own sign context;
/// researchers may place any. Catalog glyphs are always allowed.
bool may_place(const Actor& actor, const GlyphEntry& entry);

}  // namespace swb
