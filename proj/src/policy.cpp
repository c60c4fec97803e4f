#include "swb/policy.hpp"

#include "swb/error.hpp"

namespace swb {

std::string_view to_string(Role role) { return role == Role::user ? "user" : "researcher"; }

Role parse_role(std::string_view text) {
  if (text == "user") return Role::user;
  if (text == "researcher") return Role::researcher;
  throw Error(ErrorCode::parse, "unknown role '" + std::string(text) + "'");
}

bool may_place(const Actor& actor, const GlyphEntry& entry) {
  if (entry.status != GlyphStatus::user || actor.role == Role::researcher) return true;
  return entry.provenance && !actor.session.empty() && entry.provenance->session == actor.session;
}

}  // namespace swb
