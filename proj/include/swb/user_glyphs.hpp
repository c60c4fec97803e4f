#pragma once

#include <map>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "swb/glyph.hpp"

namespace swb {

struct UserGlyphSubmission {
  Geometry geometry;                  // any frame; normalized into the unit box
  std::set<std::string> function_tags;
  std::string author;
  std::string session;
  std::string created_at;
  int width = kDefaultGlyphSize;
  int height = kDefaultGlyphSize;
};

/// User-drawn glyphs, kept apart from the immutable catalog. Ids are
/// `U-<n>` with n increasing from 1. Thread-safe.
class UserGlyphStore {
 public:
  UserGlyphStore() = default;
  UserGlyphStore(const UserGlyphStore& other);
  UserGlyphStore& operator=(const UserGlyphStore&) = delete;

  /// Throws Error(invalid_argument) for empty geometry or no tags.
  UserGlyphId register_glyph(UserGlyphSubmission submission);

  /// Re-inserts a previously issued entry (journal replay). Keeps the id.
  void restore(GlyphEntry entry);

  std::optional<GlyphEntry> find(const UserGlyphId& id) const;
  std::vector<GlyphEntry> all() const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<UserGlyphId, GlyphEntry> glyphs_;
  std::uint64_t next_serial_ = 1;
};

/// The catalog entry a submission becomes (status user, declared tags).
GlyphEntry make_user_entry(UserGlyphId id, UserGlyphSubmission submission);

}  // namespace swb
