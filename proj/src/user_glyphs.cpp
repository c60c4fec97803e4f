#include "swb/user_glyphs.hpp"

#include <mutex>

#include "swb/error.hpp"

namespace swb {

GlyphEntry make_user_entry(UserGlyphId id, UserGlyphSubmission submission) {
  bool has_points = false;
  for (const auto& stroke : submission.geometry) has_points = has_points || !stroke.empty();
  if (!has_points) throw Error(ErrorCode::invalid_argument, "user glyph needs non-empty geometry");
  if (submission.function_tags.empty()) {
    throw Error(ErrorCode::invalid_argument, "user glyph needs at least one declared function tag");
  }
  if (submission.width <= 0 || submission.height <= 0) {
    throw Error(ErrorCode::invalid_argument, "user glyph size must be positive");
  }
  GlyphEntry e;
  e.id = id;
  e.name = "user glyph " + to_string(id);
  e.status = GlyphStatus::user;
  // Family is the primary declared tag; tags, not component codes, carry function.
  e.taxonomy = {"user", *submission.function_tags.begin(), "freehand"};
  e.feature_tags = std::move(submission.function_tags);
  e.geometry = fit_unit_box(submission.geometry);
  e.width = submission.width;
  e.height = submission.height;
  e.provenance = Provenance{std::move(submission.author), std::move(submission.created_at),
                            std::move(submission.session), std::nullopt};
  return e;
}

UserGlyphStore::UserGlyphStore(const UserGlyphStore& other) {
  std::shared_lock lock(other.mutex_);
  glyphs_ = other.glyphs_;
  next_serial_ = other.next_serial_;
}

UserGlyphId UserGlyphStore::register_glyph(UserGlyphSubmission submission) {
  std::unique_lock lock(mutex_);
  UserGlyphId id{next_serial_};
  auto entry = make_user_entry(id, std::move(submission));
  glyphs_.emplace(id, std::move(entry));
  ++next_serial_;
  return id;
}

void UserGlyphStore::restore(GlyphEntry entry) {
  const auto* uid = std::get_if<UserGlyphId>(&entry.id);
  if (uid == nullptr) throw Error(ErrorCode::invalid_argument, "restore expects a user glyph id");
  std::unique_lock lock(mutex_);
  next_serial_ = std::max(next_serial_, uid->serial + 1);
  auto key = *uid;
  if (!glyphs_.emplace(key, std::move(entry)).second) {
    throw Error(ErrorCode::duplicate_id, "duplicate user glyph " + to_string(key));
  }
}

std::optional<GlyphEntry> UserGlyphStore::find(const UserGlyphId& id) const {
  std::shared_lock lock(mutex_);
  auto it = glyphs_.find(id);
  if (it == glyphs_.end()) return std::nullopt;
  return it->second;
}

std::vector<GlyphEntry> UserGlyphStore::all() const {
  std::shared_lock lock(mutex_);
  std::vector<GlyphEntry> out;
  out.reserve(glyphs_.size());
  for (const auto& [_, e] : glyphs_) out.push_back(e);
  return out;
}

std::size_t UserGlyphStore::size() const {
  std::shared_lock lock(mutex_);
  return glyphs_.size();
}

}  // namespace swb
