#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "swb/glyph.hpp"

namespace swb {

/// Geometry edit converting a motion glyph drawn for one plane into another:
/// drop the last `drop_last` strokes (the old plane marker), map the rest
/// through `map`, then append `add` (the new marker).
struct PlaneEdit {
  int drop_last = 0;
  Affine map;
  Geometry add;

  Geometry apply(const Geometry& geometry) const;
  bool is_identity() const { return drop_last == 0 && map == Affine{} && add.empty(); }
  bool operator==(const PlaneEdit&) const = default;
};

/// `identity` or `;`-separated ops: `drop(n)`, `affine(a,b,c,d,e,f)`, `add(<path>)`.
PlaneEdit parse_plane_edit(std::string_view text);
std::string to_string(const PlaneEdit& edit);

/// Edit rules for every ordered plane pair. Pairs never set are identity.
class PlaneSubstitutionTable {
 public:
  const PlaneEdit& edit(Plane from, Plane to) const { return edits_[index(from)][index(to)]; }
  void set(Plane from, Plane to, PlaneEdit edit) { edits_[index(from)][index(to)] = std::move(edit); }

 private:
  static std::size_t index(Plane p) { return static_cast<std::size_t>(p); }
  std::array<std::array<PlaneEdit, 4>, 4> edits_{};
};

using StatusCounts = std::map<GlyphStatus, std::size_t>;

/// Either child labels (prefix depth 0 or 1) or the glyphs of a group (depth 2).
using TaxonomyChildren = std::variant<std::vector<std::string>, std::vector<const GlyphEntry*>>;

/// Immutable glyph catalog with id, taxonomy and motion indexes.
/// Safe to share between threads once built.
class Registry {
 public:
  Registry() = default;

  /// Validates and indexes. Throws Error(duplicate_id | dangling_taxonomy |
  /// motion_mismatch | invalid_argument).
  static Registry build(std::string version, std::vector<GlyphEntry> entries, PlaneSubstitutionTable substitutions = {},
                        std::vector<std::string> shape_classes = {});

  /// New registry holding this one's entries plus `extra`.
  Registry extended(std::vector<GlyphEntry> extra) const;

  const std::string& version() const { return version_; }
  const std::vector<GlyphEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  const GlyphEntry* find(const SymbolId& id) const;
  const GlyphEntry& at(const SymbolId& id) const;  // throws Error(not_found)

  /// Declared motion shape classes, sorted.
  const std::vector<std::string>& shape_classes() const { return shape_classes_; }
  const PlaneSubstitutionTable& substitutions() const { return substitutions_; }

  /// Level 0/1 prefixes return sorted labels; level 2 returns the group's glyphs
  /// ordered by (family, id). Throws Error(not_found) for unknown prefixes and
  /// Error(invalid_argument) for prefixes deeper than 2.
  TaxonomyChildren taxonomy_children(std::span<const std::string> prefix) const;

 private:
  std::string version_;
  std::vector<GlyphEntry> entries_;
  std::map<SymbolId, std::size_t> by_id_;
  std::map<std::string, std::map<std::string, std::vector<std::size_t>>> taxonomy_;
  std::vector<std::string> shape_classes_;
  bool shapes_declared_ = false;
  PlaneSubstitutionTable substitutions_;
};

/// Line-oriented, tab-separated manifest. Columns: id, name, status,
/// category, group, family, tags (comma list or "-"), motion (shape:plane:rep
/// or "-"), geometry path, optional size "WxH". Directive lines:
/// `@version`, `@shapes` (comma list), `@subst from to edit`. `#` comments.
Registry load_manifest(std::istream& in, const std::string& source_name = "<manifest>");
Registry load_manifest(const std::filesystem::path& path);
Registry load_manifest_text(std::string_view text);

void write_manifest(std::ostream& out, const Registry& registry);

StatusCounts count_by_status(const Registry& registry);

/// Rotated/mirrored/refilled sibling of `id`. Throws Error(not_found) when `id`
/// is absent and Error(missing_variant) when the sibling is.
SymbolId transform_variant(const Registry& registry, const SymbolId& id, int delta_rotation, bool toggle_mirror,
                           std::optional<int> new_fill = std::nullopt);

}  // namespace swb
