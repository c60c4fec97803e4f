#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "swb/registry.hpp"
#include "swb/sign_document.hpp"
#include "swb/user_glyphs.hpp"

namespace swb {

/// Freehand input in device coordinates.
struct StrokeSketch {
  std::vector<Polyline> strokes;
  double canvas_w = 0;
  double canvas_h = 0;
};

/// Throws Error(invalid_argument): no strokes, a stroke with < 2 points,
/// or points outside the canvas.
void check_sketch(const StrokeSketch& sketch);

/// Text form: optional first line `canvas W H`, then one stroke per line as
/// `x,y x,y ...`. Without a canvas line the canvas is the smallest integer
/// box from the origin containing every point.
StrokeSketch parse_sketch(std::string_view text);
std::string format_sketch(const StrokeSketch& sketch);

/// Draws unit-box geometry into a square `size` canvas with a `margin` border.
StrokeSketch sketch_from_geometry(const Geometry& geometry, double size = 100.0, double margin = 10.0);
/// Sketch strokes fitted into the unit box, for storage as glyph geometry.
Geometry geometry_from_sketch(const StrokeSketch& sketch);

class Bitmap {
 public:
  explicit Bitmap(int side) : side_(side), pixels_(static_cast<std::size_t>(side) * side, 0) {}

  int side() const { return side_; }
  bool at(int x, int y) const { return pixels_[index(x, y)] != 0; }
  void set(int x, int y) {
    if (x >= 0 && y >= 0 && x < side_ && y < side_) pixels_[index(x, y)] = 1;
  }
  std::size_t ink() const;
  bool operator==(const Bitmap&) const = default;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * side_ + x; }
  int side_;
  std::vector<std::uint8_t> pixels_;
};

inline constexpr int kRasterSide = 64;

/// Sketch strokes mapped into [0, side-1]^2: bounding box scaled by its
/// larger extent (aspect kept) and centered. A degenerate box maps to the center.
std::vector<Polyline> normalize_strokes(const std::vector<Polyline>& strokes, int side = kRasterSide);

/// 1-pixel-wide binary raster of the normalized strokes.
Bitmap rasterize(const StrokeSketch& sketch, int side = kRasterSide);
Bitmap rasterize_strokes(const std::vector<Polyline>& strokes, int side = kRasterSide);
/// Plots strokes already in pixel coordinates, without normalization.
Bitmap plot(const std::vector<Polyline>& pixel_strokes, int side);

inline constexpr std::size_t kZoneGrid = 8;
inline constexpr std::size_t kDirectionBins = 8;
inline constexpr std::size_t kDescriptorSize = kZoneGrid * kZoneGrid + kDirectionBins;

/// 8x8 zoned ink-occupancy ratios followed by an 8-bin (45 degree) stroke
/// direction histogram. Bin 0 points right, bins advance counterclockwise
/// with y up.
struct ShapeDescriptor {
  std::array<double, kDescriptorSize> values{};

  std::span<const double> occupancy() const { return std::span(values).first(kZoneGrid * kZoneGrid); }
  std::span<const double> directions() const { return std::span(values).last(kDirectionBins); }
  bool operator==(const ShapeDescriptor&) const = default;
};

/// Occupancy from `bitmap`, directions from `normalized` strokes (all zero
/// when there are none or they have no length). Throws Error(empty_ink).
ShapeDescriptor describe(const Bitmap& bitmap, const std::vector<Polyline>& normalized = {});
ShapeDescriptor describe(const StrokeSketch& sketch);
/// Catalog geometry goes through the same sketch pipeline as user input.
ShapeDescriptor describe(const Geometry& geometry);

double distance(const ShapeDescriptor& a, const ShapeDescriptor& b);

struct MatchResult {
  GlyphRef id;
  double distance = 0;
};

/// Exact nearest-neighbour index over glyph descriptors. Immutable once built.
class FormIndex {
 public:
  struct Item {
    GlyphRef id;
    GlyphStatus status;
    ShapeDescriptor descriptor;
  };

  FormIndex() = default;
  explicit FormIndex(std::vector<Item> items);
  static FormIndex build(const Registry& registry, const std::function<bool(const GlyphEntry&)>& filter = {});

  /// Items limited to the catalog statuses (official and extension).
  FormIndex catalog_only() const;

  const std::vector<Item>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

 private:
  std::vector<Item> items_;
};

/// k nearest, ascending distance, ties by id. Not rotation invariant.
/// Throws Error(empty_index) or Error(invalid_argument) for k == 0.
std::vector<MatchResult> match(const FormIndex& index, const ShapeDescriptor& query, std::size_t k);
std::vector<MatchResult> match(const FormIndex& index, const StrokeSketch& sketch, std::size_t k);

/// Function labels of a glyph: declared tags for user glyphs; tags plus
/// taxonomy labels for catalog glyphs.
std::set<std::string> function_labels(const GlyphEntry& entry);

struct TaxonomyQuery {
  std::vector<std::string> path;  // prefix, catalog glyphs only
  std::set<std::string> tags;     // all must be among the function labels
};

std::vector<GlyphEntry> taxonomy_search(const Registry& registry, const UserGlyphStore* user_glyphs,
                                        const TaxonomyQuery& query);

struct StoredSign {
  std::string id;
  SignDocument doc;
};

/// Ids of signs holding at least one glyph with `function_class` among its
/// function labels, each once, in input order.
std::vector<std::string> corpus_query(std::span<const StoredSign> signs, const GlyphCatalog& catalog,
                                      std::string_view function_class);

}  // namespace swb
