#include "swb/recognition.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "swb/error.hpp"

namespace swb {

// ---------------------------------------------------------------------------
// Sketches

void check_sketch(const StrokeSketch& sketch) {
  if (sketch.strokes.empty()) throw Error(ErrorCode::invalid_argument, "sketch has no strokes");
  if (!(sketch.canvas_w > 0) || !(sketch.canvas_h > 0)) {
    throw Error(ErrorCode::invalid_argument, "sketch canvas must have positive size");
  }
  for (std::size_t i = 0; i < sketch.strokes.size(); ++i) {
    const auto& stroke = sketch.strokes[i];
    if (stroke.size() < 2) {
      throw Error(ErrorCode::invalid_argument, "stroke " + std::to_string(i) + " has fewer than 2 points");
    }
    for (const auto& p : stroke) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0 || p.y < 0 || p.x > sketch.canvas_w ||
          p.y > sketch.canvas_h) {
        throw Error(ErrorCode::invalid_argument, "stroke " + std::to_string(i) + " leaves the canvas at (" +
                                                     format_number(p.x) + "," + format_number(p.y) + ")");
      }
    }
  }
}

namespace {

double parse_coordinate(std::string_view s, int line_no) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::parse, "sketch line " + std::to_string(line_no) + ": bad coordinate '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

StrokeSketch parse_sketch(std::string_view text) {
  StrokeSketch sketch;
  bool explicit_canvas = false;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream words(line);
    std::string word;
    std::vector<std::string> tokens;
    while (words >> word) tokens.push_back(word);
    if (tokens.empty() || tokens[0].starts_with("#")) continue;
    if (tokens[0] == "canvas") {
      if (tokens.size() != 3 || !sketch.strokes.empty()) {
        throw Error(ErrorCode::parse, "sketch line " + std::to_string(line_no) + ": expected 'canvas W H' first");
      }
      sketch.canvas_w = parse_coordinate(tokens[1], line_no);
      sketch.canvas_h = parse_coordinate(tokens[2], line_no);
      explicit_canvas = true;
      continue;
    }
    Polyline stroke;
    for (const auto& t : tokens) {
      auto comma = t.find(',');
      if (comma == std::string::npos) {
        throw Error(ErrorCode::parse, "sketch line " + std::to_string(line_no) + ": expected x,y but got '" + t + "'");
      }
      std::string_view tv = t;
      stroke.push_back({parse_coordinate(tv.substr(0, comma), line_no), parse_coordinate(tv.substr(comma + 1), line_no)});
    }
    sketch.strokes.push_back(std::move(stroke));
  }
  if (!explicit_canvas) {
    for (const auto& stroke : sketch.strokes) {
      for (const auto& p : stroke) {
        sketch.canvas_w = std::max(sketch.canvas_w, std::ceil(p.x) + 1);
        sketch.canvas_h = std::max(sketch.canvas_h, std::ceil(p.y) + 1);
      }
    }
  }
  check_sketch(sketch);
  return sketch;
}

std::string format_sketch(const StrokeSketch& sketch) {
  std::string out = "canvas " + format_number(sketch.canvas_w) + " " + format_number(sketch.canvas_h) + "\n";
  for (const auto& stroke : sketch.strokes) {
    for (std::size_t i = 0; i < stroke.size(); ++i) {
      out += (i ? " " : "") + format_number(stroke[i].x) + "," + format_number(stroke[i].y);
    }
    out += "\n";
  }
  return out;
}

StrokeSketch sketch_from_geometry(const Geometry& geometry, double size, double margin) {
  StrokeSketch sketch;
  sketch.canvas_w = size;
  sketch.canvas_h = size;
  double span = size - 2 * margin;
  sketch.strokes = transform(geometry, Affine{span, 0, margin, 0, span, margin});
  return sketch;
}

Geometry geometry_from_sketch(const StrokeSketch& sketch) {
  check_sketch(sketch);
  return fit_unit_box(sketch.strokes);
}

// ---------------------------------------------------------------------------
// Raster

std::size_t Bitmap::ink() const { return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), 1)); }

std::vector<Polyline> normalize_strokes(const std::vector<Polyline>& strokes, int side) {
  auto box = bounds(strokes);
  if (!box) return {};
  double last = side - 1;
  double extent = std::max(box->width(), box->height());
  std::vector<Polyline> out;
  out.reserve(strokes.size());
  for (const auto& stroke : strokes) {
    Polyline mapped;
    mapped.reserve(stroke.size());
    for (const auto& p : stroke) {
      if (extent == 0.0) {
        mapped.push_back({last / 2, last / 2});
        continue;
      }
      // Ratios first: translation and power-of-two scaling stay exact.
      double nx = (p.x - box->min_x) / extent;
      double ny = (p.y - box->min_y) / extent;
      double ox = (1.0 - box->width() / extent) * last / 2;
      double oy = (1.0 - box->height() / extent) * last / 2;
      mapped.push_back({nx * last + ox, ny * last + oy});
    }
    out.push_back(std::move(mapped));
  }
  return out;
}

namespace {

int pixel(double v) { return static_cast<int>(std::floor(v + 0.5)); }

void draw_line(Bitmap& bitmap, int x0, int y0, int x1, int y1) {
  int dx = std::abs(x1 - x0), sx = x0 < x1 ? 1 : -1;
  int dy = -std::abs(y1 - y0), sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    bitmap.set(x0, y0);
    if (x0 == x1 && y0 == y1) return;
    int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

Bitmap draw(const std::vector<Polyline>& normalized, int side) {
  Bitmap bitmap(side);
  for (const auto& stroke : normalized) {
    if (stroke.size() == 1) bitmap.set(pixel(stroke[0].x), pixel(stroke[0].y));
    for (std::size_t i = 1; i < stroke.size(); ++i) {
      draw_line(bitmap, pixel(stroke[i - 1].x), pixel(stroke[i - 1].y), pixel(stroke[i].x), pixel(stroke[i].y));
    }
  }
  return bitmap;
}

ShapeDescriptor describe_strokes(const std::vector<Polyline>& strokes) {
  auto normalized = normalize_strokes(strokes, kRasterSide);
  return describe(draw(normalized, kRasterSide), normalized);
}

}  // namespace

Bitmap rasterize_strokes(const std::vector<Polyline>& strokes, int side) {
  if (side < 1) throw Error(ErrorCode::invalid_argument, "raster side must be positive");
  return draw(normalize_strokes(strokes, side), side);
}

Bitmap plot(const std::vector<Polyline>& pixel_strokes, int side) {
  if (side < 1) throw Error(ErrorCode::invalid_argument, "raster side must be positive");
  return draw(pixel_strokes, side);
}

Bitmap rasterize(const StrokeSketch& sketch, int side) {
  check_sketch(sketch);
  return rasterize_strokes(sketch.strokes, side);
}

// ---------------------------------------------------------------------------
// Descriptor

ShapeDescriptor describe(const Bitmap& bitmap, const std::vector<Polyline>& normalized) {
  if (bitmap.ink() == 0) throw Error(ErrorCode::empty_ink, "cannot describe a shape without ink");
  ShapeDescriptor d;
  int side = bitmap.side();
  for (std::size_t zy = 0; zy < kZoneGrid; ++zy) {
    int y0 = static_cast<int>(zy * side / kZoneGrid), y1 = static_cast<int>((zy + 1) * side / kZoneGrid);
    for (std::size_t zx = 0; zx < kZoneGrid; ++zx) {
      int x0 = static_cast<int>(zx * side / kZoneGrid), x1 = static_cast<int>((zx + 1) * side / kZoneGrid);
      int ink = 0, area = (x1 - x0) * (y1 - y0);
      for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) ink += bitmap.at(x, y) ? 1 : 0;
      }
      d.values[zy * kZoneGrid + zx] = area == 0 ? 0.0 : static_cast<double>(ink) / area;
    }
  }
  std::array<double, kDirectionBins> histogram{};
  double total = 0;
  for (const auto& stroke : normalized) {
    for (std::size_t i = 1; i < stroke.size(); ++i) {
      double dx = stroke[i].x - stroke[i - 1].x;
      double dy = stroke[i].y - stroke[i - 1].y;
      double length = std::hypot(dx, dy);
      if (length == 0.0) continue;
      double degrees = std::atan2(-dy, dx) * 180.0 / std::numbers::pi;
      auto bin = static_cast<long>(std::floor((degrees + 22.5) / 45.0));
      histogram[static_cast<std::size_t>(((bin % 8) + 8) % 8)] += length;
      total += length;
    }
  }
  for (std::size_t i = 0; i < kDirectionBins; ++i) {
    d.values[kZoneGrid * kZoneGrid + i] = total > 0 ? histogram[i] / total : 0.0;
  }
  return d;
}

ShapeDescriptor describe(const StrokeSketch& sketch) {
  check_sketch(sketch);
  return describe_strokes(sketch.strokes);
}

ShapeDescriptor describe(const Geometry& geometry) {
  if (!bounds(geometry)) throw Error(ErrorCode::empty_ink, "cannot describe empty geometry");
  return describe_strokes(sketch_from_geometry(geometry).strokes);
}

double distance(const ShapeDescriptor& a, const ShapeDescriptor& b) {
  double sum = 0;
  for (std::size_t i = 0; i < kDescriptorSize; ++i) {
    double d = a.values[i] - b.values[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// Index and matching

FormIndex::FormIndex(std::vector<Item> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) { return a.id < b.id; });
}

FormIndex FormIndex::build(const Registry& registry, const std::function<bool(const GlyphEntry&)>& filter) {
  std::vector<Item> items;
  items.reserve(registry.size());
  for (const auto& e : registry.entries()) {
    if (filter && !filter(e)) continue;
    items.push_back({e.id, e.status, describe(e.geometry)});
  }
  return FormIndex(std::move(items));
}

FormIndex FormIndex::catalog_only() const {
  std::vector<Item> items;
  for (const auto& item : items_) {
    if (item.status != GlyphStatus::user) items.push_back(item);
  }
  return FormIndex(std::move(items));
}

std::vector<MatchResult> match(const FormIndex& index, const ShapeDescriptor& query, std::size_t k) {
  if (index.empty()) throw Error(ErrorCode::empty_index, "form index is empty");
  if (k == 0) throw Error(ErrorCode::invalid_argument, "k must be at least 1");
  std::vector<MatchResult> all;
  all.reserve(index.size());
  for (const auto& item : index.items()) all.push_back({item.id, distance(query, item.descriptor)});
  auto n = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n), all.end(),
                    [](const MatchResult& a, const MatchResult& b) {
                      if (a.distance != b.distance) return a.distance < b.distance;
                      return a.id < b.id;
                    });
  all.resize(n);
  return all;
}

std::vector<MatchResult> match(const FormIndex& index, const StrokeSketch& sketch, std::size_t k) {
  return match(index, describe(sketch), k);
}

// ---------------------------------------------------------------------------
// Function search

std::set<std::string> function_labels(const GlyphEntry& entry) {
  std::set<std::string> labels = entry.feature_tags;
  if (entry.status != GlyphStatus::user) labels.insert(entry.taxonomy.begin(), entry.taxonomy.end());
  return labels;
}

namespace {

bool tags_match(const GlyphEntry& e, const std::set<std::string>& wanted) {
  if (wanted.empty()) return true;
  auto labels = function_labels(e);
  return std::all_of(wanted.begin(), wanted.end(), [&](const std::string& t) { return labels.contains(t); });
}

}  // namespace

std::vector<GlyphEntry> taxonomy_search(const Registry& registry, const UserGlyphStore* user_glyphs,
                                        const TaxonomyQuery& query) {
  if (query.path.size() > 3) throw Error(ErrorCode::invalid_argument, "taxonomy path has at most 3 levels");
  std::vector<GlyphEntry> out;
  for (const auto& e : registry.entries()) {
    bool path_ok = std::equal(query.path.begin(), query.path.end(), e.taxonomy.begin());
    if (path_ok && tags_match(e, query.tags)) out.push_back(e);
  }
  if (user_glyphs != nullptr && query.path.empty()) {
    for (auto& e : user_glyphs->all()) {
      if (tags_match(e, query.tags)) out.push_back(std::move(e));
    }
  }
  std::sort(out.begin(), out.end(), [](const GlyphEntry& a, const GlyphEntry& b) { return a.id < b.id; });
  return out;
}

std::vector<std::string> corpus_query(std::span<const StoredSign> signs, const GlyphCatalog& catalog,
                                      std::string_view function_class) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  std::string wanted(function_class);
  for (const auto& sign : signs) {
    bool hit = std::any_of(sign.doc.glyphs.begin(), sign.doc.glyphs.end(), [&](const PlacedGlyph& g) {
      auto entry = catalog.lookup(g.ref);
      return entry && function_labels(*entry).contains(wanted);
    });
    if (hit && seen.insert(sign.id).second) out.push_back(sign.id);
  }
  return out;
}

}  // namespace swb
