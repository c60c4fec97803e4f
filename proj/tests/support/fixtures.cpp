#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace swb::testing {

std::string data_path(const std::string& name) { return std::string(SWB_DATA_DIR) + "/" + name; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Registry sample_registry() { return load_manifest(std::filesystem::path(data_path("sample.tsv"))); }

Registry motion_fixture_registry() { return load_manifest(std::filesystem::path(data_path("motion_closure.tsv"))); }

namespace {

// Quarter turns are done by coordinate swaps so the ids' geometry stays exact.
Geometry quarter_turn(const Geometry& g, int quarters) {
  Geometry out = g;
  for (int q = 0; q < ((quarters % 4) + 4) % 4; ++q) {
    for (auto& stroke : out) {
      for (auto& p : stroke) p = Point{p.y, 1.0 - p.x};
    }
  }
  return out;
}

Geometry circle(double cx, double cy, double r, int n = 12) {
  Polyline ring;
  for (int i = 0; i <= n; ++i) {
    double a = 2 * std::numbers::pi * i / n;
    ring.push_back({cx + r * std::cos(a), cy + r * std::sin(a)});
  }
  return {ring};
}

std::vector<Geometry> base_shapes() {
  std::vector<std::string> paths = {
      "M0.2,0.1 L0.2,0.9 L0.8,0.9",
      "M0.1,0.2 L0.9,0.2 M0.35,0.2 L0.35,0.9",
      "M0.1,0.5 L0.9,0.5 M0.9,0.5 L0.7,0.3",
      "M0.3,0.1 L0.3,0.7 L0.4,0.85 L0.55,0.9 L0.7,0.85 L0.8,0.7",
      "M0.1,0.8 L0.3,0.2 L0.5,0.8 L0.7,0.2 L0.9,0.5",
      "M0.5,0.5 L0.6,0.5 L0.6,0.35 L0.35,0.35 L0.35,0.7 L0.8,0.7 L0.8,0.15 L0.15,0.15",
      "M0.2,0.1 L0.2,0.9 L0.8,0.9 L0.8,0.4",
      "M0.2,0.9 L0.2,0.1 L0.8,0.25 L0.2,0.4",
      "M0.1,0.5 L0.35,0.85 L0.9,0.1",
      "M0.1,0.7 L0.2,0.4 L0.4,0.2 L0.6,0.2 L0.8,0.4 L0.9,0.7 M0.9,0.7 L0.75,0.6",
      "M0.2,0.7 L0.5,0.2 L0.8,0.7 L0.2,0.7 M0.8,0.7 L0.9,0.95",
      "M0.05,0.5 L0.2,0.3 L0.35,0.5 L0.5,0.7 L0.65,0.5 L0.8,0.3 L0.95,0.45",
      "M0.8,0.1 L0.2,0.1 L0.2,0.9 L0.8,0.9 M0.2,0.5 L0.6,0.5",
      "",  // key: ring plus shaft, built below
      "M0.6,0.05 L0.3,0.5 L0.6,0.5 L0.35,0.95 M0.35,0.95 L0.3,0.8",
  };
  std::vector<Geometry> shapes;
  for (const auto& p : paths) {
    if (!p.empty()) {
      shapes.push_back(parse_path(p));
      continue;
    }
    Geometry key = circle(0.3, 0.3, 0.2);
    auto shaft = parse_path("M0.5,0.3 L0.9,0.3 M0.8,0.3 L0.8,0.45");
    key.insert(key.end(), shaft.begin(), shaft.end());
    shapes.push_back(key);
  }
  return shapes;
}

GlyphEntry plain_entry(SymbolId id, std::string name, Geometry geometry, std::array<std::string, 3> taxonomy) {
  GlyphEntry e;
  e.id = id;
  e.name = std::move(name);
  e.status = GlyphStatus::official_2008;
  e.taxonomy = std::move(taxonomy);
  e.geometry = std::move(geometry);
  return e;
}

}  // namespace

Geometry rotate_about_center(const Geometry& geometry, double degrees) {
  double a = degrees * std::numbers::pi / 180.0;
  double c = std::cos(a), s = std::sin(a);
  // Counterclockwise on screen (y down).
  return transform(geometry, Affine{c, s, 0.5 - 0.5 * c - 0.5 * s, -s, c, 0.5 + 0.5 * s - 0.5 * c});
}

Registry recognition_registry() {
  std::vector<GlyphEntry> entries;
  auto shapes = base_shapes();
  for (std::size_t i = 0; i < shapes.size(); ++i) {
    for (int q = 0; q < 4; ++q) {
      SymbolId id{4, static_cast<int>(i) + 1, 1, 1, 1, SymbolId::encode_rotation(2 * q, false)};
      entries.push_back(plain_entry(id, "shape " + std::to_string(i + 1) + " turn " + std::to_string(q),
                                    quarter_turn(shapes[i], q),
                                    {"synthetic", "shape-" + std::to_string(i + 1), "turn-" + std::to_string(q)}));
    }
  }
  return Registry::build("recognition-60", std::move(entries));
}

Registry rotation_family_registry() {
  auto arrow = parse_path("M0.2,0.5 L0.8,0.5 M0.8,0.5 L0.65,0.35");
  auto shrink = transform(arrow, Affine{0.7, 0, 0.15, 0, 0.7, 0.15});
  auto mirror = transform(shrink, Affine{-1, 0, 1, 0, 1, 0});
  std::vector<GlyphEntry> entries;
  for (int fill = 1; fill <= 2; ++fill) {
    for (int rotation = 1; rotation <= 16; ++rotation) {
      SymbolId id{1, 1, 1, 1, fill, rotation};
      auto geometry = rotate_about_center(rotation > 8 ? mirror : shrink, 45.0 * ((rotation - 1) % 8));
      entries.push_back(plain_entry(id, "arrow " + std::to_string(rotation), geometry, {"hands", "index", "arrow"}));
    }
  }
  for (int rotation : {1, 3, 5, 7}) {
    SymbolId id{1, 1, 2, 1, 1, rotation};
    entries.push_back(plain_entry(id, "bar " + std::to_string(rotation),
                                  rotate_about_center(parse_path("M0.2,0.5 L0.8,0.5"), 45.0 * (rotation - 1)),
                                  {"hands", "index", "bar"}));
  }
  return Registry::build("rotation-families", std::move(entries));
}

std::vector<std::string> lattice_shapes() {
  std::vector<std::string> shapes;
  for (int i = 0; i < kLatticeShapes; ++i) shapes.push_back("shape" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  return shapes;
}

CellSet random_lattice(std::mt19937& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double density = unit(rng);
  CellSet cells;
  for (const auto& shape : lattice_shapes()) {
    for (auto plane : kAllPlanes) {
      for (int rep = 1; rep <= 3; ++rep) {
        if (unit(rng) < density) cells.insert(MotionCell{shape, plane, rep});
      }
    }
  }
  return cells;
}

Registry registry_from_cells(const CellSet& cells) {
  auto shapes = lattice_shapes();
  std::vector<GlyphEntry> entries;
  for (const auto& cell : cells) {
    auto shape_index = std::find(shapes.begin(), shapes.end(), cell.shape_class) - shapes.begin();
    int plane_index = static_cast<int>(cell.plane);
    SymbolId id{2, static_cast<int>(shape_index) + 1, plane_index * 10 + cell.repetition + 10, 1, 1, 1};
    auto e = plain_entry(id, to_string(cell), parse_path("M0.1,0.5 L0.5,0.2 L0.9,0.5"),
                         {"movement", cell.shape_class, cell.shape_class});
    e.feature_tags = {"motion"};
    e.motion = cell;
    entries.push_back(std::move(e));
  }
  return Registry::build("cells", std::move(entries), {}, shapes);
}

namespace {

std::string random_text(std::mt19937& rng) {
  static const std::vector<std::string> alphabet = {"a", "b", "Z", " ", "&", "<", ">", "\"", "'", "\t", "\n",
                                                    "\r", "\xC3\xA9", "\xE6\x89\x8B", "-", "9", ";", "#"};
  std::uniform_int_distribution<std::size_t> length(0, 12), pick(0, alphabet.size() - 1);
  std::string out;
  for (auto n = length(rng); n > 0; --n) out += alphabet[pick(rng)];
  return out;
}

}  // namespace

SignDocument random_document(std::mt19937& rng) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SignDocument doc;
  doc.canvas_w = uniform(60, 400);
  doc.canvas_h = uniform(60, 400);
  doc.meta.author = uniform(0, 1) ? random_text(rng) : "";
  if (uniform(0, 1)) doc.meta.gloss = random_text(rng);
  doc.meta.mode = uniform(0, 1) ? DocumentMode::written : DocumentMode::transcribed;
  int z = uniform(0, 5);
  for (int n = uniform(0, 8); n > 0; --n) {
    PlacedGlyph g;
    if (uniform(0, 9) < 7) {
      g.ref = SymbolId{uniform(1, 8), uniform(1, 99), uniform(1, 999), uniform(1, 99), uniform(1, 6), uniform(1, 16)};
      g.x = uniform(0, doc.canvas_w - 30);
      g.y = uniform(0, doc.canvas_h - 30);
    } else {
      g.ref = UserGlyphId{static_cast<std::uint64_t>(uniform(1, 1000))};
      EmbeddedGlyph embedded;
      embedded.width = uniform(5, 50);
      embedded.height = uniform(5, 50);
      for (int s = uniform(1, 3); s > 0; --s) {
        Polyline stroke;
        for (int p = uniform(1, 5); p > 0; --p) stroke.push_back({unit(rng), unit(rng)});
        embedded.geometry.push_back(std::move(stroke));
      }
      g.x = uniform(0, doc.canvas_w - embedded.width);
      g.y = uniform(0, doc.canvas_h - embedded.height);
      g.embedded = std::move(embedded);
    }
    g.z = z;
    z += uniform(1, 4);
    doc.glyphs.push_back(std::move(g));
  }
  return doc;
}

StrokeSketch jittered_render(const Geometry& geometry, double scale, double jitter, std::mt19937& rng) {
  std::uniform_real_distribution<double> noise(-jitter, jitter);
  auto sketch = sketch_from_geometry(geometry, 100.0, 15.0);
  double margin = jitter + 5;
  sketch.canvas_w = sketch.canvas_h = 100.0 * scale + 2 * margin;
  for (auto& stroke : sketch.strokes) {
    for (auto& p : stroke) p = Point{p.x * scale + margin + noise(rng), p.y * scale + margin + noise(rng)};
  }
  return sketch;
}

}  // namespace swb::testing
