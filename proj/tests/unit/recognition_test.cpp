#include <numeric>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "swb/error.hpp"
#include "swb/recognition.hpp"
#include "swb/sign_document.hpp"

using namespace swb;
using namespace swb::testing;

namespace {

StrokeSketch integer_sketch(std::mt19937& rng) {
  std::uniform_int_distribution<int> coord(0, 200), count(2, 6), strokes(1, 3);
  StrokeSketch s;
  s.canvas_w = s.canvas_h = 2000;
  for (int i = strokes(rng); i > 0; --i) {
    Polyline line;
    for (int n = count(rng); n > 0; --n) line.push_back({double(coord(rng)), double(coord(rng))});
    s.strokes.push_back(line);
  }
  return s;
}

StrokeSketch mapped(const StrokeSketch& s, double scale, double dx, double dy) {
  StrokeSketch out = s;
  for (auto& stroke : out.strokes) {
    for (auto& p : stroke) p = {p.x * scale + dx, p.y * scale + dy};
  }
  return out;
}

}  // namespace

TEST_CASE("sketch text format") {
  auto s = parse_sketch("canvas 50 40\n1,2 3,4\n# note\n\n5.5,6 7,8 9,10\n");
  CHECK(s.canvas_w == 50);
  CHECK(s.canvas_h == 40);
  REQUIRE(s.strokes.size() == 2);
  CHECK(s.strokes[1][0].x == 5.5);
  auto back = parse_sketch(format_sketch(s));
  CHECK(back.strokes == s.strokes);
  CHECK(back.canvas_w == s.canvas_w);

  auto derived = parse_sketch("0,0 10.2,3\n");
  CHECK(derived.canvas_w == 12);
  CHECK(derived.canvas_h == 4);

  auto file = parse_sketch(read_text(data_path("sketches/check.txt")));
  CHECK(file.strokes.size() == 1);

  for (std::string bad : {"", "canvas 10 10\n", "1,1\n", "canvas 10 10\n1,1 20,20\n", "1,1 x,2\n", "1,1 2\n",
                   "1,1 2,2\ncanvas 10 10\n", "-1,0 2,2\n", "canvas 0 5\n0,0 0,1\n"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_sketch(bad), Error);
  }
}

TEST_CASE("raster of simple strokes") {
  StrokeSketch h{{{{0, 0}, {10, 0}}}, 20, 20};
  auto bitmap = rasterize(h);
  CHECK(bitmap.side() == kRasterSide);
  CHECK(bitmap.ink() == static_cast<std::size_t>(kRasterSide));
  StrokeSketch diagonal{{{{0, 0}, {10, 10}}}, 20, 20};
  auto d = rasterize(diagonal);
  CHECK(d.ink() == static_cast<std::size_t>(kRasterSide));
  for (int i = 0; i < kRasterSide; ++i) CHECK(d.at(i, i));
  StrokeSketch dot{{{{3, 3}, {3, 3}}}, 20, 20};
  CHECK(rasterize(dot).ink() == 1);
  CHECK_THROWS_AS(rasterize_strokes({}, 0), Error);
}

TEST_CASE("descriptor layout") {
  StrokeSketch h{{{{0, 5}, {10, 5}}}, 20, 20};
  auto d = describe(h);
  CHECK(d.values.size() == 72);
  CHECK(d.directions()[0] == 1.0);
  StrokeSketch up{{{{5, 10}, {5, 0}}}, 20, 20};
  CHECK(describe(up).directions()[2] == 1.0);  // y up: screen-upward stroke is 90 degrees
  StrokeSketch down_left{{{{10, 0}, {0, 10}}}, 20, 20};
  CHECK(describe(down_left).directions()[5] == 1.0);

  std::mt19937 rng(4);
  for (int i = 0; i < 200; ++i) {
    auto desc = describe(integer_sketch(rng));
    for (double v : desc.occupancy()) {
      CHECK(v >= 0);
      CHECK(v <= 1);
    }
    double total = std::accumulate(desc.directions().begin(), desc.directions().end(), 0.0);
    bool degenerate = total == 0.0;
    CHECK((degenerate || std::abs(total - 1.0) < 1e-12));
  }
  CHECK_THROWS_AS(describe(Bitmap(kRasterSide)), Error);
  CHECK_THROWS_AS(describe(Geometry{}), Error);
}

TEST_CASE("descriptor is invariant under translation and power of two scaling") {
  std::mt19937 rng(8);
  for (int i = 0; i < 300; ++i) {
    auto s = integer_sketch(rng);
    auto base = describe(s);
    CHECK(describe(mapped(s, 1, 37, 501)) == base);
    CHECK(describe(mapped(s, 2, 0, 0)) == base);
    CHECK(describe(mapped(s, 4, 100, 3)) == base);
    CHECK(describe(mapped(s, 0.5, 9, 9)) == base);
  }
}

TEST_CASE("every catalog glyph matches itself first") {
  auto registry = recognition_registry();
  auto index = FormIndex::build(registry);
  REQUIRE(index.size() == 60);
  for (const auto& e : registry.entries()) {
    auto top = match(index, describe(e.geometry), 2);
    CHECK(top[0].id == e.id);
    CHECK(top[0].distance == 0.0);
    CHECK(top[1].distance > 0.0);
  }
}

TEST_CASE("matching is not rotation invariant") {
  auto registry = recognition_registry();
  auto index = FormIndex::build(registry);
  const auto& upright = registry.at(parse_symbol_id("04-01-001-01-01-01"));
  auto turned = match(index, describe(rotate_about_center(upright.geometry, 90)), 1);
  CHECK(turned[0].id == GlyphRef{parse_symbol_id("04-01-001-01-01-03")});
}

TEST_CASE("match agrees with the exhaustive ranking") {
  auto registry = recognition_registry();
  auto index = FormIndex::build(registry);
  std::mt19937 rng(12);
  for (int i = 0; i < 200; ++i) {
    auto query = describe(integer_sketch(rng));
    auto oracle = exhaustive_ranking(index, query);
    for (std::size_t k : {std::size_t{1}, std::size_t{5}, std::size_t{60}, std::size_t{100}}) {
      auto got = match(index, query, k);
      REQUIRE(got.size() == std::min(k, oracle.size()));
      for (std::size_t j = 0; j < got.size(); ++j) {
        CHECK(got[j].id == oracle[j].id);
        CHECK(got[j].distance == oracle[j].distance);
      }
    }
  }
}

TEST_CASE("ties are broken by id") {
  auto geometry = parse_path("M0,0 L1,1");
  FormIndex index({{parse_symbol_id("01-01-002-01-01-01"), GlyphStatus::extension, describe(geometry)},
                   {parse_symbol_id("01-01-001-01-01-01"), GlyphStatus::extension, describe(geometry)}});
  auto got = match(index, describe(geometry), 2);
  CHECK(got[0].id == GlyphRef{parse_symbol_id("01-01-001-01-01-01")});
}

TEST_CASE("match errors") {
  auto registry = recognition_registry();
  auto index = FormIndex::build(registry);
  auto q = describe(parse_path("M0,0 L1,1"));
  try {
    match(FormIndex{}, q, 1);
    FAIL("matched");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::empty_index);
  }
  CHECK_THROWS_AS(match(index, q, 0), Error);
  CHECK_THROWS_AS(match(index, StrokeSketch{}, 1), Error);
}

TEST_CASE("jittered renders stay near their glyph") {
  auto registry = recognition_registry();
  auto index = FormIndex::build(registry);
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> scale(0.9, 1.1);
  int hits = 0;
  const int trials = 200;
  for (int i = 0; i < trials; ++i) {
    const auto& e = registry.entries()[rng() % registry.size()];
    auto top = match(index, jittered_render(e.geometry, scale(rng), 2.0, rng), 3);
    hits += std::any_of(top.begin(), top.end(), [&](const MatchResult& m) { return m.id == e.id; });
  }
  CHECK(hits >= trials * 9 / 10);
}

TEST_CASE("catalog_only drops user glyphs") {
  auto geometry = parse_path("M0,0 L1,1");
  FormIndex index({{UserGlyphId{1}, GlyphStatus::user, describe(geometry)},
                   {parse_symbol_id("01-01-001-01-01-01"), GlyphStatus::official_2004, describe(geometry)}});
  CHECK(index.catalog_only().size() == 1);
  CHECK_FALSE(is_user(index.catalog_only().items()[0].id));
}

TEST_CASE("function labels and taxonomy search") {
  auto registry = sample_registry();
  UserGlyphStore users;
  users.register_glyph({parse_path("M0,0 L1,1"), {"head-movement", "annotation"}, "a", "s", "t", 30, 30});
  const auto& nod = registry.at(parse_symbol_id("02-02-001-01-01-01"));
  auto labels = function_labels(nod);
  CHECK(labels.contains("head-movement"));
  CHECK(labels.contains("movement"));
  CHECK(labels.contains("nod"));
  auto user = *users.find(UserGlyphId{1});
  CHECK(function_labels(user) == std::set<std::string>{"annotation", "head-movement"});

  auto heads = taxonomy_search(registry, &users, {{}, {"head-movement"}});
  REQUIRE(heads.size() == 3);
  CHECK(is_user(heads.back().id));
  CHECK(taxonomy_search(registry, &users, {{"movement", "head-movement"}, {}}).size() == 2);
  CHECK(taxonomy_search(registry, nullptr, {{"movement"}, {}}).size() == 4);
  CHECK(taxonomy_search(registry, &users, {{"movement", "head-movement", "nod"}, {"head-movement"}}).size() == 1);
  CHECK(taxonomy_search(registry, &users, {{"nothing"}, {}}).empty());
  CHECK(taxonomy_search(registry, &users, {{}, {"annotation"}}).size() == 1);
  CHECK_THROWS_AS(taxonomy_search(registry, &users, {{"a", "b", "c", "d"}, {}}), Error);
}

TEST_CASE("corpus query agrees with a raw XML scan") {
  auto registry = sample_registry();
  UserGlyphStore users;
  users.register_glyph({parse_path("M0,0 L1,1"), {"head-movement"}, "a", "s", "t", 20, 20});
  users.register_glyph({parse_path("M0,1 L1,0"), {"annotation"}, "a", "s", "t", 20, 20});
  std::vector<SymbolId> ids;
  for (const auto& e : registry.entries()) ids.push_back(*e.symbol_id());
  ids.push_back(parse_symbol_id("08-99-999-01-01-01"));  // unknown

  std::mt19937 rng(21);
  for (int round = 0; round < 30; ++round) {
    std::vector<StoredSign> signs;
    std::vector<SignRecord> records;
    int count = static_cast<int>(rng() % 12);
    for (int i = 0; i < count; ++i) {
      auto doc = random_document(rng);
      for (auto& g : doc.glyphs) {
        if (is_user(g.ref)) g.ref = UserGlyphId{1 + rng() % 3};
        else g.ref = ids[rng() % ids.size()];
      }
      std::string id = "S-" + std::to_string(i + 1);
      signs.push_back({id, doc});
      records.push_back({id, to_xml(doc), "", {}, ""});
    }
    for (std::string cls : {"head-movement", "face-circle", "movement", "annotation", "hands", "nothing"}) {
      CAPTURE(cls);
      CHECK(corpus_query(signs, {&registry, &users}, cls) == scan_corpus_xml(records, registry, users, cls));
    }
  }
}
