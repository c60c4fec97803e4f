#include <regex>

#include "doctest.h"
#include "fixtures.hpp"
#include "swb/error.hpp"
#include "swb/sign_document.hpp"

using namespace swb;
using namespace swb::testing;

namespace {

const SymbolId kFace = parse_symbol_id("03-01-001-01-01-01");
const SymbolId kNod = parse_symbol_id("02-02-001-01-01-01");

std::vector<std::string> codes(const std::vector<Diagnostic>& diagnostics) {
  std::vector<std::string> out;
  for (const auto& d : diagnostics) out.push_back(d.code);
  return out;
}

ErrorCode xml_error(const std::string& xml, std::string* message = nullptr) {
  try {
    from_xml(xml);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  FAIL("accepted: " << xml);
  return ErrorCode::io;
}

}  // namespace

TEST_CASE("place, move and remove keep z order") {
  auto registry = sample_registry();
  GlyphCatalog catalog{&registry, nullptr};
  SignDocument doc;
  doc = place(doc, catalog, kFace, 80, 80);
  doc = place(doc, catalog, kNod, 85, 60);
  doc = place(doc, catalog, kFace, 0, 0);
  REQUIRE(doc.glyphs.size() == 3);
  CHECK(doc.glyphs[0].z < doc.glyphs[1].z);
  CHECK(doc.glyphs[1].z < doc.glyphs[2].z);

  auto moved = move(doc, catalog, doc.glyphs[1].z, 10, 10);
  CHECK(moved.glyphs[1].x == 10);
  CHECK(doc.glyphs[1].x == 85);  // value semantics

  auto removed = remove(doc, doc.glyphs[1].z);
  CHECK(removed.glyphs.size() == 2);
  auto again = place(removed, catalog, kNod, 5, 5);
  CHECK(again.glyphs.back().z > removed.glyphs.back().z);
  CHECK(validate(again, catalog, {}).empty());

  CHECK_THROWS_AS(remove(doc, 99), Error);
  CHECK_THROWS_AS(move(doc, catalog, 99, 0, 0), Error);
}

TEST_CASE("out of bounds placement reports the overflow") {
  auto registry = sample_registry();
  GlyphCatalog catalog{&registry, nullptr};
  SignDocument doc;
  doc.canvas_w = 100;
  doc.canvas_h = 100;
  try {
    place(doc, catalog, kFace, 70, -5);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::out_of_bounds);
    CHECK(std::string(e.what()).find("left=0 top=5 right=10 bottom=0") != std::string::npos);
  }
  CHECK_NOTHROW(place(doc, catalog, kFace, 60, 60));
  auto placed = place(doc, catalog, kFace, 0, 0);
  CHECK_THROWS_AS(move(placed, catalog, placed.glyphs[0].z, 61, 0), Error);
  try {
    place(doc, catalog, parse_symbol_id("08-08-008-01-01-01"), 0, 0);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::dangling_ref);
  }
}

TEST_CASE("validate diagnostics") {
  auto registry = sample_registry();
  GlyphCatalog catalog{&registry, nullptr};
  SignDocument doc;
  doc.canvas_w = 100;
  doc.canvas_h = 100;
  doc.glyphs.push_back({kFace, 90, 0, 1, std::nullopt});
  doc.glyphs.push_back({parse_symbol_id("08-08-008-01-01-01"), 0, 0, 2, std::nullopt});
  CHECK(codes(validate(doc, catalog, {})) == std::vector<std::string>{"out-of-bounds", "dangling-ref"});

  SignDocument zdoc;
  zdoc.glyphs.push_back({kFace, 0, 0, 2, std::nullopt});
  zdoc.glyphs.push_back({kFace, 0, 0, 2, std::nullopt});
  CHECK(codes(validate(zdoc, catalog, {})) == std::vector<std::string>{"z-order"});

  SignDocument bad;
  bad.canvas_w = 0;
  CHECK(codes(validate(bad, catalog, {})) == std::vector<std::string>{"bad-canvas"});
}

TEST_CASE("user glyph policy in validate") {
  auto registry = sample_registry();
  UserGlyphStore users;
  auto own = users.register_glyph({parse_path("M0,0 L1,1"), {"annotation"}, "ana", "s1", "t", 30, 30});
  auto foreign = users.register_glyph({parse_path("M0,1 L1,0"), {"annotation"}, "bo", "s2", "t", 30, 30});
  GlyphCatalog catalog{&registry, &users};
  SignDocument doc;
  doc = place(doc, catalog, own, 10, 10);
  CHECK(validate(doc, catalog, {Role::user, "s1"}).empty());
  CHECK(codes(validate(doc, catalog, {Role::user, "s2"})) == std::vector<std::string>{"policy-violation"});

  auto with_foreign = place(doc, catalog, foreign, 50, 50);
  CHECK(codes(validate(with_foreign, catalog, {Role::user, "s1"})) == std::vector<std::string>{"policy-violation"});
  CHECK(validate(with_foreign, catalog, {Role::researcher, "s1"}).empty());

  // A document read back without the store keeps its geometry but is still
  // foreign to a user session.
  auto detached = from_xml(to_xml(doc));
  CHECK(codes(validate(detached, {&registry, nullptr}, {Role::user, "s1"})) ==
        std::vector<std::string>{"policy-violation"});
  CHECK(validate(detached, {&registry, nullptr}, {Role::researcher, ""}).empty());
}

TEST_CASE("canonical fixtures are byte stable") {
  for (std::string name : {"signs/nod.xml", "signs/twist.xml", "signs/user_glyph.xml", "signs/empty.xml",
                    "signs/crowded.xml"}) {
    CAPTURE(name);
    auto text = read_text(data_path(name));
    REQUIRE_FALSE(text.empty());
    CHECK(to_xml(from_xml(text)) == text);
  }
  CHECK(to_xml(SignDocument{100, 100, {}, {}}) == "<sign w=\"100\" h=\"100\"/>\n");
}

TEST_CASE("serialization round trip on random documents") {
  std::mt19937 rng(2024);
  for (int i = 0; i < 500; ++i) {
    auto doc = random_document(rng);
    auto xml = to_xml(doc);
    auto back = from_xml(xml);
    REQUIRE(back == doc);
    REQUIRE(to_xml(back) == xml);
  }
}

TEST_CASE("escaping of metadata") {
  SignDocument doc;
  doc.meta.gloss = "a&b <c> \"d\" 'e'\n\t\r";
  doc.meta.author = "\xC3\xA9l\xC3\xA8ve";
  auto xml = to_xml(doc);
  CHECK(xml.find("a&amp;b &lt;c&gt; &quot;d&quot;") != std::string::npos);
  CHECK(from_xml(xml) == doc);
  CHECK(from_xml("<sign w=\"5\" h=\"5\" gloss=\"&#65;&#x42;\"/>").meta.gloss == "AB");
}

TEST_CASE("schema errors name element and line") {
  std::string msg;
  CHECK(xml_error("<sign w=\"10\" h=\"10\">\n  <glyph ref=\"01-01-001-01-01-01\" x=\"1\" y=\"1\"/>\n</sign>", &msg) ==
        ErrorCode::schema);
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("glyph") != std::string::npos);

  CHECK(xml_error("<sign w=\"10\" h=\"10\">\n\n  <glyph ref=\"bogus\" x=\"1\" y=\"1\" z=\"1\"/>\n</sign>", &msg) ==
        ErrorCode::schema);
  CHECK(msg.find("line 3") != std::string::npos);

  CHECK(xml_error("<sign w=\"10\" h=\"10\" colour=\"red\"/>") == ErrorCode::schema);
  CHECK(xml_error("<sgn w=\"10\" h=\"10\"/>") == ErrorCode::schema);
  CHECK(xml_error("<sign w=\"ten\" h=\"10\"/>") == ErrorCode::schema);
  CHECK(xml_error("<sign w=\"10\" h=\"10\" mode=\"spoken\"/>") == ErrorCode::schema);
  CHECK(xml_error("<sign w=\"10\" h=\"10\">") == ErrorCode::schema);
  CHECK(xml_error("<sign w=\"10\" h=\"10\"></sgn>") == ErrorCode::schema);
  CHECK(xml_error("<sign w=\"10\" h=\"10\" gloss=\"&bogus;\"/>") == ErrorCode::schema);
  CHECK(xml_error("<sign w=\"10\" h=\"10\">\n<glyph ref=\"01-01-001-01-01-01\" x=\"1\" y=\"1\" z=\"1\"/>\n"
                  "<glyph ref=\"01-01-001-01-01-01\" x=\"1\" y=\"1\" z=\"1\"/>\n</sign>") == ErrorCode::schema);
  CHECK(xml_error("<sign w=\"10\" h=\"10\"><userglyph id=\"U-1\" x=\"1\" y=\"1\" z=\"1\" w=\"3\" h=\"3\"/></sign>") ==
        ErrorCode::schema);
  CHECK(xml_error("") == ErrorCode::schema);
}

TEST_CASE("unknown refs survive a read") {
  auto doc = from_xml("<sign w=\"10\" h=\"10\">\n  <glyph ref=\"08-99-999-01-01-01\" x=\"1\" y=\"1\" z=\"5\"/>\n</sign>\n");
  REQUIRE(doc.glyphs.size() == 1);
  auto registry = sample_registry();
  CHECK(codes(validate(doc, {&registry, nullptr}, {})) == std::vector<std::string>{"dangling-ref"});
}

TEST_CASE("reading sorts by z and accepts prolog and comments") {
  auto doc = from_xml(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- c -->\n<sign w=\"50\" h=\"50\">\r\n"
      "  <glyph ref=\"01-01-001-01-01-01\" x=\"1\" y=\"1\" z=\"9\"/>\r\n"
      "  <glyph ref=\"01-02-001-01-01-01\" x=\"1\" y=\"1\" z=\"-3\"/>\r\n</sign>");
  REQUIRE(doc.glyphs.size() == 2);
  CHECK(doc.glyphs[0].z == -3);
}

TEST_CASE("render emits one group per glyph in z order") {
  auto registry = sample_registry();
  GlyphCatalog catalog{&registry, nullptr};
  std::vector<SymbolId> ids;
  for (const auto& e : registry.entries()) ids.push_back(*e.symbol_id());
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    auto doc = random_document(rng);
    for (auto& g : doc.glyphs) {
      if (!is_user(g.ref)) g.ref = ids[rng() % ids.size()];
    }
    auto svg = render_svg(doc, catalog, 1.0 + (i % 3));
    std::regex group(R"re(<g class="glyph" data-ref="([^"]+)" data-z="(-?\d+)")re");
    std::vector<int> zs;
    std::vector<std::string> refs;
    for (std::sregex_iterator it(svg.begin(), svg.end(), group), end; it != end; ++it) {
      refs.push_back((*it)[1].str());
      zs.push_back(std::stoi((*it)[2].str()));
    }
    REQUIRE(zs.size() == doc.glyphs.size());
    for (std::size_t k = 0; k < zs.size(); ++k) {
      CHECK(zs[k] == doc.glyphs[k].z);
      CHECK(refs[k] == to_string(doc.glyphs[k].ref));
    }
    CHECK(svg.find("<rect class=\"canvas\"") < svg.find("<g "));
  }
}

TEST_CASE("render errors") {
  auto registry = sample_registry();
  auto doc = from_xml(read_text(data_path("signs/nod.xml")));
  CHECK_THROWS_AS(render_svg(doc, {&registry, nullptr}, 0), Error);
  doc.glyphs.push_back({parse_symbol_id("08-99-999-01-01-01"), 0, 0, 10, std::nullopt});
  try {
    render_svg(doc, {&registry, nullptr});
    FAIL("rendered");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::render);
    CHECK(std::string(e.what()).find("08-99-999-01-01-01") != std::string::npos);
  }
}
