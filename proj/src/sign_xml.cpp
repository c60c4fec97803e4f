#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "swb/sign_document.hpp"
#include "xml_reader.hpp"

namespace swb {

using xml::escape_attribute;

std::string to_xml(const SignDocument& doc) {
  std::string out = "<sign w=\"" + std::to_string(doc.canvas_w) + "\" h=\"" + std::to_string(doc.canvas_h) + "\"";
  if (doc.meta.mode == DocumentMode::transcribed) out += " mode=\"transcribed\"";
  if (doc.meta.gloss) out += " gloss=\"" + escape_attribute(*doc.meta.gloss) + "\"";
  if (!doc.meta.author.empty()) out += " author=\"" + escape_attribute(doc.meta.author) + "\"";
  if (doc.glyphs.empty()) return out + "/>\n";
  out += ">\n";
  for (const auto& g : doc.glyphs) {
    auto coords = "x=\"" + std::to_string(g.x) + "\" y=\"" + std::to_string(g.y) + "\" z=\"" + std::to_string(g.z) + "\"";
    if (!is_user(g.ref)) {
      out += "  <glyph ref=\"" + to_string(g.ref) + "\" " + coords + "/>\n";
      continue;
    }
    if (!g.embedded) {
      throw Error(ErrorCode::validation, "user glyph " + to_string(g.ref) + " has no embedded geometry",
                  {{"dangling-ref", "user glyph without embedded geometry", to_string(g.ref)}});
    }
    out += "  <userglyph id=\"" + to_string(g.ref) + "\" " + coords + " w=\"" + std::to_string(g.embedded->width) +
           "\" h=\"" + std::to_string(g.embedded->height) + "\">\n";
    out += "    <path d=\"" + format_path(g.embedded->geometry) + "\"/>\n";
    out += "  </userglyph>\n";
  }
  return out + "</sign>\n";
}

namespace {

[[noreturn]] void schema_error(const xml::Element& el, const std::string& what) {
  throw Error(ErrorCode::schema, "line " + std::to_string(el.line) + ": <" + el.name + ">: " + what,
              {{"schema", what, el.name + "@" + std::to_string(el.line)}});
}

void check_attributes(const xml::Element& el, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, _] : el.attributes) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) schema_error(el, "unknown attribute '" + key + "'");
  }
}

const std::string& required(const xml::Element& el, std::string_view key) {
  const auto* v = el.attribute(key);
  if (v == nullptr) schema_error(el, "missing attribute '" + std::string(key) + "'");
  return *v;
}

int integer(const xml::Element& el, std::string_view key) {
  const auto& text = required(el, key);
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    schema_error(el, "attribute '" + std::string(key) + "' is not an integer: '" + text + "'");
  }
  return value;
}

template <typename Parse>
auto parse_or_schema(const xml::Element& el, Parse&& parse) {
  try {
    return parse();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema) throw;
    schema_error(el, e.what());
  }
}

}  // namespace

SignDocument from_xml(std::string_view text) {
  auto root = xml::parse(text);
  if (root.name != "sign") schema_error(root, "root element must be <sign>");
  check_attributes(root, {"w", "h", "mode", "gloss", "author"});
  SignDocument doc;
  doc.canvas_w = integer(root, "w");
  doc.canvas_h = integer(root, "h");
  if (doc.canvas_w <= 0 || doc.canvas_h <= 0) schema_error(root, "canvas size must be positive");
  if (const auto* mode = root.attribute("mode")) {
    if (*mode == "written") doc.meta.mode = DocumentMode::written;
    else if (*mode == "transcribed") doc.meta.mode = DocumentMode::transcribed;
    else schema_error(root, "mode must be written or transcribed");
  }
  if (const auto* gloss = root.attribute("gloss")) doc.meta.gloss = *gloss;
  if (const auto* author = root.attribute("author")) doc.meta.author = *author;

  std::set<int> seen_z;
  for (const auto& child : root.children) {
    PlacedGlyph g;
    if (child.name == "glyph") {
      check_attributes(child, {"ref", "x", "y", "z"});
      if (!child.children.empty()) schema_error(child, "must be empty");
      g.ref = parse_or_schema(child, [&] { return GlyphRef{parse_symbol_id(required(child, "ref"))}; });
    } else if (child.name == "userglyph") {
      check_attributes(child, {"id", "x", "y", "z", "w", "h"});
      g.ref = parse_or_schema(child, [&] { return GlyphRef{parse_user_glyph_id(required(child, "id"))}; });
      if (child.children.size() != 1 || child.children[0].name != "path") {
        schema_error(child, "must contain exactly one <path>");
      }
      const auto& path = child.children[0];
      check_attributes(path, {"d"});
      if (!path.children.empty()) schema_error(path, "must be empty");
      EmbeddedGlyph embedded;
      embedded.geometry = parse_or_schema(path, [&] { return parse_path(required(path, "d")); });
      if (embedded.geometry.empty()) schema_error(path, "empty geometry");
      embedded.width = integer(child, "w");
      embedded.height = integer(child, "h");
      if (embedded.width <= 0 || embedded.height <= 0) schema_error(child, "size must be positive");
      g.embedded = std::move(embedded);
    } else {
      schema_error(child, "unexpected element");
    }
    g.x = integer(child, "x");
    g.y = integer(child, "y");
    g.z = integer(child, "z");
    if (!seen_z.insert(g.z).second) schema_error(child, "duplicate z " + std::to_string(g.z));
    doc.glyphs.push_back(std::move(g));
  }
  std::stable_sort(doc.glyphs.begin(), doc.glyphs.end(),
                   [](const PlacedGlyph& a, const PlacedGlyph& b) { return a.z < b.z; });
  return doc;
}

namespace {

std::string svg_number(double v) { return format_number(std::round(v * 1e4) / 1e4); }

}  // namespace

std::string render_svg(const SignDocument& doc, const GlyphCatalog& catalog, double scale) {
  if (!(scale > 0)) throw Error(ErrorCode::invalid_argument, "scale must be positive");
  struct Resolved {
    const PlacedGlyph* placed;
    Geometry geometry;
    int width;
    int height;
  };
  std::vector<Resolved> resolved;
  std::vector<Diagnostic> missing;
  for (const auto& g : doc.glyphs) {
    if (g.embedded) {
      resolved.push_back({&g, g.embedded->geometry, g.embedded->width, g.embedded->height});
    } else if (auto e = catalog.lookup(g.ref)) {
      resolved.push_back({&g, e->geometry, e->width, e->height});
    } else {
      missing.push_back({"dangling-ref", "cannot resolve glyph", to_string(g.ref)});
    }
  }
  if (!missing.empty()) {
    std::string refs;
    for (const auto& d : missing) refs += (refs.empty() ? "" : ", ") + d.subject;
    throw Error(ErrorCode::render, "unresolvable glyphs: " + refs, std::move(missing));
  }
  std::stable_sort(resolved.begin(), resolved.end(),
                   [](const Resolved& a, const Resolved& b) { return a.placed->z < b.placed->z; });

  auto w = format_number(doc.canvas_w * scale);
  auto h = format_number(doc.canvas_h * scale);
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h + "\" viewBox=\"0 0 " +
                    w + " " + h + "\">\n";
  out += "  <rect class=\"canvas\" x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h +
         "\" fill=\"white\" stroke=\"black\"/>\n";
  for (const auto& r : resolved) {
    const auto& g = *r.placed;
    out += "  <g class=\"glyph\" data-ref=\"" + to_string(g.ref) + "\" data-z=\"" + std::to_string(g.z) +
           "\" transform=\"translate(" + format_number(g.x * scale) + "," + format_number(g.y * scale) + ")\">\n";
    auto local = transform(r.geometry, Affine{r.width * scale, 0, 0, 0, r.height * scale, 0});
    std::string d;
    for (const auto& stroke : local) {
      for (std::size_t i = 0; i < stroke.size(); ++i) {
        d += (d.empty() ? "" : " ") + std::string(i == 0 ? "M" : "L") + svg_number(stroke[i].x) + " " +
             svg_number(stroke[i].y);
      }
      if (stroke.size() == 1) d += " l0 0";  // dot: zero-length segment with round cap
    }
    out += "    <path d=\"" + d + "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + format_number(scale) +
           "\" stroke-linecap=\"round\" stroke-linejoin=\"round\"/>\n";
    out += "  </g>\n";
  }
  return out + "</svg>\n";
}

}  // namespace swb
