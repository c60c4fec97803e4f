#include "swb/sign_document.hpp"

#include <algorithm>
#include <set>

namespace swb {

std::optional<GlyphEntry> GlyphCatalog::lookup(const GlyphRef& ref) const {
  if (const auto* sid = std::get_if<SymbolId>(&ref)) {
    if (registry == nullptr) return std::nullopt;
    if (const auto* e = registry->find(*sid)) return *e;
    return std::nullopt;
  }
  if (user_glyphs == nullptr) return std::nullopt;
  return user_glyphs->find(std::get<UserGlyphId>(ref));
}

namespace {

struct Size {
  int width;
  int height;
};

std::optional<Size> size_of(const PlacedGlyph& g, const GlyphCatalog& catalog) {
  if (g.embedded) return Size{g.embedded->width, g.embedded->height};
  if (auto e = catalog.lookup(g.ref)) return Size{e->width, e->height};
  return std::nullopt;
}

std::optional<std::string> overflow(const SignDocument& doc, int x, int y, Size size) {
  int left = std::max(0, -x);
  int top = std::max(0, -y);
  int right = std::max(0, x + size.width - doc.canvas_w);
  int bottom = std::max(0, y + size.height - doc.canvas_h);
  if (left == 0 && top == 0 && right == 0 && bottom == 0) return std::nullopt;
  return "overflow left=" + std::to_string(left) + " top=" + std::to_string(top) + " right=" + std::to_string(right) +
         " bottom=" + std::to_string(bottom);
}

}  // namespace

SignDocument place(const SignDocument& doc, const GlyphCatalog& catalog, const GlyphRef& ref, int x, int y) {
  auto entry = catalog.lookup(ref);
  if (!entry) {
    throw Error(ErrorCode::dangling_ref, "cannot resolve glyph " + to_string(ref), {{"dangling-ref", "", to_string(ref)}});
  }
  Size size{entry->width, entry->height};
  if (auto over = overflow(doc, x, y, size)) {
    throw Error(ErrorCode::out_of_bounds, "glyph " + to_string(ref) + " does not fit: " + *over,
                {{"out-of-bounds", *over, to_string(ref)}});
  }
  SignDocument out = doc;
  PlacedGlyph placed{ref, x, y, doc.glyphs.empty() ? 0 : doc.glyphs.back().z + 1, std::nullopt};
  if (is_user(ref)) placed.embedded = EmbeddedGlyph{entry->geometry, entry->width, entry->height};
  out.glyphs.push_back(std::move(placed));
  return out;
}

SignDocument remove(const SignDocument& doc, int z) {
  SignDocument out = doc;
  auto it = std::find_if(out.glyphs.begin(), out.glyphs.end(), [z](const PlacedGlyph& g) { return g.z == z; });
  if (it == out.glyphs.end()) throw Error(ErrorCode::not_found, "no glyph at z=" + std::to_string(z));
  out.glyphs.erase(it);
  return out;
}

SignDocument move(const SignDocument& doc, const GlyphCatalog& catalog, int z, int x, int y) {
  SignDocument out = doc;
  auto it = std::find_if(out.glyphs.begin(), out.glyphs.end(), [z](const PlacedGlyph& g) { return g.z == z; });
  if (it == out.glyphs.end()) throw Error(ErrorCode::not_found, "no glyph at z=" + std::to_string(z));
  auto size = size_of(*it, catalog);
  if (!size) {
    throw Error(ErrorCode::dangling_ref, "cannot resolve glyph " + to_string(it->ref),
                {{"dangling-ref", "", to_string(it->ref)}});
  }
  if (auto over = overflow(doc, x, y, *size)) {
    throw Error(ErrorCode::out_of_bounds, "glyph " + to_string(it->ref) + " does not fit: " + *over,
                {{"out-of-bounds", *over, to_string(it->ref)}});
  }
  it->x = x;
  it->y = y;
  return out;
}

std::vector<Diagnostic> validate(const SignDocument& doc, const GlyphCatalog& catalog, const Actor& actor) {
  std::vector<Diagnostic> out;
  if (doc.canvas_w <= 0 || doc.canvas_h <= 0) {
    out.push_back({"bad-canvas", "canvas must have positive size", ""});
  }
  for (std::size_t i = 1; i < doc.glyphs.size(); ++i) {
    if (doc.glyphs[i].z <= doc.glyphs[i - 1].z) {
      out.push_back({"z-order", "z values must be unique and increasing", to_string(doc.glyphs[i].ref)});
      break;
    }
  }
  for (const auto& g : doc.glyphs) {
    auto ref = to_string(g.ref);
    auto entry = catalog.lookup(g.ref);
    if (!entry && !g.embedded) {
      out.push_back({"dangling-ref", "glyph " + ref + " cannot be resolved", ref});
    }
    if (auto size = size_of(g, catalog)) {
      if (auto over = overflow(doc, g.x, g.y, *size)) out.push_back({"out-of-bounds", *over, ref});
    }
    if (is_user(g.ref)) {
      if (!g.embedded) out.push_back({"dangling-ref", "user glyph " + ref + " has no embedded geometry", ref});
      bool allowed = actor.role == Role::researcher || (entry && may_place(actor, *entry));
      if (!allowed) {
        out.push_back({"policy-violation", "user glyph " + ref + " was drawn in another sign context", ref});
      }
    }
  }
  return out;
}

}  // namespace swb
