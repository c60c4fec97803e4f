#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "swb/error.hpp"
#include "swb/glyph.hpp"
#include "swb/policy.hpp"
#include "swb/registry.hpp"
#include "swb/user_glyphs.hpp"

namespace swb {

inline constexpr int kDefaultCanvas = 200;

/// Geometry carried inside a document so files outlive the stores they came from.
struct EmbeddedGlyph {
  Geometry geometry;
  int width = kDefaultGlyphSize;
  int height = kDefaultGlyphSize;

  bool operator==(const EmbeddedGlyph&) const = default;
};

/// Anchor is the glyph bounding box's top-left corner, canvas origin top-left.
struct PlacedGlyph {
  GlyphRef ref;
  int x = 0;
  int y = 0;
  int z = 0;
  std::optional<EmbeddedGlyph> embedded;  // always set for user glyphs

  bool operator==(const PlacedGlyph&) const = default;
};

enum class DocumentMode { written, transcribed };

struct SignMeta {
  std::string author;
  std::optional<std::string> gloss;
  DocumentMode mode = DocumentMode::written;

  bool operator==(const SignMeta&) const = default;
};

/// A composed sign. Value type; editing functions return new documents and
/// keep `glyphs` sorted by strictly increasing z.
struct SignDocument {
  int canvas_w = kDefaultCanvas;
  int canvas_h = kDefaultCanvas;
  std::vector<PlacedGlyph> glyphs;
  SignMeta meta;

  bool operator==(const SignDocument&) const = default;
};

/// Read-only view over the two glyph sources.
struct GlyphCatalog {
  const Registry* registry = nullptr;
  const UserGlyphStore* user_glyphs = nullptr;

  std::optional<GlyphEntry> lookup(const GlyphRef& ref) const;
};

/// Appends `ref` at the top of the stack. Throws Error(dangling_ref) or
/// Error(out_of_bounds) (message carries the overflow amounts).
SignDocument place(const SignDocument& doc, const GlyphCatalog& catalog, const GlyphRef& ref, int x, int y);
/// Throws Error(not_found) when no glyph has that z.
SignDocument remove(const SignDocument& doc, int z);
SignDocument move(const SignDocument& doc, const GlyphCatalog& catalog, int z, int x, int y);

/// Empty result means valid. Codes: out-of-bounds, dangling-ref,
/// policy-violation, bad-canvas, z-order.
std::vector<Diagnostic> validate(const SignDocument& doc, const GlyphCatalog& catalog, const Actor& actor);

/// Canonical XML: attributes in schema order, 2-space indent, LF endings.
/// Throws Error(validation) when a user glyph lacks embedded geometry.
std::string to_xml(const SignDocument& doc);
/// Throws Error(schema) naming element and line.
SignDocument from_xml(std::string_view xml);

/// One <g> per glyph in z order after a canvas <rect>. Throws Error(render)
/// listing unresolvable refs.
std::string render_svg(const SignDocument& doc, const GlyphCatalog& catalog, double scale = 1.0);

}  // namespace swb
