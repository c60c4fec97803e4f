#include "swb/symbol_id.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "swb/error.hpp"

namespace swb {

namespace {

struct FieldSpec {
  const char* name;
  int width;
  int max;
};

constexpr std::array<FieldSpec, 6> kFields{{
    {"category", 2, 8},
    {"group", 2, 99},
    {"base", 3, 999},
    {"variation", 2, 99},
    {"fill", 2, 6},
    {"rotation", 2, 16},
}};

std::array<int*, 6> fields_of(SymbolId& id) {
  return {&id.category, &id.group, &id.base, &id.variation, &id.fill, &id.rotation};
}

std::array<int, 6> values_of(const SymbolId& id) {
  return {id.category, id.group, id.base, id.variation, id.fill, id.rotation};
}

[[noreturn]] void field_error(const FieldSpec& field, const std::string& what) {
  throw Error(ErrorCode::parse, std::string(field.name) + " " + what);
}

}  // namespace

int SymbolId::encode_rotation(int step, bool mirror) {
  int s = ((step % 8) + 8) % 8;
  return s + 1 + (mirror ? 8 : 0);
}

void check_ranges(const SymbolId& id) {
  auto values = values_of(id);
  for (std::size_t i = 0; i < kFields.size(); ++i) {
    if (values[i] < 1 || values[i] > kFields[i].max) {
      field_error(kFields[i], "out of range 1.." + std::to_string(kFields[i].max) + ": " + std::to_string(values[i]));
    }
  }
}

SymbolId parse_symbol_id(std::string_view text) {
  SymbolId id;
  auto slots = fields_of(id);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < kFields.size(); ++i) {
    const auto& field = kFields[i];
    if (i > 0) {
      if (pos >= text.size() || text[pos] != '-') field_error(field, "missing '-' separator in '" + std::string(text) + "'");
      ++pos;
    }
    auto chunk = text.substr(std::min(pos, text.size()), field.width);
    if (chunk.size() != static_cast<std::size_t>(field.width)) {
      field_error(field, "must have " + std::to_string(field.width) + " digits in '" + std::string(text) + "'");
    }
    for (char c : chunk) {
      if (c < '0' || c > '9') field_error(field, "is not numeric in '" + std::string(text) + "'");
    }
    std::from_chars(chunk.data(), chunk.data() + chunk.size(), *slots[i]);
    if (*slots[i] < 1 || *slots[i] > field.max) {
      field_error(field, "out of range 1.." + std::to_string(field.max) + ": " + std::string(chunk));
    }
    pos += field.width;
  }
  if (pos != text.size()) throw Error(ErrorCode::parse, "trailing characters in symbol id '" + std::string(text) + "'");
  return id;
}

std::string to_string(const SymbolId& id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02d-%02d-%03d-%02d-%02d-%02d", id.category, id.group, id.base, id.variation,
                id.fill, id.rotation);
  return buf;
}

UserGlyphId parse_user_glyph_id(std::string_view text) {
  if (text.size() < 3 || text.substr(0, 2) != "U-") {
    throw Error(ErrorCode::parse, "user glyph id must look like U-<n>: '" + std::string(text) + "'");
  }
  UserGlyphId id;
  auto digits = text.substr(2);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id.serial);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.front() == '0') {
    throw Error(ErrorCode::parse, "bad user glyph serial in '" + std::string(text) + "'");
  }
  return id;
}

std::string to_string(const UserGlyphId& id) { return "U-" + std::to_string(id.serial); }

GlyphRef parse_glyph_ref(std::string_view text) {
  if (text.starts_with("U-")) return parse_user_glyph_id(text);
  return parse_symbol_id(text);
}

std::string to_string(const GlyphRef& ref) {
  return std::visit([](const auto& id) { return to_string(id); }, ref);
}

}  // namespace swb
