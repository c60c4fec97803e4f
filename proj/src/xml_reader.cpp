#include "xml_reader.hpp"

#include <charconv>

#include "swb/error.hpp"

namespace swb::xml {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Element document() {
    skip_misc();
    if (at_end() || peek() != '<') fail("expected root element");
    Element root = element();
    skip_misc();
    if (!at_end()) fail("content after root element");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::schema, "line " + std::to_string(line_) + ": " + what);
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  bool starts_with(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < text_.size(); ++i) {
      if (text_[pos_] == '\n') ++line_;
      ++pos_;
    }
  }

  static bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

  void skip_space() {
    while (!at_end() && is_space(peek())) advance();
  }

  void skip_until(std::string_view terminator) {
    while (!at_end() && !starts_with(terminator)) advance();
    if (at_end()) fail("unterminated construct, expected '" + std::string(terminator) + "'");
    advance(terminator.size());
  }

  // Whitespace, comments and processing instructions.
  void skip_misc() {
    while (true) {
      skip_space();
      if (starts_with("<!--")) {
        skip_until("-->");
      } else if (starts_with("<?")) {
        skip_until("?>");
      } else {
        return;
      }
    }
  }

  std::string name() {
    std::size_t start = pos_;
    while (!at_end()) {
      char c = peek();
      bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-' ||
                c == ':' || c == '.';
      if (!ok) break;
      advance();
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  void append_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
      out += static_cast<char>(cp);
    } else if (cp < 0x800) {
      out += static_cast<char>(0xC0 | (cp >> 6));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
      out += static_cast<char>(0xE0 | (cp >> 12));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x110000) {
      out += static_cast<char>(0xF0 | (cp >> 18));
      out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
      out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
      out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
      fail("character reference out of range");
    }
  }

  std::string attribute_value() {
    if (at_end() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    char quote = peek();
    advance();
    std::string value;
    while (!at_end() && peek() != quote) {
      char c = peek();
      if (c == '<') fail("'<' in attribute value");
      if (c == '&') {
        auto semi = text_.find(';', pos_);
        if (semi == std::string_view::npos) fail("unterminated entity");
        auto entity = text_.substr(pos_ + 1, semi - pos_ - 1);
        if (entity == "amp") value += '&';
        else if (entity == "lt") value += '<';
        else if (entity == "gt") value += '>';
        else if (entity == "quot") value += '"';
        else if (entity == "apos") value += '\'';
        else if (entity.starts_with("#")) {
          unsigned long cp = 0;
          bool hex = entity.size() > 1 && entity[1] == 'x';
          auto digits = entity.substr(hex ? 2 : 1);
          auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
          if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size()) fail("bad character reference");
          append_utf8(value, cp);
        } else {
          fail("unknown entity '&" + std::string(entity) + ";'");
        }
        advance(semi - pos_ + 1);
        continue;
      }
      // Attribute-value normalization: literal whitespace becomes a space.
      value += (c == '\n' || c == '\t' || c == '\r') ? ' ' : c;
      advance();
    }
    if (at_end()) fail("unterminated attribute value");
    advance();
    return value;
  }

  Element element() {
    Element el;
    el.line = line_;
    advance();  // '<'
    el.name = name();
    while (true) {
      bool had_space = !at_end() && is_space(peek());
      skip_space();
      if (at_end()) fail("unterminated start tag <" + el.name + ">");
      if (starts_with("/>")) {
        advance(2);
        return el;
      }
      if (peek() == '>') {
        advance();
        break;
      }
      if (!had_space) fail("expected whitespace before attribute in <" + el.name + ">");
      auto key = name();
      skip_space();
      if (at_end() || peek() != '=') fail("expected '=' after attribute " + key + " in <" + el.name + ">");
      advance();
      skip_space();
      auto value = attribute_value();
      if (el.attribute(key)) fail("duplicate attribute " + key + " in <" + el.name + ">");
      el.attributes.emplace_back(std::move(key), std::move(value));
    }
    while (true) {
      skip_misc();
      if (at_end()) fail("missing </" + el.name + ">");
      if (starts_with("</")) {
        advance(2);
        auto closing = name();
        if (closing != el.name) fail("mismatched </" + closing + ">, expected </" + el.name + ">");
        skip_space();
        if (at_end() || peek() != '>') fail("malformed end tag </" + closing + ">");
        advance();
        return el;
      }
      if (peek() != '<') fail("unexpected character data in <" + el.name + ">");
      el.children.push_back(element());
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

Element parse(std::string_view text) { return Reader(text).document(); }

std::string escape_attribute(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\n': out += "&#10;"; break;
      case '\t': out += "&#9;"; break;
      case '\r': out += "&#13;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace swb::xml
