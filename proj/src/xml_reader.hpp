#pragma once

// Small non-validating XML reader: elements, attributes, comments, prolog,
// character references. Whitespace-only text between elements is dropped;
// any other character data is reported as an error.

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace swb::xml {

struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<Element> children;
  int line = 0;

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }
};

/// Throws Error(schema) with "line N: ..." messages.
Element parse(std::string_view text);

std::string escape_attribute(std::string_view text);

}  // namespace swb::xml
