#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "termcert/result.hpp"

namespace termcert::xml {

// Deliberately small XML reader: elements, attributes, character data, the
// five named entities plus numeric references, CDATA, comments. Namespace
// prefixes are stripped from element and attribute names, xmlns declarations
// are dropped, DOCTYPE is rejected outright. Whitespace-only character data
// between elements is discarded.

struct Node;

struct Text {
  std::string value;
  std::size_t line = 0, col = 0;
};

// vector<Node> is fine with Node still incomplete here; Node itself needs
// both alternatives complete, so it comes last.
struct Element {
  std::string name;
  std::vector<std::pair<std::string, std::string>> attrs;
  std::vector<Node> children;
  std::size_t line = 0, col = 0;
};

struct Node {
  std::variant<Element, Text> v;
  bool is_element() const { return v.index() == 0; }
};

struct XmlError {
  std::string message;
  std::size_t line = 0, col = 0;
};

Result<Element, XmlError> parse_document(std::string_view bytes);

// Compact single-line form, entities re-escaped. Used to carry opaque
// subtrees (labels) around and to re-emit them verbatim.
std::string serialize(const Element& e);

}  // namespace termcert::xml
