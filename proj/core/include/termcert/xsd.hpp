#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "termcert/parse_error.hpp"
#include "termcert/result.hpp"

namespace termcert::xsd {

// AST for the accepted schema subset. Element contents are spliced through
// complexType wrappers; an element with no content model is a TextLeaf.

struct XsdType;
using XsdTypePtr = std::shared_ptr<const XsdType>;

struct Occurs {
  unsigned min = 1;
  unsigned max = 1;
  bool unbounded = false;
  friend bool operator==(const Occurs&, const Occurs&) = default;
};

struct XsdElement {
  std::string name;
  XsdTypePtr content;
};

struct XsdItem {
  XsdTypePtr type;
  Occurs occurs;
};

struct XsdSequence {
  std::vector<XsdItem> items;
};

struct XsdChoice {
  std::vector<XsdTypePtr> alternatives;
};

struct XsdGroupRef {
  std::string name;
};

struct XsdTextLeaf {};

struct XsdType {
  std::variant<XsdElement, XsdSequence, XsdChoice, XsdGroupRef, XsdTextLeaf> node;
};

struct XsdSchema {
  // Definition order is meaningful: it breaks ties in order_types.
  std::vector<std::pair<std::string, XsdType>> definitions;
};

Result<XsdSchema, ParseError> parse_xsd(std::string_view bytes);

// Algebraic view: each definition becomes a sum (one constructor per choice
// alternative) or a product of fields.

struct Field {
  enum class Kind { Ref, Optional, List, Text };
  Kind kind = Kind::Text;
  std::string ref;                     // Kind::Ref
  std::shared_ptr<const Field> inner;  // Kind::Optional and Kind::List

  static Field text() { return {}; }
  static Field ref_to(std::string name);
  static Field optional(Field inner);
  static Field list(Field inner);

  friend bool operator==(const Field& a, const Field& b);
};

struct Constructor {
  std::string tag;
  std::vector<Field> fields;
  friend bool operator==(const Constructor&, const Constructor&) = default;
};

struct SumBody {
  std::vector<Constructor> constructors;
  friend bool operator==(const SumBody&, const SumBody&) = default;
};

struct ProductBody {
  std::vector<Field> fields;
  friend bool operator==(const ProductBody&, const ProductBody&) = default;
};

struct TypeDef {
  std::string name;
  std::variant<SumBody, ProductBody> body;
  friend bool operator==(const TypeDef&, const TypeDef&) = default;
};

struct TypeIR {
  std::vector<TypeDef> definitions;
  friend bool operator==(const TypeIR&, const TypeIR&) = default;
};

// Total on any schema that parse_xsd accepts.
TypeIR lower(const XsdSchema& s);

// Mutually recursive definitions grouped together, dependencies first; ties
// between independent groups go to the earliest-defined member. Within a
// group, names keep definition order.
std::vector<std::vector<std::string>> order_types(const TypeIR& ir);

// Deterministic text rendering of the IR in the given group order.
std::string emit_ir(const TypeIR& ir, const std::vector<std::vector<std::string>>& order);

}  // namespace termcert::xsd
