#pragma once

#include <cstddef>
#include <string>

namespace termcert {

struct ParseError {
  enum class Kind {
    XmlMalformed,       // not well-formed XML; line/col point at the defect
    UnexpectedElement,  // wrong element (or stray text) at this position
    MissingChild,       // a required child is absent
    BadInteger,         // numeric text that does not parse or is out of range
    Unsupported,        // recognized but out-of-scope construct; message names it
    UnresolvedRef,      // reference to an undefined name
    Invalid,            // structurally parsed but violates a document invariant
  };
  Kind kind = Kind::Invalid;
  std::string path;     // slash-separated element path from the document root
  std::string message;  // detail; for Unsupported, the offending construct
  std::size_t line = 0; // set when kind == XmlMalformed
  std::size_t col = 0;
};

std::string describe(const ParseError& e);

}  // namespace termcert
