#include "termcert/xml.hpp"

#include <algorithm>
#include <cctype>

namespace termcert::xml {

namespace {

constexpr int kMaxDepth = 512;

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool name_char(char c) {
  return !is_ws(c) && c != '<' && c != '>' && c != '/' && c != '=' && c != '"' &&
         c != '\'' && c != '&';
}

// Strip one namespace prefix: "xs:element" -> "element". Names without a
// proper prefix pass through unchanged.
std::string strip_ns(std::string name) {
  auto colon = name.find(':');
  if (colon != std::string::npos && colon > 0 && colon + 1 < name.size())
    return name.substr(colon + 1);
  return name;
}

struct Parser {
  std::string_view in;
  std::size_t pos = 0;
  std::size_t line = 1, col = 1;

  [[noreturn]] void fail(std::string msg) const { throw XmlError{std::move(msg), line, col}; }

  bool eof() const { return pos >= in.size(); }
  char peek() const { return in[pos]; }
  bool lookahead(std::string_view s) const { return in.substr(pos, s.size()) == s; }

  char take() {
    char c = in[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }

  void expect(char c) {
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    take();
  }

  void skip_ws() {
    while (!eof() && is_ws(peek())) take();
  }

  std::string read_name() {
    std::string out;
    while (!eof() && name_char(peek())) out += take();
    if (out.empty()) fail("expected a name");
    return out;
  }

  // Entity reference, '&' already seen.
  void read_entity(std::string& out) {
    std::string ent;
    while (!eof() && peek() != ';') {
      ent += take();
      if (ent.size() > 10) fail("malformed entity reference");
    }
    if (eof()) fail("unterminated entity reference");
    take();  // ';'
    if (ent == "lt")
      out += '<';
    else if (ent == "gt")
      out += '>';
    else if (ent == "amp")
      out += '&';
    else if (ent == "apos")
      out += '\'';
    else if (ent == "quot")
      out += '"';
    else if (!ent.empty() && ent[0] == '#') {
      bool hex = ent.size() > 1 && (ent[1] == 'x' || ent[1] == 'X');
      std::string digits = ent.substr(hex ? 2 : 1);
      if (digits.empty()) fail("malformed character reference");
      unsigned long code = 0;
      for (char c : digits) {
        int d;
        if (c >= '0' && c <= '9')
          d = c - '0';
        else if (hex && c >= 'a' && c <= 'f')
          d = c - 'a' + 10;
        else if (hex && c >= 'A' && c <= 'F')
          d = c - 'A' + 10;
        else
          fail("malformed character reference");
        code = code * (hex ? 16 : 10) + d;
        if (code > 0x10FFFF) fail("character reference out of range");
      }
      // UTF-8 encode.
      if (code < 0x80) {
        out += static_cast<char>(code);
      } else if (code < 0x800) {
        out += static_cast<char>(0xC0 | (code >> 6));
        out += static_cast<char>(0x80 | (code & 0x3F));
      } else if (code < 0x10000) {
        out += static_cast<char>(0xE0 | (code >> 12));
        out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (code & 0x3F));
      } else {
        out += static_cast<char>(0xF0 | (code >> 18));
        out += static_cast<char>(0x80 | ((code >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((code >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (code & 0x3F));
      }
    } else {
      fail("unknown entity &" + ent + ";");
    }
  }

  void skip_until(std::string_view close, const char* what) {
    while (!eof()) {
      if (lookahead(close)) {
        for (std::size_t i = 0; i < close.size(); ++i) take();
        return;
      }
      take();
    }
    fail(std::string("unterminated ") + what);
  }

  // Whitespace, comments and processing instructions outside the root
  // element. DOCTYPE and any other markup declaration are rejected.
  void skip_misc() {
    for (;;) {
      skip_ws();
      if (lookahead("<!--")) {
        skip_until("-->", "comment");
      } else if (lookahead("<?")) {
        skip_until("?>", "processing instruction");
      } else if (lookahead("<!")) {
        fail("DOCTYPE and markup declarations are not allowed");
      } else {
        return;
      }
    }
  }

  std::string read_attr_value() {
    if (eof() || (peek() != '"' && peek() != '\'')) fail("expected quoted attribute value");
    char quote = take();
    std::string out;
    while (!eof() && peek() != quote) {
      if (peek() == '<') fail("'<' in attribute value");
      char c = take();
      if (c == '&')
        read_entity(out);
      else
        out += c;
    }
    if (eof()) fail("unterminated attribute value");
    take();  // closing quote
    return out;
  }

  Element parse_element(int depth) {
    if (depth > kMaxDepth) fail("element nesting too deep");
    Element el;
    el.line = line;
    el.col = col;
    expect('<');
    std::string raw_name = read_name();
    el.name = strip_ns(raw_name);

    for (;;) {
      skip_ws();
      if (eof()) fail("unterminated start tag");
      if (peek() == '>' || lookahead("/>")) break;
      std::string attr = read_name();
      skip_ws();
      expect('=');
      skip_ws();
      std::string value = read_attr_value();
      if (attr == "xmlns" || attr.starts_with("xmlns:")) continue;
      el.attrs.emplace_back(strip_ns(std::move(attr)), std::move(value));
    }

    if (lookahead("/>")) {
      take();
      take();
      return el;
    }
    expect('>');

    std::string text;
    std::size_t text_line = line, text_col = col;
    auto flush_text = [&] {
      if (text.empty()) return;
      if (!std::all_of(text.begin(), text.end(), is_ws))
        el.children.push_back(Node{Text{std::move(text), text_line, text_col}});
      text.clear();
    };

    for (;;) {
      if (eof()) fail("unterminated element <" + raw_name + ">");
      if (peek() == '<') {
        if (lookahead("</")) {
          flush_text();
          take();
          take();
          std::string end = read_name();
          if (end != raw_name)
            fail("mismatched end tag </" + end + "> for <" + raw_name + ">");
          skip_ws();
          expect('>');
          return el;
        }
        if (lookahead("<!--")) {
          skip_until("-->", "comment");
          continue;
        }
        if (lookahead("<![CDATA[")) {
          for (int i = 0; i < 9; ++i) take();
          while (!eof() && !lookahead("]]>")) text += take();
          if (eof()) fail("unterminated CDATA section");
          take();
          take();
          take();
          continue;
        }
        if (lookahead("<?")) {
          skip_until("?>", "processing instruction");
          continue;
        }
        if (lookahead("<!")) fail("markup declarations are not allowed inside elements");
        flush_text();
        el.children.push_back(Node{parse_element(depth + 1)});
        text_line = line;
        text_col = col;
        continue;
      }
      if (text.empty()) {
        text_line = line;
        text_col = col;
      }
      char c = take();
      if (c == '&')
        read_entity(text);
      else
        text += c;
    }
  }
};

void append_escaped(std::string& out, const std::string& s, bool in_attr) {
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += in_attr ? "&quot;" : "\""; break;
      default: out += c;
    }
  }
}

void serialize_into(const Element& e, std::string& out) {
  out += "<" + e.name;
  for (const auto& [k, v] : e.attrs) {
    out += " " + k + "=\"";
    append_escaped(out, v, true);
    out += "\"";
  }
  if (e.children.empty()) {
    out += "/>";
    return;
  }
  out += ">";
  for (const Node& n : e.children) {
    if (const Element* child = std::get_if<Element>(&n.v))
      serialize_into(*child, out);
    else
      append_escaped(out, std::get<Text>(n.v).value, false);
  }
  out += "</" + e.name + ">";
}

}  // namespace

Result<Element, XmlError> parse_document(std::string_view bytes) {
  try {
    Parser p{bytes};
    p.skip_misc();
    if (p.eof() || p.peek() != '<') p.fail("expected a root element");
    Element root = p.parse_element(0);
    p.skip_misc();
    if (!p.eof()) p.fail("content after the root element");
    return root;
  } catch (XmlError& e) {
    return e;
  }
}

std::string serialize(const Element& e) {
  std::string out;
  serialize_into(e, out);
  return out;
}

}  // namespace termcert::xml
