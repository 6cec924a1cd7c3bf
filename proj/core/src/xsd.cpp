#include "termcert/xsd.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "termcert/graph.hpp"
#include "termcert/xml.hpp"

namespace termcert::xsd {

namespace {

using xml::Element;
using xml::Node;
using xml::Text;
using Kind = ParseError::Kind;

[[noreturn]] void fail(Kind k, std::string path, std::string message) {
  throw ParseError{k, std::move(path), std::move(message), 0, 0};
}

std::vector<const Element*> child_elements(const Element& el, const std::string& path) {
  std::vector<const Element*> out;
  for (const Node& n : el.children) {
    if (std::holds_alternative<Text>(n.v))
      fail(Kind::UnexpectedElement, path, "stray text in schema");
    out.push_back(&std::get<Element>(n.v));
  }
  return out;
}

const std::string* attr(const Element& el, std::string_view name) {
  for (const auto& [k, v] : el.attrs)
    if (k == name) return &v;
  return nullptr;
}

bool has_occurs_attrs(const Element& el) {
  return attr(el, "minOccurs") || attr(el, "maxOccurs");
}

unsigned parse_occurs_value(const std::string& s, const std::string& path) {
  if (s.empty() || s.size() > 9 ||
      !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail(Kind::BadInteger, path, "\"" + s + "\" is not a valid occurrence bound");
  return static_cast<unsigned>(std::stoul(s));
}

Occurs parse_occurs(const Element& el, const std::string& path) {
  Occurs o;
  if (const std::string* s = attr(el, "minOccurs")) o.min = parse_occurs_value(*s, path);
  if (const std::string* s = attr(el, "maxOccurs")) {
    if (*s == "unbounded") {
      o.unbounded = true;
    } else {
      o.max = parse_occurs_value(*s, path);
      if (o.max == 0) fail(Kind::Unsupported, path, "maxOccurs=0");
      if (o.min > o.max) fail(Kind::Invalid, path, "minOccurs exceeds maxOccurs");
    }
  }
  return o;
}

XsdTypePtr ptr(XsdType t) { return std::make_shared<const XsdType>(std::move(t)); }

// Where an element declaration sits decides which content shapes it may
// carry: definitions allow choices, constructor positions allow multi-field
// sequences, field positions must collapse to a single field.
enum class Slot { Definition, Constructor, Field };

XsdTypePtr parse_content(const Element& el, const std::string& path, Slot slot);

XsdSequence parse_sequence(const Element& el, const std::string& path) {
  XsdSequence seq;
  for (const Element* kid : child_elements(el, path)) {
    std::string kpath = path + "/" + kid->name;
    if (kid->name == "element") {
      Occurs occurs = parse_occurs(*kid, kpath);
      if (const std::string* ref = attr(*kid, "ref")) {
        seq.items.push_back(XsdItem{ptr(XsdType{XsdGroupRef{*ref}}), occurs});
      } else if (const std::string* name = attr(*kid, "name")) {
        seq.items.push_back(
            XsdItem{ptr(XsdType{XsdElement{*name, parse_content(*kid, kpath, Slot::Field)}}),
                    occurs});
      } else {
        fail(Kind::Invalid, kpath, "element needs name= or ref=");
      }
    } else if (kid->name == "group") {
      const std::string* ref = attr(*kid, "ref");
      if (!ref) fail(Kind::Unsupported, kpath, "nested group definition");
      seq.items.push_back(XsdItem{ptr(XsdType{XsdGroupRef{*ref}}), parse_occurs(*kid, kpath)});
    } else if (kid->name == "sequence" || kid->name == "choice") {
      fail(Kind::Unsupported, kpath, "nested " + kid->name);
    } else {
      fail(Kind::Unsupported, kpath, kid->name);
    }
  }
  return seq;
}

XsdChoice parse_choice(const Element& el, const std::string& path) {
  XsdChoice choice;
  auto kids = child_elements(el, path);
  if (kids.empty()) fail(Kind::MissingChild, path, "alternative");
  for (const Element* kid : kids) {
    std::string kpath = path + "/" + kid->name;
    if (has_occurs_attrs(*kid))
      fail(Kind::Unsupported, kpath, "minOccurs/maxOccurs on a choice alternative");
    if (kid->name == "element") {
      if (const std::string* ref = attr(*kid, "ref")) {
        choice.alternatives.push_back(ptr(XsdType{XsdGroupRef{*ref}}));
      } else if (const std::string* name = attr(*kid, "name")) {
        choice.alternatives.push_back(
            ptr(XsdType{XsdElement{*name, parse_content(*kid, kpath, Slot::Constructor)}}));
      } else {
        fail(Kind::Invalid, kpath, "element needs name= or ref=");
      }
    } else if (kid->name == "group") {
      const std::string* ref = attr(*kid, "ref");
      if (!ref) fail(Kind::Unsupported, kpath, "nested group definition");
      choice.alternatives.push_back(ptr(XsdType{XsdGroupRef{*ref}}));
    } else {
      fail(Kind::Unsupported, kpath, kid->name);
    }
  }
  return choice;
}

XsdTypePtr parse_content(const Element& el, const std::string& path, Slot slot) {
  std::vector<const Element*> kids = child_elements(el, path);
  std::string base = path;
  if (kids.size() == 1 && kids[0]->name == "complexType") {
    base = path + "/complexType";
    kids = child_elements(*kids[0], base);
  }
  if (kids.empty()) return ptr(XsdType{XsdTextLeaf{}});
  if (kids.size() > 1)
    fail(Kind::Unsupported, base + "/" + kids[1]->name, "multiple content particles");

  const Element& c = *kids[0];
  std::string cpath = base + "/" + c.name;
  if (has_occurs_attrs(c))
    fail(Kind::Unsupported, cpath, "minOccurs/maxOccurs outside a sequence item");
  if (c.name == "sequence") {
    XsdSequence seq = parse_sequence(c, cpath);
    if (slot == Slot::Field) {
      if (seq.items.size() != 1)
        fail(Kind::Unsupported, cpath, "element content does not map to a single field");
      // A plain single-item wrapper is transparent.
      if (seq.items[0].occurs == Occurs{})
        return seq.items[0].type;
    }
    return ptr(XsdType{std::move(seq)});
  }
  if (c.name == "choice") {
    if (slot != Slot::Definition) fail(Kind::Unsupported, cpath, "anonymous choice");
    return ptr(XsdType{parse_choice(c, cpath)});
  }
  if (c.name == "group") {
    const std::string* ref = attr(c, "ref");
    if (!ref) fail(Kind::Unsupported, cpath, "nested group definition");
    return ptr(XsdType{XsdGroupRef{*ref}});
  }
  fail(Kind::Unsupported, cpath, c.name);
}

std::pair<std::string, XsdType> parse_definition(const Element& el, const std::string& path) {
  if (el.name == "element") {
    if (has_occurs_attrs(el))
      fail(Kind::Unsupported, path, "minOccurs/maxOccurs outside a sequence item");
    const std::string* name = attr(el, "name");
    if (!name) fail(Kind::Invalid, path, "top-level element needs a name");
    return {*name, XsdType{XsdElement{*name, parse_content(el, path, Slot::Definition)}}};
  }
  if (el.name == "group") {
    const std::string* name = attr(el, "name");
    if (!name) fail(Kind::Invalid, path, "top-level group needs a name");
    auto kids = child_elements(el, path);
    if (kids.size() != 1)
      fail(kids.empty() ? Kind::MissingChild : Kind::UnexpectedElement, path,
           "group holds exactly one particle");
    const Element& c = *kids[0];
    std::string cpath = path + "/" + c.name;
    if (has_occurs_attrs(c))
      fail(Kind::Unsupported, cpath, "minOccurs/maxOccurs outside a sequence item");
    if (c.name == "choice") return {*name, XsdType{parse_choice(c, cpath)}};
    if (c.name == "sequence") return {*name, XsdType{parse_sequence(c, cpath)}};
    fail(Kind::Unsupported, cpath, c.name);
  }
  fail(Kind::Unsupported, path, el.name);
}

void collect_refs(const XsdType& t, std::vector<std::string>& out) {
  if (const auto* e = std::get_if<XsdElement>(&t.node)) {
    collect_refs(*e->content, out);
  } else if (const auto* s = std::get_if<XsdSequence>(&t.node)) {
    for (const XsdItem& it : s->items) collect_refs(*it.type, out);
  } else if (const auto* c = std::get_if<XsdChoice>(&t.node)) {
    for (const XsdTypePtr& a : c->alternatives) collect_refs(*a, out);
  } else if (const auto* g = std::get_if<XsdGroupRef>(&t.node)) {
    out.push_back(g->name);
  }
}

XsdSchema parse_schema(const Element& root) {
  XsdSchema schema;
  std::string path = root.name;
  if (root.name == "schema") {
    for (const Element* kid : child_elements(root, path))
      schema.definitions.push_back(parse_definition(*kid, path + "/" + kid->name));
  } else if (root.name == "element" || root.name == "group") {
    schema.definitions.push_back(parse_definition(root, path));
  } else {
    fail(Kind::UnexpectedElement, path, "expected schema, element or group, got " + root.name);
  }

  std::set<std::string> names;
  for (const auto& [name, t] : schema.definitions)
    if (!names.insert(name).second)
      fail(Kind::Invalid, path, "duplicate definition of " + name);
  for (const auto& [name, t] : schema.definitions) {
    std::vector<std::string> refs;
    collect_refs(t, refs);
    for (const std::string& r : refs)
      if (!names.contains(r))
        fail(Kind::UnresolvedRef, path, name + " references undefined " + r);
  }
  return schema;
}

}  // namespace

Result<XsdSchema, ParseError> parse_xsd(std::string_view bytes) {
  auto doc = xml::parse_document(bytes);
  if (!doc)
    return ParseError{Kind::XmlMalformed, "", doc.error().message, doc.error().line,
                      doc.error().col};
  try {
    return parse_schema(doc.value());
  } catch (ParseError& e) {
    return e;
  }
}

Field Field::ref_to(std::string name) {
  Field f;
  f.kind = Kind::Ref;
  f.ref = std::move(name);
  return f;
}

Field Field::optional(Field inner) {
  Field f;
  f.kind = Kind::Optional;
  f.inner = std::make_shared<const Field>(std::move(inner));
  return f;
}

Field Field::list(Field inner) {
  Field f;
  f.kind = Kind::List;
  f.inner = std::make_shared<const Field>(std::move(inner));
  return f;
}

bool operator==(const Field& a, const Field& b) {
  if (a.kind != b.kind || a.ref != b.ref) return false;
  if (!a.inner || !b.inner) return !a.inner && !b.inner;
  return *a.inner == *b.inner;
}

namespace {

Field field_of_type(const XsdType& t);

Field field_of_item(const XsdItem& item) {
  Field base = field_of_type(*item.type);
  if (item.occurs.unbounded || item.occurs.max > 1) return Field::list(std::move(base));
  if (item.occurs.min == 0) return Field::optional(std::move(base));
  return base;
}

Field field_of_type(const XsdType& t) {
  if (const auto* g = std::get_if<XsdGroupRef>(&t.node)) return Field::ref_to(g->name);
  if (std::holds_alternative<XsdTextLeaf>(t.node)) return Field::text();
  if (const auto* e = std::get_if<XsdElement>(&t.node)) return field_of_type(*e->content);
  if (const auto* s = std::get_if<XsdSequence>(&t.node)) {
    assert(s->items.size() == 1);  // parse enforces single-field contents
    return field_of_item(s->items[0]);
  }
  assert(false && "choice cannot sit in field position");
  return Field::text();
}

std::vector<Field> fields_of_content(const XsdType& t) {
  if (std::holds_alternative<XsdTextLeaf>(t.node)) return {Field::text()};
  if (const auto* g = std::get_if<XsdGroupRef>(&t.node)) return {Field::ref_to(g->name)};
  if (const auto* s = std::get_if<XsdSequence>(&t.node)) {
    std::vector<Field> out;
    out.reserve(s->items.size());
    for (const XsdItem& it : s->items) out.push_back(field_of_item(it));
    return out;
  }
  assert(false && "constructor content cannot be a choice or element");
  return {};
}

std::string constructor_tag(const std::string& defname, const std::string& alt) {
  std::string tag = defname + "_" + alt;
  if (!tag.empty() && tag[0] >= 'a' && tag[0] <= 'z') tag[0] = static_cast<char>(tag[0] - 32);
  return tag;
}

TypeDef lower_definition(const std::string& name, const XsdType& t) {
  const XsdType* body = &t;
  if (const auto* e = std::get_if<XsdElement>(&t.node)) body = e->content.get();

  if (const auto* c = std::get_if<XsdChoice>(&body->node)) {
    SumBody sum;
    for (const XsdTypePtr& alt : c->alternatives) {
      if (const auto* g = std::get_if<XsdGroupRef>(&alt->node)) {
        sum.constructors.push_back(
            Constructor{constructor_tag(name, g->name), {Field::ref_to(g->name)}});
      } else {
        const auto& e = std::get<XsdElement>(alt->node);
        sum.constructors.push_back(
            Constructor{constructor_tag(name, e.name), fields_of_content(*e.content)});
      }
    }
    return TypeDef{name, std::move(sum)};
  }
  return TypeDef{name, ProductBody{fields_of_content(*body)}};
}

void collect_field_refs(const Field& f, std::vector<std::string>& out) {
  if (f.kind == Field::Kind::Ref)
    out.push_back(f.ref);
  else if (f.inner)
    collect_field_refs(*f.inner, out);
}

std::vector<std::string> refs_of_def(const TypeDef& d) {
  std::vector<std::string> out;
  if (const auto* s = std::get_if<SumBody>(&d.body)) {
    for (const Constructor& c : s->constructors)
      for (const Field& f : c.fields) collect_field_refs(f, out);
  } else {
    for (const Field& f : std::get<ProductBody>(d.body).fields) collect_field_refs(f, out);
  }
  return out;
}

std::string render_field(const Field& f) {
  switch (f.kind) {
    case Field::Kind::Text:
      return "text";
    case Field::Kind::Ref:
      return f.ref;
    case Field::Kind::Optional:
      return "option(" + render_field(*f.inner) + ")";
    case Field::Kind::List:
      return "list(" + render_field(*f.inner) + ")";
  }
  return {};
}

std::string render_fields(const std::vector<Field>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ", ";
    out += render_field(fields[i]);
  }
  return out;
}

}  // namespace

TypeIR lower(const XsdSchema& s) {
  TypeIR ir;
  ir.definitions.reserve(s.definitions.size());
  for (const auto& [name, t] : s.definitions) ir.definitions.push_back(lower_definition(name, t));
  return ir;
}

std::vector<std::vector<std::string>> order_types(const TypeIR& ir) {
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < ir.definitions.size(); ++i)
    index.emplace(ir.definitions[i].name, static_cast<int>(i));

  std::set<std::pair<int, int>> edges;
  for (std::size_t i = 0; i < ir.definitions.size(); ++i)
    for (const std::string& r : refs_of_def(ir.definitions[i])) {
      auto it = index.find(r);
      if (it != index.end()) edges.emplace(it->second, static_cast<int>(i));
    }

  auto groups = condensation_in_topo_order(static_cast<int>(ir.definitions.size()), edges);
  std::vector<std::vector<std::string>> out;
  out.reserve(groups.size());
  for (const std::vector<int>& g : groups) {
    std::vector<std::string> names;
    names.reserve(g.size());
    for (int i : g) names.push_back(ir.definitions[static_cast<std::size_t>(i)].name);
    out.push_back(std::move(names));
  }
  return out;
}

std::string emit_ir(const TypeIR& ir, const std::vector<std::vector<std::string>>& order) {
  std::map<std::string, const TypeDef*> byname;
  for (const TypeDef& d : ir.definitions) byname.emplace(d.name, &d);

  std::string out;
  bool first_group = true;
  for (const std::vector<std::string>& group : order) {
    if (!first_group) out += "\n";
    first_group = false;
    out += "group";
    for (const std::string& n : group) out += " " + n;
    out += "\n";
    for (const std::string& n : group) {
      const TypeDef* d = byname.at(n);
      out += "  type " + d->name + " = ";
      if (const auto* s = std::get_if<SumBody>(&d->body)) {
        out += "sum(";
        for (std::size_t i = 0; i < s->constructors.size(); ++i) {
          const Constructor& c = s->constructors[i];
          if (i) out += " | ";
          out += c.tag;
          if (!c.fields.empty()) out += "(" + render_fields(c.fields) + ")";
        }
        out += ")";
      } else {
        out += "product(" + render_fields(std::get<ProductBody>(d->body).fields) + ")";
      }
      out += "\n";
    }
  }
  return out;
}

}  // namespace termcert::xsd
