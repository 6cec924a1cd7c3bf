#include <algorithm>
#include <string>
#include <vector>

#include "termcert/cpf.hpp"
#include "termcert/xml.hpp"

namespace termcert {

namespace {

using xml::Element;
using xml::Node;
using xml::Text;
using Kind = ParseError::Kind;

// Arities and variable indices have no business being astronomical.
constexpr std::size_t kMaxNat = 1'000'000;

[[noreturn]] void fail(Kind k, std::string path, std::string message) {
  throw ParseError{k, std::move(path), std::move(message), 0, 0};
}

bool is_ascii_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && is_ascii_ws(s[b])) ++b;
  while (e > b && is_ascii_ws(s[e - 1])) --e;
  return s.substr(b, e - b);
}

// Children as elements; non-whitespace text among them is an error
// (whitespace-only runs were already dropped by the XML layer).
std::vector<const Element*> child_elements(const Element& el, const std::string& path) {
  std::vector<const Element*> out;
  for (const Node& n : el.children) {
    if (const Text* t = std::get_if<Text>(&n.v))
      fail(Kind::UnexpectedElement, path, "stray text \"" + trimmed(t->value) + "\"");
    out.push_back(&std::get<Element>(n.v));
  }
  return out;
}

std::string text_content(const Element& el, const std::string& path) {
  if (el.children.empty()) fail(Kind::MissingChild, path, "text content");
  if (el.children.size() > 1 || !std::holds_alternative<Text>(el.children[0].v))
    fail(Kind::UnexpectedElement, path, "expected text content only");
  return trimmed(std::get<Text>(el.children[0].v).value);
}

const Element& only_child(const Element& el, const std::string& path, std::string_view name) {
  auto kids = child_elements(el, path);
  if (kids.empty()) fail(Kind::MissingChild, path, std::string(name));
  if (kids.size() > 1)
    fail(Kind::UnexpectedElement, path + "/" + kids[1]->name,
         "expected a single <" + std::string(name) + "> child");
  if (kids[0]->name != name)
    fail(Kind::UnexpectedElement, path + "/" + kids[0]->name,
         "expected <" + std::string(name) + ">");
  return *kids[0];
}

std::size_t parse_nat(const Element& el, const std::string& path) {
  std::string s = text_content(el, path);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail(Kind::BadInteger, path, "\"" + s + "\" is not a natural number");
  if (s.size() > 9) fail(Kind::BadInteger, path, "\"" + s + "\" is out of range");
  std::size_t v = std::stoull(s);
  if (v > kMaxNat) fail(Kind::BadInteger, path, "\"" + s + "\" is out of range");
  return v;
}

BigInt parse_integer_text(const std::string& s, const std::string& path) {
  std::string_view digits = s;
  if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) digits.remove_prefix(1);
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
    fail(Kind::BadInteger, path, "\"" + s + "\" is not an integer");
  BigInt v{std::string(digits)};
  return (!s.empty() && s[0] == '-') ? BigInt(-v) : v;
}

bool parse_bool(const Element& el, const std::string& path) {
  std::string s = text_content(el, path);
  if (s == "true") return true;
  if (s == "false") return false;
  fail(Kind::Invalid, path, "expected true or false, got \"" + s + "\"");
}

Symbol parse_symbol(const Element& el, const std::string& path) {
  if (el.name == "name") {
    std::string id = text_content(el, path);
    if (id.empty()) fail(Kind::Invalid, path, "empty symbol name");
    return Symbol::name(std::move(id));
  }
  if (el.name == "sharp") {
    auto kids = child_elements(el, path);
    if (kids.size() != 1)
      fail(kids.empty() ? Kind::MissingChild : Kind::UnexpectedElement, path,
           "sharp wraps exactly one symbol");
    return Symbol::sharp(parse_symbol(*kids[0], path + "/" + kids[0]->name));
  }
  if (el.name == "labeledSymbol") {
    auto kids = child_elements(el, path);
    if (kids.size() != 2)
      fail(kids.size() < 2 ? Kind::MissingChild : Kind::UnexpectedElement, path,
           "labeledSymbol takes a symbol and a label");
    Symbol base = parse_symbol(*kids[0], path + "/" + kids[0]->name);
    return Symbol::labeled(std::move(base), xml::serialize(*kids[1]));
  }
  fail(Kind::UnexpectedElement, path, "expected name, sharp or labeledSymbol, got " + el.name);
}

Term parse_term(const Element& el, const std::string& path) {
  if (el.name == "var") {
    std::string name = text_content(el, path);
    if (name.empty()) fail(Kind::Invalid, path, "empty variable name");
    return Term::var(std::move(name));
  }
  if (el.name == "funapp") {
    auto kids = child_elements(el, path);
    if (kids.empty()) fail(Kind::MissingChild, path, "symbol");
    Symbol f = parse_symbol(*kids[0], path + "/" + kids[0]->name);
    std::vector<Term> args;
    for (std::size_t i = 1; i < kids.size(); ++i) {
      if (kids[i]->name != "arg")
        fail(Kind::UnexpectedElement, path + "/" + kids[i]->name, "expected <arg>");
      std::string apath = path + "/arg[" + std::to_string(i) + "]";
      auto inner = child_elements(*kids[i], apath);
      if (inner.size() != 1)
        fail(inner.empty() ? Kind::MissingChild : Kind::UnexpectedElement, apath,
             "arg holds exactly one term");
      args.push_back(parse_term(*inner[0], apath + "/" + inner[0]->name));
    }
    return Term::fun(std::move(f), std::move(args));
  }
  fail(Kind::UnexpectedElement, path, "expected var or funapp, got " + el.name);
}

Term parse_term_in(const Element& el, const std::string& path) {
  auto kids = child_elements(el, path);
  if (kids.size() != 1)
    fail(kids.empty() ? Kind::MissingChild : Kind::UnexpectedElement, path,
         "expected exactly one term");
  return parse_term(*kids[0], path + "/" + kids[0]->name);
}

Rule parse_rule(const Element& el, const std::string& path) {
  auto kids = child_elements(el, path);
  if (kids.empty()) fail(Kind::MissingChild, path, "lhs");
  if (kids[0]->name != "lhs")
    fail(Kind::UnexpectedElement, path + "/" + kids[0]->name, "expected <lhs>");
  if (kids.size() < 2) fail(Kind::MissingChild, path, "rhs");
  if (kids[1]->name != "rhs")
    fail(Kind::UnexpectedElement, path + "/" + kids[1]->name, "expected <rhs>");
  if (kids.size() > 2)
    fail(Kind::UnexpectedElement, path + "/" + kids[2]->name, "rule has exactly lhs and rhs");
  Term lhs = parse_term_in(*kids[0], path + "/lhs");
  Term rhs = parse_term_in(*kids[1], path + "/rhs");
  return Rule{std::move(lhs), std::move(rhs)};
}

std::vector<Rule> parse_rules_list(const Element& el, const std::string& path) {
  auto kids = child_elements(el, path);
  std::vector<Rule> out;
  out.reserve(kids.size());
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (kids[i]->name != "rule")
      fail(Kind::UnexpectedElement, path + "/" + kids[i]->name, "expected <rule>");
    out.push_back(parse_rule(*kids[i], path + "/rule[" + std::to_string(i + 1) + "]"));
  }
  return out;
}

std::vector<Rule> parse_rules_in(const Element& el, const std::string& path) {
  const Element& rules = only_child(el, path, "rules");
  return parse_rules_list(rules, path + "/rules");
}

Polynomial parse_polyexp(const Element& el, const std::string& path) {
  if (el.name == "coefficient") {
    const Element& integer = only_child(el, path, "integer");
    std::string ipath = path + "/integer";
    return Polynomial::constant(parse_integer_text(text_content(integer, ipath), ipath));
  }
  if (el.name == "variable") {
    std::size_t idx = parse_nat(el, path);
    if (idx < 1) fail(Kind::BadInteger, path, "variable index must be at least 1");
    return Polynomial::variable(static_cast<int>(idx));
  }
  if (el.name == "sum" || el.name == "product") {
    bool is_sum = el.name == "sum";
    Polynomial acc = is_sum ? Polynomial() : Polynomial::constant(1);
    for (const Element* c : child_elements(el, path)) {
      Polynomial p = parse_polyexp(*c, path + "/" + c->name);
      acc = is_sum ? poly_add(acc, p) : poly_mul(acc, p);
    }
    return acc;
  }
  fail(Kind::UnexpectedElement, path, "expected coefficient, variable, sum or product, got " + el.name);
}

void parse_interpret(const Element& el, const std::string& path, PolyInterpretation& interp) {
  auto kids = child_elements(el, path);
  if (kids.size() < 3)
    fail(Kind::MissingChild, path, "interpret takes a symbol, an arity and a polynomial");
  if (kids.size() > 3)
    fail(Kind::UnexpectedElement, path + "/" + kids[3]->name,
         "interpret takes a symbol, an arity and a polynomial");
  Symbol f = parse_symbol(*kids[0], path + "/" + kids[0]->name);
  if (kids[1]->name != "arity")
    fail(Kind::UnexpectedElement, path + "/" + kids[1]->name, "expected <arity>");
  std::size_t n = parse_nat(*kids[1], path + "/arity");
  if (kids[2]->name != "polynomial")
    fail(Kind::UnexpectedElement, path + "/" + kids[2]->name, "expected <polynomial>");
  std::string ppath = path + "/polynomial";
  auto inner = child_elements(*kids[2], ppath);
  if (inner.size() != 1)
    fail(inner.empty() ? Kind::MissingChild : Kind::UnexpectedElement, ppath,
         "polynomial holds exactly one expression");
  Polynomial p = parse_polyexp(*inner[0], ppath + "/" + inner[0]->name);
  if (p.max_var_index() > static_cast<int>(n))
    fail(Kind::Invalid, path,
         "polynomial mentions X" + std::to_string(p.max_var_index()) +
             " but the declared arity is " + std::to_string(n));
  if (!interp.assign(f, n, std::move(p)))
    fail(Kind::Invalid, path, "duplicate interpretation for symbol " + f.show());
}

PolyInterpretation parse_interpretation(const Element& el, const std::string& path) {
  auto kids = child_elements(el, path);
  if (kids.empty()) fail(Kind::MissingChild, path, "interpret");
  PolyInterpretation interp;
  for (std::size_t i = 0; i < kids.size(); ++i) {
    if (kids[i]->name != "interpret")
      fail(Kind::UnexpectedElement, path + "/" + kids[i]->name, "expected <interpret>");
    parse_interpret(*kids[i], path + "/interpret[" + std::to_string(i + 1) + "]", interp);
  }
  return interp;
}

DpProof parse_dp_proof(const Element& el, const std::string& path);

DpComponent parse_component(const Element& el, const std::string& path) {
  auto kids = child_elements(el, path);
  if (kids.empty()) fail(Kind::MissingChild, path, "dps");
  if (kids[0]->name != "dps")
    fail(Kind::UnexpectedElement, path + "/" + kids[0]->name, "expected <dps>");
  if (kids.size() < 2) fail(Kind::MissingChild, path, "realScc");
  if (kids[1]->name != "realScc")
    fail(Kind::UnexpectedElement, path + "/" + kids[1]->name, "expected <realScc>");
  if (kids.size() > 3)
    fail(Kind::UnexpectedElement, path + "/" + kids[3]->name,
         "component takes dps, realScc and an optional subproof");
  DpComponent out;
  out.dps = parse_rules_in(*kids[0], path + "/dps");
  out.real_scc = parse_bool(*kids[1], path + "/realScc");
  if (kids.size() == 3)
    out.sub = std::make_shared<const DpProof>(
        parse_dp_proof(*kids[2], path + "/" + kids[2]->name));
  return out;
}

DpProof parse_dp_proof(const Element& el, const std::string& path) {
  if (el.name == "pIsEmpty") {
    auto kids = child_elements(el, path);
    if (!kids.empty())
      fail(Kind::UnexpectedElement, path + "/" + kids[0]->name, "pIsEmpty has no content");
    return DpProof{PEmpty{}};
  }
  if (el.name == "depGraphProc") {
    auto kids = child_elements(el, path);
    if (kids.empty()) fail(Kind::MissingChild, path, "component");
    DepGraphProc proc;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (kids[i]->name != "component")
        fail(Kind::UnexpectedElement, path + "/" + kids[i]->name, "expected <component>");
      proc.components.push_back(
          parse_component(*kids[i], path + "/component[" + std::to_string(i + 1) + "]"));
    }
    return DpProof{std::move(proc)};
  }
  if (el.name == "redPairProc") {
    auto kids = child_elements(el, path);
    if (kids.size() < 3)
      fail(Kind::MissingChild, path, "redPairProc takes interpretation, dps and a subproof");
    if (kids.size() > 3)
      fail(Kind::UnexpectedElement, path + "/" + kids[3]->name,
           "redPairProc takes interpretation, dps and a subproof");
    if (kids[0]->name != "interpretation")
      fail(Kind::UnexpectedElement, path + "/" + kids[0]->name, "expected <interpretation>");
    if (kids[1]->name != "dps")
      fail(Kind::UnexpectedElement, path + "/" + kids[1]->name, "expected <dps>");
    RedPairProc proc;
    proc.interp = parse_interpretation(*kids[0], path + "/interpretation");
    proc.remaining = parse_rules_in(*kids[1], path + "/dps");
    proc.sub = std::make_shared<const DpProof>(
        parse_dp_proof(*kids[2], path + "/" + kids[2]->name));
    return DpProof{std::move(proc)};
  }
  fail(Kind::Unsupported, path, el.name);
}

Proof parse_trs_proof(const Element& el, const std::string& path) {
  if (el.name == "rIsEmpty") {
    auto kids = child_elements(el, path);
    if (!kids.empty())
      fail(Kind::UnexpectedElement, path + "/" + kids[0]->name, "rIsEmpty has no content");
    return Proof{REmpty{}};
  }
  if (el.name == "ruleRemoval") {
    auto kids = child_elements(el, path);
    if (kids.size() < 3)
      fail(Kind::MissingChild, path, "ruleRemoval takes interpretation, trs and a subproof");
    if (kids.size() > 3)
      fail(Kind::UnexpectedElement, path + "/" + kids[3]->name,
           "ruleRemoval takes interpretation, trs and a subproof");
    if (kids[0]->name != "interpretation")
      fail(Kind::UnexpectedElement, path + "/" + kids[0]->name, "expected <interpretation>");
    if (kids[1]->name != "trs")
      fail(Kind::UnexpectedElement, path + "/" + kids[1]->name, "expected <trs>");
    RuleRemoval step;
    step.interp = parse_interpretation(*kids[0], path + "/interpretation");
    step.remaining = parse_rules_in(*kids[1], path + "/trs");
    step.sub = std::make_shared<const Proof>(parse_trs_proof(*kids[2], path + "/" + kids[2]->name));
    return Proof{std::move(step)};
  }
  if (el.name == "dpTrans") {
    auto kids = child_elements(el, path);
    if (kids.size() < 3)
      fail(Kind::MissingChild, path, "dpTrans takes dps, markedSymbols and a subproof");
    if (kids.size() > 3)
      fail(Kind::UnexpectedElement, path + "/" + kids[3]->name,
           "dpTrans takes dps, markedSymbols and a subproof");
    if (kids[0]->name != "dps")
      fail(Kind::UnexpectedElement, path + "/" + kids[0]->name, "expected <dps>");
    if (kids[1]->name != "markedSymbols")
      fail(Kind::UnexpectedElement, path + "/" + kids[1]->name, "expected <markedSymbols>");
    std::string ms = text_content(*kids[1], path + "/markedSymbols");
    if (ms == "false")
      // Unmarked dependency pairs are a recognizable variant we do not handle.
      fail(Kind::Unsupported, path + "/markedSymbols", "markedSymbols=false");
    if (ms != "true")
      fail(Kind::Invalid, path + "/markedSymbols", "expected true or false, got \"" + ms + "\"");
    DpTrans step;
    step.dps = parse_rules_in(*kids[0], path + "/dps");
    step.sub = std::make_shared<const DpProof>(parse_dp_proof(*kids[2], path + "/" + kids[2]->name));
    return Proof{std::move(step)};
  }
  fail(Kind::Unsupported, path, el.name);
}

Certificate parse_certificate(const Element& root) {
  const std::string path = root.name;
  if (root.name != "certificationProblem")
    fail(Kind::UnexpectedElement, path, "expected <certificationProblem>, got " + root.name);
  auto kids = child_elements(root, path);
  if (kids.empty() || kids[0]->name != "input")
    fail(kids.empty() ? Kind::MissingChild : Kind::UnexpectedElement,
         kids.empty() ? path : path + "/" + kids[0]->name, "expected <input>");
  if (kids.size() < 2) fail(Kind::MissingChild, path, "proof");
  if (kids[1]->name != "proof")
    fail(Kind::UnexpectedElement, path + "/" + kids[1]->name, "expected <proof>");
  if (kids.size() > 2)
    fail(Kind::UnexpectedElement, path + "/" + kids[2]->name,
         "certificationProblem takes input and proof");

  const Element& trs_input = only_child(*kids[0], path + "/input", "trsInput");
  const Element& trs = only_child(trs_input, path + "/input/trsInput", "trs");
  std::vector<Rule> rules = parse_rules_in(trs, path + "/input/trsInput/trs");

  std::string proof_path = path + "/proof";
  auto proof_kids = child_elements(*kids[1], proof_path);
  if (proof_kids.empty()) fail(Kind::MissingChild, proof_path, "a proof step");
  if (proof_kids.size() > 1)
    fail(Kind::UnexpectedElement, proof_path + "/" + proof_kids[1]->name,
         "proof holds exactly one step");
  Proof proof = parse_trs_proof(*proof_kids[0], proof_path + "/" + proof_kids[0]->name);

  auto made = Trs::make(std::move(rules));
  if (!made) fail(Kind::Invalid, path + "/input", made.error().message);

  // Certificate-wide arity consistency, proof rule sets included.
  std::vector<std::vector<Rule>> sets;
  sets.push_back(made.value().rules());
  collect_proof_rules(proof, sets);
  std::vector<Rule> all;
  for (const auto& s : sets) all.insert(all.end(), s.begin(), s.end());
  auto sig = infer_signature(all);
  if (!sig)
    fail(Kind::Invalid, path,
         "symbol " + sig.error().symbol.show() + " used with arities " +
             std::to_string(sig.error().first) + " and " + std::to_string(sig.error().second));
  const Arity& table = sig.value();
  for (const auto& [sym, n] : table) {
    if (!sym.is_sharp()) continue;
    auto it = table.find(sym.base());
    if (it != table.end() && it->second != n)
      fail(Kind::Invalid, path,
           "sharp symbol " + sym.show() + " has arity " + std::to_string(n) + " but " +
               sym.base().show() + " has arity " + std::to_string(it->second));
  }

  return Certificate{std::move(made).value(), std::move(proof)};
}

}  // namespace

Result<Certificate, ParseError> parse_cpf(std::string_view bytes) {
  auto doc = xml::parse_document(bytes);
  if (!doc)
    return ParseError{Kind::XmlMalformed, "", doc.error().message, doc.error().line,
                      doc.error().col};
  try {
    return parse_certificate(doc.value());
  } catch (ParseError& e) {
    return e;
  }
}

}  // namespace termcert
