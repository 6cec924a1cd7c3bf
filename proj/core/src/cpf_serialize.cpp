#include <string>

#include "termcert/cpf.hpp"

namespace termcert {

namespace {

class Writer {
 public:
  void open(const std::string& tag) {
    line("<" + tag + ">");
    ++depth_;
  }
  void close(const std::string& tag) {
    --depth_;
    line("</" + tag + ">");
  }
  void leaf(const std::string& tag, const std::string& text) {
    line("<" + tag + ">" + escaped(text) + "</" + tag + ">");
  }
  void empty(const std::string& tag) { line("<" + tag + "/>"); }
  void raw(const std::string& s) { line(s); }

  std::string take() { return std::move(out_); }

 private:
  void line(const std::string& s) {
    out_.append(2 * depth_, ' ');
    out_ += s;
    out_ += "\n";
  }
  static std::string escaped(const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        default: out += c;
      }
    }
    return out;
  }

  std::string out_;
  int depth_ = 0;
};

void write_symbol(Writer& w, const Symbol& s) {
  switch (s.kind()) {
    case Symbol::Kind::Name:
      w.leaf("name", s.id());
      break;
    case Symbol::Kind::Sharp:
      w.open("sharp");
      write_symbol(w, s.base());
      w.close("sharp");
      break;
    case Symbol::Kind::Labeled:
      w.open("labeledSymbol");
      write_symbol(w, s.base());
      w.raw(s.label());  // opaque subtree, emitted verbatim
      w.close("labeledSymbol");
      break;
  }
}

void write_term(Writer& w, const Term& t) {
  if (t.is_var()) {
    w.leaf("var", t.as_var().name);
    return;
  }
  w.open("funapp");
  write_symbol(w, t.root());
  for (const Term& a : t.args()) {
    w.open("arg");
    write_term(w, a);
    w.close("arg");
  }
  w.close("funapp");
}

void write_rules(Writer& w, const std::vector<Rule>& rules) {
  w.open("rules");
  for (const Rule& r : rules) {
    w.open("rule");
    w.open("lhs");
    write_term(w, r.lhs);
    w.close("lhs");
    w.open("rhs");
    write_term(w, r.rhs);
    w.close("rhs");
    w.close("rule");
  }
  w.close("rules");
}

void write_polynomial(Writer& w, const Polynomial& p) {
  w.open("polynomial");
  if (p.is_zero()) {
    w.empty("sum");
  } else {
    w.open("sum");
    for (const auto& [m, c] : p.terms()) {
      w.open("product");
      w.open("coefficient");
      w.leaf("integer", c.str());
      w.close("coefficient");
      for (const auto& [idx, e] : m)
        for (int k = 0; k < e; ++k) w.leaf("variable", std::to_string(idx));
      w.close("product");
    }
    w.close("sum");
  }
  w.close("polynomial");
}

void write_interpretation(Writer& w, const PolyInterpretation& interp) {
  w.open("interpretation");
  for (const auto& [sym, e] : interp.assignments()) {
    w.open("interpret");
    write_symbol(w, sym);
    w.leaf("arity", std::to_string(e.arity));
    write_polynomial(w, e.poly);
    w.close("interpret");
  }
  w.close("interpretation");
}

void write_dp_proof(Writer& w, const DpProof& p) {
  if (std::holds_alternative<PEmpty>(p.node)) {
    w.empty("pIsEmpty");
    return;
  }
  if (const auto* g = std::get_if<DepGraphProc>(&p.node)) {
    w.open("depGraphProc");
    for (const DpComponent& c : g->components) {
      w.open("component");
      w.open("dps");
      write_rules(w, c.dps);
      w.close("dps");
      w.leaf("realScc", c.real_scc ? "true" : "false");
      if (c.sub) write_dp_proof(w, *c.sub);
      w.close("component");
    }
    w.close("depGraphProc");
    return;
  }
  const auto& r = std::get<RedPairProc>(p.node);
  w.open("redPairProc");
  write_interpretation(w, r.interp);
  w.open("dps");
  write_rules(w, r.remaining);
  w.close("dps");
  write_dp_proof(w, *r.sub);
  w.close("redPairProc");
}

void write_proof(Writer& w, const Proof& p) {
  if (std::holds_alternative<REmpty>(p.node)) {
    w.empty("rIsEmpty");
    return;
  }
  if (const auto* r = std::get_if<RuleRemoval>(&p.node)) {
    w.open("ruleRemoval");
    write_interpretation(w, r->interp);
    w.open("trs");
    write_rules(w, r->remaining);
    w.close("trs");
    write_proof(w, *r->sub);
    w.close("ruleRemoval");
    return;
  }
  const auto& d = std::get<DpTrans>(p.node);
  w.open("dpTrans");
  w.open("dps");
  write_rules(w, d.dps);
  w.close("dps");
  w.leaf("markedSymbols", "true");
  write_dp_proof(w, *d.sub);
  w.close("dpTrans");
}

}  // namespace

std::string serialize_cpf(const Certificate& c) {
  Writer w;
  w.raw("<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
  w.open("certificationProblem");
  w.open("input");
  w.open("trsInput");
  w.open("trs");
  write_rules(w, c.input.rules());
  w.close("trs");
  w.close("trsInput");
  w.close("input");
  w.open("proof");
  write_proof(w, c.proof);
  w.close("proof");
  w.close("certificationProblem");
  return w.take();
}

}  // namespace termcert
