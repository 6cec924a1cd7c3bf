#include "termcert/cpf.hpp"

namespace termcert {

std::string describe(const ParseError& e) {
  std::string out;
  switch (e.kind) {
    case ParseError::Kind::XmlMalformed: out = "malformed XML"; break;
    case ParseError::Kind::UnexpectedElement: out = "unexpected content"; break;
    case ParseError::Kind::MissingChild: out = "missing child"; break;
    case ParseError::Kind::BadInteger: out = "bad integer"; break;
    case ParseError::Kind::Unsupported: out = "unsupported"; break;
    case ParseError::Kind::UnresolvedRef: out = "unresolved reference"; break;
    case ParseError::Kind::Invalid: out = "invalid"; break;
  }
  if (!e.path.empty()) out += " at " + e.path;
  if (!e.message.empty()) out += ": " + e.message;
  if (e.line) out += " (line " + std::to_string(e.line) + ", column " + std::to_string(e.col) + ")";
  return out;
}

namespace {

bool same_sub(const std::shared_ptr<const Proof>& a, const std::shared_ptr<const Proof>& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

bool same_sub(const std::shared_ptr<const DpProof>& a, const std::shared_ptr<const DpProof>& b) {
  if (!a || !b) return !a && !b;
  return *a == *b;
}

}  // namespace

bool operator==(const Proof& a, const Proof& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* ra = std::get_if<RuleRemoval>(&a.node)) {
    const auto& rb = std::get<RuleRemoval>(b.node);
    return ra->interp == rb.interp && ra->remaining == rb.remaining && same_sub(ra->sub, rb.sub);
  }
  if (const auto* da = std::get_if<DpTrans>(&a.node)) {
    const auto& db = std::get<DpTrans>(b.node);
    return da->dps == db.dps && same_sub(da->sub, db.sub);
  }
  return true;  // REmpty
}

bool operator==(const DpProof& a, const DpProof& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* ga = std::get_if<DepGraphProc>(&a.node)) {
    const auto& gb = std::get<DepGraphProc>(b.node);
    if (ga->components.size() != gb.components.size()) return false;
    for (std::size_t i = 0; i < ga->components.size(); ++i) {
      const DpComponent& ca = ga->components[i];
      const DpComponent& cb = gb.components[i];
      if (ca.dps != cb.dps || ca.real_scc != cb.real_scc || !same_sub(ca.sub, cb.sub))
        return false;
    }
    return true;
  }
  if (const auto* ra = std::get_if<RedPairProc>(&a.node)) {
    const auto& rb = std::get<RedPairProc>(b.node);
    return ra->interp == rb.interp && ra->remaining == rb.remaining && same_sub(ra->sub, rb.sub);
  }
  return true;  // PEmpty
}

bool operator==(const Certificate& a, const Certificate& b) {
  return a.input == b.input && a.proof == b.proof;
}

namespace {

void collect_dp_proof_rules(const DpProof& p, std::vector<std::vector<Rule>>& out) {
  if (const auto* g = std::get_if<DepGraphProc>(&p.node)) {
    for (const DpComponent& c : g->components) {
      out.push_back(c.dps);
      if (c.sub) collect_dp_proof_rules(*c.sub, out);
    }
  } else if (const auto* r = std::get_if<RedPairProc>(&p.node)) {
    out.push_back(r->remaining);
    if (r->sub) collect_dp_proof_rules(*r->sub, out);
  }
}

}  // namespace

void collect_proof_rules(const Proof& p, std::vector<std::vector<Rule>>& out) {
  if (const auto* r = std::get_if<RuleRemoval>(&p.node)) {
    out.push_back(r->remaining);
    if (r->sub) collect_proof_rules(*r->sub, out);
  } else if (const auto* d = std::get_if<DpTrans>(&p.node)) {
    out.push_back(d->dps);
    if (d->sub) collect_dp_proof_rules(*d->sub, out);
  }
}

}  // namespace termcert
