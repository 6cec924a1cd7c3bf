#pragma once

// Reference implementations used to cross-check library results. Everything
// here favours the most literal algorithm over speed and shares no code with
// the implementations under test beyond the public data types.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "termcert/cpf.hpp"
#include "termcert/poly.hpp"
#include "termcert/term.hpp"

namespace oracles {

using termcert::BigInt;
using termcert::Polynomial;
using termcert::PolyInterpretation;
using termcert::Position;
using termcert::Rule;
using termcert::SymbolInterp;
using termcert::Term;
using termcert::Trs;
using termcert::Var;
using termcert::VarIndexMap;

// ---------- rewriting: position-by-position redex scan ----------

inline void collect_positions(const Term& t, const Position& prefix,
                              std::vector<Position>& out) {
  out.push_back(prefix);
  if (t.is_var()) return;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    Position p = prefix;
    p.push_back(i);
    collect_positions(t.args()[i], p, out);
  }
}

inline bool match_at(const Term& pattern, const Term& subject,
                     std::map<Var, Term>& binding) {
  if (pattern.is_var()) {
    auto [it, fresh] = binding.emplace(pattern.as_var(), subject);
    return fresh || it->second == subject;
  }
  if (subject.is_var() || !(pattern.root() == subject.root()) ||
      pattern.args().size() != subject.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_at(pattern.args()[i], subject.args()[i], binding)) return false;
  return true;
}

inline Term substitute(const std::map<Var, Term>& binding, const Term& t) {
  if (t.is_var()) {
    auto it = binding.find(t.as_var());
    return it == binding.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(substitute(binding, a));
  return Term::fun(t.root(), std::move(args));
}

inline Term get_at(const Term& t, const Position& p, std::size_t from = 0) {
  if (from == p.size()) return t;
  return get_at(t.args()[p[from]], p, from + 1);
}

inline Term put_at(const Term& t, const Position& p, const Term& u, std::size_t from = 0) {
  if (from == p.size()) return u;
  std::vector<Term> args = t.args();
  args[p[from]] = put_at(args[p[from]], p, u, from + 1);
  return Term::fun(t.root(), std::move(args));
}

// Every one-step reduct of t: try every rule at every position.
inline std::set<Term> reducts(const Trs& R, const Term& t) {
  std::vector<Position> positions;
  collect_positions(t, {}, positions);
  std::set<Term> out;
  for (const Position& p : positions) {
    Term sub = get_at(t, p);
    for (const Rule& r : R.rules()) {
      std::map<Var, Term> binding;
      if (match_at(r.lhs, sub, binding))
        out.insert(put_at(t, p, substitute(binding, r.rhs), 0));
    }
  }
  return out;
}

// ---------- graphs: mutual reachability by transitive closure ----------

inline std::vector<std::set<int>> reachability_partition(
    int n, const std::set<std::pair<int, int>>& edges) {
  std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n),
                                       std::vector<bool>(static_cast<std::size_t>(n), false));
  for (auto [u, v] : edges) reach[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;

  std::vector<std::set<int>> classes;
  std::vector<bool> placed(static_cast<std::size_t>(n), false);
  for (int i = 0; i < n; ++i) {
    if (placed[static_cast<std::size_t>(i)]) continue;
    std::set<int> cls{i};
    for (int j = i + 1; j < n; ++j)
      if (reach[i][j] && reach[j][i]) {
        cls.insert(j);
        placed[static_cast<std::size_t>(j)] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

// ---------- polynomials: point evaluation without composition ----------

inline BigInt eval_poly_naive(const Polynomial& p, const std::map<int, BigInt>& alpha) {
  BigInt total = 0;
  for (const auto& [mono, coeff] : p.terms()) {
    BigInt term = coeff;
    for (auto [idx, exp] : mono)
      for (int k = 0; k < exp; ++k) term *= alpha.at(idx);
    total += term;
  }
  return total;
}

// Direct recursive interpretation of a term at a point: children are
// evaluated to numbers first, then each symbol's polynomial is applied to
// those numbers. No polynomial is ever composed.
inline std::optional<BigInt> eval_term_direct(const PolyInterpretation& phi, const Term& t,
                                              const VarIndexMap& vm,
                                              const std::map<int, BigInt>& alpha) {
  if (t.is_var()) {
    auto it = vm.find(t.as_var());
    if (it == vm.end()) return std::nullopt;
    auto av = alpha.find(it->second);
    if (av == alpha.end()) return std::nullopt;
    return av->second;
  }
  const SymbolInterp* e = phi.find(t.root());
  if (!e || e->arity != t.args().size()) return std::nullopt;
  std::map<int, BigInt> point;
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    auto v = eval_term_direct(phi, t.args()[i], vm, alpha);
    if (!v) return std::nullopt;
    point[static_cast<int>(i) + 1] = *v;
  }
  return eval_poly_naive(e->poly, point);
}

// ---------- proof trees: resolve a machine error path to a node ----------

inline std::string proof_node_name(const termcert::Proof& p) {
  if (std::holds_alternative<termcert::REmpty>(p.node)) return "rIsEmpty";
  if (std::holds_alternative<termcert::RuleRemoval>(p.node)) return "ruleRemoval";
  return "dpTrans";
}

inline std::string dp_proof_node_name(const termcert::DpProof& p) {
  if (std::holds_alternative<termcert::PEmpty>(p.node)) return "pIsEmpty";
  if (std::holds_alternative<termcert::DepGraphProc>(p.node)) return "depGraphProc";
  return "redPairProc";
}

// Follows subproof indices from the proof root and names the node reached,
// or nullopt if the path does not denote a node of the tree.
inline std::optional<std::string> node_name_at(const termcert::Proof& root,
                                               const std::vector<int>& path) {
  const termcert::Proof* p = &root;
  const termcert::DpProof* dp = nullptr;
  for (int idx : path) {
    if (p) {
      if (const auto* rr = std::get_if<termcert::RuleRemoval>(&p->node)) {
        if (idx != 0 || !rr->sub) return std::nullopt;
        p = rr->sub.get();
      } else if (const auto* dt = std::get_if<termcert::DpTrans>(&p->node)) {
        if (idx != 0 || !dt->sub) return std::nullopt;
        dp = dt->sub.get();
        p = nullptr;
      } else {
        return std::nullopt;
      }
    } else {
      if (const auto* g = std::get_if<termcert::DepGraphProc>(&dp->node)) {
        if (idx < 0 || static_cast<std::size_t>(idx) >= g->components.size() ||
            !g->components[static_cast<std::size_t>(idx)].sub)
          return std::nullopt;
        dp = g->components[static_cast<std::size_t>(idx)].sub.get();
      } else if (const auto* rp = std::get_if<termcert::RedPairProc>(&dp->node)) {
        if (idx != 0 || !rp->sub) return std::nullopt;
        dp = rp->sub.get();
      } else {
        return std::nullopt;
      }
    }
  }
  return p ? proof_node_name(*p) : dp_proof_node_name(*dp);
}

}  // namespace oracles
