#include "termcert/dp.hpp"

#include <algorithm>
#include <string>

namespace termcert {

std::set<Symbol> defined_symbols(const Trs& R) {
  std::set<Symbol> out;
  for (const Rule& r : R.rules()) out.insert(r.lhs.root());
  return out;
}

Result<Term, MarkError> mark(const Term& t) {
  if (t.is_var()) return MarkError{MarkError::Kind::RootIsVariable};
  if (t.root().sharp_depth() > 0) return MarkError{MarkError::Kind::AlreadyMarked};
  return Term::fun(Symbol::sharp(t.root()), t.args());
}

std::optional<Term> unmark(const Term& t) {
  if (t.is_var() || !t.root().is_sharp()) return std::nullopt;
  return Term::fun(t.root().base(), t.args());
}

namespace {

void defined_subterms(const Term& t, const std::set<Symbol>& defined,
                      std::vector<Term>& out) {
  if (t.is_var()) return;
  if (defined.contains(t.root())) out.push_back(t);
  for (const Term& a : t.args()) defined_subterms(a, defined, out);
}

void push_unique(std::vector<Rule>& rules, const Rule& r) {
  if (std::find(rules.begin(), rules.end(), r) == rules.end()) rules.push_back(r);
}

}  // namespace

Result<DpPairs, DpError> compute_dps(const Trs& R) {
  for (const Rule& r : R.rules())
    if (contains_sharp(r.lhs) || contains_sharp(r.rhs))
      return DpError{"system already contains sharp symbols: " + show(r)};

  const std::set<Symbol> defined = defined_symbols(R);
  DpPairs out;
  for (const Rule& r : R.rules()) {
    std::vector<Term> subs;
    defined_subterms(r.rhs, defined, subs);
    for (const Term& s : subs) {
      Rule dp{std::move(mark(r.lhs)).value(), std::move(mark(s)).value()};
      push_unique(out.full, dp);
      bool inside_lhs_arg = false;
      for (const Term& a : r.lhs.args())
        if (is_subterm(s, a)) {
          inside_lhs_arg = true;
          break;
        }
      if (!inside_lhs_arg) push_unique(out.refined, dp);
    }
  }
  return out;
}

DepGraph estimate_graph(std::span<const Rule> dps, const Trs& R) {
  const std::set<Symbol> defined = defined_symbols(R);
  DepGraph g{dps.size(), {}};

  int fresh = 0;
  // Below the root, defined-rooted subterms and variable occurrences become
  // fresh, pairwise distinct variables.
  auto capren = [&](auto&& self, const Term& t) -> Term {
    if (t.is_var() || defined.contains(t.root()))
      return Term::var("_cap" + std::to_string(fresh++));
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(self(self, a));
    return Term::fun(t.root(), std::move(args));
  };

  std::vector<Term> capped;
  capped.reserve(dps.size());
  for (const Rule& dp : dps) {
    if (dp.rhs.is_var()) {
      capped.push_back(Term::var("_cap" + std::to_string(fresh++)));
      continue;
    }
    std::vector<Term> args;
    args.reserve(dp.rhs.args().size());
    for (const Term& a : dp.rhs.args()) args.push_back(capren(capren, a));
    capped.push_back(Term::fun(dp.rhs.root(), std::move(args)));
  }

  std::vector<Term> renamed;
  renamed.reserve(dps.size());
  for (const Rule& dp : dps) {
    Substitution ren;
    for (const Var& v : vars_in_order(dp.lhs))
      ren.bind(v, Term::var("_lhs" + std::to_string(fresh++)));
    renamed.push_back(apply_subst(ren, dp.lhs));
  }

  for (std::size_t i = 0; i < dps.size(); ++i)
    for (std::size_t j = 0; j < dps.size(); ++j)
      if (unify(capped[i], renamed[j]))
        g.edges.emplace(static_cast<int>(i), static_cast<int>(j));
  return g;
}

std::vector<Scc> sccs(const DepGraph& g) {
  auto comps = condensation_in_topo_order(static_cast<int>(g.nodes), g.edges);
  std::vector<Scc> out;
  out.reserve(comps.size());
  for (std::vector<int>& c : comps) {
    bool trivial = c.size() == 1 && !g.edges.contains({c[0], c[0]});
    out.push_back(Scc{std::move(c), trivial});
  }
  return out;
}

}  // namespace termcert
