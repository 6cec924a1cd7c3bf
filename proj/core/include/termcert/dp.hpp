#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "termcert/graph.hpp"
#include "termcert/result.hpp"
#include "termcert/term.hpp"

namespace termcert {

// Symbols that occur at the root of some left-hand side.
std::set<Symbol> defined_symbols(const Trs& R);

struct MarkError {
  enum class Kind { RootIsVariable, AlreadyMarked };
  Kind kind;
};

// Sharp the root symbol; arguments are untouched.
Result<Term, MarkError> mark(const Term& t);
// Inverse of mark on sharp-rooted terms.
std::optional<Term> unmark(const Term& t);

struct DpError {
  std::string message;
};

struct DpPairs {
  // refined drops pairs whose right-hand side subterm already occurs inside
  // an argument of the left-hand side; full keeps every defined-rooted
  // subterm. Certificates may list anything between the two.
  std::vector<Rule> refined;
  std::vector<Rule> full;
};

// Fails if R already contains sharp symbols.
Result<DpPairs, DpError> compute_dps(const Trs& R);

// A DP problem: pairs to connect, rules to rewrite between them.
struct DpProblem {
  std::vector<Rule> dps;
  Trs trs;
};

struct DepGraph {
  std::size_t nodes = 0;
  std::set<std::pair<int, int>> edges;
  friend bool operator==(const DepGraph&, const DepGraph&) = default;
};

// Over-approximation of which pair can follow which: edge (i, j) iff
// cap+ren of dps[i].rhs unifies with dps[j].lhs renamed apart. cap replaces
// defined-rooted proper subterms by fresh variables, ren makes every
// variable occurrence fresh.
DepGraph estimate_graph(std::span<const Rule> dps, const Trs& R);

struct Scc {
  std::vector<int> nodes;
  // A single node with no self-loop contributes no infinite chain.
  bool trivial = false;
  friend bool operator==(const Scc&, const Scc&) = default;
};

// Strongly connected components in dependency-first topological order.
std::vector<Scc> sccs(const DepGraph& g);

}  // namespace termcert
