#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "termcert/result.hpp"

namespace termcert {

// A function symbol: a plain name, a sharp-marked copy (written f#), or a
// labeled symbol. Labels are carried as an opaque payload; nothing here gives
// them meaning. Symbols are immutable and cheap to copy.
class Symbol {
 public:
  enum class Kind { Name, Sharp, Labeled };

  static Symbol name(std::string id);
  static Symbol sharp(Symbol base);
  static Symbol labeled(Symbol base, std::string label);

  Kind kind() const;
  bool is_name() const { return kind() == Kind::Name; }
  bool is_sharp() const { return kind() == Kind::Sharp; }
  bool is_labeled() const { return kind() == Kind::Labeled; }

  const std::string& id() const;     // Kind::Name only
  const Symbol& base() const;        // Kind::Sharp and Kind::Labeled
  const std::string& label() const;  // Kind::Labeled only

  // Number of Sharp constructors in the chain, looking through labels.
  int sharp_depth() const;
  // True if any Labeled constructor occurs in the chain.
  bool has_label() const;

  std::string show() const;

  friend bool operator==(const Symbol& a, const Symbol& b);
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b);

 private:
  struct Rep;
  explicit Symbol(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct Symbol::Rep {
  Kind kind;
  std::string text;            // id for Name, label payload for Labeled
  std::optional<Symbol> base;  // engaged for Sharp and Labeled
};

inline Symbol::Kind Symbol::kind() const { return rep_->kind; }

struct Var {
  std::string name;
  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;
};

// First-order term. Immutable; copies share structure.
class Term {
 public:
  static Term var(Var v);
  static Term var(std::string name);
  static Term fun(Symbol f, std::vector<Term> args = {});

  bool is_var() const;
  const Var& as_var() const;             // variable only
  const Symbol& root() const;            // non-variable only
  const std::vector<Term>& args() const; // non-variable only

  std::string show() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

 private:
  struct Fun {
    Symbol sym;
    std::vector<Term> args;
  };
  struct Rep {
    std::variant<Var, Fun> node;
  };
  explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  std::shared_ptr<const Rep> rep_;
};

struct Rule {
  Term lhs;
  Term rhs;
  friend bool operator==(const Rule&, const Rule&) = default;
  friend auto operator<=>(const Rule&, const Rule&) = default;
};

std::string show(const Rule& r);

// Positions select subterms by argument index, root = empty.
using Position = std::vector<std::size_t>;

using Arity = std::map<Symbol, std::size_t>;

class Substitution {
 public:
  Substitution() = default;
  explicit Substitution(std::map<Var, Term> mapping) : map_(std::move(mapping)) {}

  const Term* lookup(const Var& v) const;
  void bind(Var v, Term t);  // overwrites any existing binding
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<Var, Term>& mapping() const { return map_; }

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  std::map<Var, Term> map_;
};

Term apply_subst(const Substitution& s, const Term& t);

// apply_subst(compose(first, then), t) == apply_subst(then, apply_subst(first, t))
Substitution compose(const Substitution& first, const Substitution& then);

std::optional<Term> subterm_at(const Term& t, const Position& p);
std::optional<Term> replace_at(const Term& t, const Position& p, const Term& u);

// Minimal matcher: a substitution s over vars(pattern) with
// apply_subst(s, pattern) == subject, if one exists.
std::optional<Substitution> match_term(const Term& pattern, const Term& subject);

// Most general unifier, idempotent, with occurs check.
std::optional<Substitution> unify(const Term& a, const Term& b);

std::set<Var> vars(const Term& t);
std::vector<Var> vars_in_order(const Term& t);  // first occurrence, no duplicates
bool occurs(const Var& v, const Term& t);
bool is_subterm(const Term& sub, const Term& t);

bool contains_sharp(const Term& t);
bool contains_label(const Term& t);
int max_sharp_depth(const Term& t);

struct ArityConflict {
  Symbol symbol;
  std::size_t first;
  std::size_t second;
};

Result<Arity, ArityConflict> infer_signature(std::span<const Rule> rules);

struct TrsError {
  enum class Kind { VariableLhs, UnboundRhsVar, ArityConflict };
  Kind kind;
  std::string message;
};

// A validated rewrite system: no variable left-hand sides, right-hand side
// variables bound on the left, one consistent arity per symbol.
class Trs {
 public:
  static Result<Trs, TrsError> make(std::vector<Rule> rules);

  const std::vector<Rule>& rules() const { return rules_; }
  const Arity& arity() const { return arity_; }

  friend bool operator==(const Trs&, const Trs&) = default;

 private:
  Trs(std::vector<Rule> rules, Arity arity)
      : rules_(std::move(rules)), arity_(std::move(arity)) {}
  std::vector<Rule> rules_;
  Arity arity_;
};

// All one-step reducts of t, at any position by any rule. Sorted, no
// duplicates.
std::vector<Term> rewrite_step(const Trs& R, const Term& t);

}  // namespace termcert
