#include "termcert/term.hpp"

#include <algorithm>
#include <cassert>

namespace termcert {

Symbol Symbol::name(std::string id) {
  return Symbol(std::make_shared<const Rep>(Rep{Kind::Name, std::move(id), std::nullopt}));
}

Symbol Symbol::sharp(Symbol base) {
  return Symbol(std::make_shared<const Rep>(Rep{Kind::Sharp, {}, std::move(base)}));
}

Symbol Symbol::labeled(Symbol base, std::string label) {
  return Symbol(std::make_shared<const Rep>(Rep{Kind::Labeled, std::move(label), std::move(base)}));
}

const std::string& Symbol::id() const {
  assert(is_name());
  return rep_->text;
}

const Symbol& Symbol::base() const {
  assert(!is_name());
  return *rep_->base;
}

const std::string& Symbol::label() const {
  assert(is_labeled());
  return rep_->text;
}

int Symbol::sharp_depth() const {
  int d = 0;
  for (const Symbol* s = this; !s->is_name(); s = &s->base())
    if (s->is_sharp()) ++d;
  return d;
}

bool Symbol::has_label() const {
  for (const Symbol* s = this; !s->is_name(); s = &s->base())
    if (s->is_labeled()) return true;
  return false;
}

std::string Symbol::show() const {
  switch (kind()) {
    case Kind::Name:
      return id();
    case Kind::Sharp:
      return base().show() + "#";
    case Kind::Labeled:
      return base().show() + "{" + label() + "}";
  }
  return {};
}

bool operator==(const Symbol& a, const Symbol& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Symbol::Kind::Name:
      return a.id().compare(b.id()) <=> 0;
    case Symbol::Kind::Sharp:
      return a.base() <=> b.base();
    case Symbol::Kind::Labeled:
      if (auto c = a.base() <=> b.base(); c != 0) return c;
      return a.label().compare(b.label()) <=> 0;
  }
  return std::strong_ordering::equal;
}

Term Term::var(Var v) {
  return Term(std::make_shared<const Rep>(Rep{std::move(v)}));
}

Term Term::var(std::string name) { return var(Var{std::move(name)}); }

Term Term::fun(Symbol f, std::vector<Term> args) {
  return Term(std::make_shared<const Rep>(Rep{Fun{std::move(f), std::move(args)}}));
}

bool Term::is_var() const { return rep_->node.index() == 0; }

const Var& Term::as_var() const {
  assert(is_var());
  return std::get<Var>(rep_->node);
}

const Symbol& Term::root() const {
  assert(!is_var());
  return std::get<Fun>(rep_->node).sym;
}

const std::vector<Term>& Term::args() const {
  assert(!is_var());
  return std::get<Fun>(rep_->node).args;
}

std::string Term::show() const {
  if (is_var()) return as_var().name;
  std::string out = root().show();
  if (args().empty()) return out;
  out += "(";
  for (std::size_t i = 0; i < args().size(); ++i) {
    if (i) out += ",";
    out += args()[i].show();
  }
  out += ")";
  return out;
}

bool operator==(const Term& a, const Term& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  if (auto c = a.is_var() <=> b.is_var(); c != 0) return c;
  if (a.is_var()) return a.as_var() <=> b.as_var();
  if (auto c = a.root() <=> b.root(); c != 0) return c;
  if (auto c = a.args().size() <=> b.args().size(); c != 0) return c;
  for (std::size_t i = 0; i < a.args().size(); ++i)
    if (auto c = a.args()[i] <=> b.args()[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::string show(const Rule& r) { return r.lhs.show() + " -> " + r.rhs.show(); }

const Term* Substitution::lookup(const Var& v) const {
  auto it = map_.find(v);
  return it == map_.end() ? nullptr : &it->second;
}

void Substitution::bind(Var v, Term t) { map_.insert_or_assign(std::move(v), std::move(t)); }

Term apply_subst(const Substitution& s, const Term& t) {
  if (t.is_var()) {
    const Term* bound = s.lookup(t.as_var());
    return bound ? *bound : t;
  }
  if (s.empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(apply_subst(s, a));
  return Term::fun(t.root(), std::move(args));
}

Substitution compose(const Substitution& first, const Substitution& then) {
  Substitution out;
  for (const auto& [v, t] : first.mapping()) out.bind(v, apply_subst(then, t));
  for (const auto& [v, t] : then.mapping())
    if (!first.lookup(v)) out.bind(v, t);
  return out;
}

std::optional<Term> subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (std::size_t i : p) {
    if (cur->is_var() || i >= cur->args().size()) return std::nullopt;
    cur = &cur->args()[i];
  }
  return *cur;
}

namespace {

std::optional<Term> replace_at_from(const Term& t, const Position& p, std::size_t k,
                                    const Term& u) {
  if (k == p.size()) return u;
  if (t.is_var() || p[k] >= t.args().size()) return std::nullopt;
  auto sub = replace_at_from(t.args()[p[k]], p, k + 1, u);
  if (!sub) return std::nullopt;
  std::vector<Term> args = t.args();
  args[p[k]] = *std::move(sub);
  return Term::fun(t.root(), std::move(args));
}

bool match_into(const Term& pattern, const Term& subject, Substitution& s) {
  if (pattern.is_var()) {
    if (const Term* bound = s.lookup(pattern.as_var())) return *bound == subject;
    s.bind(pattern.as_var(), subject);
    return true;
  }
  if (subject.is_var() || pattern.root() != subject.root() ||
      pattern.args().size() != subject.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_into(pattern.args()[i], subject.args()[i], s)) return false;
  return true;
}

}  // namespace

std::optional<Term> replace_at(const Term& t, const Position& p, const Term& u) {
  return replace_at_from(t, p, 0, u);
}

std::optional<Substitution> match_term(const Term& pattern, const Term& subject) {
  Substitution s;
  if (!match_into(pattern, subject, s)) return std::nullopt;
  return s;
}

std::optional<Substitution> unify(const Term& a, const Term& b) {
  std::vector<std::pair<Term, Term>> work{{a, b}};
  Substitution s;
  while (!work.empty()) {
    auto [l, r] = std::move(work.back());
    work.pop_back();
    Term x = apply_subst(s, l);
    Term y = apply_subst(s, r);
    if (x == y) continue;
    if (!x.is_var() && y.is_var()) std::swap(x, y);
    if (x.is_var()) {
      if (occurs(x.as_var(), y)) return std::nullopt;
      // Keep s idempotent: eliminate the new variable from every range term.
      Substitution step;
      step.bind(x.as_var(), y);
      Substitution next;
      for (const auto& [v, t] : s.mapping()) next.bind(v, apply_subst(step, t));
      next.bind(x.as_var(), y);
      s = std::move(next);
      continue;
    }
    if (x.root() != y.root() || x.args().size() != y.args().size()) return std::nullopt;
    for (std::size_t i = 0; i < x.args().size(); ++i)
      work.emplace_back(x.args()[i], y.args()[i]);
  }
  return s;
}

namespace {

void collect_vars_in_order(const Term& t, std::vector<Var>& out, std::set<Var>& seen) {
  if (t.is_var()) {
    if (seen.insert(t.as_var()).second) out.push_back(t.as_var());
    return;
  }
  for (const Term& a : t.args()) collect_vars_in_order(a, out, seen);
}

}  // namespace

std::vector<Var> vars_in_order(const Term& t) {
  std::vector<Var> out;
  std::set<Var> seen;
  collect_vars_in_order(t, out, seen);
  return out;
}

std::set<Var> vars(const Term& t) {
  std::vector<Var> v = vars_in_order(t);
  return {v.begin(), v.end()};
}

bool occurs(const Var& v, const Term& t) {
  if (t.is_var()) return t.as_var() == v;
  for (const Term& a : t.args())
    if (occurs(v, a)) return true;
  return false;
}

bool is_subterm(const Term& sub, const Term& t) {
  if (t == sub) return true;
  if (t.is_var()) return false;
  for (const Term& a : t.args())
    if (is_subterm(sub, a)) return true;
  return false;
}

bool contains_sharp(const Term& t) { return max_sharp_depth(t) > 0; }

bool contains_label(const Term& t) {
  if (t.is_var()) return false;
  if (t.root().has_label()) return true;
  for (const Term& a : t.args())
    if (contains_label(a)) return true;
  return false;
}

int max_sharp_depth(const Term& t) {
  if (t.is_var()) return 0;
  int d = t.root().sharp_depth();
  for (const Term& a : t.args()) d = std::max(d, max_sharp_depth(a));
  return d;
}

namespace {

bool record_arities(const Term& t, Arity& arity, std::optional<ArityConflict>& conflict) {
  if (t.is_var()) return true;
  auto [it, fresh] = arity.emplace(t.root(), t.args().size());
  if (!fresh && it->second != t.args().size()) {
    conflict = ArityConflict{t.root(), it->second, t.args().size()};
    return false;
  }
  for (const Term& a : t.args())
    if (!record_arities(a, arity, conflict)) return false;
  return true;
}

}  // namespace

Result<Arity, ArityConflict> infer_signature(std::span<const Rule> rules) {
  Arity arity;
  std::optional<ArityConflict> conflict;
  for (const Rule& r : rules)
    if (!record_arities(r.lhs, arity, conflict) || !record_arities(r.rhs, arity, conflict))
      return *conflict;
  return arity;
}

Result<Trs, TrsError> Trs::make(std::vector<Rule> rules) {
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Rule& r = rules[i];
    if (r.lhs.is_var())
      return TrsError{TrsError::Kind::VariableLhs,
                      "rule " + std::to_string(i + 1) + ": left-hand side is a variable"};
    std::set<Var> lhs_vars = vars(r.lhs);
    for (const Var& v : vars_in_order(r.rhs))
      if (!lhs_vars.contains(v))
        return TrsError{TrsError::Kind::UnboundRhsVar,
                        "rule " + std::to_string(i + 1) + ": variable " + v.name +
                            " occurs only on the right-hand side"};
  }
  auto sig = infer_signature(rules);
  if (!sig) {
    const ArityConflict& c = sig.error();
    return TrsError{TrsError::Kind::ArityConflict,
                    "symbol " + c.symbol.show() + " used with arities " +
                        std::to_string(c.first) + " and " + std::to_string(c.second)};
  }
  return Trs(std::move(rules), std::move(sig).value());
}

std::vector<Term> rewrite_step(const Trs& R, const Term& t) {
  std::set<Term> out;
  for (const Rule& rule : R.rules())
    if (auto s = match_term(rule.lhs, t)) out.insert(apply_subst(*s, rule.rhs));
  if (!t.is_var()) {
    const std::vector<Term>& as = t.args();
    for (std::size_t i = 0; i < as.size(); ++i)
      for (Term& u : rewrite_step(R, as[i])) {
        std::vector<Term> next = as;
        next[i] = std::move(u);
        out.insert(Term::fun(t.root(), std::move(next)));
      }
  }
  return {out.begin(), out.end()};
}

}  // namespace termcert
