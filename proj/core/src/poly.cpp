#include "termcert/poly.hpp"

#include <algorithm>
#include <cassert>

namespace termcert {

Polynomial Polynomial::constant(BigInt c) { return monomial({}, std::move(c)); }

Polynomial Polynomial::variable(int index) {
  assert(index >= 1);
  return monomial({{index, 1}}, 1);
}

Polynomial Polynomial::monomial(Monomial m, BigInt c) {
  Polynomial p;
  if (c != 0) {
    assert(std::all_of(m.begin(), m.end(), [](const auto& ve) { return ve.second > 0; }));
    p.terms_.emplace(std::move(m), std::move(c));
  }
  return p;
}

int Polynomial::max_var_index() const {
  int mx = 0;
  for (const auto& [m, c] : terms_)
    if (!m.empty()) mx = std::max(mx, m.rbegin()->first);
  return mx;
}

BigInt Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? BigInt(0) : it->second;
}

std::string Polynomial::show() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string vars;
    for (const auto& [idx, e] : m) {
      if (!vars.empty()) vars += "*";
      vars += "X" + std::to_string(idx);
      if (e > 1) vars += "^" + std::to_string(e);
    }
    if (vars.empty())
      out += c.str();
    else if (c == 1)
      out += vars;
    else if (c == -1)
      out += "-" + vars;
    else
      out += c.str() + "*" + vars;
  }
  return out;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  Polynomial out = a;
  for (const auto& [m, c] : b.terms_) {
    auto [it, fresh] = out.terms_.emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) out.terms_.erase(it);
    }
  }
  return out;
}

Polynomial poly_neg(const Polynomial& a) {
  Polynomial out = a;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
  return poly_add(a, poly_neg(b));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (const auto& [idx, e] : mb) m[idx] += e;
      auto [it, fresh] = out.terms_.emplace(std::move(m), ca * cb);
      if (!fresh) {
        it->second += ca * cb;
        if (it->second == 0) out.terms_.erase(it);
      }
    }
  return out;
}

Polynomial poly_pow(const Polynomial& a, int e) {
  assert(e >= 0);
  Polynomial out = Polynomial::constant(1);
  for (int i = 0; i < e; ++i) out = poly_mul(out, a);
  return out;
}

Polynomial poly_compose(const Polynomial& p, std::span<const Polynomial> args) {
  assert(p.max_var_index() <= static_cast<int>(args.size()));
  Polynomial out;
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(c);
    for (const auto& [idx, e] : m) term = poly_mul(term, poly_pow(args[idx - 1], e));
    out = poly_add(out, term);
  }
  return out;
}

BigInt eval(const Polynomial& p, const std::map<int, BigInt>& alpha) {
  BigInt out = 0;
  for (const auto& [m, c] : p.terms()) {
    BigInt term = c;
    for (const auto& [idx, e] : m) {
      auto it = alpha.find(idx);
      assert(it != alpha.end());
      term *= boost::multiprecision::pow(it->second, static_cast<unsigned>(e));
    }
    out += term;
  }
  return out;
}

bool all_coefficients_nonneg(const Polynomial& p) {
  for (const auto& [m, c] : p.terms())
    if (c < 0) return false;
  return true;
}

bool check_monotone_strict(const Polynomial& p, std::size_t n) {
  if (!all_coefficients_nonneg(p)) return false;
  for (std::size_t i = 1; i <= n; ++i)
    if (p.linear_coefficient(static_cast<int>(i)) < 1) return false;
  return true;
}

bool check_monotone_weak(const Polynomial& p) { return all_coefficients_nonneg(p); }

bool check_gt(const Polynomial& p, const Polynomial& q) {
  return all_coefficients_nonneg(poly_sub(poly_sub(p, q), Polynomial::constant(1)));
}

bool check_ge(const Polynomial& p, const Polynomial& q) {
  return all_coefficients_nonneg(poly_sub(p, q));
}

bool PolyInterpretation::assign(Symbol f, std::size_t arity, Polynomial p) {
  return map_.emplace(std::move(f), SymbolInterp{arity, std::move(p)}).second;
}

const SymbolInterp* PolyInterpretation::find(const Symbol& f) const {
  auto it = map_.find(f);
  return it == map_.end() ? nullptr : &it->second;
}

VarIndexMap rule_var_indices(const Rule& r) {
  VarIndexMap out;
  int next = 1;
  for (const Var& v : vars_in_order(r.lhs)) out.emplace(v, next++);
  return out;
}

Result<Polynomial, InterpError> interpret_term(const PolyInterpretation& phi, const Term& t,
                                               const VarIndexMap& varmap) {
  if (t.is_var()) {
    auto it = varmap.find(t.as_var());
    if (it == varmap.end())
      return InterpError{InterpError::Kind::UnboundVariable,
                         "variable " + t.as_var().name + " has no index"};
    return Polynomial::variable(it->second);
  }
  const SymbolInterp* e = phi.find(t.root());
  if (!e)
    return InterpError{InterpError::Kind::UnassignedSymbol,
                       "no interpretation for symbol " + t.root().show()};
  if (e->arity != t.args().size())
    return InterpError{InterpError::Kind::ArityMismatch,
                       "symbol " + t.root().show() + " interpreted at arity " +
                           std::to_string(e->arity) + " but used with " +
                           std::to_string(t.args().size()) + " arguments"};
  if (e->poly.max_var_index() > static_cast<int>(e->arity))
    return InterpError{InterpError::Kind::IndexOutOfRange,
                       "interpretation of " + t.root().show() + " mentions X" +
                           std::to_string(e->poly.max_var_index()) +
                           " beyond its arity " + std::to_string(e->arity)};
  std::vector<Polynomial> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) {
    auto sub = interpret_term(phi, a, varmap);
    if (!sub) return sub.error();
    args.push_back(std::move(sub).value());
  }
  return poly_compose(e->poly, args);
}

}  // namespace termcert
