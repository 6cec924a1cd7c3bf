#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "termcert/result.hpp"
#include "termcert/term.hpp"

namespace termcert {

using BigInt = boost::multiprecision::cpp_int;

// Map from variable index (1-based) to exponent. Exponents are positive; the
// empty map is the constant monomial.
using Monomial = std::map<int, int>;

// Sparse multivariate polynomial over arbitrary-precision integers, kept
// canonical: no zero coefficients, no zero exponents.
class Polynomial {
 public:
  Polynomial() = default;  // zero
  static Polynomial constant(BigInt c);
  static Polynomial variable(int index);  // X_index, index >= 1
  static Polynomial monomial(Monomial m, BigInt c);

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, BigInt>& terms() const { return terms_; }

  int max_var_index() const;  // 0 when no variable occurs
  BigInt coefficient(const Monomial& m) const;
  BigInt constant_term() const { return coefficient({}); }
  // Coefficient of the bare X_index monomial.
  BigInt linear_coefficient(int index) const { return coefficient({{index, 1}}); }

  std::string show() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::map<Monomial, BigInt> terms_;
  friend Polynomial poly_add(const Polynomial&, const Polynomial&);
  friend Polynomial poly_mul(const Polynomial&, const Polynomial&);
  friend Polynomial poly_neg(const Polynomial&);
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_neg(const Polynomial& a);
Polynomial poly_pow(const Polynomial& a, int e);  // e >= 0

// Substitute args[i-1] for X_i. Requires p.max_var_index() <= args.size().
Polynomial poly_compose(const Polynomial& p, std::span<const Polynomial> args);

// Requires alpha to bind every variable index occurring in p.
BigInt eval(const Polynomial& p, const std::map<int, BigInt>& alpha);

bool all_coefficients_nonneg(const Polynomial& p);

// Strict monotonicity in each of the n argument positions, by the
// coefficient criterion: everything nonnegative and each bare X_i with
// coefficient at least 1.
bool check_monotone_strict(const Polynomial& p, std::size_t n);
bool check_monotone_weak(const Polynomial& p);

// p > q over naturals, by absolute positiveness of p - q - 1.
bool check_gt(const Polynomial& p, const Polynomial& q);
// p >= q over naturals, by absolute positiveness of p - q.
bool check_ge(const Polynomial& p, const Polynomial& q);

struct SymbolInterp {
  std::size_t arity;
  Polynomial poly;
  friend bool operator==(const SymbolInterp&, const SymbolInterp&) = default;
};

class PolyInterpretation {
 public:
  // False if the symbol already has an assignment.
  bool assign(Symbol f, std::size_t arity, Polynomial p);
  const SymbolInterp* find(const Symbol& f) const;
  const std::map<Symbol, SymbolInterp>& assignments() const { return map_; }
  bool empty() const { return map_.empty(); }

  friend bool operator==(const PolyInterpretation&, const PolyInterpretation&) = default;

 private:
  std::map<Symbol, SymbolInterp> map_;
};

struct InterpError {
  enum class Kind { UnassignedSymbol, ArityMismatch, IndexOutOfRange, UnboundVariable };
  Kind kind;
  std::string detail;
};

// Variable-to-index assignment for one rule: left-hand side variables in
// first-occurrence order, 1-based, shared by both sides.
using VarIndexMap = std::map<Var, int>;
VarIndexMap rule_var_indices(const Rule& r);

Result<Polynomial, InterpError> interpret_term(const PolyInterpretation& phi, const Term& t,
                                               const VarIndexMap& varmap);

}  // namespace termcert
