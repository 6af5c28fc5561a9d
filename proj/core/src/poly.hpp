#pragma once
// Internal polynomial representation behind normalize().

#include <map>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym::detail {

struct Factor {
  Expr base;
  Rational exp;
};

/// Factors sorted by base, bases distinct, exponents non-zero.
using Monomial = std::vector<Factor>;

Rational degree(const Monomial& m);
/// Graded, then lexicographic starting from the largest base.
int compare_monomials(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare_monomials(a, b) < 0; }
};

using Poly = std::map<Monomial, Rational, MonomialLess>;

struct Reconciled {
  std::vector<Factor> outer;  // kernel powers pulled out of every term
  Poly numerator;
  Poly outer_poly() const;
};

void add_term(Poly& p, const Monomial& m, const Rational& c);
void add_poly(Poly& into, const Poly& other);
Poly constant_poly(const Rational& c);
Poly mul_poly(const Poly& a, const Poly& b);
Poly kernel_poly(const Expr& base);
Poly to_poly(const Expr& e);
Reconciled reconcile(Poly p);

Expr factor_expr(const Factor& f);
Expr term_expr(const Monomial& m, const Rational& c);
Expr sum_expr(const Poly& p);
Expr finalize(const Poly& p);

}  // namespace liesym::detail
