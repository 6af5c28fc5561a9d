#pragma once

#include <map>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym {

/// Point vector field sum xi^i d/dx^i + sum phi_a d/du^a.
struct VectorField {
  std::vector<Expr> xi;
  std::vector<Expr> phi;

  static VectorField zero(int p, int q);
  friend bool operator==(const VectorField&, const VectorField&) = default;
};

/// Throws Error unless the coefficients are order-0 and the sizes match.
void validate(const VectorField& v, const Context& ctx);
VectorField scale(const Rational& a, const VectorField& v);
VectorField add(const VectorField& a, const VectorField& b);

struct ProlongedVectorField {
  VectorField base;
  int order = 0;
  /// phi^J_a for 1 <= #J <= order.
  std::map<JetVar, Expr> coeffs;

  /// Coefficient of d/du^a_J, including J empty.
  const Expr& coeff(const JetVar& v) const;
};

using Characteristic = std::vector<Expr>;

Expr total_derivative(const Expr& e, int i, const Context& ctx);
Expr total_derivative_multi(const Expr& e, const MultiIndex& J, const Context& ctx);
/// Throws ArityError unless F has p entries.
Expr total_divergence(const std::vector<Expr>& F, const Context& ctx);

ProlongedVectorField prolong(const VectorField& v, int n, const Context& ctx);
ProlongedVectorField prolong_recursive(const VectorField& v, int n, const Context& ctx);

Characteristic characteristic_of(const VectorField& v, const Context& ctx);
ProlongedVectorField evolutionary_prolong(const Characteristic& Q, int n, const Context& ctx);

/// Throws OrderError when e involves jets above pv.order.
Expr apply_prolonged(const ProlongedVectorField& pv, const Expr& e, const Context& ctx);
/// v(f) for a point vector field acting on any order-0 expression.
Expr apply_field(const VectorField& v, const Expr& f, const Context& ctx);

VectorField lie_bracket(const VectorField& v, const VectorField& w, const Context& ctx);

}  // namespace liesym
