#include "liesym/invariants.hpp"

#include "liesym/errors.hpp"
#include "liesym/parse.hpp"

namespace liesym {

Expr invariance_defect(const VectorField& v, const Expr& f, const Context& ctx) {
  ctx.check(f);
  if (jet_order(f) > 0) throw OrderError("invariance_defect needs a function of x and u only");
  validate(v, ctx);
  return apply_field(v, f, ctx);
}

bool differential_invariant_check(const VectorField& v, int n, const Expr& eta, const Context& ctx) {
  ctx.check(eta);
  return apply_prolonged(prolong(v, n, ctx), eta, ctx).is_zero_const();
}

Expr next_invariant(const Expr& eta, const Expr& zeta, const Context& ctx) {
  if (ctx.p() != 1) throw ArityError("next_invariant is defined for one independent variable");
  ctx.check(eta);
  ctx.check(zeta);
  Expr den = total_derivative(eta, 0, ctx);
  if (den.is_zero_const()) throw DegenerateDenominator("D_x of the first invariant vanishes identically");
  return total_derivative(zeta, 0, ctx) / den;
}

std::string characteristic_system(const VectorField& v, const Context& ctx) {
  validate(v, ctx);
  std::string t = "t";
  for (const char* cand : {"t", "s", "eps"}) {
    t = cand;
    if (!ctx.is_declared(t)) break;
  }
  std::string out;
  for (int i = 0; i < ctx.p(); ++i)
    out += "d" + ctx.indep_name(i) + "/d" + t + " = " + format_expr(v.xi[static_cast<std::size_t>(i)], ctx) + "\n";
  for (int a = 0; a < ctx.q(); ++a)
    out += "d" + ctx.dep_name(a) + "/d" + t + " = " + format_expr(v.phi[static_cast<std::size_t>(a)], ctx) + "\n";
  return out;
}

}  // namespace liesym
