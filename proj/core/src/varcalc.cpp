#include "liesym/varcalc.hpp"

#include "liesym/errors.hpp"

namespace liesym {

Expr euler_operator(const Expr& L, int alpha, const Context& ctx) {
  if (alpha < 0 || alpha >= ctx.q()) throw ArityError("dependent variable index out of range");
  ctx.check(L);
  const int n = jet_order(L);
  std::vector<Expr> terms{partial_derivative(L, Expr::jet(alpha))};
  for (const MultiIndex& J : MultiIndex::all_up_to(ctx.p(), n)) {
    Expr dL = partial_derivative(L, Expr::jet(alpha, J));
    if (dL.is_zero_const()) continue;
    Expr t = total_derivative_multi(dL, J, ctx);
    terms.push_back(J.order() % 2 ? -t : t);
  }
  return sum(terms);
}

std::vector<Expr> euler_lagrange(const Expr& L, const Context& ctx) {
  std::vector<Expr> out;
  for (int a = 0; a < ctx.q(); ++a) out.push_back(euler_operator(L, a, ctx));
  return out;
}

DiffSystem euler_lagrange_system(const Expr& L, const Context& ctx) {
  std::vector<SystemEquation> eqs;
  auto E = euler_lagrange(L, ctx);
  for (int a = 0; a < ctx.q(); ++a) {
    const Expr& e = E[static_cast<std::size_t>(a)];
    if (e.is_zero_const()) continue;
    auto jets = jet_vars(e);
    const int top = jet_order(e);
    // Prefer the highest jet of u^a itself, then any other top-order jet.
    std::vector<JetVar> candidates;
    for (auto it = jets.rbegin(); it != jets.rend(); ++it)
      if (static_cast<int>(it->order()) == top && it->dep == a) candidates.push_back(*it);
    for (auto it = jets.rbegin(); it != jets.rend(); ++it)
      if (static_cast<int>(it->order()) == top && it->dep != a) candidates.push_back(*it);
    bool done = false;
    for (const JetVar& w : candidates) {
      Expr W = Expr::jet(w);
      Expr c = partial_derivative(e, W);
      if (depends_on(c, W) || c.is_zero_const()) continue;
      bool taken = false;
      for (const auto& eq : eqs)
        if (eq.lead == w) taken = true;
      if (taken) continue;
      Expr rest = e - c * W;
      eqs.push_back(SystemEquation{w, -rest / c});
      done = true;
      break;
    }
    if (!done) throw InvalidSystem("Euler-Lagrange equation " + std::to_string(a + 1) + " cannot be put in solved form");
  }
  if (eqs.empty()) throw InvalidSystem("the Euler-Lagrange equations vanish identically");
  return DiffSystem(std::move(eqs), ctx);
}

namespace {

Expr div_xi(const VectorField& v, const Context& ctx) {
  std::vector<Expr> terms;
  for (int i = 0; i < ctx.p(); ++i) terms.push_back(total_derivative(v.xi[static_cast<std::size_t>(i)], i, ctx));
  return sum(terms);
}

}  // namespace

Expr variational_symmetry_defect(const VectorField& v, const Expr& L, const Context& ctx) {
  ctx.check(L);
  ProlongedVectorField pv = prolong(v, jet_order(L), ctx);
  return apply_prolonged(pv, L, ctx) + L * div_xi(v, ctx);
}

bool divergence_symmetry_check(const VectorField& v, const Expr& L, const std::vector<Expr>& B, const Context& ctx) {
  return is_zero(variational_symmetry_defect(v, L, ctx) - total_divergence(B, ctx));
}

ConservedCurrent noether_current_first_order(const VectorField& v, const Expr& L, const Context& ctx,
                                             const std::optional<std::vector<Expr>>& B) {
  ctx.check(L);
  if (jet_order(L) > 1) throw OrderError("the explicit Noether current needs a first-order Lagrangian");
  std::vector<Expr> b = B ? *B : std::vector<Expr>(static_cast<std::size_t>(ctx.p()));
  if (static_cast<int>(b.size()) != ctx.p()) throw ArityError("divergence term needs one entry per independent variable");
  if (!divergence_symmetry_check(v, L, b, ctx))
    throw NotASymmetry(B ? "the vector field is not a divergence symmetry with the given B"
                         : "the vector field is not a variational symmetry (supply B for a divergence symmetry)");
  ConservedCurrent F;
  for (int i = 0; i < ctx.p(); ++i) {
    std::vector<Expr> terms{v.xi[static_cast<std::size_t>(i)] * L, -b[static_cast<std::size_t>(i)]};
    for (int a = 0; a < ctx.q(); ++a) {
      Expr dL = partial_derivative(L, Expr::jet(a, MultiIndex({i})));
      if (dL.is_zero_const()) continue;
      terms.push_back(v.phi[static_cast<std::size_t>(a)] * dL);
      for (int j = 0; j < ctx.p(); ++j)
        terms.push_back(-(v.xi[static_cast<std::size_t>(j)] * Expr::jet(a, MultiIndex({j})) * dL));
    }
    F.push_back(sum(terms));
  }
  return F;
}

bool verify_noether_identity(const ConservedCurrent& F, const Characteristic& Q, const Expr& L, const Context& ctx) {
  if (static_cast<int>(Q.size()) != ctx.q()) throw ArityError("characteristic needs one entry per dependent variable");
  auto E = euler_lagrange(L, ctx);
  std::vector<Expr> terms{total_divergence(F, ctx)};
  for (int a = 0; a < ctx.q(); ++a) terms.push_back(Q[static_cast<std::size_t>(a)] * E[static_cast<std::size_t>(a)]);
  return is_zero(sum(terms));
}

}  // namespace liesym
