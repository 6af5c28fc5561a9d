#include "liesym/jet.hpp"

#include "derivation.hpp"
#include "liesym/errors.hpp"

namespace liesym {

VectorField VectorField::zero(int p, int q) {
  return VectorField{std::vector<Expr>(static_cast<std::size_t>(p)), std::vector<Expr>(static_cast<std::size_t>(q))};
}

void validate(const VectorField& v, const Context& ctx) {
  if (static_cast<int>(v.xi.size()) != ctx.p() || static_cast<int>(v.phi.size()) != ctx.q())
    throw ArityError("vector field needs " + std::to_string(ctx.p()) + " xi and " + std::to_string(ctx.q()) +
                     " phi components");
  for (const auto* part : {&v.xi, &v.phi}) {
    for (const Expr& c : *part) {
      ctx.check(c);
      if (jet_order(c) > 0) throw OrderError("vector field coefficients must not involve derivatives");
    }
  }
}

VectorField scale(const Rational& a, const VectorField& v) {
  VectorField out = v;
  for (auto* part : {&out.xi, &out.phi})
    for (Expr& c : *part) c = Expr(a) * c;
  return out;
}

VectorField add(const VectorField& a, const VectorField& b) {
  if (a.xi.size() != b.xi.size() || a.phi.size() != b.phi.size()) throw ArityError("vector fields differ in shape");
  VectorField out = a;
  for (std::size_t i = 0; i < a.xi.size(); ++i) out.xi[i] = a.xi[i] + b.xi[i];
  for (std::size_t k = 0; k < a.phi.size(); ++k) out.phi[k] = a.phi[k] + b.phi[k];
  return out;
}

const Expr& ProlongedVectorField::coeff(const JetVar& v) const {
  if (v.idx.empty()) return base.phi.at(static_cast<std::size_t>(v.dep));
  auto it = coeffs.find(v);
  if (it == coeffs.end()) throw OrderError("no prolonged coefficient for this jet");
  return it->second;
}

namespace {

detail::Derivation total_derivation(int i) {
  return detail::Derivation([i](const Expr& a) -> std::optional<Expr> {
    switch (a.kind()) {
      case Kind::Indep: return Expr(a.index() == i ? 1 : 0);
      case Kind::Jet: {
        JetVar v = a.jet_var();
        return Expr::jet(v.dep, v.idx.with(i));
      }
      case Kind::Unknown: return std::nullopt;
      default: return Expr(0);
    }
  });
}

Expr u_of(int dep, const MultiIndex& J) { return Expr::jet(dep, J); }

}  // namespace

Expr total_derivative(const Expr& e, int i, const Context& ctx) {
  if (i < 0 || i >= ctx.p()) throw ArityError("independent variable index out of range");
  return total_derivation(i)(e);
}

Expr total_derivative_multi(const Expr& e, const MultiIndex& J, const Context& ctx) {
  Expr r = e;
  for (int i : J.entries()) r = total_derivative(r, i, ctx);
  return r;
}

Expr total_divergence(const std::vector<Expr>& F, const Context& ctx) {
  if (static_cast<int>(F.size()) != ctx.p())
    throw ArityError("a current needs " + std::to_string(ctx.p()) + " components, got " + std::to_string(F.size()));
  std::vector<Expr> terms;
  for (int i = 0; i < ctx.p(); ++i)
    terms.push_back(total_derivation(i).raw(F[static_cast<std::size_t>(i)]));
  return sum(terms);
}

Characteristic characteristic_of(const VectorField& v, const Context& ctx) {
  Characteristic Q;
  for (int a = 0; a < ctx.q(); ++a) {
    std::vector<Expr> terms{v.phi.at(static_cast<std::size_t>(a))};
    for (int i = 0; i < ctx.p(); ++i)
      terms.push_back(Expr::raw_product({Expr(-1), v.xi.at(static_cast<std::size_t>(i)), u_of(a, MultiIndex({i}))}));
    Q.push_back(sum(terms));
  }
  return Q;
}

ProlongedVectorField prolong(const VectorField& v, int n, const Context& ctx) {
  if (n < 0) throw OrderError("prolongation order must be non-negative");
  validate(v, ctx);
  ProlongedVectorField pv{v, n, {}};
  Characteristic Q = characteristic_of(v, ctx);
  auto indices = MultiIndex::all_up_to(ctx.p(), n);
  for (int a = 0; a < ctx.q(); ++a) {
    std::map<MultiIndex, Expr> DQ;
    DQ.emplace(MultiIndex{}, Q[static_cast<std::size_t>(a)]);
    for (const MultiIndex& J : indices) {
      std::vector<int> head = J.entries();
      int last = head.back();
      head.pop_back();
      Expr d = total_derivative(DQ.at(MultiIndex(head)), last, ctx);
      DQ.emplace(J, d);
      std::vector<Expr> terms{d};
      for (int i = 0; i < ctx.p(); ++i)
        terms.push_back(Expr::raw_product({v.xi[static_cast<std::size_t>(i)], u_of(a, J.with(i))}));
      pv.coeffs.emplace(JetVar{a, J}, sum(terms));
    }
  }
  return pv;
}

ProlongedVectorField prolong_recursive(const VectorField& v, int n, const Context& ctx) {
  if (n < 0) throw OrderError("prolongation order must be non-negative");
  validate(v, ctx);
  ProlongedVectorField pv{v, n, {}};
  // D_k xi^i, shared by every level
  std::vector<std::vector<Expr>> Dxi(static_cast<std::size_t>(ctx.p()));
  for (int k = 0; k < ctx.p(); ++k)
    for (int i = 0; i < ctx.p(); ++i)
      Dxi[static_cast<std::size_t>(k)].push_back(total_derivative(v.xi[static_cast<std::size_t>(i)], k, ctx));

  for (int a = 0; a < ctx.q(); ++a) {
    for (const MultiIndex& K : MultiIndex::all_up_to(ctx.p(), n)) {
      std::vector<int> head = K.entries();
      int k = head.back();
      head.pop_back();
      MultiIndex J(head);
      const Expr& prev = pv.coeff(JetVar{a, J});
      std::vector<Expr> terms{total_derivative(prev, k, ctx)};
      for (int i = 0; i < ctx.p(); ++i)
        terms.push_back(Expr::raw_product(
            {Expr(-1), Dxi[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)], u_of(a, J.with(i))}));
      pv.coeffs.emplace(JetVar{a, K}, sum(terms));
    }
  }
  return pv;
}

ProlongedVectorField evolutionary_prolong(const Characteristic& Q, int n, const Context& ctx) {
  if (static_cast<int>(Q.size()) != ctx.q()) throw ArityError("characteristic needs one entry per dependent variable");
  if (n < 0) throw OrderError("prolongation order must be non-negative");
  ProlongedVectorField pv{VectorField{std::vector<Expr>(static_cast<std::size_t>(ctx.p())), Q}, n, {}};
  for (int a = 0; a < ctx.q(); ++a) {
    std::map<MultiIndex, Expr> DQ;
    DQ.emplace(MultiIndex{}, normalize(Q[static_cast<std::size_t>(a)]));
    for (const MultiIndex& J : MultiIndex::all_up_to(ctx.p(), n)) {
      std::vector<int> head = J.entries();
      int last = head.back();
      head.pop_back();
      Expr d = total_derivative(DQ.at(MultiIndex(head)), last, ctx);
      DQ.emplace(J, d);
      pv.coeffs.emplace(JetVar{a, J}, d);
    }
  }
  return pv;
}

Expr apply_prolonged(const ProlongedVectorField& pv, const Expr& e, const Context& ctx) {
  if (jet_order(e) > pv.order)
    throw OrderError("expression has order " + std::to_string(jet_order(e)) + " but the prolongation only has order " +
                     std::to_string(pv.order));
  (void)ctx;
  detail::Derivation d([&](const Expr& a) -> std::optional<Expr> {
    switch (a.kind()) {
      case Kind::Indep: return pv.base.xi.at(static_cast<std::size_t>(a.index()));
      case Kind::Jet: return pv.coeff(a.jet_var());
      case Kind::Unknown: return std::nullopt;
      default: return Expr(0);
    }
  });
  return d(e);
}

Expr apply_field(const VectorField& v, const Expr& f, const Context& ctx) {
  ProlongedVectorField pv{v, 0, {}};
  return apply_prolonged(pv, f, ctx);
}

VectorField lie_bracket(const VectorField& v, const VectorField& w, const Context& ctx) {
  validate(v, ctx);
  validate(w, ctx);
  VectorField out = VectorField::zero(ctx.p(), ctx.q());
  for (std::size_t i = 0; i < v.xi.size(); ++i)
    out.xi[i] = apply_field(v, w.xi[i], ctx) - apply_field(w, v.xi[i], ctx);
  for (std::size_t k = 0; k < v.phi.size(); ++k)
    out.phi[k] = apply_field(v, w.phi[k], ctx) - apply_field(w, v.phi[k], ctx);
  return out;
}

}  // namespace liesym
