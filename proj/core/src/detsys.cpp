#include "liesym/detsys.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "liesym/errors.hpp"
#include "liesym/ratla.hpp"

namespace liesym {

namespace {

bool derives_from(const JetVar& v, const JetVar& lead) { return v.dep == lead.dep && v.idx.minus(lead.idx); }

}  // namespace

DiffSystem::DiffSystem(std::vector<SystemEquation> equations, const Context& ctx) : eqs_(std::move(equations)) {
  if (eqs_.empty()) throw InvalidSystem("a system needs at least one equation");
  for (std::size_t a = 0; a < eqs_.size(); ++a) {
    const JetVar& lead = eqs_[a].lead;
    if (lead.dep < 0 || lead.dep >= ctx.q()) throw InvalidSystem("lead is not a declared dependent variable");
    for (int i : lead.idx.entries())
      if (i < 0 || i >= ctx.p()) throw InvalidSystem("lead uses an undeclared independent variable");
    for (std::size_t b = 0; b < eqs_.size(); ++b)
      if (a != b && derives_from(lead, eqs_[b].lead))
        throw InvalidSystem("lead " + std::to_string(a + 1) + " repeats or is a derivative of lead " +
                            std::to_string(b + 1));
  }
  for (auto& eq : eqs_) {
    ctx.check(eq.rhs);
    eq.rhs = normalize(eq.rhs);
    if (has_unknowns(eq.rhs)) throw InvalidSystem("system right-hand sides cannot contain unknown functions");
    for (const JetVar& v : jet_vars(eq.rhs))
      for (const auto& other : eqs_)
        if (derives_from(v, other.lead))
          throw InvalidSystem("right-hand side is not in solved form: it contains a lead or one of its derivatives");
    order_ = std::max({order_, static_cast<int>(eq.lead.order()), jet_order(eq.rhs)});
  }
}

Expr DiffSystem::implicit(std::size_t nu) const {
  const auto& eq = eqs_.at(nu);
  return Expr::jet(eq.lead) - eq.rhs;
}

namespace {

class Reducer {
 public:
  Reducer(const DiffSystem& sys, const Context& ctx, int cap) : sys_(sys), ctx_(ctx), cap_(cap) {}

  Expr reduce(const Expr& e) {
    Substitution s;
    for (const JetVar& v : jet_vars(e))
      if (match(v)) s.emplace(Expr::jet(v), replacement(v));
    if (s.empty()) return normalize(e);
    return substitute(e, s);
  }

 private:
  const SystemEquation* match(const JetVar& v) const {
    for (const auto& eq : sys_.equations())
      if (derives_from(v, eq.lead)) return &eq;
    return nullptr;
  }

  const Expr& replacement(const JetVar& v) {
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    if (static_cast<int>(v.order()) > cap_)
      throw OrderCapExceeded("reduction needs derivatives of order " + std::to_string(v.order()) +
                             ", above the cap of " + std::to_string(cap_));
    if (!active_.insert(v).second) throw InvalidSystem("rewriting modulo the system does not terminate");
    const SystemEquation* eq = match(v);
    MultiIndex rest = *v.idx.minus(eq->lead.idx);
    Expr r;
    if (rest.empty()) {
      r = eq->rhs;
    } else {
      int k = rest.entries().back();
      std::vector<int> head = v.idx.entries();
      head.erase(std::find(head.begin(), head.end(), k));
      Expr prev = replacement(JetVar{v.dep, MultiIndex(head)});
      r = reduce(total_derivative(prev, k, ctx_));
    }
    if (jet_order(r) > cap_)
      throw OrderCapExceeded("reduction produced derivatives of order " + std::to_string(jet_order(r)) +
                             ", above the cap of " + std::to_string(cap_));
    active_.erase(v);
    return memo_.emplace(v, r).first->second;
  }

  const DiffSystem& sys_;
  const Context& ctx_;
  int cap_;
  std::map<JetVar, Expr> memo_;
  std::set<JetVar> active_;
};

int cap_for(const DiffSystem& sys, int expr_order, const ReduceOptions& opt) {
  return opt.order_cap.value_or(std::max(sys.order(), expr_order) + 4);
}

std::vector<Expr> defects(const VectorField& v, const DiffSystem& sys, const Context& ctx, const ReduceOptions& opt) {
  ProlongedVectorField pv = prolong(v, sys.order(), ctx);
  Reducer red(sys, ctx, cap_for(sys, sys.order(), opt));
  std::vector<Expr> out;
  for (std::size_t nu = 0; nu < sys.size(); ++nu) out.push_back(red.reduce(apply_prolonged(pv, sys.implicit(nu), ctx)));
  return out;
}

}  // namespace

Expr reduce_mod_system(const Expr& e, const DiffSystem& sys, const Context& ctx, ReduceOptions opt) {
  Reducer red(sys, ctx, cap_for(sys, jet_order(e), opt));
  return red.reduce(e);
}

std::vector<Expr> symmetry_defect(const VectorField& v, const DiffSystem& sys, const Context& ctx,
                                  ReduceOptions opt) {
  return defects(v, sys, ctx, opt);
}

bool check_symmetry(const VectorField& v, const DiffSystem& sys, const Context& ctx, ReduceOptions opt) {
  for (const Expr& d : defects(v, sys, ctx, opt))
    if (!d.is_zero_const()) return false;
  return true;
}

DeterminingSystem determining_equations(const DiffSystem& sys, const Context& ctx, ReduceOptions opt) {
  std::vector<Expr> args;
  for (int i = 0; i < ctx.p(); ++i) args.push_back(Expr::indep(i));
  for (int a = 0; a < ctx.q(); ++a) args.push_back(Expr::jet(a));

  DeterminingSystem ds;
  ds.unknown_args = args;
  Context local = ctx;
  std::size_t full = 0;
  for (const auto& u : ctx.unknowns())
    if (u.args == args) ++full;
  if (full == static_cast<std::size_t>(ctx.p() + ctx.q()) && ctx.unknowns().size() == full) {
    for (const auto& u : ctx.unknowns()) ds.unknown_names.push_back(u.name);
  } else {
    std::vector<std::string> arg_names;
    for (int i = 0; i < ctx.p(); ++i) arg_names.push_back(ctx.indep_name(i));
    for (int a = 0; a < ctx.q(); ++a) arg_names.push_back(ctx.dep_name(a));
    auto fresh = [&](const std::string& stem, int k) {
      std::string n = stem + std::to_string(k);
      while (local.is_declared(n)) n += "z";
      local.add_unknown(n, arg_names);
      ds.unknown_names.push_back(n);
    };
    for (int i = 0; i < ctx.p(); ++i) fresh("xi", i + 1);
    for (int a = 0; a < ctx.q(); ++a) fresh("phi", a + 1);
  }

  VectorField v = VectorField::zero(ctx.p(), ctx.q());
  for (int i = 0; i < ctx.p(); ++i)
    v.xi[static_cast<std::size_t>(i)] = Expr::unknown(ds.unknown_names[static_cast<std::size_t>(i)], args);
  for (int a = 0; a < ctx.q(); ++a)
    v.phi[static_cast<std::size_t>(a)] =
        Expr::unknown(ds.unknown_names[static_cast<std::size_t>(ctx.p() + a)], args);

  std::vector<Expr> d = defects(v, sys, local, opt);

  std::set<JetVar> split;
  for (const Expr& e : d)
    for (const JetVar& j : jet_vars(e))
      if (j.order() >= 1) split.insert(j);
  for (const JetVar& j : split) ds.splitting_vars.push_back(Expr::jet(j));

  ExprSet seen;
  for (const Expr& e : d) {
    for (const CollectedTerm& t : collect(e, ds.splitting_vars)) {
      if (seen.count(t.coefficient) || seen.count(-t.coefficient)) continue;
      seen.insert(t.coefficient);
      ds.equations.push_back(t.coefficient);
    }
  }
  return ds;
}

namespace {

// Monomials of total degree <= d in n variables, graded then lexicographic.
void monomials(std::size_t n, int d, std::vector<std::vector<int>>& out) {
  for (int deg = 0; deg <= d; ++deg) {
    std::vector<int> cur(n, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
      if (k + 1 == n) {
        cur[k] = left;
        out.push_back(cur);
        return;
      }
      for (int e = left; e >= 0; --e) {
        cur[k] = e;
        rec(k + 1, left - e);
      }
    };
    if (n == 0) {
      if (deg == 0) out.emplace_back();
    } else {
      rec(0, deg);
    }
  }
}

}  // namespace

std::vector<VectorField> solve_determining(const DeterminingSystem& ds, const Ansatz& a, const Context& ctx) {
  return solve_determining(ds, a, ctx, nullptr, nullptr);
}

std::vector<VectorField> solve_determining(const DeterminingSystem& ds, const Ansatz& a, const Context& ctx,
                                           RatMatrix* matrix_out, LinearSystemReport* report) {
  if (a.degree < 0) throw Error("ansatz degree must be non-negative");
  const auto& args = ds.unknown_args;
  std::vector<std::vector<int>> monos;
  monomials(args.size(), a.degree, monos);

  std::vector<Expr> mono_exprs;
  for (const auto& m : monos) {
    std::vector<Expr> f;
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k]) f.push_back(pow(args[k], Rational(m[k])));
    mono_exprs.push_back(product(f));
  }

  // One parameter per (unknown, monomial), in declaration order.
  std::vector<Expr> params;
  std::vector<Expr> forms;
  for (std::size_t u = 0; u < ds.unknown_names.size(); ++u) {
    std::vector<Expr> terms;
    for (std::size_t k = 0; k < monos.size(); ++k) {
      Expr c = Expr::param("c" + std::to_string(params.size() + 1));
      params.push_back(c);
      terms.push_back(c * mono_exprs[k]);
    }
    forms.push_back(sum(terms));
  }

  std::vector<Expr> vars = args;
  vars.insert(vars.end(), params.begin(), params.end());
  std::vector<std::vector<Rational>> rows;
  for (const Expr& eq : ds.equations) {
    Expr e = eq;
    for (std::size_t u = 0; u < ds.unknown_names.size(); ++u) e = substitute_unknown(e, ds.unknown_names[u], forms[u]);
    std::map<std::vector<long>, std::vector<Rational>> by_mono;
    for (const CollectedTerm& t : collect(e, vars)) {
      if (!t.coefficient.is_const()) throw NotPolynomial("determining equation has non-constant coefficients");
      std::vector<long> key(t.powers.begin(), t.powers.begin() + static_cast<long>(args.size()));
      long deg = 0;
      std::size_t col = 0;
      for (std::size_t k = 0; k < params.size(); ++k) {
        long pk = t.powers[args.size() + k];
        deg += pk;
        if (pk) col = k;
      }
      if (deg != 1) throw Error("determining equations are not linear homogeneous in the unknowns");
      auto& row = by_mono[key];
      if (row.empty()) row.assign(params.size(), Rational(0));
      row[col] += t.coefficient.value();
    }
    for (auto& [key, row] : by_mono) rows.push_back(std::move(row));
  }

  RatMatrix M = rows.empty() ? RatMatrix(0, params.size()) : RatMatrix::from_rows(rows);
  auto kernel = kernel_basis(M);
  if (matrix_out) *matrix_out = M;
  if (report) *report = LinearSystemReport{params.size(), rows.size(), kernel.size()};

  std::vector<VectorField> out;
  for (auto& vec : kernel) {
    Rational lead(0);
    for (const Rational& x : vec)
      if (x != 0) {
        lead = x;
        break;
      }
    VectorField v = VectorField::zero(ctx.p(), ctx.q());
    for (std::size_t u = 0; u < ds.unknown_names.size(); ++u) {
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < monos.size(); ++k) {
        const Rational& c = vec[u * monos.size() + k];
        if (c != 0) terms.push_back(Expr(c / lead) * mono_exprs[k]);
      }
      Expr coeff = sum(terms);
      if (u < static_cast<std::size_t>(ctx.p()))
        v.xi[u] = coeff;
      else
        v.phi[u - static_cast<std::size_t>(ctx.p())] = coeff;
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool verify_lie_closure(const std::vector<VectorField>& basis, const DiffSystem& sys, const Context& ctx,
                        ReduceOptions opt) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!check_symmetry(lie_bracket(basis[i], basis[j], ctx), sys, ctx, opt)) return false;
  if (basis.size() == 1) return check_symmetry(basis.front(), sys, ctx, opt);
  return true;
}

namespace {

Rational value_at(const Expr& e, const Assignment& point) {
  Assignment full = point;
  for (const Expr& a : atoms(e)) full.emplace(a, Rational(0));
  return evaluate(e, full);
}

}  // namespace

bool rank_probe(const std::vector<Expr>& P, const std::vector<Assignment>& samples, const Context& ctx) {
  if (P.empty()) throw InvalidSystem("rank probe needs at least one equation");
  int n = 0;
  for (const Expr& e : P) {
    ctx.check(e);
    n = std::max(n, jet_order(e));
  }
  std::vector<Expr> coords;
  for (int i = 0; i < ctx.p(); ++i) coords.push_back(Expr::indep(i));
  for (int a = 0; a < ctx.q(); ++a) {
    coords.push_back(Expr::jet(a));
    for (const MultiIndex& J : MultiIndex::all_up_to(ctx.p(), n)) coords.push_back(Expr::jet(a, J));
  }
  std::vector<std::vector<Expr>> jac;
  for (const Expr& e : P) {
    std::vector<Expr> row;
    for (const Expr& c : coords) row.push_back(partial_derivative(e, c));
    jac.push_back(std::move(row));
  }
  for (std::size_t s = 0; s < samples.size(); ++s) {
    RatMatrix J(P.size(), coords.size());
    try {
      for (std::size_t nu = 0; nu < P.size(); ++nu) {
        if (value_at(P[nu], samples[s]) != 0)
          throw InvalidSample("sample " + std::to_string(s + 1) + " does not satisfy equation " +
                              std::to_string(nu + 1));
        for (std::size_t c = 0; c < coords.size(); ++c) J(nu, c) = value_at(jac[nu][c], samples[s]);
      }
    } catch (const EvaluationError& e) {
      throw InvalidSample("sample " + std::to_string(s + 1) + ": " + e.what());
    }
    if (rank(J) != P.size()) return false;
  }
  return true;
}

bool rank_probe(const DiffSystem& sys, const std::vector<Assignment>& samples, const Context& ctx) {
  std::vector<Expr> P;
  for (std::size_t nu = 0; nu < sys.size(); ++nu) P.push_back(sys.implicit(nu));
  return rank_probe(P, samples, ctx);
}

}  // namespace liesym
