// Differentiation, substitution and traversal helpers.

#include <algorithm>
#include <functional>
#include <unordered_map>

#include "liesym/errors.hpp"
#include "liesym/expr.hpp"
#include "derivation.hpp"

namespace liesym {

namespace detail {

Expr Derivation::raw(const Expr& e) {
  auto it = memo_.find(e.node());
  if (it != memo_.end()) return it->second;
  Expr r = compute(e);
  memo_.emplace(e.node(), r);
  keep_.push_back(e);
  return r;
}

Expr Derivation::compute(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const: return Expr(0);
    case Kind::Indep:
    case Kind::Jet:
    case Kind::Param: {
      auto r = rule_(e);
      return r ? *r : Expr(0);
    }
    case Kind::Unknown: {
      if (auto r = rule_(e)) return *r;
      std::vector<Expr> terms;
      for (std::size_t k = 0; k < e.args().size(); ++k) {
        Expr da = raw(e.args()[k]);
        if (da.is_zero_const()) continue;
        std::vector<int> d = e.deriv();
        d.push_back(static_cast<int>(k));
        std::sort(d.begin(), d.end());
        terms.push_back(Expr::raw_product({da, Expr::unknown(e.name(), e.args(), d)}));
      }
      if (terms.empty()) return Expr(0);
      return terms.size() == 1 ? terms.front() : Expr::raw_sum(std::move(terms));
    }
    case Kind::Func: {
      Expr da = raw(e.arg());
      if (da.is_zero_const()) return Expr(0);
      const Expr& a = e.arg();
      switch (e.func_kind()) {
        case FuncKind::Exp: return Expr::raw_product({e, da});
        case FuncKind::Log: return Expr::raw_product({Expr::raw_power(a, Rational(-1)), da});
        case FuncKind::Sin: return Expr::raw_product({Expr::func(FuncKind::Cos, a), da});
        case FuncKind::Cos: return Expr::raw_product({Expr(-1), Expr::func(FuncKind::Sin, a), da});
      }
      return Expr(0);
    }
    case Kind::Power: {
      Expr db = raw(e.base());
      if (db.is_zero_const()) return Expr(0);
      return Expr::raw_product({Expr::constant(e.exponent()), Expr::raw_power(e.base(), e.exponent() - 1), db});
    }
    case Kind::Sum: {
      std::vector<Expr> terms;
      for (const Expr& t : e.args()) {
        Expr d = raw(t);
        if (!d.is_zero_const()) terms.push_back(d);
      }
      if (terms.empty()) return Expr(0);
      return terms.size() == 1 ? terms.front() : Expr::raw_sum(std::move(terms));
    }
    case Kind::Product: {
      std::vector<Expr> terms;
      const auto& fs = e.args();
      for (std::size_t k = 0; k < fs.size(); ++k) {
        Expr d = raw(fs[k]);
        if (d.is_zero_const()) continue;
        std::vector<Expr> factors = fs;
        factors[k] = d;
        terms.push_back(Expr::raw_product(std::move(factors)));
      }
      if (terms.empty()) return Expr(0);
      return terms.size() == 1 ? terms.front() : Expr::raw_sum(std::move(terms));
    }
  }
  return Expr(0);
}

}  // namespace detail

namespace {

template <class F>
void visit(const Expr& e, F&& f) {
  f(e);
  switch (e.kind()) {
    case Kind::Sum:
    case Kind::Product:
    case Kind::Unknown:
      for (const Expr& k : e.args()) visit(k, f);
      break;
    case Kind::Power: visit(e.base(), f); break;
    case Kind::Func: visit(e.arg(), f); break;
    default: break;
  }
}

Expr rebuild(const Expr& e, const std::function<std::optional<Expr>(const Expr&)>& leaf) {
  if (auto r = leaf(e)) return *r;
  switch (e.kind()) {
    case Kind::Sum:
    case Kind::Product: {
      std::vector<Expr> kids;
      kids.reserve(e.args().size());
      for (const Expr& k : e.args()) kids.push_back(rebuild(k, leaf));
      return e.kind() == Kind::Sum ? Expr::raw_sum(std::move(kids)) : Expr::raw_product(std::move(kids));
    }
    case Kind::Power: return Expr::raw_power(rebuild(e.base(), leaf), e.exponent());
    case Kind::Func: return Expr::func(e.func_kind(), rebuild(e.arg(), leaf));
    default: return e;
  }
}

}  // namespace

Expr partial_derivative(const Expr& e, const Expr& var) {
  if (!var.is_atom()) throw Error("can only differentiate with respect to an atom");
  detail::Derivation d([&](const Expr& a) -> std::optional<Expr> {
    if (a == var) return Expr(1);
    if (a.kind() == Kind::Unknown) return std::nullopt;
    return Expr(0);
  });
  return d(e);
}

Expr partial_derivative(const Expr& e, const Expr& var, const Context& ctx) {
  ctx.check(var);
  return partial_derivative(e, var);
}

Expr substitute(const Expr& e, const Substitution& bindings) {
  if (bindings.empty()) return normalize(e);
  auto leaf = [&](const Expr& x) -> std::optional<Expr> {
    if (!x.is_atom()) return std::nullopt;
    auto it = bindings.find(x);
    if (it != bindings.end()) return it->second;
    if (x.kind() != Kind::Unknown) return x;
    std::vector<Expr> args = x.args();
    bool touched = false;
    for (Expr& a : args) {
      auto jt = bindings.find(a);
      if (jt == bindings.end()) continue;
      const Expr& r = jt->second;
      bool ok = r.kind() == Kind::Indep || (r.kind() == Kind::Jet && r.jet_var().order() == 0);
      if (!ok)
        throw Error("cannot substitute a non-variable into the arguments of unknown function '" + x.name() +
                    "'");
      a = r;
      touched = true;
    }
    if (!touched) return x;
    return Expr::unknown(x.name(), std::move(args), x.deriv());
  };
  return normalize(rebuild(e, leaf));
}

Expr substitute(const Expr& e, const Substitution& bindings, const Context& ctx) {
  for (const auto& [k, v] : bindings) {
    ctx.check(k);
    ctx.check(v);
  }
  return substitute(e, bindings);
}

Expr substitute_unknown(const Expr& e, const std::string& name, const Expr& replacement) {
  std::map<std::vector<int>, Expr> cache;
  std::vector<Expr> sig;
  auto derivative = [&](const Expr& u) -> Expr {
    auto it = cache.find(u.deriv());
    if (it != cache.end()) return it->second;
    Expr r = normalize(replacement);
    for (int k : u.deriv()) r = partial_derivative(r, u.args()[static_cast<std::size_t>(k)]);
    cache.emplace(u.deriv(), r);
    return r;
  };
  auto leaf = [&](const Expr& x) -> std::optional<Expr> {
    if (x.kind() != Kind::Unknown || x.name() != name) {
      if (x.is_atom()) return x;
      return std::nullopt;
    }
    if (sig.empty()) {
      sig = x.args();
    } else if (sig != x.args()) {
      throw Error("unknown function '" + name + "' appears with inconsistent arguments");
    }
    return derivative(x);
  };
  return normalize(rebuild(e, leaf));
}

int jet_order(const Expr& e) {
  int best = 0;
  visit(e, [&](const Expr& x) {
    if (x.kind() == Kind::Jet) best = std::max(best, static_cast<int>(x.jet_var().order()));
  });
  return best;
}

ExprSet atoms(const Expr& e) {
  ExprSet out;
  visit(e, [&](const Expr& x) {
    if (x.is_atom()) out.insert(x);
  });
  return out;
}

std::set<JetVar> jet_vars(const Expr& e) {
  std::set<JetVar> out;
  visit(e, [&](const Expr& x) {
    if (x.kind() == Kind::Jet) out.insert(x.jet_var());
  });
  return out;
}

bool depends_on(const Expr& e, const Expr& atom) {
  bool found = false;
  visit(e, [&](const Expr& x) {
    if (!found && x == atom) found = true;
  });
  return found;
}

bool has_unknowns(const Expr& e) {
  bool found = false;
  visit(e, [&](const Expr& x) {
    if (x.kind() == Kind::Unknown) found = true;
  });
  return found;
}

namespace {

Rational eval(const Expr& e, const Assignment& values) {
  switch (e.kind()) {
    case Kind::Const: return e.value();
    case Kind::Indep:
    case Kind::Jet:
    case Kind::Param:
    case Kind::Unknown: {
      auto it = values.find(e);
      if (it == values.end()) throw EvaluationError("no value for an atom of the expression");
      return it->second;
    }
    case Kind::Sum: {
      Rational s(0);
      for (const Expr& t : e.args()) s += eval(t, values);
      return s;
    }
    case Kind::Product: {
      Rational s(1);
      for (const Expr& t : e.args()) {
        s *= eval(t, values);
      }
      return s;
    }
    case Kind::Power: {
      Rational b = eval(e.base(), values);
      if (b == 0 && e.exponent() < 0) throw EvaluationError("division by zero");
      auto v = exact_power(b, e.exponent());
      if (!v) throw EvaluationError("power is not rational at this point");
      return *v;
    }
    case Kind::Func: {
      Rational a = eval(e.arg(), values);
      switch (e.func_kind()) {
        case FuncKind::Exp:
          if (a == 0) return Rational(1);
          break;
        case FuncKind::Log:
          if (a == 1) return Rational(0);
          break;
        case FuncKind::Sin:
          if (a == 0) return Rational(0);
          break;
        case FuncKind::Cos:
          if (a == 0) return Rational(1);
          break;
      }
      throw EvaluationError(std::string(func_name(e.func_kind())) + " is not rational at this point");
    }
  }
  return Rational(0);
}

}  // namespace

Rational evaluate(const Expr& e, const Assignment& values) { return eval(e, values); }

}  // namespace liesym
