#include "oracles.hpp"

#include <gmp.h>

namespace oracle {

using namespace liesym;

std::size_t rank(std::vector<std::vector<Rational>> rows) {
  std::size_t r = 0;
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t piv = r;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

bool in_span(const std::vector<std::vector<Rational>>& basis, const std::vector<Rational>& v) {
  auto with = basis;
  with.push_back(v);
  return rank(basis) == rank(with);
}

namespace {

std::optional<Rational> root(const Rational& x, unsigned long n) {
  if (n == 1) return x;
  if (x < 0 && n % 2 == 0) return std::nullopt;
  Integer num = abs(x.get_num()), den = x.get_den(), rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) || !mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n))
    return std::nullopt;
  Rational out(rn, rd);
  out.canonicalize();
  return x < 0 ? -out : out;
}

std::optional<Rational> ipow(const Rational& b, long n) {
  if (n < 0) {
    if (b == 0) return std::nullopt;
    auto p = ipow(b, -n);
    return Rational(1) / *p;
  }
  Rational out = 1;
  for (long i = 0; i < n; ++i) out *= b;
  return out;
}

}  // namespace

std::optional<Rational> eval(const Expr& e, const Assignment& values) {
  switch (e.kind()) {
    case Kind::Const:
      return e.value();
    case Kind::Indep:
    case Kind::Jet:
    case Kind::Param: {
      auto it = values.find(e);
      if (it == values.end()) return std::nullopt;
      return it->second;
    }
    case Kind::Unknown:
      return std::nullopt;
    case Kind::Func: {
      auto a = eval(e.arg(), values);
      if (!a) return std::nullopt;
      switch (e.func_kind()) {
        case FuncKind::Exp:
          if (*a == 0) return Rational(1);
          return std::nullopt;
        case FuncKind::Log:
          if (*a == 1) return Rational(0);
          return std::nullopt;
        case FuncKind::Sin:
          if (*a == 0) return Rational(0);
          return std::nullopt;
        case FuncKind::Cos:
          if (*a == 0) return Rational(1);
          return std::nullopt;
      }
      return std::nullopt;
    }
    case Kind::Sum: {
      Rational s = 0;
      for (const Expr& t : e.args()) {
        auto v = eval(t, values);
        if (!v) return std::nullopt;
        s += *v;
      }
      return s;
    }
    case Kind::Product: {
      Rational s = 1;
      for (const Expr& t : e.args()) {
        auto v = eval(t, values);
        if (!v) return std::nullopt;
        s *= *v;
      }
      return s;
    }
    case Kind::Power: {
      auto b = eval(e.base(), values);
      if (!b) return std::nullopt;
      const Rational& x = e.exponent();
      auto r = root(*b, x.get_den().get_ui());
      if (!r) return std::nullopt;
      return ipow(*r, x.get_num().get_si());
    }
  }
  return std::nullopt;
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational random_rational(Rng& rng, int range, int max_den) {
  Rational r(uniform(rng, -range, range), uniform(rng, 1, max_den));
  r.canonicalize();
  return r;
}

bool numerically_equal(const Expr& a, const Expr& b, const std::vector<Expr>& atoms, Rng& rng, int trials) {
  int usable = 0;
  for (int t = 0; t < trials * 4 && usable < trials; ++t) {
    Assignment pt;
    for (const Expr& x : atoms) pt[x] = random_rational(rng);
    auto va = eval(a, pt), vb = eval(b, pt);
    if (!va || !vb) continue;
    if (*va != *vb) return false;
    ++usable;
  }
  return usable > 0;
}

Expr random_poly(Rng& rng, const std::vector<Expr>& atoms, int degree, int terms) {
  std::vector<Expr> out;
  for (int k = 0; k < terms; ++k) {
    std::vector<Expr> f{Expr(static_cast<long>(uniform(rng, -3, 3)))};
    int d = uniform(rng, 0, degree);
    for (int i = 0; i < d; ++i) f.push_back(atoms[static_cast<std::size_t>(uniform(rng, 0, int(atoms.size()) - 1))]);
    out.push_back(product(f));
  }
  return sum(out);
}

Expr random_expr(Rng& rng, const std::vector<Expr>& atoms, ExprShape shape) {
  auto leaf = [&]() -> Expr {
    if (uniform(rng, 0, 3) == 0) return Expr(random_rational(rng, 5, 3));
    return atoms[static_cast<std::size_t>(uniform(rng, 0, int(atoms.size()) - 1))];
  };
  if (shape.depth <= 0) return leaf();
  ExprShape sub = shape;
  sub.depth = shape.depth - 1;
  switch (uniform(rng, 0, 7)) {
    case 0:
      return leaf();
    case 1:
    case 2:
      return random_expr(rng, atoms, sub) + random_expr(rng, atoms, sub);
    case 3:
      return random_expr(rng, atoms, sub) - random_expr(rng, atoms, sub);
    case 4:
      return random_expr(rng, atoms, sub) * random_expr(rng, atoms, sub);
    case 5: {
      Rational ex = uniform(rng, 1, 3);
      if (shape.negative_powers && uniform(rng, 0, 2) == 0) ex = -ex;
      if (shape.fractional_powers && uniform(rng, 0, 2) == 0) ex /= 2;
      // keep bases away from zero so the power is defined
      Expr base = random_expr(rng, atoms, sub);
      if (ex < 0 || !is_integer(ex)) base = base * base + 1;
      return pow(base, ex);
    }
    case 6:
      if (shape.functions) {
        Expr a = random_expr(rng, atoms, sub);
        switch (uniform(rng, 0, 3)) {
          case 0:
            return liesym::exp(a);
          case 1:
            return liesym::log(a * a + 1);
          case 2:
            return liesym::sin(a);
          default:
            return liesym::cos(a);
        }
      }
      return leaf();
    default:
      return Expr(static_cast<long>(uniform(rng, -3, 3))) * random_expr(rng, atoms, sub);
  }
}

Context make_context(int p, int q) {
  static const char* xs[] = {"x", "y", "z"};
  static const char* us[] = {"u", "v", "w"};
  Context ctx;
  for (int i = 0; i < p; ++i) ctx.add_indep(xs[i]);
  for (int a = 0; a < q; ++a) ctx.add_dep(us[a]);
  return ctx;
}

std::vector<Expr> base_atoms(const Context& ctx) {
  std::vector<Expr> out;
  for (int i = 0; i < ctx.p(); ++i) out.push_back(Expr::indep(i));
  for (int a = 0; a < ctx.q(); ++a) out.push_back(Expr::jet(a));
  return out;
}

std::vector<Expr> jet_atoms(const Context& ctx, int n) {
  auto out = base_atoms(ctx);
  for (int a = 0; a < ctx.q(); ++a)
    for (const auto& J : MultiIndex::all_up_to(ctx.p(), n)) out.push_back(Expr::jet(a, J));
  return out;
}

VectorField random_field(Rng& rng, const Context& ctx, int degree) {
  auto atoms = base_atoms(ctx);
  VectorField v = VectorField::zero(ctx.p(), ctx.q());
  for (auto& c : v.xi) c = random_poly(rng, atoms, degree, uniform(rng, 0, 3));
  for (auto& c : v.phi) c = random_poly(rng, atoms, degree, uniform(rng, 0, 3));
  return v;
}

Expr on_solution(const Expr& f, const std::vector<Expr>& g) {
  Substitution sub;
  for (const JetVar& j : jet_vars(f)) {
    Expr d = g[static_cast<std::size_t>(j.dep)];
    for (int i : j.idx.entries()) d = partial_derivative(d, Expr::indep(i));
    sub[Expr::jet(j)] = d;
  }
  return substitute(f, sub);
}

}  // namespace oracle
