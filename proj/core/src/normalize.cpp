// Canonical form of expressions.
//
// An expression is converted to a sparse generalized polynomial: a map from
// monomials to rational coefficients, where a monomial is a sorted list of
// (base, exponent) factors. Bases are
//   - atoms and function applications (any non-zero rational exponent),
//   - constant radicals c^f with f in (0,1),
//   - kernels: primitive sums carrying a negative or fractional exponent.
// Non-negative integer powers of sums are always multiplied out. Sums are
// finalized by pulling the smallest power of every kernel out of all terms,
// which brings them over a common denominator so that rational-function
// cancellation is visible, then dividing out kernels that still divide the
// numerator exactly.

#include <algorithm>
#include <map>
#include <numeric>

#include "liesym/errors.hpp"
#include "liesym/expr.hpp"
#include "poly.hpp"

namespace liesym::detail {

// ---------------------------------------------------------------- ordering

Rational degree(const Monomial& m) {
  Rational d(0);
  for (const Factor& f : m) d += f.exp;
  return d;
}

int compare_monomials(const Monomial& a, const Monomial& b) {
  Rational da = degree(a), db = degree(b);
  if (da != db) return da < db ? -1 : 1;
  // Lexicographic, most significant (largest) base first.
  auto ia = a.rbegin(), ib = b.rbegin();
  while (ia != a.rend() || ib != b.rend()) {
    if (ia == a.rend()) return ib->exp > 0 ? -1 : 1;
    if (ib == b.rend()) return ia->exp > 0 ? 1 : -1;
    int c = compare(ia->base, ib->base);
    if (c == 0) {
      if (ia->exp != ib->exp) return ia->exp < ib->exp ? -1 : 1;
      ++ia;
      ++ib;
    } else if (c > 0) {
      return ia->exp > 0 ? 1 : -1;
    } else {
      return ib->exp > 0 ? -1 : 1;
    }
  }
  return 0;
}

void add_term(Poly& p, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

void add_poly(Poly& into, const Poly& other) {
  for (const auto& [m, c] : other) add_term(into, m, c);
}

Poly constant_poly(const Rational& c) {
  Poly p;
  add_term(p, {}, c);
  return p;
}

namespace {

bool is_kernel(const Expr& base) { return base.kind() == Kind::Sum; }

bool is_nonneg_integer(const Rational& r) { return is_integer(r) && r >= 0; }

long to_long(const Integer& z) {
  if (!z.fits_slong_p()) throw Error("exponent too large");
  return z.get_si();
}

// Prime factorization by trial division. A cofactor without small prime
// factors is kept whole, reduced to its smallest perfect-power root.
std::vector<std::pair<Integer, long>> factorize(Integer n) {
  std::vector<std::pair<Integer, long>> out;
  for (unsigned long p = 2; p <= 100000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    long e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(Integer(p), e);
  }
  if (n > 1) {
    long e = 1;
    for (unsigned long j = mpz_sizeinbase(n.get_mpz_t(), 2); j >= 2; --j) {
      Integer root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), j) != 0) {
        n = root;
        e = static_cast<long>(j);
        break;
      }
    }
    out.emplace_back(n, e);
  }
  return out;
}

// c^r as a polynomial: a rational coefficient times radicals p^f of distinct
// primes p with f in (0,1). Negative bases under even roots stay unsplit.
Poly const_power(const Rational& c, const Rational& r) {
  if (r == 0) return constant_poly(1);
  if (c == 0) {
    if (r < 0) throw DegenerateExpression("division by zero");
    return {};
  }
  if (auto v = exact_power(c, r)) return constant_poly(*v);
  Poly p;
  if (c < 0 && r.get_den() % 2 == 0) {
    Integer k = floor_of(r);
    p.emplace(Monomial{Factor{Expr::constant(c), r - Rational(k)}}, int_power(c, to_long(k)));
    return p;
  }
  Rational coeff(1);
  if (c < 0 && r.get_num() % 2 != 0) coeff = -1;
  std::map<Integer, Rational> exps;
  for (const auto& [q, e] : factorize(abs(c.get_num()))) exps[q] += r * e;
  for (const auto& [q, e] : factorize(c.get_den())) exps[q] -= r * e;
  std::vector<Factor> m;
  for (const auto& [q, x] : exps) {
    Integer k = floor_of(x);
    coeff *= int_power(Rational(q), to_long(k));
    Rational f = x - Rational(k);
    if (f != 0) m.push_back(Factor{Expr::constant(Rational(q)), f});
  }
  std::sort(m.begin(), m.end(),
            [](const Factor& a, const Factor& b) { return compare(a.base, b.base) < 0; });
  p.emplace(std::move(m), coeff);
  return p;
}

Poly single_factor(const Expr& base, const Rational& e) {
  Poly p;
  Monomial m;
  m.push_back(Factor{base, e});
  p.emplace(std::move(m), Rational(1));
  return p;
}

Poly power_poly(const Poly& p, const Rational& r);

// Merges two monomials. Returns the product as a polynomial, since merged
// kernels may reach a non-negative integer power and merged radicals may
// contribute to the coefficient.
Poly mul_monomials(const Monomial& a, const Monomial& b, const Rational& coeff) {
  Monomial out;
  out.reserve(a.size() + b.size());
  Rational c = coeff;
  std::vector<std::pair<Expr, long>> expansions;
  std::vector<Factor> radicals;

  auto push = [&](const Expr& base, const Rational& e) {
    if (e == 0) return;
    if (base.kind() == Kind::Const && (is_integer(e) || e < 0 || e >= 1)) {
      radicals.push_back(Factor{base, e});
      return;
    }
    if (is_kernel(base) && is_nonneg_integer(e)) {
      expansions.emplace_back(base, to_long(e.get_num()));
      return;
    }
    out.push_back(Factor{base, e});
  };

  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      push(a[i].base, a[i].exp);
      ++i;
    } else if (i == a.size()) {
      push(b[j].base, b[j].exp);
      ++j;
    } else {
      int cmp = compare(a[i].base, b[j].base);
      if (cmp == 0) {
        push(a[i].base, a[i].exp + b[j].exp);
        ++i;
        ++j;
      } else if (cmp < 0) {
        push(a[i].base, a[i].exp);
        ++i;
      } else {
        push(b[j].base, b[j].exp);
        ++j;
      }
    }
  }

  Poly result;
  result.emplace(std::move(out), c);
  if (radicals.empty() && expansions.empty()) {
    if (c == 0) return {};
    return result;
  }
  // Radicals outside (0,1) are rewritten as a rational times a canonical radical.
  for (const Factor& f : radicals) result = mul_poly(result, const_power(f.base.value(), f.exp));
  for (const auto& [base, k] : expansions) {
    result = mul_poly(result, power_poly(kernel_poly(base), Rational(k)));
  }
  return result;
}

}  // namespace

Poly mul_poly(const Poly& a, const Poly& b) {
  Poly out;
  if (a.empty() || b.empty()) return out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) {
      // Fast path: no shared bases needing special handling is detected inside.
      Poly t = mul_monomials(ma, mb, ca * cb);
      add_poly(out, t);
    }
  }
  return out;
}

Poly kernel_poly(const Expr& base) { return to_poly(base); }

namespace {

Poly int_power_poly(const Poly& p, long n) {
  Poly result = constant_poly(1);
  Poly b = p;
  while (n > 0) {
    if (n & 1) result = mul_poly(result, b);
    n >>= 1;
    if (n > 0) b = mul_poly(b, b);
  }
  return result;
}

// Content (positive) and sign of the lowest-order term.
std::pair<Rational, int> content_and_sign(const Poly& p) {
  Integer g = 0, l = 1;
  for (const auto& [m, c] : p) {
    Integer num = abs(c.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  Rational content(g, l);
  content.canonicalize();
  int sign = sgn(p.begin()->second) < 0 ? -1 : 1;
  return {content, sign};
}

Poly scale(const Poly& p, const Rational& s) {
  Poly out;
  for (const auto& [m, c] : p) add_term(out, m, c * s);
  return out;
}

Poly power_poly(const Poly& p, const Rational& r) {
  if (r == 0) return constant_poly(1);
  if (p.empty()) {
    if (r < 0) throw DegenerateExpression("division by zero");
    return {};
  }
  if (is_nonneg_integer(r)) return int_power_poly(p, to_long(r.get_num()));

  if (p.size() == 1) {
    const auto& [m, c] = *p.begin();
    Poly out = const_power(c, r);
    for (const Factor& f : m) {
      Rational e = f.exp * r;
      if (f.base.kind() == Kind::Const) {
        out = mul_poly(out, const_power(f.base.value(), e));
      } else if (is_kernel(f.base) && is_nonneg_integer(e)) {
        out = mul_poly(out, int_power_poly(kernel_poly(f.base), to_long(e.get_num())));
      } else if (e != 0) {
        out = mul_poly(out, single_factor(f.base, e));
      }
    }
    return out;
  }

  Reconciled rc = reconcile(p);
  if (rc.numerator.empty()) {
    if (r < 0) throw DegenerateExpression("division by zero");
    return {};
  }
  if (rc.numerator.size() == 1) {
    return power_poly(mul_poly(rc.numerator, rc.outer_poly()), r);
  }
  auto [content, sign] = content_and_sign(rc.numerator);
  Rational unit = content * sign;
  Poly primitive = scale(rc.numerator, 1 / unit);
  Expr kernel = sum_expr(primitive);
  Poly out = const_power(unit, r);
  out = mul_poly(out, single_factor(kernel, r));
  for (const Factor& f : rc.outer) out = mul_poly(out, power_poly(single_factor(f.base, f.exp), r));
  return out;
}

Expr simplify_func(FuncKind fn, const Expr& arg) {
  if (arg.is_const()) {
    const Rational& v = arg.value();
    switch (fn) {
      case FuncKind::Exp:
        if (v == 0) return Expr(1);
        break;
      case FuncKind::Log:
        if (v == 1) return Expr(0);
        if (v == 0) throw DegenerateExpression("log(0)");
        break;
      case FuncKind::Sin:
        if (v == 0) return Expr(0);
        break;
      case FuncKind::Cos:
        if (v == 0) return Expr(1);
        break;
    }
  }
  return Expr::func(fn, arg);
}

// Exact division of n by d when every exponent involved is a non-negative integer.
std::optional<Poly> exact_divide(const Poly& n, const Poly& d) {
  if (d.empty()) return std::nullopt;
  auto polynomial = [](const Poly& p) {
    for (const auto& [m, c] : p)
      for (const Factor& f : m)
        if (!is_nonneg_integer(f.exp) || f.base.kind() == Kind::Const) return false;
    return true;
  };
  if (!polynomial(n) || !polynomial(d)) return std::nullopt;
  const auto& [lead_m, lead_c] = *d.rbegin();
  Poly rem = n;
  Poly quot;
  std::size_t guard = 0;
  const std::size_t limit = 64 * (n.size() + 1) * (d.size() + 1);
  while (!rem.empty()) {
    if (++guard > limit) return std::nullopt;
    const auto& [rm, rc] = *rem.rbegin();
    // monomial quotient rm / lead_m
    Monomial q;
    std::size_t i = 0, j = 0;
    bool ok = true;
    while (i < rm.size() || j < lead_m.size()) {
      if (j == lead_m.size()) {
        q.push_back(rm[i++]);
      } else if (i == rm.size()) {
        ok = false;
        break;
      } else {
        int c = compare(rm[i].base, lead_m[j].base);
        if (c == 0) {
          Rational e = rm[i].exp - lead_m[j].exp;
          if (e < 0) {
            ok = false;
            break;
          }
          if (e != 0) q.push_back(Factor{rm[i].base, e});
          ++i;
          ++j;
        } else if (c < 0) {
          q.push_back(rm[i++]);
        } else {
          ok = false;
          break;
        }
      }
    }
    if (!ok) return std::nullopt;
    Rational qc = rc / lead_c;
    Poly qt;
    qt.emplace(q, qc);
    add_term(quot, q, qc);
    Poly sub = mul_poly(qt, d);
    for (const auto& [m, c] : sub) add_term(rem, m, -c);
  }
  return quot;
}

}  // namespace

Poly Reconciled::outer_poly() const {
  Poly p = constant_poly(1);
  for (const Factor& f : outer) p = mul_poly(p, single_factor(f.base, f.exp));
  return p;
}

Reconciled reconcile(Poly p) {
  std::map<Expr, Rational, ExprLess> outer;
  bool divided = true;
  while (divided) {
    bool changed = true;
    while (changed && p.size() > 1) {
      changed = false;
      ExprSet kernels;
      for (const auto& [m, c] : p)
        for (const Factor& f : m)
          if (is_kernel(f.base)) kernels.insert(f.base);
      for (const Expr& k : kernels) {
        std::vector<Rational> exps;
        exps.reserve(p.size());
        for (const auto& [m, c] : p) {
          Rational e(0);
          for (const Factor& f : m)
            if (f.base == k) e = f.exp;
          exps.push_back(e);
        }
        Rational lo = *std::min_element(exps.begin(), exps.end());
        bool needs = lo != 0;
        for (const Rational& e : exps)
          if (e - lo >= 1) needs = true;
        if (!needs) continue;

        changed = true;
        outer[k] += lo;
        if (outer[k] == 0) outer.erase(k);
        Poly next;
        const Poly kp = kernel_poly(k);
        std::size_t idx = 0;
        for (const auto& [m, c] : p) {
          Rational d = exps[idx++] - lo;
          Integer whole = floor_of(d);
          Rational frac = d - Rational(whole);
          Monomial rest;
          for (const Factor& f : m)
            if (!(f.base == k)) rest.push_back(f);
          if (frac != 0) {
            Factor nf{k, frac};
            auto pos = std::lower_bound(rest.begin(), rest.end(), nf,
                                        [](const Factor& a, const Factor& b) { return compare(a.base, b.base) < 0; });
            rest.insert(pos, nf);
          }
          Poly t;
          t.emplace(std::move(rest), c);
          if (whole > 0) t = mul_poly(t, int_power_poly(kp, to_long(whole)));
          add_poly(next, t);
        }
        p = std::move(next);
        break;
      }
    }

    divided = false;
    if (p.size() > 1) {
      for (auto it = outer.begin(); it != outer.end(); ++it) {
        const Expr& k = it->first;
        bool has_remnant = false;
        for (const auto& [m, c] : p)
          for (const Factor& f : m)
            if (f.base == k) has_remnant = true;
        if (has_remnant) continue;
        if (auto q = exact_divide(p, kernel_poly(k))) {
          p = std::move(*q);
          it->second += 1;
          if (it->second == 0) outer.erase(it);
          divided = true;
          break;
        }
      }
    }
  }
  Reconciled rc;
  rc.numerator = std::move(p);
  for (auto& [k, e] : outer) rc.outer.push_back(Factor{k, e});
  return rc;
}

Expr factor_expr(const Factor& f) {
  if (f.exp == 1) return f.base;
  return Expr::raw_power(f.base, f.exp);
}

Expr term_expr(const Monomial& m, const Rational& c) {
  if (c == 0) return Expr(0);
  std::vector<Expr> kids;
  if (c != 1 || m.empty()) kids.push_back(Expr::constant(c));
  for (const Factor& f : m) kids.push_back(factor_expr(f));
  if (kids.size() == 1) return kids.front();
  return Expr::raw_product(std::move(kids));
}

Expr sum_expr(const Poly& p) {
  if (p.empty()) return Expr(0);
  if (p.size() == 1) return term_expr(p.begin()->first, p.begin()->second);
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p) terms.push_back(term_expr(m, c));
  return Expr::raw_sum(std::move(terms));
}

Expr finalize(const Poly& p) {
  if (p.empty()) return Expr(0);
  if (p.size() == 1) return term_expr(p.begin()->first, p.begin()->second);
  Reconciled rc = reconcile(p);
  if (rc.numerator.empty()) return Expr(0);
  if (rc.outer.empty()) return sum_expr(rc.numerator);
  if (rc.numerator.size() == 1) {
    Poly merged = mul_poly(rc.numerator, rc.outer_poly());
    if (merged.size() <= 1) return sum_expr(merged);
    return finalize(merged);
  }
  std::vector<Expr> kids;
  kids.push_back(sum_expr(rc.numerator));
  for (const Factor& f : rc.outer) kids.push_back(factor_expr(f));
  return Expr::raw_product(std::move(kids));
}

Poly to_poly(const Expr& e) {
  switch (e.kind()) {
    case Kind::Const: return constant_poly(e.value());
    case Kind::Indep:
    case Kind::Jet:
    case Kind::Param:
    case Kind::Unknown: return single_factor(e, 1);
    case Kind::Func: {
      Expr a = normalize(e.arg());
      Expr f = simplify_func(e.func_kind(), a);
      if (f.is_const()) return constant_poly(f.value());
      return single_factor(f, 1);
    }
    case Kind::Sum: {
      Poly out;
      for (const Expr& t : e.operands()) add_poly(out, to_poly(t));
      return out;
    }
    case Kind::Product: {
      Poly out = constant_poly(1);
      for (const Expr& f : e.operands()) {
        out = mul_poly(out, to_poly(f));
        if (out.empty()) break;
      }
      return out;
    }
    case Kind::Power: {
      // A canonical kernel power converts without reprocessing.
      if (e.base().kind() == Kind::Sum && !is_nonneg_integer(e.exponent())) {
        Poly bp = to_poly(e.base());
        return power_poly(bp, e.exponent());
      }
      if (e.base().kind() == Kind::Const) return const_power(e.base().value(), e.exponent());
      return power_poly(to_poly(e.base()), e.exponent());
    }
  }
  return {};
}

}  // namespace liesym::detail

namespace liesym {

Expr normalize(const Expr& e) { return detail::finalize(detail::to_poly(e)); }

bool is_zero(const Expr& e) { return normalize(e).is_zero_const(); }

std::vector<CollectedTerm> collect(const Expr& e, const std::vector<Expr>& vars) {
  using namespace detail;
  Poly p = to_poly(e);
  std::map<std::vector<long>, Poly> groups;
  for (const auto& [m, c] : p) {
    std::vector<long> powers(vars.size(), 0);
    Monomial rest;
    for (const Factor& f : m) {
      auto it = std::find(vars.begin(), vars.end(), f.base);
      if (it != vars.end()) {
        if (!is_integer(f.exp) || f.exp < 0)
          throw NotPolynomial("variable appears with a negative or fractional exponent");
        powers[static_cast<std::size_t>(it - vars.begin())] = f.exp.get_num().get_si();
        continue;
      }
      for (const Expr& v : vars)
        if (depends_on(f.base, v)) throw NotPolynomial("variable appears inside a non-polynomial factor");
      rest.push_back(f);
    }
    add_term(groups[powers], rest, c);
  }
  std::vector<CollectedTerm> out;
  for (auto& [powers, poly] : groups) {
    Expr coeff = finalize(poly);
    if (coeff.is_zero_const()) continue;
    std::vector<Expr> factors;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (powers[i] != 0) factors.push_back(Expr::raw_power(vars[i], Rational(powers[i])));
    Expr mono = factors.empty() ? Expr(1) : normalize(Expr::raw_product(std::move(factors)));
    out.push_back(CollectedTerm{powers, mono, coeff});
  }
  return out;
}

}  // namespace liesym
