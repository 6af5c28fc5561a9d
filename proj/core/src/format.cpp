// Text rendering of expressions. The output is accepted by parse_expr and
// reproduces the same canonical expression.

#include <sstream>

#include "liesym/parse.hpp"

namespace liesym {

namespace {

enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

std::string arg_name(const Expr& a, const Context& ctx) {
  if (a.kind() == Kind::Indep) return ctx.indep_name(a.index());
  return ctx.dep_name(a.jet_var().dep);
}

class Printer {
 public:
  explicit Printer(const Context& ctx) : ctx_(ctx) {}

  // Returns the text and its binding strength.
  std::pair<std::string, int> render(const Expr& e) const {
    switch (e.kind()) {
      case Kind::Const: {
        const Rational& v = e.value();
        if (v < 0) return {to_string(v), kUnary};
        if (!is_integer(v)) return {to_string(v), kProduct};
        return {to_string(v), kAtom};
      }
      case Kind::Indep: return {ctx_.indep_name(e.index()), kAtom};
      case Kind::Jet: return {format_jet(e.jet_var(), ctx_), kAtom};
      case Kind::Param: return {e.name(), kAtom};
      case Kind::Unknown: return {unknown(e), kAtom};
      case Kind::Func: return {std::string(func_name(e.func_kind())) + "(" + render(e.arg()).first + ")", kAtom};
      case Kind::Power: return {power(e), kPower};
      case Kind::Product: return product(e);
      case Kind::Sum: return {sum(e), kSum};
    }
    return {"?", kAtom};
  }

 private:
  std::string unknown(const Expr& e) const {
    std::string s = e.name();
    const auto& d = e.deriv();
    if (d.empty()) return s;
    if (d.size() == 1) return s + "_" + arg_name(e.args()[static_cast<std::size_t>(d[0])], ctx_);
    s += "_{";
    for (std::size_t k = 0; k < d.size(); ++k) {
      if (k) s += ",";
      s += arg_name(e.args()[static_cast<std::size_t>(d[k])], ctx_);
    }
    return s + "}";
  }

  std::string wrap(const Expr& e, int min_prec) const {
    auto [text, prec] = render(e);
    if (prec < min_prec) return "(" + text + ")";
    return text;
  }

  std::string power(const Expr& e) const {
    std::string base = wrap(e.base(), kAtom);
    const Rational& r = e.exponent();
    if (is_integer(r) && r >= 0) return base + "^" + to_string(r);
    return base + "^(" + to_string(r) + ")";
  }

  std::pair<std::string, int> product(const Expr& e) const {
    const auto& fs = e.operands();
    std::size_t start = 0;
    std::string prefix;
    if (fs.front().is_const()) {
      const Rational& c = fs.front().value();
      start = 1;
      if (c == -1) {
        prefix = "-";
      } else {
        prefix = to_string(c) + "*";
      }
    }
    std::string body;
    for (std::size_t k = start; k < fs.size(); ++k) {
      if (k > start) body += "*";
      body += wrap(fs[k], kPower);
    }
    bool negative = !prefix.empty() && prefix[0] == '-';
    return {prefix + body, negative ? kUnary : kProduct};
  }

  std::string sum(const Expr& e) const {
    std::string out;
    bool first = true;
    for (const Expr& t : e.operands()) {
      auto [text, prec] = render(t);
      if (prec < kProduct && prec != kUnary) text = "(" + text + ")";
      if (first) {
        out = text;
        first = false;
      } else if (!text.empty() && text[0] == '-') {
        out += " - " + text.substr(1);
      } else {
        out += " + " + text;
      }
    }
    return out;
  }

  const Context& ctx_;
};

}  // namespace

std::string format_jet(const JetVar& v, const Context& ctx) {
  const std::string& u = ctx.dep_name(v.dep);
  if (v.idx.empty()) return u;
  if (ctx.single_char_indeps()) {
    std::string s = u + "_";
    for (int i : v.idx.entries()) s += ctx.indep_name(i);
    return s;
  }
  std::string s = "D(" + u;
  for (int i : v.idx.entries()) s += "," + ctx.indep_name(i);
  return s + ")";
}

std::string format_expr(const Expr& e, const Context& ctx) { return Printer(ctx).render(e).first; }

}  // namespace liesym
