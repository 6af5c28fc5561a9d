#include "liesym/expr.hpp"

#include <algorithm>
#include <functional>

#include "liesym/errors.hpp"

namespace liesym {

// ---------------------------------------------------------------- MultiIndex

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
}

MultiIndex MultiIndex::with(int i) const {
  std::vector<int> e = entries_;
  e.insert(std::upper_bound(e.begin(), e.end(), i), i);
  MultiIndex out;
  out.entries_ = std::move(e);
  return out;
}

MultiIndex MultiIndex::with(const MultiIndex& other) const {
  std::vector<int> e = entries_;
  e.insert(e.end(), other.entries_.begin(), other.entries_.end());
  return MultiIndex(std::move(e));
}

std::optional<MultiIndex> MultiIndex::minus(const MultiIndex& sub) const {
  std::vector<int> rest;
  auto it = entries_.begin();
  auto jt = sub.entries_.begin();
  while (it != entries_.end()) {
    if (jt != sub.entries_.end() && *it == *jt) {
      ++it;
      ++jt;
    } else if (jt != sub.entries_.end() && *jt < *it) {
      return std::nullopt;
    } else {
      rest.push_back(*it++);
    }
  }
  if (jt != sub.entries_.end()) return std::nullopt;
  MultiIndex out;
  out.entries_ = std::move(rest);
  return out;
}

std::size_t MultiIndex::count(int i) const {
  return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), i));
}

std::vector<MultiIndex> MultiIndex::all_of_order(int p, int k) {
  std::vector<MultiIndex> out;
  if (k == 0) {
    out.emplace_back();
    return out;
  }
  if (p <= 0) return out;
  std::vector<int> cur(static_cast<std::size_t>(k), 0);
  while (true) {
    out.push_back(MultiIndex(cur));
    int pos = k - 1;
    while (pos >= 0 && cur[static_cast<std::size_t>(pos)] == p - 1) --pos;
    if (pos < 0) break;
    int v = cur[static_cast<std::size_t>(pos)] + 1;
    for (int j = pos; j < k; ++j) cur[static_cast<std::size_t>(j)] = v;
  }
  return out;
}

std::vector<MultiIndex> MultiIndex::all_up_to(int p, int n) {
  std::vector<MultiIndex> out;
  for (int k = 1; k <= n; ++k) {
    auto level = all_of_order(p, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

// ---------------------------------------------------------------- functions

const char* func_name(FuncKind f) {
  switch (f) {
    case FuncKind::Exp: return "exp";
    case FuncKind::Log: return "log";
    case FuncKind::Sin: return "sin";
    case FuncKind::Cos: return "cos";
  }
  return "?";
}

std::optional<FuncKind> func_from_name(const std::string& name) {
  if (name == "exp") return FuncKind::Exp;
  if (name == "log") return FuncKind::Log;
  if (name == "sin") return FuncKind::Sin;
  if (name == "cos") return FuncKind::Cos;
  return std::nullopt;
}

// ---------------------------------------------------------------- nodes

namespace {

inline void mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::size_t hash_rational(const Rational& r) {
  std::size_t h = std::hash<long>{}(mpz_get_si(r.get_num_mpz_t()));
  mix(h, std::hash<long>{}(mpz_get_si(r.get_den_mpz_t())));
  mix(h, mpz_size(r.get_num_mpz_t()));
  return h;
}

std::size_t compute_hash(const detail::Node& n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 1315423911u;
  switch (n.kind) {
    case Kind::Const: mix(h, hash_rational(n.value)); break;
    case Kind::Indep: mix(h, static_cast<std::size_t>(n.index)); break;
    case Kind::Jet:
      mix(h, static_cast<std::size_t>(n.index));
      for (int e : n.mi.entries()) mix(h, static_cast<std::size_t>(e) + 17);
      break;
    case Kind::Param: mix(h, std::hash<std::string>{}(n.name)); break;
    case Kind::Unknown:
      mix(h, std::hash<std::string>{}(n.name));
      for (int d : n.deriv) mix(h, static_cast<std::size_t>(d) + 31);
      break;
    case Kind::Func: mix(h, static_cast<std::size_t>(n.fn)); break;
    case Kind::Power: mix(h, hash_rational(n.value)); break;
    default: break;
  }
  for (const Expr& k : n.kids) mix(h, k.hash());
  return h;
}

const Expr& zero_expr() {
  static const Expr z = Expr::constant(Rational(0));
  return z;
}

}  // namespace

Expr::Expr() : Expr(zero_expr()) {}
Expr::Expr(long value) : Expr(constant(Rational(value))) {}
Expr::Expr(const Rational& value) : Expr(constant(value)) {}

namespace {
std::shared_ptr<const detail::Node> finish(detail::Node n) {
  n.hash = compute_hash(n);
  return std::make_shared<const detail::Node>(std::move(n));
}
}  // namespace

Expr Expr::constant(const Rational& value) {
  detail::Node n;
  n.kind = Kind::Const;
  n.value = value;
  n.value.canonicalize();
  return Expr(finish(std::move(n)));
}

Expr Expr::indep(int index) {
  detail::Node n;
  n.kind = Kind::Indep;
  n.index = index;
  return Expr(finish(std::move(n)));
}

Expr Expr::jet(int dep, MultiIndex idx) {
  detail::Node n;
  n.kind = Kind::Jet;
  n.index = dep;
  n.mi = std::move(idx);
  return Expr(finish(std::move(n)));
}

Expr Expr::param(std::string name) {
  detail::Node n;
  n.kind = Kind::Param;
  n.name = std::move(name);
  return Expr(finish(std::move(n)));
}

Expr Expr::unknown(std::string name, std::vector<Expr> args, std::vector<int> deriv) {
  for (const Expr& a : args) {
    if (a.kind() != Kind::Indep && !(a.kind() == Kind::Jet && a.jet_var().order() == 0))
      throw Error("unknown function arguments must be independent or order-0 dependent variables");
  }
  std::sort(deriv.begin(), deriv.end());
  for (int d : deriv)
    if (d < 0 || static_cast<std::size_t>(d) >= args.size()) throw Error("derivative slot out of range");
  detail::Node n;
  n.kind = Kind::Unknown;
  n.name = std::move(name);
  n.kids = std::move(args);
  n.deriv = std::move(deriv);
  return Expr(finish(std::move(n)));
}

Expr Expr::func(FuncKind f, Expr arg) {
  detail::Node n;
  n.kind = Kind::Func;
  n.fn = f;
  n.kids.push_back(std::move(arg));
  return Expr(finish(std::move(n)));
}

Expr Expr::raw_sum(std::vector<Expr> terms) {
  detail::Node n;
  n.kind = Kind::Sum;
  n.kids = std::move(terms);
  return Expr(finish(std::move(n)));
}

Expr Expr::raw_product(std::vector<Expr> factors) {
  detail::Node n;
  n.kind = Kind::Product;
  n.kids = std::move(factors);
  return Expr(finish(std::move(n)));
}

Expr Expr::raw_power(Expr base, Rational exponent) {
  detail::Node n;
  n.kind = Kind::Power;
  exponent.canonicalize();
  n.value = std::move(exponent);
  n.kids.push_back(std::move(base));
  return Expr(finish(std::move(n)));
}

Kind Expr::kind() const noexcept { return node_->kind; }

bool Expr::is_atom() const noexcept {
  Kind k = kind();
  return k == Kind::Indep || k == Kind::Jet || k == Kind::Param || k == Kind::Unknown;
}

bool Expr::is_zero_const() const noexcept { return kind() == Kind::Const && node_->value == 0; }
bool Expr::is_one_const() const noexcept { return kind() == Kind::Const && node_->value == 1; }

const Rational& Expr::value() const { return node_->value; }
int Expr::index() const { return node_->index; }
JetVar Expr::jet_var() const { return JetVar{node_->index, node_->mi}; }
const std::string& Expr::name() const { return node_->name; }
const std::vector<Expr>& Expr::args() const { return node_->kids; }
const std::vector<int>& Expr::deriv() const { return node_->deriv; }
FuncKind Expr::func_kind() const { return node_->fn; }
const Expr& Expr::arg() const { return node_->kids.front(); }
const Expr& Expr::base() const { return node_->kids.front(); }
const Rational& Expr::exponent() const { return node_->value; }
std::size_t Expr::hash() const noexcept { return node_->hash; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

namespace {

int kind_rank(Kind k) {
  switch (k) {
    case Kind::Indep: return 0;
    case Kind::Jet: return 1;
    case Kind::Param: return 2;
    case Kind::Unknown: return 3;
    case Kind::Func: return 4;
    case Kind::Const: return 5;
    case Kind::Power: return 6;
    case Kind::Product: return 7;
    case Kind::Sum: return 8;
  }
  return 9;
}

template <class T>
int cmp3(const T& a, const T& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int compare_lists(const std::vector<Expr>& a, const std::vector<Expr>& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = compare(a[i], b[i]);
    if (c != 0) return c;
  }
  return cmp3(a.size(), b.size());
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
  const detail::Node* x = a.node();
  const detail::Node* y = b.node();
  if (x == y) return 0;
  int c = cmp3(kind_rank(x->kind), kind_rank(y->kind));
  if (c != 0) return c;
  switch (x->kind) {
    case Kind::Const: return cmp(x->value, y->value) < 0 ? -1 : (cmp(x->value, y->value) > 0 ? 1 : 0);
    case Kind::Indep: return cmp3(x->index, y->index);
    case Kind::Jet: {
      JetVar u{x->index, x->mi}, v{y->index, y->mi};
      auto o = u <=> v;
      return o < 0 ? -1 : (o > 0 ? 1 : 0);
    }
    case Kind::Param: return cmp3(x->name, y->name);
    case Kind::Unknown:
      if ((c = cmp3(x->name, y->name)) != 0) return c;
      if ((c = cmp3(x->deriv.size(), y->deriv.size())) != 0) return c;
      if ((c = cmp3(x->deriv, y->deriv)) != 0) return c;
      return compare_lists(x->kids, y->kids);
    case Kind::Func:
      if ((c = cmp3(static_cast<int>(x->fn), static_cast<int>(y->fn))) != 0) return c;
      return compare_lists(x->kids, y->kids);
    case Kind::Power:
      if ((c = compare(x->kids[0], y->kids[0])) != 0) return c;
      return cmp(x->value, y->value) < 0 ? -1 : (cmp(x->value, y->value) > 0 ? 1 : 0);
    case Kind::Product:
    case Kind::Sum: return compare_lists(x->kids, y->kids);
  }
  return 0;
}

// ---------------------------------------------------------------- arithmetic

Expr operator+(const Expr& a, const Expr& b) { return normalize(Expr::raw_sum({a, b})); }
Expr operator-(const Expr& a, const Expr& b) {
  return normalize(Expr::raw_sum({a, Expr::raw_product({Expr(-1), b})}));
}
Expr operator-(const Expr& a) { return normalize(Expr::raw_product({Expr(-1), a})); }
Expr operator*(const Expr& a, const Expr& b) { return normalize(Expr::raw_product({a, b})); }
Expr operator/(const Expr& a, const Expr& b) {
  return normalize(Expr::raw_product({a, Expr::raw_power(b, Rational(-1))}));
}
Expr pow(const Expr& base, const Rational& exponent) { return normalize(Expr::raw_power(base, exponent)); }
Expr sqrt(const Expr& e) { return pow(e, make_rational(1, 2)); }
Expr exp(const Expr& e) { return normalize(Expr::func(FuncKind::Exp, e)); }
Expr log(const Expr& e) { return normalize(Expr::func(FuncKind::Log, e)); }
Expr sin(const Expr& e) { return normalize(Expr::func(FuncKind::Sin, e)); }
Expr cos(const Expr& e) { return normalize(Expr::func(FuncKind::Cos, e)); }
Expr sum(const std::vector<Expr>& terms) { return normalize(Expr::raw_sum(terms)); }
Expr product(const std::vector<Expr>& factors) { return normalize(Expr::raw_product(factors)); }

// ---------------------------------------------------------------- Context

void Context::reserve_name(const std::string& name) {
  if (name.empty()) throw Error("empty name");
  if (name.find('_') != std::string::npos)
    throw Error("name '" + name + "' may not contain '_' (reserved for derivative subscripts)");
  if (name == "D" || name == "sqrt" || func_from_name(name))
    throw Error("name '" + name + "' is reserved");
  if (!names_.insert(name).second) throw Error("duplicate name '" + name + "'");
}

int Context::add_indep(const std::string& name) {
  reserve_name(name);
  indeps_.push_back(name);
  return p() - 1;
}

int Context::add_dep(const std::string& name) {
  reserve_name(name);
  deps_.push_back(name);
  return q() - 1;
}

void Context::add_param(const std::string& name) {
  reserve_name(name);
  params_.push_back(name);
}

void Context::add_unknown(const std::string& name, const std::vector<std::string>& arg_names) {
  UnknownSignature sig;
  sig.name = name;
  for (const auto& a : arg_names) {
    if (auto i = find_indep(a)) {
      sig.args.push_back(Expr::indep(*i));
    } else if (auto d = find_dep(a)) {
      sig.args.push_back(Expr::jet(*d));
    } else {
      throw UnknownSymbol("unknown function argument '" + a + "' is not a declared variable");
    }
  }
  reserve_name(name);
  unknowns_.push_back(std::move(sig));
}

std::optional<int> Context::find_indep(const std::string& name) const {
  auto it = std::find(indeps_.begin(), indeps_.end(), name);
  if (it == indeps_.end()) return std::nullopt;
  return static_cast<int>(it - indeps_.begin());
}

std::optional<int> Context::find_dep(const std::string& name) const {
  auto it = std::find(deps_.begin(), deps_.end(), name);
  if (it == deps_.end()) return std::nullopt;
  return static_cast<int>(it - deps_.begin());
}

bool Context::has_param(const std::string& name) const {
  return std::find(params_.begin(), params_.end(), name) != params_.end();
}

const Context::UnknownSignature* Context::find_unknown(const std::string& name) const {
  for (const auto& u : unknowns_)
    if (u.name == name) return &u;
  return nullptr;
}

bool Context::is_declared(const std::string& name) const { return names_.count(name) > 0; }

bool Context::single_char_indeps() const {
  return std::all_of(indeps_.begin(), indeps_.end(), [](const std::string& s) { return s.size() == 1; });
}

Expr Context::x(const std::string& name) const {
  auto i = find_indep(name);
  if (!i) throw UnknownSymbol("undeclared independent variable '" + name + "'");
  return Expr::indep(*i);
}

Expr Context::u(const std::string& name, const std::vector<std::string>& derivs) const {
  auto a = find_dep(name);
  if (!a) throw UnknownSymbol("undeclared dependent variable '" + name + "'");
  std::vector<int> idx;
  for (const auto& d : derivs) {
    auto i = find_indep(d);
    if (!i) throw UnknownSymbol("undeclared independent variable '" + d + "'");
    idx.push_back(*i);
  }
  return Expr::jet(*a, MultiIndex(idx));
}

Expr Context::param(const std::string& name) const {
  if (!has_param(name)) throw UnknownSymbol("undeclared parameter '" + name + "'");
  return Expr::param(name);
}

Expr Context::unknown(const std::string& name, const std::vector<std::string>& derivs) const {
  const UnknownSignature* sig = find_unknown(name);
  if (!sig) throw UnknownSymbol("undeclared unknown function '" + name + "'");
  std::vector<int> slots;
  for (const auto& d : derivs) {
    bool found = false;
    for (std::size_t k = 0; k < sig->args.size(); ++k) {
      const Expr& a = sig->args[k];
      bool match = (a.kind() == Kind::Indep && indep_name(a.index()) == d) ||
                   (a.kind() == Kind::Jet && dep_name(a.jet_var().dep) == d);
      if (match) {
        slots.push_back(static_cast<int>(k));
        found = true;
        break;
      }
    }
    if (!found) throw UnknownSymbol("'" + d + "' is not an argument of " + name);
  }
  return Expr::unknown(name, sig->args, slots);
}

void Context::check(const Expr& e) const {
  for (const Expr& a : atoms(e)) {
    switch (a.kind()) {
      case Kind::Indep:
        if (a.index() < 0 || a.index() >= p()) throw UnknownSymbol("independent variable index out of range");
        break;
      case Kind::Jet: {
        JetVar v = a.jet_var();
        if (v.dep < 0 || v.dep >= q()) throw UnknownSymbol("dependent variable index out of range");
        for (int i : v.idx.entries())
          if (i < 0 || i >= p()) throw UnknownSymbol("jet multi-index entry out of range");
        break;
      }
      case Kind::Param:
        if (!has_param(a.name())) throw UnknownSymbol("undeclared parameter '" + a.name() + "'");
        break;
      case Kind::Unknown: {
        const UnknownSignature* sig = find_unknown(a.name());
        if (!sig) throw UnknownSymbol("undeclared unknown function '" + a.name() + "'");
        if (compare_lists(sig->args, a.args()) != 0)
          throw UnknownSymbol("unknown function '" + a.name() + "' used with foreign arguments");
        break;
      }
      default: break;
    }
  }
}

}  // namespace liesym
