#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "liesym/rational.hpp"

namespace liesym {

/// Unordered tuple of independent-variable indices, stored sorted.
/// Indices are 0-based; the empty index denotes u itself.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);

  std::size_t order() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::vector<int>& entries() const noexcept { return entries_; }

  /// J + {i}
  MultiIndex with(int i) const;
  MultiIndex with(const MultiIndex& other) const;
  /// K - J when J is a sub-multiset of K.
  std::optional<MultiIndex> minus(const MultiIndex& sub) const;
  std::size_t count(int i) const;

  /// All sorted tuples over {0..p-1} of length k.
  static std::vector<MultiIndex> all_of_order(int p, int k);
  /// All tuples with 1 <= order <= n, ordered by order then lexicographically.
  static std::vector<MultiIndex> all_up_to(int p, int n);

  friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
    if (a.order() != b.order()) return a.order() <=> b.order();
    return a.entries_ <=> b.entries_;
  }
  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> entries_;
};

/// u^alpha_J; ordered by (alpha, order, entries).
struct JetVar {
  int dep = 0;
  MultiIndex idx;

  std::size_t order() const noexcept { return idx.order(); }
  friend auto operator<=>(const JetVar& a, const JetVar& b) {
    if (a.dep != b.dep) return a.dep <=> b.dep;
    return a.idx <=> b.idx;
  }
  friend bool operator==(const JetVar&, const JetVar&) = default;
};

enum class Kind : std::uint8_t { Indep, Jet, Param, Unknown, Func, Const, Power, Product, Sum };
enum class FuncKind : std::uint8_t { Exp, Log, Sin, Cos };

const char* func_name(FuncKind f);
std::optional<FuncKind> func_from_name(const std::string& name);

namespace detail {
struct Node;
}

/// Immutable symbolic expression. Cheap to copy; nodes are shared.
///
/// The static builders `constant`, `indep`, `jet`, `param`, `unknown` create atoms.
/// `raw_*` builders assemble trees verbatim; arithmetic operators always return
/// normalized results.
class Expr {
 public:
  Expr();  // the constant 0
  Expr(long value);  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)

  static Expr constant(const Rational& value);
  static Expr indep(int index);
  static Expr jet(int dep, MultiIndex idx = {});
  static Expr jet(const JetVar& v) { return jet(v.dep, v.idx); }
  static Expr param(std::string name);
  /// `deriv` holds argument positions (a multiset); empty means the function itself.
  static Expr unknown(std::string name, std::vector<Expr> args, std::vector<int> deriv = {});
  static Expr func(FuncKind f, Expr arg);

  static Expr raw_sum(std::vector<Expr> terms);
  static Expr raw_product(std::vector<Expr> factors);
  static Expr raw_power(Expr base, Rational exponent);

  Kind kind() const noexcept;
  bool is_atom() const noexcept;
  bool is_const() const noexcept { return kind() == Kind::Const; }
  bool is_zero_const() const noexcept;
  bool is_one_const() const noexcept;

  const Rational& value() const;     // Const
  int index() const;                 // Indep
  JetVar jet_var() const;            // Jet
  const std::string& name() const;   // Param, Unknown
  const std::vector<Expr>& args() const;   // Unknown arguments, Sum terms, Product factors
  const std::vector<int>& deriv() const;   // Unknown
  FuncKind func_kind() const;        // Func
  const Expr& arg() const;           // Func argument
  const Expr& base() const;          // Power
  const Rational& exponent() const;  // Power
  const std::vector<Expr>& operands() const { return args(); }

  std::size_t hash() const noexcept;
  const detail::Node* node() const noexcept { return node_.get(); }

  friend bool operator==(const Expr& a, const Expr& b);
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

 private:
  explicit Expr(std::shared_ptr<const detail::Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::Node> node_;
};

/// Total structural order: IndepVar < Jet < Param < Unknown < Func < Const < Power < Product < Sum.
int compare(const Expr& a, const Expr& b);

struct ExprLess {
  bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

using ExprSet = std::set<Expr, ExprLess>;
using Substitution = std::map<Expr, Expr, ExprLess>;
using Assignment = std::map<Expr, Rational, ExprLess>;

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
/// Throws DegenerateExpression when b normalizes to 0.
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, const Rational& exponent);
Expr sqrt(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr sum(const std::vector<Expr>& terms);
Expr product(const std::vector<Expr>& factors);

/// Declared names for a problem. Names are unique across all categories.
class Context {
 public:
  struct UnknownSignature {
    std::string name;
    std::vector<Expr> args;  // IndepVar or order-0 Jet atoms
  };

  int add_indep(const std::string& name);
  int add_dep(const std::string& name);
  void add_param(const std::string& name);
  /// Argument names must already be declared as independent or dependent variables.
  void add_unknown(const std::string& name, const std::vector<std::string>& arg_names);

  int p() const noexcept { return static_cast<int>(indeps_.size()); }
  int q() const noexcept { return static_cast<int>(deps_.size()); }
  const std::string& indep_name(int i) const { return indeps_.at(static_cast<std::size_t>(i)); }
  const std::string& dep_name(int a) const { return deps_.at(static_cast<std::size_t>(a)); }
  const std::vector<std::string>& indep_names() const noexcept { return indeps_; }
  const std::vector<std::string>& dep_names() const noexcept { return deps_; }
  const std::vector<std::string>& params() const noexcept { return params_; }
  const std::vector<UnknownSignature>& unknowns() const noexcept { return unknowns_; }

  std::optional<int> find_indep(const std::string& name) const;
  std::optional<int> find_dep(const std::string& name) const;
  bool has_param(const std::string& name) const;
  const UnknownSignature* find_unknown(const std::string& name) const;
  bool is_declared(const std::string& name) const;

  /// Shorthand subscripts (u_xt) are only unambiguous for single-character names.
  bool single_char_indeps() const;

  Expr x(const std::string& name) const;
  Expr u(const std::string& name, const std::vector<std::string>& derivs = {}) const;
  Expr param(const std::string& name) const;
  Expr unknown(const std::string& name, const std::vector<std::string>& derivs = {}) const;

  /// Throws UnknownSymbol unless every atom of e is declared here.
  void check(const Expr& e) const;

 private:
  void reserve_name(const std::string& name);

  std::vector<std::string> indeps_;
  std::vector<std::string> deps_;
  std::vector<std::string> params_;
  std::vector<UnknownSignature> unknowns_;
  std::set<std::string> names_;
};

/// Canonical form: flattened, like terms collected, products of sums expanded,
/// negative and fractional powers of sums kept as primitive kernels over a
/// common kernel power. Idempotent.
Expr normalize(const Expr& e);

/// Ordinary partial derivative with respect to a single atom. Other jet
/// coordinates are constants; unknown functions pick up derivative slots.
Expr partial_derivative(const Expr& e, const Expr& var);
Expr partial_derivative(const Expr& e, const Expr& var, const Context& ctx);

/// Simultaneous substitution followed by normalization.
Expr substitute(const Expr& e, const Substitution& bindings);
Expr substitute(const Expr& e, const Substitution& bindings, const Context& ctx);

/// Replaces every derivative of unknown `name` by the matching partial
/// derivative of `replacement`, which is written in terms of the unknown's arguments.
Expr substitute_unknown(const Expr& e, const std::string& name, const Expr& replacement);

bool is_zero(const Expr& e);

struct CollectedTerm {
  std::vector<long> powers;  // aligned with the collect variables
  Expr monomial;
  Expr coefficient;
};

/// Splits e = sum monomial * coefficient over the given variables.
/// Throws NotPolynomial if a variable appears under a fractional or negative
/// power, a kernel, a function application, or an unknown's argument list.
std::vector<CollectedTerm> collect(const Expr& e, const std::vector<Expr>& vars);

/// Highest jet order appearing in e (0 when none).
int jet_order(const Expr& e);
/// All atoms of e, including unknown-function arguments.
ExprSet atoms(const Expr& e);
std::set<JetVar> jet_vars(const Expr& e);
bool depends_on(const Expr& e, const Expr& atom);
bool has_unknowns(const Expr& e);

/// Exact evaluation; throws EvaluationError on missing atoms or irrational results.
Rational evaluate(const Expr& e, const Assignment& values);

namespace detail {

struct Node {
  Kind kind = Kind::Const;
  Rational value;   // Const value or Power exponent
  int index = 0;    // Indep index or Jet dependent index
  MultiIndex mi;    // Jet multi-index
  std::string name; // Param or Unknown
  FuncKind fn = FuncKind::Exp;
  std::vector<Expr> kids;  // Sum terms, Product factors, Power base, Func arg, Unknown args
  std::vector<int> deriv;  // Unknown derivative multiset
  std::size_t hash = 0;
};

}  // namespace detail

}  // namespace liesym

template <>
struct std::hash<liesym::Expr> {
  std::size_t operator()(const liesym::Expr& e) const noexcept { return e.hash(); }
};
