#pragma once
// A derivation on expressions, determined by its value on atoms. Unknown
// functions follow the chain rule through their arguments unless the atom
// rule claims them first.

#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "liesym/expr.hpp"

namespace liesym::detail {

class Derivation {
 public:
  /// Returns the derivative of an atom, or nullopt to fall back to the
  /// default (0 for plain atoms, chain rule for unknown functions).
  using AtomRule = std::function<std::optional<Expr>(const Expr&)>;

  explicit Derivation(AtomRule rule) : rule_(std::move(rule)) {}

  /// Unnormalized derivative; callers normalize once at the end.
  Expr raw(const Expr& e);
  Expr operator()(const Expr& e) { return normalize(raw(e)); }

 private:
  Expr compute(const Expr& e);

  AtomRule rule_;
  std::unordered_map<const Node*, Expr> memo_;
  std::vector<Expr> keep_;
};

}  // namespace liesym::detail
