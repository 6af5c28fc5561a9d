#include "liesym/claws.hpp"

#include "liesym/errors.hpp"

namespace liesym {

bool is_conservation_law(const ConservedCurrent& F, const DiffSystem& sys, const Context& ctx, ReduceOptions opt) {
  return reduce_mod_system(total_divergence(F, ctx), sys, ctx, opt).is_zero_const();
}

bool is_null_divergence(const ConservedCurrent& F, const Context& ctx) {
  return total_divergence(F, ctx).is_zero_const();
}

bool verify_characteristic_form(const ConservedCurrent& F, const std::vector<Expr>& Q, const DiffSystem& sys,
                                const Context& ctx) {
  if (Q.size() != sys.size())
    throw ArityError("characteristic needs " + std::to_string(sys.size()) + " entries, got " +
                     std::to_string(Q.size()));
  std::vector<Expr> terms{total_divergence(F, ctx)};
  for (std::size_t nu = 0; nu < sys.size(); ++nu) terms.push_back(-(Q[nu] * sys.implicit(nu)));
  return sum(terms).is_zero_const();
}

}  // namespace liesym
