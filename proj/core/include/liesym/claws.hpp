#pragma once

#include <vector>

#include "liesym/detsys.hpp"
#include "liesym/varcalc.hpp"

namespace liesym {

bool is_conservation_law(const ConservedCurrent& F, const DiffSystem& sys, const Context& ctx,
                         ReduceOptions opt = {});
bool is_null_divergence(const ConservedCurrent& F, const Context& ctx);
/// Div F - sum Q_nu (lead_nu - rhs_nu) == 0 identically. Throws ArityError
/// unless Q has one entry per equation.
bool verify_characteristic_form(const ConservedCurrent& F, const std::vector<Expr>& Q, const DiffSystem& sys,
                                const Context& ctx);

}  // namespace liesym
