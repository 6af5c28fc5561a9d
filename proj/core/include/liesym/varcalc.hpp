#pragma once

#include <optional>
#include <vector>

#include "liesym/detsys.hpp"
#include "liesym/expr.hpp"
#include "liesym/jet.hpp"

namespace liesym {

using ConservedCurrent = std::vector<Expr>;

Expr euler_operator(const Expr& L, int alpha, const Context& ctx);
std::vector<Expr> euler_lagrange(const Expr& L, const Context& ctx);
/// Euler-Lagrange equations oriented on their highest jet. Throws
/// InvalidSystem when some E_a is not linear in a unique top-order jet.
DiffSystem euler_lagrange_system(const Expr& L, const Context& ctx);

Expr variational_symmetry_defect(const VectorField& v, const Expr& L, const Context& ctx);
bool divergence_symmetry_check(const VectorField& v, const Expr& L, const std::vector<Expr>& B, const Context& ctx);

/// First-order Lagrangians only (OrderError otherwise). Throws NotASymmetry
/// when v is not a divergence symmetry with the given B (zero when omitted).
ConservedCurrent noether_current_first_order(const VectorField& v, const Expr& L, const Context& ctx,
                                             const std::optional<std::vector<Expr>>& B = std::nullopt);

bool verify_noether_identity(const ConservedCurrent& F, const Characteristic& Q, const Expr& L, const Context& ctx);

}  // namespace liesym
