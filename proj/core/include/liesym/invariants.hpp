#pragma once

#include <string>

#include "liesym/jet.hpp"

namespace liesym {

/// v(f) for order-0 f; OrderError otherwise.
Expr invariance_defect(const VectorField& v, const Expr& f, const Context& ctx);
bool differential_invariant_check(const VectorField& v, int n, const Expr& eta, const Context& ctx);
/// D_x zeta / D_x eta for one independent variable.
Expr next_invariant(const Expr& eta, const Expr& zeta, const Context& ctx);
/// "dx/dt = ..." lines, one per coordinate.
std::string characteristic_system(const VectorField& v, const Context& ctx);

}  // namespace liesym
