#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liesym/expr.hpp"
#include "liesym/jet.hpp"
#include "liesym/ratla.hpp"

namespace liesym {

struct SystemEquation {
  JetVar lead;
  Expr rhs;
};

/// Equations in solved form, lead = rhs.
class DiffSystem {
 public:
  DiffSystem() = default;
  /// Throws InvalidSystem on repeated leads or a rhs that still contains a
  /// lead or one of its derivatives.
  DiffSystem(std::vector<SystemEquation> equations, const Context& ctx);

  const std::vector<SystemEquation>& equations() const noexcept { return eqs_; }
  std::size_t size() const noexcept { return eqs_.size(); }
  int order() const noexcept { return order_; }
  /// P_nu = lead - rhs.
  Expr implicit(std::size_t nu) const;

 private:
  std::vector<SystemEquation> eqs_;
  int order_ = 0;
};

struct ReduceOptions {
  /// Highest jet order a rewrite may introduce; defaults to order + 4.
  std::optional<int> order_cap;
};

Expr reduce_mod_system(const Expr& e, const DiffSystem& sys, const Context& ctx, ReduceOptions opt = {});

std::vector<Expr> symmetry_defect(const VectorField& v, const DiffSystem& sys, const Context& ctx,
                                  ReduceOptions opt = {});
bool check_symmetry(const VectorField& v, const DiffSystem& sys, const Context& ctx, ReduceOptions opt = {});

struct DeterminingSystem {
  std::vector<Expr> equations;
  std::vector<Expr> splitting_vars;
  /// Unknown functions standing for xi^1..xi^p then phi_1..phi_q.
  std::vector<std::string> unknown_names;
  std::vector<Expr> unknown_args;
};

/// Uses the context's unknowns when exactly p+q of them take all of (x,u) in
/// declaration order; otherwise generates xi1..xip and phi1..phiq.
DeterminingSystem determining_equations(const DiffSystem& sys, const Context& ctx, ReduceOptions opt = {});

struct Ansatz {
  int degree = 3;
};

/// Kernel basis of the linear system obtained from a total-degree polynomial
/// ansatz, as vector fields.
std::vector<VectorField> solve_determining(const DeterminingSystem& ds, const Ansatz& a, const Context& ctx);

struct LinearSystemReport {
  std::size_t params = 0;
  std::size_t equations = 0;
  std::size_t kernel_dim = 0;
};

/// Same as solve_determining but also reports the assembled matrix, for auditing.
std::vector<VectorField> solve_determining(const DeterminingSystem& ds, const Ansatz& a, const Context& ctx,
                                           RatMatrix* matrix_out, LinearSystemReport* report);

bool verify_lie_closure(const std::vector<VectorField>& basis, const DiffSystem& sys, const Context& ctx,
                        ReduceOptions opt = {});

/// Points assign rationals to x and to every jet up to the system order.
/// Throws InvalidSample when a point is not on the variety.
bool rank_probe(const std::vector<Expr>& P, const std::vector<Assignment>& samples, const Context& ctx);
bool rank_probe(const DiffSystem& sys, const std::vector<Assignment>& samples, const Context& ctx);

}  // namespace liesym
