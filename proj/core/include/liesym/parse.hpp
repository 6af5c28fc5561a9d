#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "liesym/buckpi.hpp"
#include "liesym/detsys.hpp"
#include "liesym/expr.hpp"
#include "liesym/jet.hpp"

namespace liesym {

template <class T>
struct Named {
  std::string name;
  T value;
};

struct Problem {
  Context context;
  std::vector<Named<DiffSystem>> systems;
  std::vector<Named<VectorField>> vfields;
  std::vector<Named<Expr>> lagrangians;
  std::vector<Named<std::vector<Expr>>> currents;
  std::vector<Named<DimensionalModel>> dimension_models;

  /// Throw UnknownSymbol when absent.
  const DiffSystem& system(const std::string& name) const;
  const VectorField& vfield(const std::string& name) const;
  const Expr& lagrangian(const std::string& name) const;
  const std::vector<Expr>& current(const std::string& name) const;
  const DimensionalModel& dimension_model(const std::string& name) const;
};

/// Throws ParseError (with line and column), UnknownSymbol or Error.
Problem parse_problem(std::string_view text);
Expr parse_expr(std::string_view text, const Context& ctx);

std::string format_expr(const Expr& e, const Context& ctx);
std::string format_jet(const JetVar& v, const Context& ctx);

}  // namespace liesym
