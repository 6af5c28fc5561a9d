#pragma once

#include <string>
#include <vector>

#include "liesym/ratla.hpp"

namespace liesym {

struct DimensionalModel {
  RatMatrix A;  // fundamental x derived
  std::vector<std::string> fundamental_names;
  std::vector<std::string> derived_names;

  /// Throws Error when the name counts do not match A.
  void validate() const;
};

struct PiBasis {
  RatMatrix B;  // derived x (m - s)
  std::size_t s = 0;
};

/// Kernel columns are primitive integer vectors whose last nonzero entry is positive.
PiBasis pi_basis(const DimensionalModel& model);
/// One rendering per column, e.g. "P0^5 · t^6 · E^-2 · rho0^-3"; "1" for a zero column.
std::vector<std::string> power_products(const PiBasis& basis, const std::vector<std::string>& names);
/// Throws ArityError when the vector length differs from the number of derived quantities.
bool check_dimensionless(const DimensionalModel& model, const std::vector<Rational>& exponents);

/// First row: derived names (leading cell ignored); first column: fundamental names.
DimensionalModel read_dimension_csv(const std::string& text);

}  // namespace liesym
