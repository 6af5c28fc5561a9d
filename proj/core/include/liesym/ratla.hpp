#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "liesym/rational.hpp"

namespace liesym {

/// Dense row-major matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rows);
  static RatMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<Rational> column(std::size_t c) const;
  RatMatrix transpose() const;
  std::vector<Rational> operator*(const std::vector<Rational>& v) const;
  RatMatrix operator*(const RatMatrix& other) const;
  bool is_zero() const;

  friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RrefResult {
  RatMatrix matrix;
  std::vector<std::size_t> pivots;
};

RrefResult rref(RatMatrix m);
std::size_t rank(const RatMatrix& m);
/// Right null space. Free columns take the unit pattern, so the basis is
/// canonical for a given matrix.
std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m);

/// Solves M x = b exactly; nullopt when inconsistent.
std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b);

}  // namespace liesym
