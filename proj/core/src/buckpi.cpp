#include "liesym/buckpi.hpp"

#include <sstream>

#include "liesym/errors.hpp"

namespace liesym {

void DimensionalModel::validate() const {
  if (fundamental_names.size() != A.rows() || derived_names.size() != A.cols())
    throw ArityError("dimension matrix is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) + " but " +
                     std::to_string(fundamental_names.size()) + " fundamental and " +
                     std::to_string(derived_names.size()) + " derived names were given");
}

PiBasis pi_basis(const DimensionalModel& model) {
  model.validate();
  auto kernel = kernel_basis(model.A);
  PiBasis out;
  out.s = model.A.cols() - kernel.size();
  out.B = RatMatrix(model.A.cols(), kernel.size());
  for (std::size_t k = 0; k < kernel.size(); ++k) {
    // smallest integer multiple, oriented so the last nonzero exponent is positive
    Integer den = 1, num = 0;
    const Rational* last = nullptr;
    for (const Rational& x : kernel[k]) {
      if (x == 0) continue;
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), x.get_num_mpz_t());
      last = &x;
    }
    Rational scale(den, num);
    if (*last < 0) scale = -scale;
    for (std::size_t j = 0; j < model.A.cols(); ++j) out.B(j, k) = kernel[k][j] * scale;
  }
  return out;
}

std::vector<std::string> power_products(const PiBasis& basis, const std::vector<std::string>& names) {
  if (names.size() != basis.B.rows()) throw ArityError("one name per derived quantity is required");
  std::vector<std::string> out;
  for (std::size_t k = 0; k < basis.B.cols(); ++k) {
    std::vector<std::string> parts;
    // numerator factors first, then denominator factors
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < names.size(); ++j) {
        const Rational& e = basis.B(j, k);
        if (e == 0 || (pass == 0) != (e > 0)) continue;
        if (e == 1) {
          parts.push_back(names[j]);
          continue;
        }
        std::string ex = is_integer(e) ? to_string(e) : "(" + to_string(e) + ")";
        parts.push_back(names[j] + "^" + ex);
      }
    }
    if (parts.empty()) {
      out.emplace_back("1");
      continue;
    }
    std::string s = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) s += " · " + parts[i];
    out.push_back(s);
  }
  return out;
}

bool check_dimensionless(const DimensionalModel& model, const std::vector<Rational>& exponents) {
  if (exponents.size() != model.A.cols())
    throw ArityError("expected " + std::to_string(model.A.cols()) + " exponents, got " +
                     std::to_string(exponents.size()));
  for (const Rational& x : model.A * exponents)
    if (x != 0) return false;
  return true;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> cells(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string c;
  while (std::getline(ss, c, ',')) out.push_back(trim(c));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

DimensionalModel read_dimension_csv(const std::string& text) {
  std::stringstream in(text);
  std::string line;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(cells(line));
  }
  if (rows.size() < 2) throw Error("dimension CSV needs a header row and at least one fundamental row");
  DimensionalModel m;
  m.derived_names.assign(rows[0].begin() + 1, rows[0].end());
  if (m.derived_names.empty()) throw Error("dimension CSV header lists no derived quantities");
  m.A = RatMatrix(rows.size() - 1, m.derived_names.size());
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != m.derived_names.size() + 1)
      throw Error("dimension CSV row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                  " cells, expected " + std::to_string(m.derived_names.size() + 1));
    m.fundamental_names.push_back(rows[r][0]);
    for (std::size_t c = 0; c < m.derived_names.size(); ++c) {
      auto v = parse_rational(rows[r][c + 1]);
      if (!v) throw Error("dimension CSV row " + std::to_string(r + 1) + ": '" + rows[r][c + 1] + "' is not a rational");
      m.A(r - 1, c) = *v;
    }
  }
  return m;
}

}  // namespace liesym
