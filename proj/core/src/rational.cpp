#include "liesym/rational.hpp"

#include <cctype>

#include "liesym/errors.hpp"

namespace liesym {

Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

Integer floor_of(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

Rational int_power(const Rational& base, long n) {
  if (n == 0) return Rational(1);
  if (base == 0) {
    if (n < 0) throw DegenerateExpression("division by zero");
    return Rational(0);
  }
  const unsigned long m = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), m);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), m);
  Rational r = n < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

namespace {

// Exact q-th root of an integer, if any.
std::optional<Integer> exact_root(const Integer& value, unsigned long q) {
  if (value < 0) {
    if (q % 2 == 0) return std::nullopt;
    auto r = exact_root(Integer(-value), q);
    if (!r) return std::nullopt;
    return Integer(-*r);
  }
  Integer root;
  if (mpz_root(root.get_mpz_t(), value.get_mpz_t(), q) == 0) return std::nullopt;
  return root;
}

}  // namespace

std::optional<Rational> exact_power(const Rational& base, const Rational& exponent) {
  if (is_integer(exponent)) {
    if (!exponent.get_num().fits_slong_p()) return std::nullopt;
    if (base == 0 && exponent < 0) return std::nullopt;
    return int_power(base, exponent.get_num().get_si());
  }
  if (base == 0) {
    if (exponent > 0) return Rational(0);
    return std::nullopt;
  }
  if (base == 1) return Rational(1);
  if (!exponent.get_den().fits_ulong_p() || !exponent.get_num().fits_slong_p()) return std::nullopt;
  const unsigned long q = exponent.get_den().get_ui();
  auto num = exact_root(base.get_num(), q);
  auto den = exact_root(base.get_den(), q);
  if (!num || !den) return std::nullopt;
  Rational root(*num, *den);
  root.canonicalize();
  return int_power(root, exponent.get_num().get_si());
}

std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t slash = text.find('/');
  auto digits_ok = [](std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
  };
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!digits_ok(num, true) || !digits_ok(den, false)) return std::nullopt;
  std::string n(num);
  if (!n.empty() && n[0] == '+') n.erase(0, 1);
  Integer zn(n, 10), zd(std::string(den), 10);
  if (zd == 0) return std::nullopt;
  Rational r(zn, zd);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace liesym
