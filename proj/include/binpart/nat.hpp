#pragma once

// Exact integer and rational types shared by every module.  All of them are
// thin aliases over GMP; the helpers below only add decimal I/O and the
// handful of combinatorial primitives the rest of the library needs.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace binpart {

/// Arbitrary-precision nonnegative integer.  Nonnegativity is a usage
/// contract; GMP itself is signed.
using Nat = mpz_class;

/// Arbitrary-precision signed integer (only the Eq.-style sign sums need it).
using Int = mpz_class;

/// Exact rational, always kept in canonical (reduced, positive denominator)
/// form by GMP.
using Rational = mpq_class;

class domain_error : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline std::string to_decimal(const mpz_class& x) { return x.get_str(10); }

inline std::string to_decimal(const Rational& x) { return x.get_str(10); }

/// Parses a decimal string of digits.  Signs, whitespace and empty input are
/// rejected so that parse(render(x)) == x is the only accepted round trip.
inline Nat parse_nat(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty decimal string");
  for (char c : text) {
    if (c < '0' || c > '9') {
      throw std::invalid_argument("not a decimal natural number: " + std::string(text));
    }
  }
  return Nat(std::string(text), 10);
}

inline Nat binomial(std::size_t n, std::size_t k) {
  Nat r;
  if (k > n) return r;  // zero
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

inline Nat pow_ui(std::size_t base, std::size_t exp) {
  Nat r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(exp));
  return r;
}

inline Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace binpart
