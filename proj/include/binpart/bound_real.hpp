#pragma once

// BoundReal: a real number known to lie in a closed interval whose endpoints
// are MPFR floats.  Every operation rounds the lower endpoint toward -inf and
// the upper endpoint toward +inf, so the true value never escapes.

#include <mpfr.h>

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>

#include "binpart/nat.hpp"

namespace binpart {

enum class Decision { True, False, Unknown };

inline const char* to_string(Decision d) {
  switch (d) {
    case Decision::True: return "true";
    case Decision::False: return "false";
    case Decision::Unknown: return "unknown";
  }
  return "unknown";
}

class BoundReal {
public:
  static constexpr mpfr_prec_t kDefaultPrecision = 128;

  explicit BoundReal(mpfr_prec_t precision = kDefaultPrecision) {
    mpfr_init2(lo_, precision);
    mpfr_init2(hi_, precision);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
  }

  BoundReal(const BoundReal& other) {
    mpfr_init2(lo_, other.precision());
    mpfr_init2(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }

  BoundReal(BoundReal&& other) noexcept : BoundReal(mpfr_prec_t{MPFR_PREC_MIN}) { swap(other); }

  BoundReal& operator=(BoundReal other) noexcept {
    swap(other);
    return *this;
  }

  ~BoundReal() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
  }

  void swap(BoundReal& other) noexcept {
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
  }

  static BoundReal from_integer(const Int& x, mpfr_prec_t precision = kDefaultPrecision) {
    BoundReal r(precision);
    mpfr_set_z(r.lo_, x.get_mpz_t(), MPFR_RNDD);
    mpfr_set_z(r.hi_, x.get_mpz_t(), MPFR_RNDU);
    return r;
  }

  static BoundReal from_integer(long x, mpfr_prec_t precision = kDefaultPrecision) {
    return from_integer(Int(x), precision);
  }

  static BoundReal from_rational(const Rational& x, mpfr_prec_t precision = kDefaultPrecision) {
    BoundReal r(precision);
    mpfr_set_q(r.lo_, x.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, x.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static BoundReal pi(mpfr_prec_t precision = kDefaultPrecision) {
    BoundReal r(precision);
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
  }

  /// The interval [a, b]; requires a <= b.
  static BoundReal between(const Rational& a, const Rational& b, mpfr_prec_t precision = kDefaultPrecision) {
    if (b < a) throw domain_error("BoundReal::between needs a <= b");
    BoundReal r(precision);
    mpfr_set_q(r.lo_, a.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_, b.get_mpq_t(), MPFR_RNDU);
    return r;
  }

  /// The interval [lower(a), upper(b)].
  static BoundReal span(const BoundReal& a, const BoundReal& b) {
    BoundReal r(std::max(a.precision(), b.precision()));
    mpfr_set(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_set(r.hi_, b.hi_, MPFR_RNDU);
    if (mpfr_greater_p(r.lo_, r.hi_)) throw domain_error("BoundReal::span with lower above upper");
    return r;
  }

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(lo_); }

  const __mpfr_struct* lower_ptr() const noexcept { return lo_; }
  const __mpfr_struct* upper_ptr() const noexcept { return hi_; }

  double lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

  /// Upper bound on hi - lo.
  double width() const {
    mpfr_t w;
    mpfr_init2(w, precision());
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    const double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
  }

  /// Midpoint and radius; radius covers the midpoint's own rounding.
  double radius() const { return width() / 2 * (1 + 1e-15); }
  std::string midpoint_string(int digits = 20) const {
    mpfr_t m;
    mpfr_init2(m, precision() + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    std::string s = format(m, digits, MPFR_RNDN);
    mpfr_clear(m);
    return s;
  }

  std::string lower_string(int digits = 20) const { return format(lo_, digits, MPFR_RNDD); }
  std::string upper_string(int digits = 20) const { return format(hi_, digits, MPFR_RNDU); }

  bool contains(const Rational& x) const {
    return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
  }

  /// Is the true value certainly positive / negative.
  bool certainly_positive() const { return mpfr_sgn(lo_) > 0; }
  bool certainly_negative() const { return mpfr_sgn(hi_) < 0; }

  friend BoundReal operator+(const BoundReal& a, const BoundReal& b) {
    BoundReal r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
  }

  friend BoundReal operator-(const BoundReal& a, const BoundReal& b) {
    BoundReal r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
  }

  friend BoundReal operator-(const BoundReal& a) {
    BoundReal r(a.precision());
    mpfr_neg(r.lo_, a.hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, a.lo_, MPFR_RNDU);
    return r;
  }

  friend BoundReal operator*(const BoundReal& a, const BoundReal& b) {
    const mpfr_prec_t prec = std::max(a.precision(), b.precision());
    BoundReal r(prec);
    if (mpfr_sgn(a.lo_) >= 0 && mpfr_sgn(b.lo_) >= 0) {
      mpfr_mul(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
      mpfr_mul(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
      return r;
    }
    mpfr_t t;
    mpfr_init2(t, prec);
    const __mpfr_struct* xs[2] = {a.lo_, a.hi_};
    const __mpfr_struct* ys[2] = {b.lo_, b.hi_};
    bool first = true;
    for (auto* x : xs) {
      for (auto* y : ys) {
        mpfr_mul(t, x, y, MPFR_RNDD);
        if (first || mpfr_less_p(t, r.lo_)) mpfr_set(r.lo_, t, MPFR_RNDD);
        mpfr_mul(t, x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(t, r.hi_)) mpfr_set(r.hi_, t, MPFR_RNDU);
        first = false;
      }
    }
    mpfr_clear(t);
    return r;
  }

  friend BoundReal operator/(const BoundReal& a, const BoundReal& b) {
    if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw domain_error("BoundReal division by an interval containing 0");
    BoundReal inv(b.precision());
    mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
    mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
    return a * inv;
  }

  BoundReal& operator+=(const BoundReal& b) { return *this = *this + b; }
  BoundReal& operator*=(const BoundReal& b) { return *this = *this * b; }

  friend BoundReal sqrt(const BoundReal& a) {
    if (mpfr_sgn(a.hi_) < 0) throw domain_error("sqrt of a negative interval");
    BoundReal r(a.precision());
    if (mpfr_sgn(a.lo_) < 0) {
      mpfr_set_zero(r.lo_, 1);
    } else {
      mpfr_sqrt(r.lo_, a.lo_, MPFR_RNDD);
    }
    mpfr_sqrt(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  friend BoundReal exp(const BoundReal& a) {
    BoundReal r(a.precision());
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  friend BoundReal log(const BoundReal& a) {
    if (mpfr_sgn(a.lo_) <= 0) throw domain_error("log of an interval reaching 0");
    BoundReal r(a.precision());
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
  }

  /// a^e for an interval with a >= 0.
  friend BoundReal pow(const BoundReal& a, unsigned long e) {
    if (mpfr_sgn(a.lo_) < 0) throw domain_error("pow needs a nonnegative interval");
    BoundReal r(a.precision());
    mpfr_pow_ui(r.lo_, a.lo_, e, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, a.hi_, e, MPFR_RNDU);
    return r;
  }

  /// Decides a < b: True when a's upper endpoint is below b's lower one,
  /// False when a's lower endpoint is at or above b's upper one.
  friend Decision less(const BoundReal& a, const BoundReal& b) {
    if (mpfr_less_p(a.hi_, b.lo_)) return Decision::True;
    if (mpfr_greaterequal_p(a.lo_, b.hi_)) return Decision::False;
    return Decision::Unknown;
  }

  /// Lower bound on b - a (negative when the decision is not True).
  friend double margin(const BoundReal& a, const BoundReal& b) {
    mpfr_t t;
    mpfr_init2(t, std::max(a.precision(), b.precision()));
    mpfr_sub(t, b.lo_, a.hi_, MPFR_RNDD);
    const double d = mpfr_get_d(t, MPFR_RNDD);
    mpfr_clear(t);
    return d;
  }

private:
  static std::string format(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
    char* buf = nullptr;
    const std::string fmt = "%." + std::to_string(digits) + "R" + rounding_letter(rnd) + "g";
    mpfr_asprintf(&buf, fmt.c_str(), x);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  static const char* rounding_letter(mpfr_rnd_t rnd) {
    switch (rnd) {
      case MPFR_RNDD: return "D";
      case MPFR_RNDU: return "U";
      default: return "N";
    }
  }

  mpfr_t lo_;
  mpfr_t hi_;
};

inline Decision less(const BoundReal& a, const Rational& b) {
  return less(a, BoundReal::from_rational(b, a.precision()));
}

inline Decision less(const Rational& a, const BoundReal& b) {
  return less(BoundReal::from_rational(a, b.precision()), b);
}

}  // namespace binpart
