#pragma once

// Certified enclosures of the Euler product F(q) = prod_{j>=1} 1/(1-q^j) and
// of sum_{j>=1} j q^j/(1-q^j), and margin-checked verification of the upper
// bounds on p(n), p(n,k), p(n-1,n-1), p(n,n-1) and the central binomial.
//
// Each real-valued comparison is decided on BoundReal enclosures.  If the
// enclosures overlap, the precision is doubled (from 128 bits up to the cap)
// before the comparison is reported inconclusive.  Nothing is ever reported
// violated unless the enclosures certify it.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

#include "binpart/binomial_sums.hpp"
#include "binpart/bound_real.hpp"
#include "binpart/nat.hpp"
#include "binpart/partitions.hpp"

namespace binpart {

inline constexpr mpfr_prec_t kStartPrecision = 128;
inline constexpr mpfr_prec_t kDefaultPrecisionCap = 4096;
inline constexpr std::size_t kProductDepthCap = 256;

/// Escalation cap; PRECISION_CAP_BITS overrides the default of 4096.
inline mpfr_prec_t precision_cap_bits() {
  if (const char* env = std::getenv("PRECISION_CAP_BITS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= kStartPrecision && v <= MPFR_PREC_MAX) return v;
  }
  return kDefaultPrecisionCap;
}

enum class Outcome { Verified, Violated, Inconclusive, Skipped };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Verified: return "verified";
    case Outcome::Violated: return "violated";
    case Outcome::Inconclusive: return "inconclusive";
    case Outcome::Skipped: return "skipped";
  }
  return "inconclusive";
}

/// Outcome of one claim over a range of n.  `min_margin` is a lower bound on
/// (right side - left side) in the form the claim is compared in: log scale
/// for the exponential bounds, relative slack for the exact integer ones.
struct VerificationReport {
  std::string claim;
  std::size_t n_min = 0;
  std::size_t n_max = 0;
  Outcome outcome = Outcome::Verified;
  std::optional<std::size_t> bad_n;
  std::optional<std::size_t> bad_k;
  double min_margin = INFINITY;
  mpfr_prec_t max_precision = 0;
  std::size_t checks = 0;
  std::string note;

  bool verified() const noexcept { return outcome == Outcome::Verified; }

  /// Folds another report over a disjoint range into this one.  The first
  /// failure in n order wins; callers merge in increasing n.
  void absorb(const VerificationReport& other) {
    n_min = std::min(n_min, other.n_min);
    n_max = std::max(n_max, other.n_max);
    checks += other.checks;
    min_margin = std::min(min_margin, other.min_margin);
    max_precision = std::max(max_precision, other.max_precision);
    const auto rank = [](Outcome o) {
      return o == Outcome::Violated ? 2 : o == Outcome::Inconclusive ? 1 : 0;
    };
    if (rank(other.outcome) > rank(outcome)) {
      outcome = other.outcome;
      bad_n = other.bad_n;
      bad_k = other.bad_k;
      if (!other.note.empty()) note = other.note;
    }
  }
};

inline VerificationReport single_report(std::string claim, std::size_t n) {
  VerificationReport r;
  r.claim = std::move(claim);
  r.n_min = r.n_max = n;
  return r;
}

struct Certified {
  Decision decision = Decision::Unknown;
  double margin = 0;
  mpfr_prec_t precision = 0;
};

/// Runs `sides(prec)`, which returns the pair (lhs, rhs) of `lhs < rhs`, with
/// precision doubling from kStartPrecision until the comparison is decided
/// or `cap` is exceeded.
template <typename Sides>
Certified certify_less(Sides&& sides, mpfr_prec_t cap = precision_cap_bits()) {
  Certified c;
  for (mpfr_prec_t prec = kStartPrecision; prec <= cap; prec *= 2) {
    const auto [lhs, rhs] = sides(prec);
    c.decision = less(lhs, rhs);
    c.margin = margin(lhs, rhs);
    c.precision = prec;
    if (c.decision != Decision::Unknown) break;
  }
  return c;
}

inline void record(VerificationReport& r, const Certified& c, std::size_t n, std::optional<std::size_t> k = {}) {
  ++r.checks;
  r.max_precision = std::max(r.max_precision, c.precision);
  r.min_margin = std::min(r.min_margin, c.margin);
  if (r.outcome != Outcome::Verified) return;
  if (c.decision == Decision::False) {
    r.outcome = Outcome::Violated;
  } else if (c.decision == Decision::Unknown) {
    r.outcome = Outcome::Inconclusive;
  } else {
    return;
  }
  r.bad_n = n;
  r.bad_k = k;
}

/// sqrt(2/3) pi.
inline BoundReal alpha(mpfr_prec_t prec) {
  return BoundReal::pi(prec) * sqrt(BoundReal::from_rational(Rational(2, 3), prec));
}

/// ln of a positive big integer.  MPFR carries the binary exponent
/// separately, so this never overflows for any table size.
inline BoundReal log_of(const Nat& x, mpfr_prec_t prec) {
  if (x <= 0) throw domain_error("log_of needs a positive integer");
  return log(BoundReal::from_integer(x, prec));
}

// ---------------------------------------------------------------------------
// q-series enclosures.

struct TailParams {
  Rational q;
  std::size_t ell = 2;

  TailParams(Rational q_, std::size_t ell_) : q(std::move(q_)), ell(ell_) {
    q.canonicalize();
    if (!(q > 0 && q < 1)) throw domain_error("tail bounds need 0 < q < 1");
    if (ell < 2) throw domain_error("tail bounds need ell >= 2");
  }
};

/// Enough bits that q^ell is well above the rounding noise of the partial
/// product, so that raising ell visibly tightens the bound.
inline mpfr_prec_t tail_precision(const TailParams& p) {
  const double bits_per_step = std::log2(1.0 / p.q.get_d());
  const double want = 64.0 + bits_per_step * static_cast<double>(p.ell) + 2 * std::log2(p.ell + 1.0);
  return static_cast<mpfr_prec_t>(std::clamp(want, double(kStartPrecision), 2048.0));
}

/// Interval whose lower end is the partial product prod_{j<ell} 1/(1-q^j)
/// (every omitted factor exceeds 1) and whose upper end is
/// exp(q^ell/(1-q)^2) times that partial product.
inline BoundReal euler_product_upper(const TailParams& p, mpfr_prec_t prec = 0) {
  if (prec == 0) prec = tail_precision(p);
  const BoundReal one = BoundReal::from_integer(1, prec);
  const BoundReal q = BoundReal::from_rational(p.q, prec);
  BoundReal partial = one;
  BoundReal qpow = one;
  for (std::size_t j = 1; j < p.ell; ++j) {
    qpow *= q;
    partial = partial / (one - qpow);
  }
  const BoundReal gap = one - q;
  const BoundReal tail = qpow * q / (gap * gap);
  return BoundReal::span(partial, exp(tail) * partial);
}

/// Interval whose lower end is sum_{j<ell} j q^j/(1-q^j) and whose upper end
/// is q/(1-q)^3 + sum_{j<ell} j q^j (q^j - q)/((1-q^j)(1-q)).
inline BoundReal weighted_sum_upper(const TailParams& p, mpfr_prec_t prec = 0) {
  if (prec == 0) prec = tail_precision(p);
  const BoundReal one = BoundReal::from_integer(1, prec);
  const BoundReal q = BoundReal::from_rational(p.q, prec);
  const BoundReal gap = one - q;
  BoundReal partial(prec);
  BoundReal correction(prec);
  BoundReal qpow = one;
  for (std::size_t j = 1; j < p.ell; ++j) {
    qpow *= q;
    const BoundReal jq = BoundReal::from_integer(static_cast<long>(j), prec) * qpow;
    const BoundReal denom = one - qpow;
    partial += jq / denom;
    correction += jq * (qpow - q) / (denom * gap);
  }
  const BoundReal upper = q / (gap * gap * gap) + correction;
  return BoundReal::span(partial, upper);
}

struct ProductEnclosure {
  BoundReal value;
  std::size_t ell = 0;
  bool reached = false;  // width within tolerance
};

inline constexpr std::size_t kEnclosureDepthCap = std::size_t{1} << 16;

enum class Tolerance { Absolute, Relative };

/// Smallest ell (by incremental search) whose Euler product enclosure has
/// width at most `tol` (absolute, or relative to the lower end).  Works at
/// `prec` bits, or picks a precision from tol when prec is 0.
inline ProductEnclosure euler_product_enclosure(const Rational& q_in, double tol, mpfr_prec_t prec = 0,
                                                Tolerance mode = Tolerance::Absolute,
                                                std::size_t depth_cap = kEnclosureDepthCap) {
  const TailParams checked(q_in, 2);
  if (!(tol > 0)) throw domain_error("tolerance must be positive");
  if (prec == 0) {
    prec = std::max<mpfr_prec_t>(kStartPrecision, static_cast<mpfr_prec_t>(std::ceil(-std::log2(tol))) + 96);
  }
  const BoundReal one = BoundReal::from_integer(1, prec);
  const BoundReal q = BoundReal::from_rational(checked.q, prec);
  const BoundReal gap2 = (one - q) * (one - q);
  BoundReal partial = one;  // prod_{j<ell}
  BoundReal qpow = q;       // q^ell
  for (std::size_t ell = 1;; ++ell) {
    if (ell >= 2) {
      const BoundReal tail = qpow / gap2;
      // width ~ partial * tail; skip the exp until that can be small enough.
      const double scale = mode == Tolerance::Absolute ? partial.lower() : 1.0;
      if (tail.lower() * scale <= 2 * tol || ell == depth_cap) {
        BoundReal enc = BoundReal::span(partial, exp(tail) * partial);
        const double w = mode == Tolerance::Absolute ? enc.width() : enc.width() / enc.lower();
        if (w <= tol || ell == depth_cap) return {std::move(enc), ell, w <= tol};
      }
    }
    partial = partial / (one - qpow);
    qpow *= q;
  }
}

/// The three upper bounds used when bounding the weighted restricted sum at
/// q = 252/500: the product, the weighted sum, and their product.
struct RechtsConstants {
  BoundReal product;
  BoundReal weighted;
  BoundReal combined;
};

inline RechtsConstants rechts_constant_chain(std::size_t ell = 64) {
  const TailParams p(Rational(252, 500), ell);
  BoundReal prod = euler_product_upper(p);
  BoundReal weighted = weighted_sum_upper(p);
  // Only the upper ends are meaningful for the combined bound.
  BoundReal combined = prod * weighted;
  return {std::move(prod), std::move(weighted), std::move(combined)};
}

// ---------------------------------------------------------------------------
// Verification of individual inequalities.

/// 1600 n p(n,k)^2 < 12769 4^n for every 1 <= k <= n (2.825 = 113/40), in
/// exact integers.
inline VerificationReport theorem3_check(std::size_t n, const PnkTriangle& triangle) {
  if (n < 1) throw domain_error("theorem3_check needs n >= 1");
  VerificationReport r = single_report("thm3", n);
  const Nat rhs = 12769 * pow_ui(4, n);
  const Nat weight = 1600 * Nat(static_cast<unsigned long>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    const Nat& v = triangle.at(n, k);
    const Nat lhs = weight * v * v;
    ++r.checks;
    const double slack = make_rational(rhs - lhs, rhs).get_d();
    r.min_margin = std::min(r.min_margin, slack);
    if (!(lhs < rhs)) {
      r.outcome = Outcome::Violated;
      r.bad_n = n;
      r.bad_k = k;
      break;
    }
  }
  return r;
}

/// C(n, floor((n+3)/2)) < 2^n / sqrt(pi n / 2), decided as
/// C^2 pi n / (2 4^n) < 1.
inline VerificationReport stirling_binom_check(std::size_t n) {
  if (n < 1) throw domain_error("stirling_binom_check needs n >= 1");
  VerificationReport r = single_report("stirling", n);
  const Nat c = binomial(n, (n + 3) / 2);
  if (c == 0) {
    ++r.checks;
    r.min_margin = 1;
    return r;
  }
  const Nat c2n = c * c * Nat(static_cast<unsigned long>(n));
  const Nat four_n = pow_ui(4, n);
  const Certified cert = certify_less([&](mpfr_prec_t prec) {
    const BoundReal ratio = BoundReal::from_integer(c2n, prec) * BoundReal::pi(prec) /
                            BoundReal::from_integer(2 * four_n, prec);
    return std::pair{ratio, BoundReal::from_integer(1, prec)};
  });
  record(r, cert, n);
  return r;
}

/// ln p(n) < ln(pi / sqrt(6n)) + alpha sqrt(n).
inline VerificationReport apostol_bound_check(std::size_t n, const PartitionTable& table) {
  if (n < 1) throw domain_error("apostol_bound_check needs n >= 1");
  VerificationReport r = single_report("apostol", n);
  const Nat& pn = table.at(n);
  const Certified cert = certify_less([&](mpfr_prec_t prec) {
    const BoundReal nn = BoundReal::from_integer(static_cast<long>(n), prec);
    const BoundReal rhs =
        log(BoundReal::pi(prec) / sqrt(BoundReal::from_integer(6, prec) * nn)) + alpha(prec) * sqrt(nn);
    return std::pair{log_of(pn, prec), rhs};
  });
  record(r, cert, n);
  return r;
}

/// sqrt(n)/(sqrt(n+1)-1) < 1 + pi/sqrt(6n) < exp(alpha sqrt(n)(sqrt(1+1/n)-1)).
inline VerificationReport lemma13_check(std::size_t n) {
  if (n < 3) throw domain_error("lemma13_check needs n >= 3");
  VerificationReport r = single_report("lemma13", n);
  const auto middle = [n](mpfr_prec_t prec) {
    const BoundReal nn = BoundReal::from_integer(static_cast<long>(n), prec);
    return BoundReal::from_integer(1, prec) + BoundReal::pi(prec) / sqrt(BoundReal::from_integer(6, prec) * nn);
  };
  const Certified left = certify_less([&](mpfr_prec_t prec) {
    const BoundReal nn = BoundReal::from_integer(static_cast<long>(n), prec);
    const BoundReal one = BoundReal::from_integer(1, prec);
    return std::pair{sqrt(nn) / (sqrt(nn + one) - one), middle(prec)};
  });
  record(r, left, n);
  const Certified right = certify_less([&](mpfr_prec_t prec) {
    const BoundReal nn = BoundReal::from_integer(static_cast<long>(n), prec);
    const BoundReal one = BoundReal::from_integer(1, prec);
    const BoundReal inv = one / nn;
    // sqrt(1+1/n) - 1 without cancellation.
    const BoundReal step = inv / (sqrt(one + inv) + one);
    return std::pair{middle(prec), exp(alpha(prec) * sqrt(nn) * step)};
  });
  record(r, right, n);
  return r;
}

/// ln p(n-1,n-1) < alpha sqrt(n), given the value p(n-1,n-1).
inline VerificationReport prop1_check_value(std::size_t n, const Nat& diagonal) {
  if (n < 1) throw domain_error("prop1_check needs n >= 1");
  VerificationReport r = single_report("prop1", n);
  const Certified cert = certify_less([&](mpfr_prec_t prec) {
    const BoundReal nn = BoundReal::from_integer(static_cast<long>(n), prec);
    return std::pair{log_of(diagonal, prec), alpha(prec) * sqrt(nn)};
  });
  record(r, cert, n);
  return r;
}

inline VerificationReport prop1_check(std::size_t n, const PnkTriangle& triangle) {
  if (n < 1) throw domain_error("prop1_check needs n >= 1");
  return prop1_check_value(n, triangle.at(n - 1, n - 1));
}

/// ln p(n,n-1) < (1/2) ln n + alpha sqrt(n), given the value p(n,n-1).
inline VerificationReport prop2_check_value(std::size_t n, const Nat& subdiagonal) {
  if (n < 1) throw domain_error("prop2_check needs n >= 1");
  VerificationReport r = single_report("prop2", n);
  const Certified cert = certify_less([&](mpfr_prec_t prec) {
    const BoundReal nn = BoundReal::from_integer(static_cast<long>(n), prec);
    const BoundReal half = BoundReal::from_rational(Rational(1, 2), prec);
    return std::pair{log_of(subdiagonal, prec), half * log(nn) + alpha(prec) * sqrt(nn)};
  });
  record(r, cert, n);
  return r;
}

inline VerificationReport prop2_check(std::size_t n, const PnkTriangle& triangle) {
  if (n < 1) throw domain_error("prop2_check needs n >= 1");
  return prop2_check_value(n, triangle.at(n, n - 1));
}

/// p(n,n) and p(n,n-1) for n <= max_n without the full triangle:
/// p(n,n) = p(n-1,n-1) + p(n) and p(n+1,n) = p(n,n) + p(n,n-1).
class DiagonalSequences {
public:
  explicit DiagonalSequences(const PartitionTable& table) : diag_(table.max_n() + 1), sub_(table.max_n() + 1) {
    diag_[0] = table[0];
    sub_[0] = 0;  // unused: p(0,-1)
    for (std::size_t n = 1; n <= table.max_n(); ++n) {
      diag_[n] = diag_[n - 1] + table[n];
      sub_[n] = n == 1 ? Nat(1) : diag_[n - 1] + sub_[n - 1];
    }
  }

  std::size_t max_n() const noexcept { return diag_.size() - 1; }
  const Nat& diagonal(std::size_t n) const { return diag_.at(n); }        // p(n,n)
  const Nat& subdiagonal(std::size_t n) const {                            // p(n,n-1)
    if (n == 0) throw domain_error("p(0,-1) is undefined");
    return sub_.at(n);
  }

private:
  std::vector<Nat> diag_;
  std::vector<Nat> sub_;
};

/// p(n,k) < C(n,k) F(k/n), verified against the partial product
/// prod_{j<=d} 1/(1-(k/n)^j), which is a lower bound for F(k/n).  The depth d
/// doubles from 8 up to `depth_cap`; running out of depth is inconclusive.
inline VerificationReport product_bound_check(std::size_t n, std::size_t k, const PnkTriangle& triangle,
                                              std::size_t depth_cap = kProductDepthCap) {
  if (!(k >= 1 && k + 1 <= n)) throw domain_error("product_bound_check needs 1 <= k <= n-1");
  VerificationReport r = single_report("eq9", n);
  const Nat& pnk = triangle.at(n, k);
  const Nat c = binomial(n, k);
  const Rational q = make_rational(Int(static_cast<unsigned long>(k)), Int(static_cast<unsigned long>(n)));
  Certified last;
  const mpfr_prec_t cap = precision_cap_bits();
  for (mpfr_prec_t prec = kStartPrecision; prec <= cap; prec *= 2) {
    const BoundReal one = BoundReal::from_integer(1, prec);
    const BoundReal qq = BoundReal::from_rational(q, prec);
    const BoundReal lhs = BoundReal::from_integer(pnk, prec);
    const BoundReal binom = BoundReal::from_integer(c, prec);
    BoundReal partial = one;
    BoundReal qpow = one;
    std::size_t checkpoint = 8;
    bool saw_unknown = false;
    for (std::size_t j = 1; j <= depth_cap; ++j) {
      qpow *= qq;
      partial = partial / (one - qpow);
      if (j == checkpoint || j == depth_cap) {
        // Only the lower end of the partial product is a bound for F.
        const BoundReal rhs = binom * partial;
        last = {less(lhs, rhs), margin(lhs, rhs) / rhs.lower(), prec};
        if (last.decision == Decision::True) {
          record(r, last, n, k);
          return r;
        }
        saw_unknown = last.decision == Decision::Unknown;
        checkpoint *= 2;
      }
    }
    if (!saw_unknown) break;  // certainly below: more precision will not help
  }
  // Depth cap reached without certification; never reported as a violation.
  last.decision = Decision::Unknown;
  record(r, last, n, k);
  r.note = "partial product depth cap " + std::to_string(depth_cap) + " reached";
  return r;
}

/// p(n,k) / (C(n,k) F(k/n)) as an enclosure; F(k/n) is enclosed to relative
/// width 1e-30 (or as far as the enclosure depth cap allows).
inline BoundReal asymptotic_ratio(std::size_t n, std::size_t k, const PnkTriangle& triangle,
                                  mpfr_prec_t prec = 192) {
  if (!(k >= 1 && k + 1 <= n)) throw domain_error("asymptotic_ratio needs 1 <= k <= n-1");
  const Rational q = make_rational(Int(static_cast<unsigned long>(k)), Int(static_cast<unsigned long>(n)));
  const ProductEnclosure f = euler_product_enclosure(q, 1e-30, prec, Tolerance::Relative);
  const BoundReal denom = BoundReal::from_integer(binomial(n, k), prec) * f.value;
  return BoundReal::from_integer(triangle.at(n, k), prec) / denom;
}

}  // namespace binpart
