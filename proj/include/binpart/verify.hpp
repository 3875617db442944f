#pragma once

// Named verification claims and the sweeps that run them over a range of n.
// Shared by the command-line tool and the acceptance suite.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "binpart/binomial_sums.hpp"
#include "binpart/certified_bounds.hpp"
#include "binpart/partitions.hpp"

namespace binpart {

struct ClaimInfo {
  std::string_view id;
  std::size_t min_n;        // smallest n the claim is stated for
  std::size_t default_min;  // default sweep range
  std::size_t default_max;
  std::string_view summary;
};

inline constexpr ClaimInfo kClaims[] = {
    {"thm2", 4, 4, 1000, "row n strictly increases to floor((n+3)/2), strictly decreases after"},
    {"thm3", 1, 1, 1000, "1600 n p(n,k)^2 < 12769 4^n for 1 <= k <= n"},
    {"prop1", 1, 1, 2000, "p(n-1,n-1) < exp(alpha sqrt(n))"},
    {"prop2", 1, 1, 2000, "p(n,n-1) < sqrt(n) exp(alpha sqrt(n))"},
    {"lemma-links", 4, 4, 1000, "sign sum > 0 at the peak; leading-term closed forms"},
    {"lemma-gr", 4, 4, 500, "512 p(n,k) > 1745 C(n,k) for floor((n+5)/2) <= k <= n"},
    {"lemma-rechts", 4, 4, 1000, "sign sum < 0 just after the peak; q = 252/500 constants"},
    {"lemma13", 3, 3, 2000, "sqrt(n)/(sqrt(n+1)-1) < 1+pi/sqrt(6n) < exp(alpha sqrt(n)(sqrt(1+1/n)-1))"},
    {"apostol", 1, 1, 2000, "p(n) < pi/sqrt(6n) exp(alpha sqrt(n))"},
    {"stirling", 1, 1, 2000, "C(n,floor((n+3)/2)) < 2^n/sqrt(pi n/2)"},
    {"eq9", 2, 2, 300, "p(n,k) < C(n,k) prod 1/(1-(k/n)^j) for 1 <= k <= n-1"},
    {"genfun", 1, 1, 15, "series coefficients of the restricted products (range is k, degree 60)"},
};

inline constexpr std::size_t kGenFunDegree = 60;

inline const ClaimInfo* find_claim(std::string_view id) {
  for (const auto& c : kClaims) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

class usage_error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Tables shared by a batch of sweeps.  Grown before any parallel phase and
/// read-only during it.
class SweepContext {
public:
  const PartitionTable& table(std::size_t max_n) {
    if (!table_ || table_->max_n() < max_n) table_ = std::make_unique<PartitionTable>(max_n);
    return *table_;
  }

  const PnkTriangle& triangle(std::size_t max_n) {
    if (!triangle_ || triangle_->max_n() < max_n) triangle_ = std::make_unique<PnkTriangle>(max_n, table(max_n));
    return *triangle_;
  }

  const DiagonalSequences& diagonals(std::size_t max_n) {
    if (!diagonals_ || diagonals_->max_n() < max_n) diagonals_ = std::make_unique<DiagonalSequences>(table(max_n));
    return *diagonals_;
  }

private:
  std::unique_ptr<PartitionTable> table_;
  std::unique_ptr<PnkTriangle> triangle_;
  std::unique_ptr<DiagonalSequences> diagonals_;
};

/// Runs fn(n) for n in [lo, hi] on `threads` workers and folds the reports
/// in increasing n, so the result does not depend on scheduling.
template <typename Fn>
VerificationReport sweep(std::string_view claim, std::size_t lo, std::size_t hi, Fn&& fn, unsigned threads) {
  VerificationReport total;
  total.claim = std::string(claim);
  total.n_min = lo;
  total.n_max = hi;
  if (lo > hi) {
    total.outcome = Outcome::Skipped;
    return total;
  }
  const std::size_t count = hi - lo + 1;
  std::vector<std::optional<VerificationReport>> parts(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        parts[i] = fn(lo + i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  for (const auto& p : parts) {
    VerificationReport part = *p;
    part.claim = total.claim;
    total.absorb(part);
  }
  total.n_min = lo;
  total.n_max = hi;
  return total;
}

inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

namespace detail {

inline VerificationReport exact_report(std::string_view claim, std::size_t n, bool ok,
                                       std::optional<std::size_t> bad_k = {}) {
  VerificationReport r = single_report(std::string(claim), n);
  r.checks = 1;
  if (!ok) {
    r.outcome = Outcome::Violated;
    r.bad_n = n;
    r.bad_k = bad_k;
  }
  return r;
}

}  // namespace detail

/// What to do with a range that starts below the claim's smallest stated n.
enum class RangePolicy {
  Strict,     // usage error
  Clip,       // raise the lower end
  BelowMin,   // run it anyway; failures there are genuine counterexamples
};

inline VerificationReport run_claim(std::string_view id, std::size_t n_min, std::size_t n_max, SweepContext& ctx,
                                    unsigned threads = default_threads(), RangePolicy policy = RangePolicy::Strict) {
  const ClaimInfo* info = find_claim(id);
  if (!info) throw usage_error("unknown claim id: " + std::string(id));
  if (n_min > n_max) throw usage_error("empty range: NMIN > NMAX");
  if (n_min < info->min_n) {
    if (policy == RangePolicy::Strict) {
      throw usage_error(std::string(id) + " is stated for n >= " + std::to_string(info->min_n));
    }
    if (policy == RangePolicy::Clip) n_min = info->min_n;
  }
  const std::size_t lo = n_min;
  const std::size_t hi = n_max;
  if (lo > hi) return sweep(id, lo, hi, [](std::size_t) { return VerificationReport{}; }, 1);

  if (id == "thm2") {
    const PnkTriangle& tri = ctx.triangle(hi);
    return sweep(id, lo, hi, [&](std::size_t n) {
      const UnimodalProfile p = verify_unimodal_profile(n, tri);
      return detail::exact_report(id, n, p.ok(), p.violation_k ? p.violation_k : std::optional{p.peak_k});
    }, threads);
  }
  if (id == "thm3") {
    const PnkTriangle& tri = ctx.triangle(hi);
    return sweep(id, lo, hi, [&](std::size_t n) { return theorem3_check(n, tri); }, threads);
  }
  if (id == "prop1") {
    const DiagonalSequences& d = ctx.diagonals(hi);
    return sweep(id, lo, hi, [&](std::size_t n) { return prop1_check_value(n, d.diagonal(n - 1)); }, threads);
  }
  if (id == "prop2") {
    const DiagonalSequences& d = ctx.diagonals(hi);
    return sweep(id, lo, hi, [&](std::size_t n) { return prop2_check_value(n, d.subdiagonal(n)); }, threads);
  }
  if (id == "lemma-links" || id == "lemma-rechts") {
    const bool rising = id == "lemma-links";
    const PnkTriangle& tri = ctx.triangle(hi + 1);
    const PartitionTable& table = ctx.table(hi + 1);
    VerificationReport r = sweep(id, lo, hi, [&](std::size_t n) {
      const std::size_t k = peak_k(n) + (rising ? 0 : 1);
      const Int s = lemma_links_sum(n, k, table);
      bool ok = rising ? s > 0 : s < 0;
      // Ties the sign sum to the triangle: it is (n+1-k) (2 p(n,k) - p(n+1,k)).
      ok = ok && s == Int(static_cast<unsigned long>(n + 1 - k)) * (2 * tri(n, k) - tri(n + 1, k));
      if (rising && (n % 2 == 0 || n >= 11)) ok = ok && links_closed_form_matches(n, table);
      if (!rising && n % 2 == 0) ok = ok && rechts_weighted_sum(n, k, table) < 3 * tri(n, k);
      return detail::exact_report(id, n, ok, k);
    }, threads);
    if (!rising) {
      const RechtsConstants c = rechts_constant_chain();
      const bool chain = less(c.product, make_rational(354029829, 100000000)) == Decision::True &&
                         less(c.weighted, make_rational(281577392, 100000000)) == Decision::True &&
                         less(c.combined, make_rational(996867959, 100000000)) == Decision::True;
      r.note = "q=252/500 upper bounds: product " + c.product.upper_string(12) + ", weighted " +
               c.weighted.upper_string(12) + ", combined " + c.combined.upper_string(12);
      if (!chain && r.outcome == Outcome::Verified) r.outcome = Outcome::Violated;
    }
    return r;
  }
  if (id == "lemma-gr") {
    const PnkTriangle& tri = ctx.triangle(hi);
    return sweep(id, lo, hi, [&](std::size_t n) {
      const GrReport g = lemma_gr_check(n, tri);
      return detail::exact_report(id, n, g.passed, g.violation_k);
    }, threads);
  }
  if (id == "lemma13") {
    return sweep(id, lo, hi, [](std::size_t n) { return lemma13_check(n); }, threads);
  }
  if (id == "apostol") {
    const PartitionTable& table = ctx.table(hi);
    return sweep(id, lo, hi, [&](std::size_t n) { return apostol_bound_check(n, table); }, threads);
  }
  if (id == "stirling") {
    return sweep(id, lo, hi, [](std::size_t n) { return stirling_binom_check(n); }, threads);
  }
  if (id == "eq9") {
    const PnkTriangle& tri = ctx.triangle(hi);
    return sweep(id, lo, hi, [&](std::size_t n) {
      VerificationReport r = single_report(std::string(id), n);
      for (std::size_t k = 1; k + 1 <= n; ++k) r.absorb(product_bound_check(n, k, tri));
      return r;
    }, threads);
  }
  // genfun: the range runs over the largest part k.
  VerificationReport r = sweep(id, lo, hi, [&](std::size_t k) {
    const GenFunReport g = check_generating_functions(k, kGenFunDegree);
    return detail::exact_report(id, k, g.passed(), g.first_mismatch);
  }, threads);
  r.note = "range is over k; series degree " + std::to_string(kGenFunDegree);
  return r;
}

/// Every claim, each over [n_min, n_max] clipped to where it is stated, or
/// over its default range when no range is given.
inline std::vector<VerificationReport> run_all(std::optional<std::pair<std::size_t, std::size_t>> range,
                                               SweepContext& ctx, unsigned threads = default_threads()) {
  std::vector<VerificationReport> out;
  for (const auto& c : kClaims) {
    if (range) {
      out.push_back(run_claim(c.id, range->first, range->second, ctx, threads, RangePolicy::Clip));
    } else {
      out.push_back(run_claim(c.id, c.default_min, c.default_max, ctx, threads));
    }
  }
  return out;
}

/// 0 verified, 1 a violation, 3 inconclusive (and nothing violated).
inline int exit_code(std::span<const VerificationReport> reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.outcome == Outcome::Violated) return 1;
    if (r.outcome == Outcome::Inconclusive) inconclusive = true;
  }
  return inconclusive ? 3 : 0;
}

}  // namespace binpart
