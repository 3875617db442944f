#pragma once

// The binomial partition sums p(n,k) = sum_{j<=k} C(n-j,k-j) p(j), the
// generic weighted sums F(n,l) = sum_{j<=n} C(n-j,l) f(j) they specialize,
// unimodality scans, and the exact sign and ratio identities used to locate
// the peak of each row.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "binpart/nat.hpp"
#include "binpart/partitions.hpp"

namespace binpart {

/// Sum of C(n-j,k-j) p(j) evaluated term by term.  Needs p(0..k).
inline Nat pnk_direct(std::size_t n, std::size_t k, const PartitionTable& table) {
  if (k > n) {
    throw domain_error("p(n,k) needs k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  }
  if (table.max_n() < k) throw domain_error("partition table too small for p(n,k)");
  // Walk j downward from k so that C(n-j,k-j) grows by one exact factor.
  Nat sum = 0;
  Nat c = 1;  // C(n-k, 0)
  for (std::size_t j = k;; --j) {
    sum += c * table[j];
    if (j == 0) break;
    c *= static_cast<unsigned long>(n - j + 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k - j + 1));
  }
  return sum;
}

/// Produces the rows p(n,0..n) for n = 0, 1, 2, ... using
/// p(n+1,k) = p(n,k) + p(n,k-1), holding only the current row.
class PnkRowStream {
public:
  explicit PnkRowStream(const PartitionTable& table) : table_(&table), row_{Nat(1)} {}

  std::size_t n() const noexcept { return n_; }
  const std::vector<Nat>& row() const noexcept { return row_; }

  void advance() {
    const std::size_t next = n_ + 1;
    if (table_->max_n() < next) throw domain_error("partition table too small to extend p(n,k) row");
    std::vector<Nat> out(next + 1);
    out[0] = 1;
    for (std::size_t k = 1; k <= n_; ++k) out[k] = row_[k] + row_[k - 1];
    // Diagonal: p(n,n) is the running sum of p(0..n).
    out[next] = row_[n_] + (*table_)[next];
    row_ = std::move(out);
    n_ = next;
  }

private:
  const PartitionTable* table_;
  std::size_t n_ = 0;
  std::vector<Nat> row_;
};

/// All p(n,k), 0 <= k <= n <= max_n, row-major.  Immutable once built.
class PnkTriangle {
public:
  PnkTriangle(std::size_t max_n, const PartitionTable& table) {
    if (table.max_n() < max_n) throw domain_error("partition table too small for triangle");
    rows_.reserve(max_n + 1);
    PnkRowStream stream(table);
    rows_.push_back(stream.row());
    while (stream.n() < max_n) {
      stream.advance();
      rows_.push_back(stream.row());
      spot_check(stream.n(), table);
    }
  }

  explicit PnkTriangle(std::size_t max_n) : PnkTriangle(max_n, PartitionTable(max_n)) {}

  std::size_t max_n() const noexcept { return rows_.size() - 1; }

  const Nat& operator()(std::size_t n, std::size_t k) const { return rows_[n][k]; }

  const Nat& at(std::size_t n, std::size_t k) const {
    if (n > max_n() || k > n) {
      throw domain_error("p(" + std::to_string(n) + "," + std::to_string(k) + ") outside triangle");
    }
    return rows_[n][k];
  }

  std::span<const Nat> row(std::size_t n) const { return rows_.at(n); }

private:
  void spot_check(std::size_t n, const PartitionTable& table) const {
    for (std::size_t k : {std::size_t{0}, std::size_t{1}, n}) {
      if (rows_[n][k] != pnk_direct(n, k, table)) {
        throw std::logic_error("triangle recursion disagrees with direct sum at n=" + std::to_string(n));
      }
    }
  }

  std::vector<std::vector<Nat>> rows_;
};

inline PnkTriangle build_triangle(std::size_t max_n) { return PnkTriangle(max_n); }

// ---------------------------------------------------------------------------
// Generic F(n, l) for an arbitrary positive weight sequence f.

class WeightedSequence {
public:
  explicit WeightedSequence(std::vector<Nat> values) : values_(std::move(values)) {}

  /// Tabulates f on 0..max_n.
  static WeightedSequence tabulate(std::size_t max_n, const std::function<Nat(std::size_t)>& f) {
    std::vector<Nat> v;
    v.reserve(max_n + 1);
    for (std::size_t i = 0; i <= max_n; ++i) v.push_back(f(i));
    return WeightedSequence(std::move(v));
  }

  static WeightedSequence partitions(const PartitionTable& table) {
    return WeightedSequence({table.values().begin(), table.values().end()});
  }

  std::size_t max_n() const noexcept { return values_.size() - 1; }
  const Nat& operator()(std::size_t n) const { return values_.at(n); }

private:
  std::vector<Nat> values_;
};

/// sum_{j=0}^n C(n-j, ell) f(j); binomials with n-j < ell vanish, so
/// ell = n+1 gives zero.
inline Nat generic_F(const WeightedSequence& f, std::size_t n, std::size_t ell) {
  if (f.max_n() < n) throw domain_error("weight sequence not defined up to n");
  Nat sum = 0;
  for (std::size_t j = 0; j + ell <= n; ++j) sum += binomial(n - j, ell) * f(j);
  return sum;
}

struct ConditionReport {
  bool positive = true;            // (a) f(n) > 0 and f(3) <= 2 f(0) + f(1)
  bool nondecreasing = true;       // (b)
  bool below_prefix_sum = true;    // (c) f(n) < sum_{j<n} f(j), n >= 3
  std::optional<std::size_t> positive_counterexample;
  std::optional<std::size_t> nondecreasing_counterexample;
  std::optional<std::size_t> prefix_counterexample;

  bool all() const noexcept { return positive && nondecreasing && below_prefix_sum; }
};

/// Checks the three growth conditions that make F(n, l) unimodal, on 0..N.
inline ConditionReport check_proposition_conditions(const WeightedSequence& f, std::size_t N) {
  if (f.max_n() < N) throw domain_error("weight sequence not defined up to N");
  ConditionReport r;
  for (std::size_t n = 0; n <= N; ++n) {
    if (f(n) <= 0 && r.positive) {
      r.positive = false;
      r.positive_counterexample = n;
    }
  }
  if (N >= 3 && f(3) > 2 * f(0) + f(1) && r.positive) {
    r.positive = false;
    r.positive_counterexample = 3;
  }
  for (std::size_t n = 0; n + 1 <= N; ++n) {
    if (f(n + 1) < f(n)) {
      r.nondecreasing = false;
      r.nondecreasing_counterexample = n;
      break;
    }
  }
  Nat prefix = 0;
  for (std::size_t n = 0; n <= N; ++n) {
    if (n >= 3 && !(f(n) < prefix)) {
      r.below_prefix_sum = false;
      r.prefix_counterexample = n;
      break;
    }
    prefix += f(n);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Unimodality.

/// The unique maximizer floor((n+3)/2) of p(n, .) for n >= 4.  Smaller n are
/// rejected: row 3 already ties in the complementary index.
inline std::size_t peak_k(std::size_t n) {
  if (n < 4) throw domain_error("peak_k is only defined for n >= 4 (row " + std::to_string(n) + " may tie)");
  return (n + 3) / 2;
}

/// Result of scanning one row p(n,1..n).
struct UnimodalProfile {
  std::size_t n = 0;
  std::vector<Nat> values;       // values[i] = p(n, i+1)
  std::size_t peak_k = 0;        // first argmax, 1-based k
  std::size_t expected_peak = 0;
  bool strict_up = true;         // p(n,1) < ... < p(n,expected_peak)
  bool strict_down = true;       // p(n,expected_peak) > ... > p(n,n)
  bool unique_max = true;
  std::optional<std::size_t> violation_k;

  const Nat& value(std::size_t k) const { return values.at(k - 1); }
  bool ok() const noexcept { return strict_up && strict_down && unique_max && peak_k == expected_peak; }
};

struct UnimodalScan {
  std::size_t argmax = 0;
  bool strict_up = true;
  bool strict_down = true;
  bool unique_max = true;
  std::optional<std::size_t> first_violation;
};

/// Scans a sequence (index 0 holds the first term) for strict ascent to
/// `expected_peak` (0-based) and strict descent afterwards.  Works for any
/// totally ordered element type.
template <typename T>
UnimodalScan scan_unimodal(std::span<const T> seq, std::size_t expected_peak) {
  UnimodalScan s;
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[s.argmax] < seq[i]) s.argmax = i;
  }
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i != s.argmax && !(seq[i] < seq[s.argmax])) s.unique_max = false;
  }
  for (std::size_t i = 1; i < seq.size(); ++i) {
    const bool up = i <= expected_peak;
    const bool ok = up ? seq[i - 1] < seq[i] : seq[i] < seq[i - 1];
    if (!ok) {
      (up ? s.strict_up : s.strict_down) = false;
      if (!s.first_violation) s.first_violation = i;
    }
  }
  return s;
}

inline UnimodalProfile verify_unimodal_profile(std::size_t n, const PnkTriangle& triangle) {
  if (n > triangle.max_n()) throw domain_error("row beyond triangle");
  if (n == 0) throw domain_error("row 0 has no entries with k >= 1");
  UnimodalProfile p;
  p.n = n;
  // Rows below 4 are scanned against the same formula, capped at n.
  p.expected_peak = n >= 4 ? peak_k(n) : std::min((n + 3) / 2, n);
  const auto row = triangle.row(n);
  p.values.assign(row.begin() + 1, row.end());
  const auto scan = scan_unimodal<Nat>(p.values, p.expected_peak - 1);
  p.peak_k = scan.argmax + 1;
  p.strict_up = scan.strict_up;
  p.strict_down = scan.strict_down;
  p.unique_max = scan.unique_max;
  if (scan.first_violation) p.violation_k = *scan.first_violation + 1;
  return p;
}

// ---------------------------------------------------------------------------
// Exact ratio and sign identities.

/// a_{n,k,j} = C(n-j,k-j) / C(n,k) = prod_{i<j} (k-i)/(n-i).
inline Rational a_ratio(std::size_t n, std::size_t k, std::size_t j) {
  if (!(j <= k && k <= n)) throw domain_error("a_ratio needs j <= k <= n");
  Rational r = 1;
  for (std::size_t i = 0; i < j; ++i) {
    r *= make_rational(Int(static_cast<unsigned long>(k - i)), Int(static_cast<unsigned long>(n - i)));
  }
  return r;
}

/// sum_{j=0}^k (n+1-2k+j) C(n-j,k-j) p(j), which equals (n+1-k) (2 p(n,k) - p(n+1,k)).
/// Positive means p(n,k-1) < p(n,k).
inline Int lemma_links_sum(std::size_t n, std::size_t k, const PartitionTable& table) {
  if (k < 1 || k > n) throw domain_error("lemma_links_sum needs 1 <= k <= n");
  if (table.max_n() < k) throw domain_error("partition table too small");
  Int sum = 0;
  Nat c = 1;
  const long base = static_cast<long>(n) + 1 - 2 * static_cast<long>(k);
  for (std::size_t j = k;; --j) {
    sum += Int(base + static_cast<long>(j)) * c * table[j];
    if (j == 0) break;
    c *= static_cast<unsigned long>(n - j + 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k - j + 1));
  }
  return sum;
}

/// sum_{j<terms} (j - offset) a_{n,k,j} p(j): the leading terms of the sign
/// sum divided by C(n,k).
inline Rational links_partial_sum(std::size_t n, std::size_t k, std::size_t terms, long offset,
                                  const PartitionTable& table) {
  Rational sum = 0;
  for (std::size_t j = 0; j < terms && j <= k; ++j) {
    sum += Rational(Int(static_cast<long>(j) - offset)) * a_ratio(n, k, j) * Rational(table[j]);
  }
  sum.canonicalize();
  return sum;
}

/// (n+14) / (4(n-1)): the first four terms at k = (n+2)/2, n even.
inline Rational links_even_closed_form(std::size_t n) {
  return make_rational(Int(static_cast<unsigned long>(n + 14)), Int(4 * static_cast<unsigned long>(n - 1)));
}

/// 5(11n^4 + 120n^3 - 2966n^2 + 9864n + 10251) / (128 n(n-2)(n-4)(n-6)):
/// the first eight terms at k = (n+3)/2, n odd.
inline Rational links_odd_closed_form(std::size_t n) {
  const Int m(static_cast<unsigned long>(n));
  const Int num = 5 * (11 * m * m * m * m + 120 * m * m * m - 2966 * m * m + 9864 * m + 10251);
  const Int den = 128 * m * (m - 2) * (m - 4) * (m - 6);
  return make_rational(num, den);
}

/// Checks the closed form for the leading partial sum that matches n's
/// parity.  Even n needs n >= 4, odd n needs n >= 11 (so that k >= 7).
inline bool links_closed_form_matches(std::size_t n, const PartitionTable& table) {
  if (n % 2 == 0) {
    if (n < 4) throw domain_error("even closed form needs n >= 4");
    return links_partial_sum(n, (n + 2) / 2, 4, 1, table) == links_even_closed_form(n);
  }
  if (n < 11) throw domain_error("odd closed form needs n >= 11");
  return links_partial_sum(n, (n + 3) / 2, 8, 2, table) == links_odd_closed_form(n);
}

/// sum_{j<=k} j C(n-j,k-j) p(j); the descent step at even n is equivalent
/// to this being below 3 p(n,k).
inline Nat rechts_weighted_sum(std::size_t n, std::size_t k, const PartitionTable& table) {
  if (k > n) throw domain_error("rechts_weighted_sum needs k <= n");
  Nat sum = 0;
  Nat c = 1;
  for (std::size_t j = k;; --j) {
    sum += static_cast<unsigned long>(j) * c * table[j];
    if (j == 0) break;
    c *= static_cast<unsigned long>(n - j + 1);
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(k - j + 1));
  }
  return sum;
}

struct GrReport {
  std::size_t n = 0;
  bool passed = true;
  std::optional<std::size_t> violation_k;
};

/// 512 p(n,k) > 1745 C(n,k) for floor((n+5)/2) <= k <= n, exact.
inline GrReport lemma_gr_check(std::size_t n, const PnkTriangle& triangle) {
  if (n < 4) throw domain_error("lemma_gr_check needs n >= 4");
  GrReport r;
  r.n = n;
  for (std::size_t k = (n + 5) / 2; k <= n; ++k) {
    if (!(512 * triangle.at(n, k) > 1745 * binomial(n, k))) {
      r.passed = false;
      r.violation_k = k;
      break;
    }
  }
  return r;
}

}  // namespace binpart
