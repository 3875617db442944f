#pragma once

// Exact partition counts p(n) and restricted counts p_k(j), the brute-force
// enumeration oracle, and the truncated power-series checks of the two
// generating-function identities for p_k.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "binpart/nat.hpp"

namespace binpart {

/// Memoized p(0..max_n).  Immutable once built.
class PartitionTable {
public:
  /// Euler's pentagonal-number recurrence, O(max_n^{3/2}) additions.  The
  /// monotone and sub-Fibonacci invariants are asserted while building.
  explicit PartitionTable(std::size_t max_n) : values_(max_n + 1) {
    values_[0] = 1;
    for (std::size_t n = 1; n <= max_n; ++n) {
      Int acc = 0;
      for (std::size_t i = 1;; ++i) {
        const std::size_t g1 = i * (3 * i - 1) / 2;
        if (g1 > n) break;
        const std::size_t g2 = i * (3 * i + 1) / 2;
        if (i % 2 == 1) {
          acc += values_[n - g1];
          if (g2 <= n) acc += values_[n - g2];
        } else {
          acc -= values_[n - g1];
          if (g2 <= n) acc -= values_[n - g2];
        }
      }
      values_[n] = std::move(acc);
      if (values_[n] < values_[n - 1]) {
        throw std::logic_error("partition table not monotone at n=" + std::to_string(n));
      }
      if (n >= 2 && values_[n] > values_[n - 1] + values_[n - 2]) {
        throw std::logic_error("partition table not sub-Fibonacci at n=" + std::to_string(n));
      }
    }
  }

  std::size_t max_n() const noexcept { return values_.size() - 1; }

  const Nat& operator[](std::size_t n) const { return values_[n]; }

  const Nat& at(std::size_t n) const {
    if (n > max_n()) {
      throw domain_error("p(" + std::to_string(n) + ") beyond table of size " +
                         std::to_string(max_n()));
    }
    return values_[n];
  }

  std::span<const Nat> values() const noexcept { return values_; }

private:
  std::vector<Nat> values_;
};

inline PartitionTable build_partition_table(std::size_t max_n) { return PartitionTable(max_n); }

/// p_k(0..max_n): partitions with every part at most k.
class RestrictedTable {
public:
  RestrictedTable(std::size_t max_part, std::size_t max_n) : max_part_(max_part), values_(max_n + 1) {
    if (max_part == 0) throw domain_error("restricted table needs max_part >= 1");
    // Coin-counting DP: admit parts 1..k one at a time.
    values_[0] = 1;
    for (std::size_t part = 1; part <= max_part && part <= max_n; ++part) {
      for (std::size_t j = part; j <= max_n; ++j) values_[j] += values_[j - part];
    }
  }

  std::size_t max_part() const noexcept { return max_part_; }
  std::size_t max_n() const noexcept { return values_.size() - 1; }
  const Nat& operator[](std::size_t j) const { return values_[j]; }
  std::span<const Nat> values() const noexcept { return values_; }

private:
  std::size_t max_part_;
  std::vector<Nat> values_;
};

inline RestrictedTable build_restricted_table(std::size_t k, std::size_t max_n) {
  return RestrictedTable(k, max_n);
}

struct PartitionMultiset {
  std::vector<std::size_t> parts;  // nonincreasing, all positive
  std::size_t sum = 0;

  friend bool operator==(const PartitionMultiset&, const PartitionMultiset&) = default;
};

inline constexpr std::size_t kDefaultOracleCap = 60;

namespace detail {

inline void enumerate_into(std::size_t remaining, std::size_t max_part, std::vector<std::size_t>& prefix,
                           std::size_t total, std::vector<PartitionMultiset>& out) {
  if (remaining == 0) {
    out.push_back({prefix, total});
    return;
  }
  const std::size_t top = std::min(remaining, max_part);
  for (std::size_t part = 1; part <= top; ++part) {
    prefix.push_back(part);
    enumerate_into(remaining - part, part, prefix, total, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// Every partition of n with parts <= max_part, once each, in increasing
/// lexicographic order of the (nonincreasing) part lists.  This is the
/// independent oracle for the table builders and is deliberately naive.
inline std::vector<PartitionMultiset> enumerate_partitions(std::size_t n, std::size_t max_part,
                                                           std::size_t oracle_cap = kDefaultOracleCap) {
  if (max_part == 0) throw domain_error("enumerate_partitions needs max_part >= 1");
  if (n > oracle_cap) {
    throw domain_error("enumerate_partitions: n=" + std::to_string(n) + " exceeds oracle cap " +
                       std::to_string(oracle_cap));
  }
  std::vector<PartitionMultiset> out;
  std::vector<std::size_t> prefix;
  detail::enumerate_into(n, max_part, prefix, n, out);
  return out;
}

// ---------------------------------------------------------------------------
// Truncated power series with exact integer coefficients.

using Series = std::vector<Int>;

inline Series truncated_mul(const Series& a, const Series& b, std::size_t degree) {
  Series c(degree + 1);
  for (std::size_t i = 0; i < a.size() && i <= degree; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= degree; ++j) {
      if (b[j] != 0) c[i + j] += a[i] * b[j];
    }
  }
  return c;
}

/// 1/(1 - q^step) = 1 + q^step + q^{2 step} + ... up to `degree`.
inline Series geometric_series(std::size_t step, std::size_t degree) {
  Series s(degree + 1);
  for (std::size_t e = 0; e <= degree; e += step) s[e] = 1;
  return s;
}

/// prod_{j=1}^k 1/(1 - q^j), truncated.
inline Series restricted_product_series(std::size_t k, std::size_t degree) {
  Series acc(degree + 1);
  acc[0] = 1;
  // Factors with j > degree are 1 after truncation.
  for (std::size_t j = 1; j <= k && j <= degree; ++j) acc = truncated_mul(acc, geometric_series(j, degree), degree);
  return acc;
}

/// sum_{j=1}^k j q^j / (1 - q^j), truncated.
inline Series weighted_quotient_series(std::size_t k, std::size_t degree) {
  Series s(degree + 1);
  for (std::size_t j = 1; j <= k; ++j) {
    for (std::size_t e = j; e <= degree; e += j) s[e] += static_cast<unsigned long>(j);
  }
  return s;
}

struct GenFunReport {
  std::size_t k = 0;
  std::size_t degree = 0;
  bool product_identity = true;   // coefficients of the product are p_k(j)
  bool weighted_identity = true;  // coefficients of the weighted series are j p_k(j)
  std::optional<std::size_t> first_mismatch;

  bool passed() const noexcept { return product_identity && weighted_identity; }
};

inline GenFunReport check_generating_functions(std::size_t k, std::size_t degree) {
  if (k == 0 || degree == 0) throw domain_error("check_generating_functions needs k >= 1, degree >= 1");
  GenFunReport report;
  report.k = k;
  report.degree = degree;
  const RestrictedTable expected(k, degree);
  const Series product = restricted_product_series(k, degree);
  const Series weighted = truncated_mul(weighted_quotient_series(k, degree), product, degree);
  for (std::size_t j = 0; j <= degree; ++j) {
    const bool ok3 = product[j] == expected[j];
    const bool ok4 = weighted[j] == expected[j] * static_cast<unsigned long>(j);
    if ((!ok3 || !ok4) && !report.first_mismatch) report.first_mismatch = j;
    report.product_identity = report.product_identity && ok3;
    report.weighted_identity = report.weighted_identity && ok4;
  }
  return report;
}

}  // namespace binpart
