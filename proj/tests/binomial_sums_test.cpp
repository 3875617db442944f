#include "binpart/binomial_sums.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace binpart {
namespace {

// p(n,k) from the definition with p(j) counted by enumeration, so that
// neither the pentagonal recurrence nor the row recursion is involved.
Nat brute_pnk(std::size_t n, std::size_t k) {
  Nat sum = 0;
  for (std::size_t j = 0; j <= k; ++j) {
    const auto count = enumerate_partitions(j, std::max<std::size_t>(j, 1)).size();
    sum += binomial(n - j, k - j) * Nat(static_cast<unsigned long>(count));
  }
  return sum;
}

struct GoldenRow {
  std::size_t k;
  Nat p_k;
  Nat p_50_k;
};

std::vector<GoldenRow> golden_table() {
  std::ifstream in(std::string(BINPART_FIXTURE_DIR) + "/table50.csv");
  std::string line;
  std::getline(in, line);
  std::vector<GoldenRow> rows;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::string a, b, c;
    std::getline(ss, a, ',');
    std::getline(ss, b, ',');
    std::getline(ss, c, ',');
    rows.push_back({std::stoul(a), parse_nat(b), parse_nat(c)});
  }
  return rows;
}

class TriangleTest : public ::testing::Test {
protected:
  static void SetUpTestSuite() {
    table_ = new PartitionTable(1001);
    triangle_ = new PnkTriangle(1001, *table_);
  }
  static void TearDownTestSuite() {
    delete triangle_;
    delete table_;
  }
  static PartitionTable* table_;
  static PnkTriangle* triangle_;
};

PartitionTable* TriangleTest::table_ = nullptr;
PnkTriangle* TriangleTest::triangle_ = nullptr;

TEST_F(TriangleTest, GoldenRowFifty) {
  const auto rows = golden_table();
  ASSERT_EQ(rows.size(), 50u);
  for (const auto& r : rows) {
    EXPECT_EQ((*table_)[r.k], r.p_k) << r.k;
    EXPECT_EQ((*triangle_)(50, r.k), r.p_50_k) << r.k;
  }
}

TEST_F(TriangleTest, DirectSumExamples) {
  EXPECT_EQ(pnk_direct(50, 1, *table_), 51);
  EXPECT_EQ(pnk_direct(50, 3, *table_), 20875);
  EXPECT_EQ(pnk_direct(17, 0, *table_), 1);
  EXPECT_EQ(pnk_direct(4, 3, *table_), 14);
  EXPECT_THROW(pnk_direct(3, 4, *table_), domain_error);
}

TEST_F(TriangleTest, SmallRows) {
  EXPECT_EQ((*triangle_)(2, 2), 4);
  EXPECT_EQ((*triangle_)(10, 5), 590);
  EXPECT_EQ((*triangle_)(10, 5), brute_pnk(10, 5));
  const std::vector<long> row4 = {1, 5, 11, 14, 12};
  for (std::size_t k = 0; k <= 4; ++k) EXPECT_EQ((*triangle_)(4, k), row4[k]);
}

TEST_F(TriangleTest, MatchesBruteForce) {
  for (std::size_t n = 0; n <= 24; ++n) {
    for (std::size_t k = 0; k <= n; ++k) ASSERT_EQ((*triangle_)(n, k), brute_pnk(n, k)) << n << "," << k;
  }
}

TEST_F(TriangleTest, RecursionAcrossWholeTriangle) {
  for (std::size_t n = 0; n < triangle_->max_n(); ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      ASSERT_EQ((*triangle_)(n + 1, k), (*triangle_)(n, k) + (*triangle_)(n, k - 1)) << n << "," << k;
    }
  }
}

TEST_F(TriangleTest, ColumnEndpoints) {
  Nat running = 0;
  for (std::size_t n = 0; n <= triangle_->max_n(); ++n) {
    running += (*table_)[n];
    ASSERT_EQ((*triangle_)(n, 0), 1);
    if (n >= 1) {
      ASSERT_EQ((*triangle_)(n, 1), static_cast<long>(n + 1));
    }
    ASSERT_EQ((*triangle_)(n, n), running);
  }
}

TEST_F(TriangleTest, RandomEntriesMatchDirectSum) {
  std::mt19937 rng(7);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = rng() % 1002;
    const std::size_t k = rng() % (n + 1);
    ASSERT_EQ((*triangle_)(n, k), pnk_direct(n, k, *table_)) << n << "," << k;
  }
}

TEST_F(TriangleTest, RowStreamMatchesStoredRows) {
  PnkRowStream s(*table_);
  while (s.n() < 300) {
    s.advance();
    const auto row = triangle_->row(s.n());
    ASSERT_TRUE(std::equal(row.begin(), row.end(), s.row().begin(), s.row().end()));
  }
}

TEST(GenericF, ConstantWeightIsHockeyStick) {
  const auto ones = WeightedSequence::tabulate(200, [](std::size_t) { return Nat(1); });
  for (std::size_t n = 0; n <= 200; ++n) {
    for (std::size_t ell = 0; ell <= n; ++ell) ASSERT_EQ(generic_F(ones, n, ell), binomial(n + 1, ell + 1));
    ASSERT_EQ(generic_F(ones, n, n + 1), 0);
  }
}

TEST(GenericF, PartitionWeightGivesPnk) {
  const PartitionTable table(60);
  const PnkTriangle tri(60, table);
  const auto f = WeightedSequence::partitions(table);
  for (std::size_t n = 0; n <= 60; ++n) {
    for (std::size_t k = 0; k <= n; ++k) ASSERT_EQ(generic_F(f, n, n - k), tri(n, k));
  }
  // Row 3 ties at the first step.
  EXPECT_EQ(generic_F(f, 3, 0), 7);
  EXPECT_EQ(generic_F(f, 3, 1), 7);
}

TEST(GenericF, RecursionInEll) {
  const auto f = WeightedSequence::tabulate(40, [](std::size_t n) { return Nat(static_cast<unsigned long>(n * n + 1)); });
  for (std::size_t n = 1; n < 40; ++n) {
    for (std::size_t ell = 1; ell <= n; ++ell) {
      ASSERT_EQ(generic_F(f, n + 1, ell), generic_F(f, n, ell) + generic_F(f, n, ell - 1));
      ASSERT_EQ(generic_F(f, n + 1, ell + 1) - generic_F(f, n + 1, ell),
                generic_F(f, n, ell + 1) - generic_F(f, n, ell - 1));
    }
  }
}

TEST(Conditions, PartitionsSatisfyAll) {
  const PartitionTable table(500);
  const ConditionReport r = check_proposition_conditions(WeightedSequence::partitions(table), 500);
  EXPECT_TRUE(r.all());
}

TEST(Conditions, ConstantSequence) {
  const auto ones = WeightedSequence::tabulate(50, [](std::size_t) { return Nat(1); });
  const ConditionReport r = check_proposition_conditions(ones, 50);
  EXPECT_TRUE(r.below_prefix_sum);
  EXPECT_TRUE(r.all());
}

TEST(Conditions, PowersOfTwoFailPrefixCondition) {
  const auto twos = WeightedSequence::tabulate(20, [](std::size_t n) { return pow_ui(2, n); });
  const ConditionReport r = check_proposition_conditions(twos, 20);
  EXPECT_FALSE(r.below_prefix_sum);
  ASSERT_TRUE(r.prefix_counterexample.has_value());
  EXPECT_EQ(*r.prefix_counterexample, 3u);
  EXPECT_TRUE(r.nondecreasing);
  EXPECT_FALSE(r.positive);  // f(3) = 8 > 2 f(0) + f(1) = 4
}

TEST(Conditions, DecreasingAndZeroSequences) {
  const auto dec = WeightedSequence::tabulate(10, [](std::size_t n) { return Nat(static_cast<unsigned long>(20 - n)); });
  EXPECT_FALSE(check_proposition_conditions(dec, 10).nondecreasing);
  const auto zero = WeightedSequence::tabulate(10, [](std::size_t n) { return Nat(n == 4 ? 0 : 1); });
  const ConditionReport r = check_proposition_conditions(zero, 10);
  EXPECT_FALSE(r.positive);
  EXPECT_EQ(*r.positive_counterexample, 4u);
}

TEST_F(TriangleTest, PeakK) {
  EXPECT_EQ(peak_k(4), 3u);
  EXPECT_EQ(peak_k(11), 7u);
  EXPECT_EQ(peak_k(50), 26u);
  EXPECT_THROW(peak_k(3), domain_error);
  EXPECT_THROW(peak_k(0), domain_error);
  // n = 11 by scan.
  const auto row = triangle_->row(11);
  EXPECT_EQ(std::max_element(row.begin(), row.end()) - row.begin(), 7);
}

TEST_F(TriangleTest, UnimodalProfiles) {
  const UnimodalProfile p4 = verify_unimodal_profile(4, *triangle_);
  EXPECT_TRUE(p4.ok());
  EXPECT_EQ(p4.value(1), 5);
  EXPECT_EQ(p4.value(2), 11);
  EXPECT_EQ(p4.value(3), 14);
  EXPECT_EQ(p4.value(4), 12);

  const UnimodalProfile p50 = verify_unimodal_profile(50, *triangle_);
  EXPECT_TRUE(p50.ok());
  EXPECT_EQ(p50.peak_k, 26u);
  EXPECT_EQ(p50.value(26), Nat("412637434996367"));

  const UnimodalProfile p1000 = verify_unimodal_profile(1000, *triangle_);
  EXPECT_TRUE(p1000.ok());
  EXPECT_EQ(p1000.peak_k, 501u);
}

TEST_F(TriangleTest, PeakSweep) {
  for (std::size_t n = 4; n <= 1000; ++n) {
    const UnimodalProfile p = verify_unimodal_profile(n, *triangle_);
    ASSERT_TRUE(p.ok()) << n;
    ASSERT_TRUE(p.strict_up && p.strict_down && p.unique_max);
  }
}

TEST(ScanUnimodal, DetectsViolations) {
  const std::vector<int> good = {1, 3, 5, 4, 2};
  auto s = scan_unimodal<int>(good, 2);
  EXPECT_TRUE(s.strict_up && s.strict_down && s.unique_max);
  EXPECT_EQ(s.argmax, 2u);

  const std::vector<int> tie = {1, 5, 5, 2};
  s = scan_unimodal<int>(tie, 1);
  EXPECT_FALSE(s.unique_max);
  EXPECT_FALSE(s.strict_down);
  EXPECT_EQ(*s.first_violation, 2u);

  const std::vector<int> dip = {1, 3, 2, 4, 1};
  s = scan_unimodal<int>(dip, 3);
  EXPECT_FALSE(s.strict_up);
  EXPECT_TRUE(s.strict_down);
}

TEST(ScanUnimodal, RandomPeakedSequences) {
  // Hand-rolled generator: strictly increasing run, then strictly decreasing.
  std::mt19937 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t up = 1 + rng() % 20;
    const std::size_t down = rng() % 20;
    std::vector<long> seq;
    long v = static_cast<long>(rng() % 5);
    for (std::size_t i = 0; i < up; ++i) seq.push_back(v += 1 + static_cast<long>(rng() % 5));
    for (std::size_t i = 0; i < down; ++i) seq.push_back(v -= 1 + static_cast<long>(rng() % 5));
    const auto s = scan_unimodal<long>(seq, up - 1);
    ASSERT_TRUE(s.strict_up && s.strict_down && s.unique_max);
    ASSERT_EQ(s.argmax, up - 1);
  }
}

TEST(ARatio, Examples) {
  EXPECT_EQ(a_ratio(10, 6, 0), 1);
  EXPECT_EQ(a_ratio(37, 11, 1), Rational(11, 37));
  EXPECT_EQ(a_ratio(10, 6, 3), Rational(1, 6));
  EXPECT_THROW(a_ratio(5, 6, 1), domain_error);
  EXPECT_THROW(a_ratio(5, 3, 4), domain_error);
}

TEST(ARatio, EqualsBinomialQuotientAndBoundedByPower) {
  for (std::size_t n = 1; n <= 100; ++n) {
    for (std::size_t k = 1; k <= n; ++k) {
      const Rational q(static_cast<unsigned long>(k), static_cast<unsigned long>(n));
      Rational qj = 1;
      for (std::size_t j = 1; j <= k; ++j) {
        qj *= q;
        const Rational a = a_ratio(n, k, j);
        ASSERT_LE(a, qj) << n << "," << k << "," << j;
        if (n <= 30) {
          ASSERT_EQ(a, make_rational(binomial(n - j, k - j), binomial(n, k)));
        }
      }
    }
  }
}

TEST_F(TriangleTest, LinksSumSmallValues) {
  // Direct evaluation of sum (n+1-2k+j) C(n-j,k-j) p(j).
  EXPECT_EQ(lemma_links_sum(4, 3, *table_), 6);
  EXPECT_EQ(lemma_links_sum(4, 4, *table_), -2);
  EXPECT_EQ(lemma_links_sum(5, 4, *table_), 2);
  EXPECT_EQ(lemma_links_sum(5, 5, *table_), -7);
  EXPECT_EQ(lemma_links_sum(8, 5, *table_), 132);
  EXPECT_EQ(lemma_links_sum(8, 6, *table_), -51);
  EXPECT_THROW(lemma_links_sum(4, 0, *table_), domain_error);
  EXPECT_THROW(lemma_links_sum(4, 5, *table_), domain_error);
}

TEST_F(TriangleTest, LinksSumEqualsTriangleDifference) {
  for (std::size_t n = 1; n <= 1000; ++n) {
    for (std::size_t k : {std::size_t{1}, n / 3 + 1, n / 2 + 1, (n + 3) / 2, n}) {
      if (k > n) continue;
      const Int scale(static_cast<unsigned long>(n + 1 - k));
      ASSERT_EQ(lemma_links_sum(n, k, *table_), scale * (2 * (*triangle_)(n, k) - (*triangle_)(n + 1, k)))
          << n << "," << k;
    }
  }
}

TEST_F(TriangleTest, LinksSignsAroundPeak) {
  for (std::size_t n = 4; n <= 1000; ++n) {
    const std::size_t k = peak_k(n);
    ASSERT_GT(lemma_links_sum(n, k, *table_), 0) << n;
    ASSERT_LT(lemma_links_sum(n, k + 1, *table_), 0) << n;
  }
}

TEST_F(TriangleTest, ClosedFormsForLeadingTerms) {
  // Values computed independently with exact rational arithmetic.
  EXPECT_EQ(links_partial_sum(100, 51, 4, 1, *table_), Rational(19, 66));
  EXPECT_EQ(links_even_closed_form(100), Rational(19, 66));
  EXPECT_EQ(links_partial_sum(101, 52, 8, 2, *table_), Rational(1075565, 2047573));
  EXPECT_EQ(links_odd_closed_form(101), Rational(1075565, 2047573));
  EXPECT_EQ(links_odd_closed_form(11), Rational(10, 11));
  for (std::size_t n = 4; n <= 300; n += 2) ASSERT_TRUE(links_closed_form_matches(n, *table_)) << n;
  for (std::size_t n = 11; n <= 301; n += 2) ASSERT_TRUE(links_closed_form_matches(n, *table_)) << n;
  EXPECT_THROW(links_closed_form_matches(9, *table_), domain_error);
  EXPECT_THROW(links_closed_form_matches(2, *table_), domain_error);
}

TEST_F(TriangleTest, RechtsWeightedForm) {
  for (std::size_t n = 4; n <= 1000; n += 2) {
    const std::size_t k = (n + 4) / 2;
    ASSERT_LT(rechts_weighted_sum(n, k, *table_), 3 * (*triangle_)(n, k)) << n;
  }
}

TEST_F(TriangleTest, LemmaGr) {
  EXPECT_GT(512 * Nat("374834739612319"), 1745 * binomial(50, 28));
  EXPECT_TRUE(lemma_gr_check(4, *triangle_).passed);
  EXPECT_TRUE(lemma_gr_check(50, *triangle_).passed);
  for (std::size_t n = 4; n <= 500; ++n) ASSERT_TRUE(lemma_gr_check(n, *triangle_).passed) << n;
  EXPECT_THROW(lemma_gr_check(3, *triangle_), domain_error);
}

}  // namespace
}  // namespace binpart
