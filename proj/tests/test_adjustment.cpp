#include <gtest/gtest.h>

#include <cmath>

#include "pstab/adjustment.hpp"
#include "pstab/errors.hpp"
#include "test_support.hpp"

namespace pstab {
namespace {

using testing::from_clusters;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no pstab::Error thrown";
  return ErrorCode::InvalidDesign;
}

AlignedPair five_unit_pair() { return align(testing::five_unit_first(), testing::five_unit_second()); }

std::int64_t sum_squares_of(const std::vector<std::uint32_t>& rows, const std::vector<std::uint32_t>& cols) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> cells;
  for (std::size_t k = 0; k < rows.size(); ++k) ++cells[{rows[k], cols[k]}];
  std::int64_t s = 0;
  for (const auto& kv : cells) s += kv.second * kv.second;
  return s;
}

// Rand index straight from label vectors, through the pair oracle.
double rand_from_labels(const std::vector<std::uint32_t>& rows, const std::vector<std::uint32_t>& cols) {
  std::vector<std::string> u;
  std::vector<std::string> v;
  for (auto x : rows) u.push_back(std::to_string(x));
  for (auto x : cols) v.push_back(std::to_string(x));
  const auto p = testing::classify_pairs(u, v);
  return static_cast<double>(p.same_both + p.different_both) /
         static_cast<double>(p.same_both + p.same_first_only + p.same_second_only + p.different_both);
}

TEST(Adjust, Examples) {
  EXPECT_NEAR(adjust(0.6, 0.52), 1.0 / 6.0, 1e-12);
  EXPECT_EQ(adjust(1.0, 0.3), 1.0);
  EXPECT_EQ(adjust(1.0, 1.0), 1.0);
  EXPECT_EQ(code_of([] { adjust(0.5, 1.0); }), ErrorCode::DegenerateAdjustment);
}

TEST(Adjust, StrictlyIncreasingInRaw) {
  for (const double e : {-0.2, 0.0, 0.3, 0.9}) {
    double prev = adjust(0.0, e);
    for (int i = 1; i <= 100; ++i) {
      const double cur = adjust(i / 100.0, e);
      EXPECT_GT(cur, prev);
      prev = cur;
    }
    EXPECT_EQ(adjust(1.0, e), 1.0);
  }
}

TEST(PermuteWithin, SingleCluster) {
  const Partition p = from_clusters({{"a", "b", "c"}}, {"x"});
  Rng rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(permute_within(p, rng), p);
}

TEST(PermuteWithin, SingletonsStaySingletons) {
  const Partition p = from_clusters({{"a"}, {"b"}, {"c"}, {"d"}}, {"1", "2", "3", "4"});
  Rng rng(2);
  for (int i = 0; i < 20; ++i) {
    const Partition q = permute_within(p, rng);
    EXPECT_EQ(q.cluster_count(), 4u);
    EXPECT_EQ(q.labels(), p.labels());
  }
}

TEST(PermuteWithin, UniformMarginal) {
  const Partition p = from_clusters({{"a", "b", "c"}, {"d", "e"}}, {"big", "small"});
  Rng rng(3);
  std::map<std::string, int> in_big;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    const Partition q = permute_within(p, rng);
    const auto clusters = q.clusters();
    ASSERT_EQ(clusters[0].members.size(), 3u);
    ASSERT_EQ(clusters[1].members.size(), 2u);
    for (const auto& u : clusters[0].members) ++in_big[u];
  }
  for (const auto& kv : in_big) EXPECT_NEAR(kv.second / static_cast<double>(draws), 0.6, 0.02) << kv.first;
  EXPECT_EQ(p.cluster_of("a"), "big");
}

TEST(PermutationExpectation, ConstantIndex) {
  const Partition p = from_clusters({{"a", "b", "c", "d"}}, {"x"});
  AdjustmentConfig cfg;
  cfg.repetitions = 50;
  cfg.seed = 9;
  const auto e = permutation_expectation(align(p, p), IndexKind::rand(), cfg);
  EXPECT_EQ(e.mean, 1.0);
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_EQ(e.repetitions, 50u);
}

TEST(PermutationExpectation, FiveUnitRandAgainstEnumeration) {
  const EncodedPair enc = encode(five_unit_pair(), TableMode::core);
  const double exact = testing::exhaustive_permutation_mean(enc.rows, enc.cols, rand_from_labels);
  EXPECT_NEAR(exact, 0.52, 1e-12);

  AdjustmentConfig cfg;
  cfg.repetitions = 100000;
  cfg.seed = 2024;
  cfg.workers = 0;
  const auto e = permutation_expectation(five_unit_pair(), IndexKind::rand(), cfg);
  EXPECT_GT(e.std_error, 0.0);
  EXPECT_NEAR(e.mean, exact, 3 * e.std_error);
}

TEST(PermutationExpectation, WallaceOneConvergesToSimpson) {
  AdjustmentConfig cfg;
  cfg.repetitions = 100000;
  cfg.seed = 77;
  cfg.workers = 0;
  const auto e = permutation_expectation(five_unit_pair(), IndexKind::wallace(Variant::one), cfg);
  EXPECT_NEAR(e.mean, simpson_diversity(testing::five_unit_second()), 3 * e.std_error);
}

TEST(PermutationExpectation, DeterministicAcrossWorkers) {
  const AlignedPair pair = align(testing::six_unit_first(), testing::six_unit_second());
  AdjustmentConfig cfg;
  cfg.repetitions = 3000;
  cfg.seed = 31337;
  cfg.workers = 1;
  const auto serial = permutation_expectation(pair, IndexKind::modified_wallace(Variant::one), cfg);
  cfg.workers = 4;
  const auto parallel = permutation_expectation(pair, IndexKind::modified_wallace(Variant::one), cfg);
  EXPECT_EQ(serial.mean, parallel.mean);
  EXPECT_EQ(serial.std_error, parallel.std_error);
  cfg.seed = 31338;
  EXPECT_NE(permutation_expectation(pair, IndexKind::modified_wallace(Variant::one), cfg).mean, serial.mean);
}

TEST(PermutationExpectation, TransposedPairSameSymmetricEstimate) {
  const AlignedPair pair = align(testing::six_unit_first(), testing::six_unit_second());
  AdjustmentConfig cfg;
  cfg.repetitions = 2000;
  cfg.seed = 5;
  const auto a = permutation_expectation(pair, IndexKind::modified_rand(), cfg);
  const auto b = permutation_expectation(pair.swapped(), IndexKind::modified_rand(), cfg);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.std_error, b.std_error);
}

TEST(PermutationExpectation, AllReplicatesDegenerate) {
  const Partition singles = from_clusters({{"a"}, {"b"}, {"c"}}, {"1", "2", "3"});
  const Partition v = from_clusters({{"a", "b"}, {"c"}}, {"x", "y"});
  AdjustmentConfig cfg;
  cfg.repetitions = 10;
  EXPECT_EQ(code_of([&] { permutation_expectation(align(singles, v), IndexKind::wallace(Variant::one), cfg); }),
            ErrorCode::DegenerateIndex);
}

TEST(PermutationExpectation, ScopeViolationPropagates) {
  AdjustmentConfig cfg;
  cfg.repetitions = 10;
  const AlignedPair pair = align(testing::six_unit_first(), testing::six_unit_second());
  EXPECT_EQ(code_of([&] {
              permutation_expectation(pair, IndexKind::modified_wallace(Variant::one, Scope::outgoers_only), cfg);
            }),
            ErrorCode::ScopeViolation);
}

TEST(AnalyticExpectation, SumOfSquares) {
  const ContingencyTable t = contingency(five_unit_pair(), TableMode::core);
  const EncodedPair enc = encode(five_unit_pair(), TableMode::core);
  const double exact = testing::exhaustive_permutation_mean(
      enc.rows, enc.cols, [](const auto& r, const auto& c) { return static_cast<double>(sum_squares_of(r, c)); });
  EXPECT_NEAR(exact, 8.2, 1e-12);
  EXPECT_NEAR(analytic_expected_sum_squares(t, SumSquaresMethod::hypergeometric), exact, 1e-12);
  EXPECT_NEAR(analytic_expected_sum_squares(t, SumSquaresMethod::approximation), 6.76, 1e-12);

  const ContingencyTable one = ContingencyTable::from_rows({{7}});
  EXPECT_NEAR(analytic_expected_sum_squares(one, SumSquaresMethod::hypergeometric), 49.0, 1e-9);
  EXPECT_NEAR(analytic_expected_sum_squares(one, SumSquaresMethod::approximation), 49.0, 1e-9);
  EXPECT_EQ(code_of([] { analytic_expected_sum_squares(ContingencyTable::from_rows({{1}}), SumSquaresMethod::hypergeometric); }),
            ErrorCode::TooFewUnits);
}

TEST(AnalyticExpectation, HypergeometricMatchesEnumerationOnRandomTables) {
  Rng rng(8);
  for (int i = 0; i < 30; ++i) {
    const auto units = testing::unit_names(3 + uniform_below(rng, 5));
    const AlignedPair pair =
        align(testing::random_partition(units, 3, rng), testing::random_partition(units, 3, rng));
    const EncodedPair enc = encode(pair, TableMode::core);
    const double exact = testing::exhaustive_permutation_mean(enc.rows, enc.cols, rand_from_labels);
    EXPECT_NEAR(expected_rand_analytic(contingency(pair, TableMode::core)).mean, exact, 1e-12);
  }
}

TEST(AdjustedRand, Examples) {
  const ContingencyTable t = contingency(five_unit_pair(), TableMode::core);
  EXPECT_NEAR(adjusted_rand_analytic(t), 1.0 / 6.0, 1e-12);
  EXPECT_NEAR(adjust(0.6, expected_rand_analytic(t)), 1.0 / 6.0, 1e-12);
  const Partition u = from_clusters({{"a", "b"}, {"c", "d", "e"}}, {"1", "2"});
  EXPECT_NEAR(adjusted_rand_analytic(contingency(align(u, u), TableMode::core)), 1.0, 1e-12);
  const Partition one = from_clusters({{"a", "b", "c"}}, {"x"});
  EXPECT_EQ(code_of([&] { adjusted_rand_analytic(contingency(align(one, one), TableMode::core)); }),
            ErrorCode::DegenerateAdjustment);
}

TEST(AdjustedRand, AgreesWithGenericAdjustment) {
  Rng rng(10);
  for (int i = 0; i < 100; ++i) {
    const auto units = testing::unit_names(4 + uniform_below(rng, 20));
    const AlignedPair pair =
        align(testing::random_partition(units, 5, rng), testing::random_partition(units, 5, rng));
    const ContingencyTable t = contingency(pair, TableMode::core);
    double ari = 0.0;
    try {
      ari = adjusted_rand_analytic(t);
    } catch (const Error&) {
      continue;
    }
    EXPECT_NEAR(ari, adjust(rand_index(pair_counts(t)), expected_rand_analytic(t)), 1e-9);
  }
}

TEST(AdjustedRand, NullAverageNearZero) {
  Rng rng(11);
  double sum = 0.0;
  const int trials = 2000;
  for (int i = 0; i < trials; ++i) {
    const auto units = testing::unit_names(40);
    const Partition u = testing::random_partition(units, 6, rng);
    const Partition v = testing::random_partition(units, 6, rng);
    try {
      sum += adjusted_rand_analytic(contingency(align(u, v), TableMode::core));
    } catch (const Error&) {
    }
  }
  EXPECT_NEAR(sum / trials, 0.0, 0.02);
}

TEST(Simpson, Examples) {
  EXPECT_DOUBLE_EQ(simpson_diversity(testing::five_unit_first()), 0.4);
  EXPECT_EQ(simpson_diversity(from_clusters({{"a"}, {"b"}, {"c"}}, {"1", "2", "3"})), 0.0);
  EXPECT_EQ(simpson_diversity(from_clusters({{"a", "b", "c"}}, {"1"})), 1.0);
  EXPECT_EQ(code_of([] { simpson_diversity(from_clusters({{"a"}}, {"1"})); }), ErrorCode::TooFewUnits);
}

TEST(AdjustedWallace, Examples) {
  const PairCounts pc = pair_counts(contingency(five_unit_pair(), TableMode::core));
  EXPECT_NEAR(adjusted_wallace_analytic(pc, testing::five_unit_second(), Variant::one), 1.0 / 6.0, 1e-12);

  // Every pair together in the first side is together in the second: W1 = 1.
  const Partition fine = from_clusters({{"a", "b"}, {"c", "d"}, {"e"}}, {"1", "2", "3"});
  const Partition coarse = from_clusters({{"a", "b", "c", "d"}, {"e"}}, {"x", "y"});
  const PairCounts nested = pair_counts(contingency(align(fine, coarse), TableMode::core));
  EXPECT_EQ(adjusted_wallace_analytic(nested, coarse, Variant::one), 1.0);

  const Partition u = from_clusters({{"a", "b"}, {"c", "d"}}, {"1", "2"});
  const Partition one = from_clusters({{"a", "b", "c", "d"}}, {"x"});
  const PairCounts to_one = pair_counts(contingency(align(u, one), TableMode::core));
  EXPECT_EQ(code_of([&] { adjusted_wallace_analytic(to_one, one, Variant::one); }), ErrorCode::DegenerateAdjustment);
}

TEST(AdjustedWallace, ExpectedMatchesSimpsonOfConditioningSide) {
  const ContingencyTable t = contingency(five_unit_pair(), TableMode::core);
  EXPECT_DOUBLE_EQ(expected_wallace_analytic(t, Variant::one).mean, simpson_diversity(testing::five_unit_second()));
  EXPECT_DOUBLE_EQ(expected_wallace_analytic(t, Variant::two).mean, simpson_diversity(testing::five_unit_first()));
}

}  // namespace
}  // namespace pstab
