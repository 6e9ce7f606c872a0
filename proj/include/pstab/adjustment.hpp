#pragma once

#include <cstddef>
#include <cstdint>

#include "pstab/indices.hpp"
#include "pstab/pair_counts.hpp"
#include "pstab/partition.hpp"
#include "pstab/random.hpp"

namespace pstab {

struct AdjustmentConfig {
  // Upper bound of every adjusted index, modified ones included.
  static constexpr double max_index = 1.0;

  std::size_t repetitions = 1000;
  std::uint64_t seed = 0;
  // Threads used for replicates; results do not depend on it. 0 = hardware.
  unsigned workers = 1;
};

enum class ExpectationMethod { permutation, hypergeometric, approximation, simpson };

std::string_view to_string(ExpectationMethod method);

struct ExpectedValueEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // zero for analytic methods
  std::size_t repetitions = 0;
  ExpectationMethod method = ExpectationMethod::permutation;
  std::size_t excluded = 0;  // degenerate replicates left out of the mean
};

// (raw - E) / (1 - E); 1 whenever raw is 1. Throws DegenerateAdjustment when E >= 1 and raw < 1.
double adjust(double raw, const ExpectedValueEstimate& expected);
double adjust(double raw, double expected_mean);

// Same labels and cluster sizes, assignment shuffled uniformly.
Partition permute_within(const Partition& p, Rng& rng);

// Monte Carlo estimate of the index under independent within-partition
// permutations of both sides. Replicate i draws from make_stream(seed, i), and
// the mean is reduced in replicate order, so the result is independent of the
// worker count. Degenerate replicates are excluded; more than half excluded is
// an error.
ExpectedValueEstimate permutation_expectation(const AlignedPair& pair, const IndexKind& kind,
                                              const AdjustmentConfig& cfg);
ExpectedValueEstimate permutation_expectation(const EncodedPair& encoded, const IndexKind& kind,
                                              const AdjustmentConfig& cfg);

enum class SumSquaresMethod { hypergeometric, approximation };

// Expected sum of squared cell counts under fixed marginals.
double analytic_expected_sum_squares(const ContingencyTable& table, SumSquaresMethod method);

// Expected Rand index under fixed marginals, from the expected sum of squares.
ExpectedValueEstimate expected_rand_analytic(const ContingencyTable& table,
                                             SumSquaresMethod method = SumSquaresMethod::hypergeometric);

double adjusted_rand_analytic(const ContingencyTable& table);

// Probability that two distinct random units share a cluster.
double simpson_diversity(const Partition& p);
double simpson_diversity(std::span<const std::int64_t> cluster_sizes);

// The conditioning partition is the second one for variant one and the first
// one for variant two.
double adjusted_wallace_analytic(const PairCounts& pc, const Partition& conditioning, Variant variant);
ExpectedValueEstimate expected_wallace_analytic(const ContingencyTable& table, Variant variant);

}  // namespace pstab
