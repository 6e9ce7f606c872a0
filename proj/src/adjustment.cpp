#include "pstab/adjustment.hpp"

#include <cmath>
#include <exception>
#include <tuple>
#include <vector>

#include "pstab/errors.hpp"

namespace pstab {

namespace {

double sum_of_squares(const std::vector<std::int64_t>& v) {
  double s = 0.0;
  for (const auto x : v) s += static_cast<double>(x) * static_cast<double>(x);
  return s;
}

std::int64_t sum_choose2(std::span<const std::int64_t> v) {
  std::int64_t s = 0;
  for (const auto x : v) s += choose2(x);
  return s;
}

// Symmetric indices are evaluated in a canonical orientation so that a pair
// and its transpose draw identical replicates.
EncodedPair canonical_orientation(const EncodedPair& enc) {
  const auto row_key = std::tie(enc.row_count, enc.newcomer_row, enc.rows);
  const auto col_key = std::tie(enc.col_count, enc.outgoer_col, enc.cols);
  return col_key < row_key ? enc.transposed() : enc;
}

}  // namespace

std::string_view to_string(ExpectationMethod method) {
  switch (method) {
    case ExpectationMethod::permutation: return "permutation";
    case ExpectationMethod::hypergeometric: return "hypergeometric";
    case ExpectationMethod::approximation: return "approximation";
    case ExpectationMethod::simpson: return "simpson";
  }
  return "?";
}

double adjust(double raw, double expected_mean) {
  if (raw == AdjustmentConfig::max_index) return 1.0;
  if (expected_mean >= AdjustmentConfig::max_index)
    throw Error(ErrorCode::DegenerateAdjustment, "expected value is at the maximum, nothing left to adjust");
  return (raw - expected_mean) / (AdjustmentConfig::max_index - expected_mean);
}

double adjust(double raw, const ExpectedValueEstimate& expected) { return adjust(raw, expected.mean); }

Partition permute_within(const Partition& p, Rng& rng) {
  std::vector<ClusterLabel> labels;
  labels.reserve(p.size());
  for (const auto& kv : p.assignments()) labels.push_back(kv.second);
  shuffle(std::span<ClusterLabel>(labels), rng);
  std::map<UnitId, ClusterLabel> out;
  std::size_t k = 0;
  for (const auto& kv : p.assignments()) out.emplace_hint(out.end(), kv.first, std::move(labels[k++]));
  return Partition(std::move(out));
}

ExpectedValueEstimate permutation_expectation(const EncodedPair& encoded, const IndexKind& kind,
                                              const AdjustmentConfig& cfg) {
  if (cfg.repetitions == 0) throw Error(ErrorCode::InvalidDesign, "repetitions must be at least 1");

  const EncodedPair enc = kind.is_symmetric() ? canonical_orientation(encoded) : encoded;

  // Scope and size preconditions hold for every permutation iff they hold here.
  try {
    (void)evaluate(kind, tabulate(enc));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegenerateIndex) throw;
  }

  const std::size_t k = cfg.repetitions;
  std::vector<double> values(k, 0.0);
  std::vector<char> degenerate(k, 0);
  parallel_for(k, cfg.workers, [&](std::size_t rep) {
    Rng rng = make_stream(cfg.seed, rep);
    EncodedPair draw{enc.rows, enc.cols, enc.row_count, enc.col_count, enc.newcomer_row, enc.outgoer_col, {}, {}};
    shuffle(std::span<std::uint32_t>(draw.rows), rng);
    shuffle(std::span<std::uint32_t>(draw.cols), rng);
    try {
      values[rep] = evaluate(kind, tabulate(draw));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateIndex) throw;
      degenerate[rep] = 1;
    }
  });

  std::size_t valid = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    if (degenerate[i]) continue;
    ++valid;
    sum += values[i];
  }
  const std::size_t excluded = k - valid;
  if (valid == 0) throw Error(ErrorCode::DegenerateIndex, "every permutation replicate is degenerate");
  if (2 * excluded > k)
    throw Error(ErrorCode::DegenerateIndex,
                std::to_string(excluded) + " of " + std::to_string(k) + " permutation replicates are degenerate");

  const double mean = sum / static_cast<double>(valid);
  double ss = 0.0;
  for (std::size_t i = 0; i < k; ++i)
    if (!degenerate[i]) ss += (values[i] - mean) * (values[i] - mean);
  const double se =
      valid > 1 ? std::sqrt(ss / static_cast<double>(valid - 1)) / std::sqrt(static_cast<double>(valid)) : 0.0;
  return ExpectedValueEstimate{mean, se, k, ExpectationMethod::permutation, excluded};
}

ExpectedValueEstimate permutation_expectation(const AlignedPair& pair, const IndexKind& kind,
                                              const AdjustmentConfig& cfg) {
  return permutation_expectation(encode(pair, kind.table_mode()), kind, cfg);
}

double analytic_expected_sum_squares(const ContingencyTable& table, SumSquaresMethod method) {
  const double n = static_cast<double>(table.total());
  if (table.total() < 2) throw Error(ErrorCode::TooFewUnits, "expected sum of squares needs at least two units");
  const double rows = sum_of_squares(table.row_marginals());
  const double cols = sum_of_squares(table.col_marginals());
  if (method == SumSquaresMethod::approximation) return rows * cols / (n * n);
  return rows * cols / (n * (n - 1.0)) + (n * n - (rows + cols)) / (n - 1.0);
}

ExpectedValueEstimate expected_rand_analytic(const ContingencyTable& table, SumSquaresMethod method) {
  const double expected_cells = analytic_expected_sum_squares(table, method);
  const double rows = sum_of_squares(table.row_marginals());
  const double cols = sum_of_squares(table.col_marginals());
  const double pairs = static_cast<double>(choose2(table.total()));
  const double mean = (pairs + expected_cells - 0.5 * (rows + cols)) / pairs;
  return ExpectedValueEstimate{mean, 0.0, 0,
                               method == SumSquaresMethod::hypergeometric ? ExpectationMethod::hypergeometric
                                                                          : ExpectationMethod::approximation,
                               0};
}

double adjusted_rand_analytic(const ContingencyTable& table) {
  if (table.total() < 2) throw Error(ErrorCode::TooFewUnits, "ARI needs at least two units");
  const std::int64_t index = sum_choose2(table.counts());
  const std::int64_t rows = sum_choose2(table.row_marginals());
  const std::int64_t cols = sum_choose2(table.col_marginals());
  const double expected =
      static_cast<double>(rows) * static_cast<double>(cols) / static_cast<double>(choose2(table.total()));
  const double maximum = 0.5 * static_cast<double>(rows + cols);
  if (maximum - expected == 0.0)
    throw Error(ErrorCode::DegenerateAdjustment, "ARI denominator is zero");
  return (static_cast<double>(index) - expected) / (maximum - expected);
}

double simpson_diversity(std::span<const std::int64_t> cluster_sizes) {
  std::int64_t n = 0;
  std::int64_t same = 0;
  for (const auto s : cluster_sizes) {
    n += s;
    same += s * (s - 1);
  }
  if (n < 2) throw Error(ErrorCode::TooFewUnits, "Simpson diversity needs at least two units");
  return static_cast<double>(same) / static_cast<double>(n * (n - 1));
}

double simpson_diversity(const Partition& p) {
  std::vector<std::int64_t> sizes;
  for (const auto& c : p.clusters()) sizes.push_back(static_cast<std::int64_t>(c.members.size()));
  return simpson_diversity(sizes);
}

double adjusted_wallace_analytic(const PairCounts& pc, const Partition& conditioning, Variant variant) {
  if (static_cast<std::int64_t>(conditioning.size()) != pc.n)
    throw Error(ErrorCode::UnitSetMismatch, "conditioning partition size differs from the pair counts");
  const double w = wallace(pc, variant);
  const double sid = simpson_diversity(conditioning);
  if (sid >= 1.0)
    throw Error(ErrorCode::DegenerateAdjustment, "conditioning partition has a single cluster");
  if (w == 1.0) return 1.0;
  return (w - sid) / (1.0 - sid);
}

ExpectedValueEstimate expected_wallace_analytic(const ContingencyTable& table, Variant variant) {
  const double sid = simpson_diversity(variant == Variant::one ? table.col_marginals() : table.row_marginals());
  return ExpectedValueEstimate{sid, 0.0, 0, ExpectationMethod::simpson, 0};
}

}  // namespace pstab
