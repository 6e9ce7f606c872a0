#pragma once

#include <cstdint>

#include "pstab/partition.hpp"

namespace pstab {

// Unordered unit pairs classified by co-membership:
// a: same cluster in both, b: same only in the first, c: same only in the second,
// d: different in both.
struct PairCounts {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;
  std::int64_t n = 0;

  std::int64_t total_pairs() const noexcept { return a + b + c + d; }
  friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

constexpr std::int64_t choose2(std::int64_t k) noexcept { return k * (k - 1) / 2; }

// Over every row and column of the table, augmented ones included.
// Throws TooFewUnits when the table holds fewer than two units.
PairCounts pair_counts(const ContingencyTable& table);

// Brute force over all unit pairs; both partitions must cover the same units.
PairCounts pair_counts_oracle(const Partition& first, const Partition& second);

namespace detail {

// Squared sums used by the closed forms; exact integers.
struct SquareSums {
  std::int64_t cells = 0;  // sum n_ij^2
  std::int64_t rows = 0;   // sum n_i.^2
  std::int64_t cols = 0;   // sum n_.j^2
  std::int64_t total = 0;
};

// Restricted to rows [0, row_end) and columns [0, col_end), marginals
// recomputed inside that block.
SquareSums block_square_sums(const ContingencyTable& table, std::size_t row_end, std::size_t col_end);

PairCounts pair_counts_from(const SquareSums& s);

}  // namespace detail

}  // namespace pstab
