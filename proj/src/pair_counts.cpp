#include "pstab/pair_counts.hpp"

#include "pstab/errors.hpp"

namespace pstab {

namespace detail {

SquareSums block_square_sums(const ContingencyTable& table, std::size_t row_end, std::size_t col_end) {
  SquareSums s;
  std::vector<std::int64_t> col_sums(col_end, 0);
  for (std::size_t i = 0; i < row_end; ++i) {
    std::int64_t row_sum = 0;
    for (std::size_t j = 0; j < col_end; ++j) {
      const std::int64_t v = table.at(i, j);
      s.cells += v * v;
      row_sum += v;
      col_sums[j] += v;
    }
    s.rows += row_sum * row_sum;
    s.total += row_sum;
  }
  for (const auto v : col_sums) s.cols += v * v;
  return s;
}

PairCounts pair_counts_from(const SquareSums& s) {
  // Each bracket is even, so halving after the subtraction stays exact.
  PairCounts pc;
  pc.n = s.total;
  pc.a = (s.cells - s.total) / 2;
  pc.b = (s.rows - s.cells) / 2;
  pc.c = (s.cols - s.cells) / 2;
  pc.d = (s.total * s.total + s.cells - s.rows - s.cols) / 2;
  return pc;
}

}  // namespace detail

PairCounts pair_counts(const ContingencyTable& table) {
  if (table.total() < 2)
    throw Error(ErrorCode::TooFewUnits, "pair counts need at least two units, table holds " +
                                            std::to_string(table.total()));
  return detail::pair_counts_from(detail::block_square_sums(table, table.rows(), table.cols()));
}

PairCounts pair_counts_oracle(const Partition& first, const Partition& second) {
  if (first.size() != second.size())
    throw Error(ErrorCode::UnitSetMismatch, "partitions cover different numbers of units");
  for (const auto& kv : first.assignments())
    if (!second.contains(kv.first))
      throw Error(ErrorCode::UnitSetMismatch, "unit '" + kv.first + "' missing from the second partition");
  if (first.size() < 2) throw Error(ErrorCode::TooFewUnits, "pair counts need at least two units");

  std::vector<const ClusterLabel*> u;
  std::vector<const ClusterLabel*> v;
  for (const auto& [unit, label] : first.assignments()) {
    u.push_back(&label);
    v.push_back(&second.cluster_of(unit));
  }
  PairCounts pc;
  pc.n = static_cast<std::int64_t>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      const bool same_u = *u[i] == *u[j];
      const bool same_v = *v[i] == *v[j];
      if (same_u && same_v) ++pc.a;
      else if (same_u) ++pc.b;
      else if (same_v) ++pc.c;
      else ++pc.d;
    }
  }
  return pc;
}

}  // namespace pstab
