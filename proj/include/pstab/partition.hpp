#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pstab {

using UnitId = std::string;
using ClusterLabel = std::string;

inline constexpr std::string_view kNewcomerLabel = "__NEWCOMERS__";
inline constexpr std::string_view kOutgoerLabel = "__OUTGOERS__";

// Hard cap on the number of units in one analysis; keeps n^2 far inside int64.
inline constexpr std::size_t kMaxUnits = 1'000'000;

struct Cluster {
  ClusterLabel label;
  std::vector<UnitId> members;  // sorted
};

// Immutable assignment of units to cluster labels.
class Partition {
 public:
  // Throws DuplicateUnit, EmptyInput or MalformedRecord.
  explicit Partition(const std::vector<std::pair<UnitId, ClusterLabel>>& records);
  explicit Partition(std::map<UnitId, ClusterLabel> assignments);

  const std::map<UnitId, ClusterLabel>& assignments() const noexcept { return assignments_; }
  // Clusters in lexicographic label order.
  std::vector<Cluster> clusters() const;
  std::vector<ClusterLabel> labels() const;
  std::vector<UnitId> units() const;

  std::size_t size() const noexcept { return assignments_.size(); }
  std::size_t cluster_count() const;
  bool contains(const UnitId& unit) const { return assignments_.count(unit) != 0; }
  const ClusterLabel& cluster_of(const UnitId& unit) const;
  bool uses_reserved_label() const;

  Partition restricted_to(const std::vector<UnitId>& units) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::map<UnitId, ClusterLabel> assignments_;
};

enum class InputFormat { csv, json };

// CSV needs the header `unit,cluster`; JSON is an array of {unit, cluster}.
Partition parse_partition(std::istream& in, InputFormat format);
Partition parse_partition(std::string_view text, InputFormat format);
Partition read_partition_file(const std::string& path, std::optional<InputFormat> format = std::nullopt);

// Two partitions of possibly different unit sets, with the derived unit groups
// and the augmented partitions over the union.
class AlignedPair {
 public:
  const Partition& first() const noexcept { return first_; }
  const Partition& second() const noexcept { return second_; }
  const std::vector<UnitId>& persistent() const noexcept { return persistent_; }
  const std::vector<UnitId>& outgoers() const noexcept { return outgoers_; }
  const std::vector<UnitId>& newcomers() const noexcept { return newcomers_; }
  // first plus a newcomer cluster (omitted when there are no newcomers)
  const Partition& u_prime() const noexcept { return u_prime_; }
  // second plus an outgoer cluster (omitted when there are no outgoers)
  const Partition& v_prime() const noexcept { return v_prime_; }

  std::size_t union_size() const noexcept { return u_prime_.size(); }
  bool same_units() const noexcept { return outgoers_.empty() && newcomers_.empty(); }

  // The same pair seen from the other side: newcomers and outgoers trade roles.
  AlignedPair swapped() const;

 private:
  friend AlignedPair align(const Partition&, const Partition&);
  AlignedPair(Partition first, Partition second, std::vector<UnitId> persistent,
              std::vector<UnitId> outgoers, std::vector<UnitId> newcomers, Partition u_prime,
              Partition v_prime);

  Partition first_;
  Partition second_;
  std::vector<UnitId> persistent_;
  std::vector<UnitId> outgoers_;
  std::vector<UnitId> newcomers_;
  Partition u_prime_;
  Partition v_prime_;
};

// Throws NonOverlappingSets when the unit sets are disjoint and MalformedRecord
// when an input already uses a reserved label.
AlignedPair align(const Partition& first, const Partition& second);

enum class TableMode { core, augmented };

// Row-major count matrix with marginals. Labels may be empty for tables that
// come out of the permutation machinery.
class ContingencyTable {
 public:
  ContingencyTable() = default;
  ContingencyTable(std::size_t rows, std::size_t cols, std::vector<std::int64_t> counts,
                   std::optional<std::size_t> newcomer_row = std::nullopt,
                   std::optional<std::size_t> outgoer_col = std::nullopt);
  static ContingencyTable from_rows(const std::vector<std::vector<std::int64_t>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::int64_t at(std::size_t i, std::size_t j) const { return counts_[i * cols_ + j]; }
  const std::vector<std::int64_t>& counts() const noexcept { return counts_; }
  const std::vector<std::int64_t>& row_marginals() const noexcept { return row_marginals_; }
  const std::vector<std::int64_t>& col_marginals() const noexcept { return col_marginals_; }
  std::int64_t total() const noexcept { return total_; }
  std::optional<std::size_t> newcomer_row() const noexcept { return newcomer_row_; }
  std::optional<std::size_t> outgoer_col() const noexcept { return outgoer_col_; }

  // Number of rows/columns excluding the augmented ones.
  std::size_t core_rows() const noexcept { return newcomer_row_ ? rows_ - 1 : rows_; }
  std::size_t core_cols() const noexcept { return outgoer_col_ ? cols_ - 1 : cols_; }

  const std::vector<ClusterLabel>& row_labels() const noexcept { return row_labels_; }
  const std::vector<ClusterLabel>& col_labels() const noexcept { return col_labels_; }
  void set_labels(std::vector<ClusterLabel> row_labels, std::vector<ClusterLabel> col_labels);

  std::vector<std::vector<std::int64_t>> to_rows() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> row_marginals_;
  std::vector<std::int64_t> col_marginals_;
  std::int64_t total_ = 0;
  std::optional<std::size_t> newcomer_row_;
  std::optional<std::size_t> outgoer_col_;
  std::vector<ClusterLabel> row_labels_;
  std::vector<ClusterLabel> col_labels_;
};

// Integer encoding of an aligned pair: one cluster index per unit on each side,
// units in a shared order. When present the augmented cluster has the last index.
struct EncodedPair {
  std::vector<std::uint32_t> rows;
  std::vector<std::uint32_t> cols;
  std::uint32_t row_count = 0;
  std::uint32_t col_count = 0;
  bool newcomer_row = false;
  bool outgoer_col = false;
  std::vector<ClusterLabel> row_labels;
  std::vector<ClusterLabel> col_labels;

  EncodedPair transposed() const;
};

EncodedPair encode(const AlignedPair& pair, TableMode mode);
ContingencyTable tabulate(const EncodedPair& encoded);

ContingencyTable contingency(const AlignedPair& pair, TableMode mode);

}  // namespace pstab
