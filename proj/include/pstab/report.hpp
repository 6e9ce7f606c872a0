#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pstab/partition.hpp"
#include "pstab/simulation.hpp"

namespace pstab {

struct UnitCounts {
  std::size_t persistent = 0;
  std::size_t newcomers = 0;
  std::size_t outgoers = 0;
  std::size_t clusters_first = 0;
  std::size_t clusters_second = 0;
};

UnitCounts unit_counts(const AlignedPair& pair);

// One computed index. `expected` and `adjusted` are set together.
struct IndexReport {
  std::string index;  // short code, e.g. "mw1" or "ari"
  double raw = 0.0;
  std::optional<double> expected;
  std::optional<double> expected_se;
  std::optional<double> adjusted;
  std::optional<std::string> method;
  UnitCounts counts;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> repetitions;
};

struct CompareOptions {
  std::vector<std::string> indices;  // empty: every index the pair supports
  bool adjust = false;
  std::size_t repetitions = 1000;
  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
};

// All codes accepted by compare, in report order.
const std::vector<std::string>& known_index_codes();

std::vector<std::string> default_indices(const AlignedPair& pair);

// Classic codes (ri, fm, w1, w2, ari, aw1, aw2) need identical unit sets and
// throw UnitSetMismatch otherwise. ari/aw1/aw2 always carry their analytic
// expectation; the others get a permutation expectation when options.adjust.
std::vector<IndexReport> compare(const AlignedPair& pair, const CompareOptions& options);

enum class ReportFormat { json, csv };

// Six decimals everywhere.
std::string format_number(double value);

void write_reports(std::ostream& out, const std::vector<IndexReport>& reports, ReportFormat format);
void write_grid(std::ostream& out, const std::vector<GridCell>& cells);

struct TransitionRecord {
  ClusterLabel from_cluster;
  ClusterLabel to_cluster;
  std::int64_t count = 0;

  friend bool operator==(const TransitionRecord&, const TransitionRecord&) = default;
};

// Non-zero cells of the augmented table, row-major.
std::vector<TransitionRecord> emit_transitions(const AlignedPair& pair);
void write_transitions(std::ostream& out, const std::vector<TransitionRecord>& records);
std::vector<TransitionRecord> read_transitions(std::istream& in);
// Inverse of emit_transitions: labels sorted, reserved clusters last.
ContingencyTable table_from_transitions(const std::vector<TransitionRecord>& records);

}  // namespace pstab
