#include "pstab/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pstab/adjustment.hpp"
#include "pstab/errors.hpp"

namespace pstab {

std::vector<int> int_range(int start, int stop, int step) {
  if (step <= 0) throw Error(ErrorCode::InvalidDesign, "range step must be positive");
  if (stop < start) throw Error(ErrorCode::InvalidDesign, "range stop is below its start");
  std::vector<int> out;
  for (long long v = start; v <= stop; v += step) out.push_back(static_cast<int>(v));
  return out;
}

void SimulationDesign::validate() const {
  if (clusters_first.empty() || clusters_second.empty() || units.empty())
    throw Error(ErrorCode::InvalidDesign, "every design factor needs at least one level");
  if (repetitions < 1) throw Error(ErrorCode::InvalidDesign, "repetitions must be at least 1");
  if (adjusted && adjustment_reps < 1)
    throw Error(ErrorCode::InvalidDesign, "adjustment repetitions must be at least 1");
  for (const int n : units) {
    if (n < 2 || static_cast<std::size_t>(n) > kMaxUnits)
      throw Error(ErrorCode::InvalidDesign, "unit count " + std::to_string(n) + " is out of range");
  }
  const int min_units = *std::min_element(units.begin(), units.end());
  for (const auto* list : {&clusters_first, &clusters_second}) {
    for (const int k : *list) {
      if (k < 1) throw Error(ErrorCode::InvalidDesign, "cluster count " + std::to_string(k) + " is below 1");
      if (k > min_units)
        throw Error(ErrorCode::InvalidDesign,
                    "cluster count " + std::to_string(k) + " exceeds unit count " + std::to_string(min_units));
    }
  }
}

std::vector<std::uint32_t> balanced_assignment(int n, int k, Rng& rng) {
  if (k < 1 || k > n)
    throw Error(ErrorCode::InvalidDesign,
                "cannot split " + std::to_string(n) + " units into " + std::to_string(k) + " clusters");
  std::vector<std::uint32_t> labels;
  labels.reserve(static_cast<std::size_t>(n));
  const int base = n / k;
  const int larger = n % k;
  for (int c = 0; c < k; ++c) {
    const int size = c < larger ? base + 1 : base;
    labels.insert(labels.end(), static_cast<std::size_t>(size), static_cast<std::uint32_t>(c));
  }
  shuffle(std::span<std::uint32_t>(labels), rng);
  return labels;
}

Partition random_balanced_partition(int n, int k, Rng& rng) {
  const auto labels = balanced_assignment(n, k, rng);
  std::vector<std::pair<UnitId, ClusterLabel>> records;
  records.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    records.emplace_back("u" + std::to_string(i + 1), "c" + std::to_string(labels[i] + 1));
  return Partition(records);
}

EncodedPair random_null_pair(int units, int clusters_first, int clusters_second, const IndexKind& kind, Rng& rng) {
  EncodedPair enc;
  enc.rows = balanced_assignment(units, clusters_first, rng);
  enc.cols = balanced_assignment(units, clusters_second, rng);
  enc.row_count = static_cast<std::uint32_t>(clusters_first);
  enc.col_count = static_cast<std::uint32_t>(clusters_second);
  if (kind.is_modified()) {
    const Scope scope = kind.scope().value_or(Scope::general);
    enc.newcomer_row = scope != Scope::outgoers_only;
    enc.outgoer_col = scope != Scope::newcomers_only;
  }
  return enc;
}

std::vector<GridCell> expected_value_grid(const SimulationDesign& design) {
  design.validate();

  std::vector<GridCell> cells;
  for (const int r : design.clusters_first)
    for (const int q : design.clusters_second)
      for (const int n : design.units) cells.push_back(GridCell{r, q, n, 0.0, 0.0});

  const std::size_t reps = design.repetitions;
  std::vector<double> values(cells.size() * reps, 0.0);
  std::vector<char> degenerate(values.size(), 0);

  parallel_for(values.size(), design.workers, [&](std::size_t task) {
    const std::size_t c = task / reps;
    const std::size_t t = task % reps;
    const GridCell& cell = cells[c];
    Rng rng = make_stream(design.seed, c, t);
    const EncodedPair pair =
        random_null_pair(cell.units, cell.clusters_first, cell.clusters_second, design.index, rng);
    try {
      const double raw = evaluate(design.index, tabulate(pair));
      if (!design.adjusted) {
        values[task] = raw;
        return;
      }
      AdjustmentConfig cfg;
      cfg.repetitions = design.adjustment_reps;
      cfg.seed = make_stream(design.seed, c, t, 1)();
      cfg.workers = 1;
      values[task] = adjust(raw, permutation_expectation(pair, design.index, cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateIndex) throw;
      degenerate[task] = 1;
    }
  });

  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::size_t valid = 0;
    double sum = 0.0;
    for (std::size_t t = 0; t < reps; ++t) {
      if (degenerate[c * reps + t]) continue;
      ++valid;
      sum += values[c * reps + t];
    }
    if (valid == 0 || 2 * (reps - valid) > reps)
      throw Error(ErrorCode::DegenerateIndex, "too many degenerate replicates in cell (" +
                                                  std::to_string(cells[c].clusters_first) + ", " +
                                                  std::to_string(cells[c].clusters_second) + ", " +
                                                  std::to_string(cells[c].units) + ")");
    const double mean = sum / static_cast<double>(valid);
    double ss = 0.0;
    for (std::size_t t = 0; t < reps; ++t) {
      if (degenerate[c * reps + t]) continue;
      const double dev = values[c * reps + t] - mean;
      ss += dev * dev;
    }
    cells[c].mean = mean;
    cells[c].std_error =
        valid > 1 ? std::sqrt(ss / static_cast<double>(valid - 1)) / std::sqrt(static_cast<double>(valid)) : 0.0;
  }
  return cells;
}

}  // namespace pstab
