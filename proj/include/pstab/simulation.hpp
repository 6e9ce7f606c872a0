#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pstab/indices.hpp"
#include "pstab/partition.hpp"
#include "pstab/random.hpp"

namespace pstab {

// Arithmetic progression start, start+step, ... up to and including stop.
std::vector<int> int_range(int start, int stop, int step);

// Factorial study of index values for random independent partitions.
struct SimulationDesign {
  std::vector<int> clusters_first = int_range(8, 24, 2);
  std::vector<int> clusters_second = int_range(8, 24, 2);
  std::vector<int> units = int_range(100, 220, 20);
  std::size_t repetitions = 300;
  IndexKind index = IndexKind::modified_rand();
  bool adjusted = false;
  std::size_t adjustment_reps = 1000;
  std::uint64_t seed = 0;
  unsigned workers = 0;

  // Throws InvalidDesign.
  void validate() const;
};

struct GridCell {
  int clusters_first = 0;
  int clusters_second = 0;
  int units = 0;
  double mean = 0.0;
  double std_error = 0.0;
};

// Cluster index per unit: the first n mod k clusters hold ceil(n/k) units and
// the rest floor(n/k), assigned through a uniform shuffle.
std::vector<std::uint32_t> balanced_assignment(int n, int k, Rng& rng);

// Units are named u1..un and clusters c1..ck.
Partition random_balanced_partition(int n, int k, Rng& rng);

// One draw of the null model for `kind`. For modified indices the last
// balanced cluster of the first side stands for the newcomers and the last of
// the second side for the outgoers (only the one the scope allows).
EncodedPair random_null_pair(int units, int clusters_first, int clusters_second, const IndexKind& kind, Rng& rng);

// Cells ordered by clusters_first, then clusters_second, then units. Cell c,
// replicate t draws from make_stream(seed, c, t), so output does not depend on
// the worker count.
std::vector<GridCell> expected_value_grid(const SimulationDesign& design);

}  // namespace pstab
