#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pstab/pair_counts.hpp"
#include "pstab/partition.hpp"

namespace pstab {

enum class Family { rand, fowlkes_mallows, wallace, modified_rand, modified_wallace };
enum class Variant { one, two };
enum class Scope { general, outgoers_only, newcomers_only };

// Variant is set only for the Wallace families, scope only for modified Wallace.
class IndexKind {
 public:
  static IndexKind rand() { return IndexKind(Family::rand, std::nullopt, std::nullopt); }
  static IndexKind fowlkes_mallows() { return IndexKind(Family::fowlkes_mallows, std::nullopt, std::nullopt); }
  static IndexKind wallace(Variant v) { return IndexKind(Family::wallace, v, std::nullopt); }
  static IndexKind modified_rand() { return IndexKind(Family::modified_rand, std::nullopt, std::nullopt); }
  static IndexKind modified_wallace(Variant v, Scope s = Scope::general) {
    return IndexKind(Family::modified_wallace, v, s);
  }

  Family family() const noexcept { return family_; }
  std::optional<Variant> variant() const noexcept { return variant_; }
  std::optional<Scope> scope() const noexcept { return scope_; }

  // Modified indices are evaluated on the augmented table, classic ones on the core table.
  bool is_modified() const noexcept {
    return family_ == Family::modified_rand || family_ == Family::modified_wallace;
  }
  // Value unchanged when the two partitions trade places.
  bool is_symmetric() const noexcept {
    return family_ == Family::rand || family_ == Family::fowlkes_mallows || family_ == Family::modified_rand;
  }
  TableMode table_mode() const noexcept { return is_modified() ? TableMode::augmented : TableMode::core; }

  // Short code: ri, fm, w1, w2, mri, mw1, mw2, mwo1, mwo2, mwn1, mwn2.
  std::string code() const;

  friend bool operator==(const IndexKind&, const IndexKind&) = default;

 private:
  IndexKind(Family f, std::optional<Variant> v, std::optional<Scope> s) : family_(f), variant_(v), scope_(s) {}

  Family family_;
  std::optional<Variant> variant_;
  std::optional<Scope> scope_;
};

// Accepts the short codes listed on IndexKind::code.
std::optional<IndexKind> parse_index_code(std::string_view code);

double rand_index(const PairCounts& pc);
double wallace(const PairCounts& pc, Variant variant);
double fowlkes_mallows(const PairCounts& pc);

// Pairs of persistent units placed alike in both partitions, over all pairs of
// the union. Equals rand_index when there are no newcomers or outgoers.
double modified_rand(const AlignedPair& pair);
double modified_wallace(const AlignedPair& pair, Variant variant, Scope scope = Scope::general);

// Same quantities read off an augmented table (newcomer row last, outgoer
// column last). Used directly on permuted tables, whose corner cell may be
// non-zero.
double modified_rand(const ContingencyTable& augmented);
double modified_wallace(const ContingencyTable& augmented, Variant variant, Scope scope = Scope::general);

// Dispatch on the kind. Classic kinds read every row and column of `table`.
double evaluate(const IndexKind& kind, const ContingencyTable& table);
double evaluate(const IndexKind& kind, const AlignedPair& pair);

}  // namespace pstab
