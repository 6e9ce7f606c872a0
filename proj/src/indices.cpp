#include "pstab/indices.hpp"

#include <cmath>

#include "pstab/errors.hpp"

namespace pstab {

namespace {

double ratio(std::int64_t num, std::int64_t den, const char* what) {
  if (den == 0) throw Error(ErrorCode::DegenerateIndex, std::string(what) + " has a zero denominator");
  return static_cast<double>(num) / static_cast<double>(den);
}

void require_pairs(const PairCounts& pc) {
  if (pc.n < 2) throw Error(ErrorCode::TooFewUnits, "index needs at least two units");
}

bool has_newcomers(const ContingencyTable& t) {
  return t.newcomer_row() && t.row_marginals()[*t.newcomer_row()] > 0;
}

bool has_outgoers(const ContingencyTable& t) {
  return t.outgoer_col() && t.col_marginals()[*t.outgoer_col()] > 0;
}

}  // namespace

std::string IndexKind::code() const {
  const char* v = variant_ == Variant::two ? "2" : "1";
  switch (family_) {
    case Family::rand: return "ri";
    case Family::fowlkes_mallows: return "fm";
    case Family::wallace: return std::string("w") + v;
    case Family::modified_rand: return "mri";
    case Family::modified_wallace:
      switch (scope_.value_or(Scope::general)) {
        case Scope::general: return std::string("mw") + v;
        case Scope::outgoers_only: return std::string("mwo") + v;
        case Scope::newcomers_only: return std::string("mwn") + v;
      }
  }
  return "?";
}

std::optional<IndexKind> parse_index_code(std::string_view code) {
  if (code == "ri") return IndexKind::rand();
  if (code == "fm") return IndexKind::fowlkes_mallows();
  if (code == "w1") return IndexKind::wallace(Variant::one);
  if (code == "w2") return IndexKind::wallace(Variant::two);
  if (code == "mri") return IndexKind::modified_rand();
  if (code == "mw1") return IndexKind::modified_wallace(Variant::one);
  if (code == "mw2") return IndexKind::modified_wallace(Variant::two);
  if (code == "mwo1") return IndexKind::modified_wallace(Variant::one, Scope::outgoers_only);
  if (code == "mwo2") return IndexKind::modified_wallace(Variant::two, Scope::outgoers_only);
  if (code == "mwn1") return IndexKind::modified_wallace(Variant::one, Scope::newcomers_only);
  if (code == "mwn2") return IndexKind::modified_wallace(Variant::two, Scope::newcomers_only);
  return std::nullopt;
}

double rand_index(const PairCounts& pc) {
  require_pairs(pc);
  return ratio(pc.a + pc.d, pc.total_pairs(), "RI");
}

double wallace(const PairCounts& pc, Variant variant) {
  require_pairs(pc);
  return variant == Variant::one ? ratio(pc.a, pc.a + pc.b, "W1") : ratio(pc.a, pc.a + pc.c, "W2");
}

double fowlkes_mallows(const PairCounts& pc) {
  require_pairs(pc);
  const double w1 = ratio(pc.a, pc.a + pc.b, "FM");
  const double w2 = ratio(pc.a, pc.a + pc.c, "FM");
  return std::sqrt(w1 * w2);
}

double modified_rand(const ContingencyTable& augmented) {
  const std::int64_t n = augmented.total();
  if (n < 2) throw Error(ErrorCode::TooFewUnits, "MRI needs at least two units in the union");
  // a and d of the persistent block only; marginals recomputed inside the block.
  const auto core = detail::pair_counts_from(
      detail::block_square_sums(augmented, augmented.core_rows(), augmented.core_cols()));
  return ratio(core.a + core.d, choose2(n), "MRI");
}

double modified_wallace(const ContingencyTable& augmented, Variant variant, Scope scope) {
  if (scope == Scope::outgoers_only && has_newcomers(augmented))
    throw Error(ErrorCode::ScopeViolation, "outgoers-only index requested but newcomers are present");
  if (scope == Scope::newcomers_only && has_outgoers(augmented))
    throw Error(ErrorCode::ScopeViolation, "newcomers-only index requested but outgoers are present");

  const auto core = detail::pair_counts_from(
      detail::block_square_sums(augmented, augmented.core_rows(), augmented.core_cols()));

  std::int64_t denominator = 0;
  if (variant == Variant::one) {
    const std::size_t end = scope == Scope::outgoers_only ? augmented.core_rows() : augmented.rows();
    for (std::size_t i = 0; i < end; ++i) denominator += choose2(augmented.row_marginals()[i]);
  } else {
    const std::size_t end = scope == Scope::newcomers_only ? augmented.core_cols() : augmented.cols();
    for (std::size_t j = 0; j < end; ++j) denominator += choose2(augmented.col_marginals()[j]);
  }
  return ratio(core.a, denominator, variant == Variant::one ? "MW1" : "MW2");
}

double modified_rand(const AlignedPair& pair) {
  return modified_rand(contingency(pair, TableMode::augmented));
}

double modified_wallace(const AlignedPair& pair, Variant variant, Scope scope) {
  return modified_wallace(contingency(pair, TableMode::augmented), variant, scope);
}

double evaluate(const IndexKind& kind, const ContingencyTable& table) {
  switch (kind.family()) {
    case Family::rand: return rand_index(pair_counts(table));
    case Family::fowlkes_mallows: return fowlkes_mallows(pair_counts(table));
    case Family::wallace: return wallace(pair_counts(table), *kind.variant());
    case Family::modified_rand: return modified_rand(table);
    case Family::modified_wallace: return modified_wallace(table, *kind.variant(), *kind.scope());
  }
  return 0.0;
}

double evaluate(const IndexKind& kind, const AlignedPair& pair) {
  return evaluate(kind, contingency(pair, kind.table_mode()));
}

}  // namespace pstab
