#include "pstab/partition.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pstab/errors.hpp"

namespace pstab {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\v\f";

std::string_view trim(std::string_view s) {
  const auto begin = s.find_first_not_of(kWhitespace);
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(kWhitespace);
  return s.substr(begin, end - begin + 1);
}

bool is_reserved(std::string_view label) {
  return label == kNewcomerLabel || label == kOutgoerLabel;
}

void validate_unit(const UnitId& unit) {
  if (unit.empty() || trim(unit).size() != unit.size())
    throw Error(ErrorCode::MalformedRecord, "unit id is empty or has surrounding whitespace: '" + unit + "'");
  if (unit.find_first_of(",\n\r") != std::string::npos)
    throw Error(ErrorCode::MalformedRecord, "unit id contains a comma or newline: '" + unit + "'");
}

void validate_label(const UnitId& unit, const ClusterLabel& label) {
  if (trim(label).empty())
    throw Error(ErrorCode::MalformedRecord, "empty cluster label for unit '" + unit + "'");
  if (label.find_first_of(",\n\r") != std::string::npos)
    throw Error(ErrorCode::MalformedRecord, "cluster label contains a comma or newline: '" + label + "'");
}

void reject_reserved(const Partition& p) {
  if (p.uses_reserved_label())
    throw Error(ErrorCode::MalformedRecord,
                std::string("input uses a reserved cluster label (") + std::string(kNewcomerLabel) + " or " +
                    std::string(kOutgoerLabel) + ")");
}

Partition parse_csv(std::istream& in) {
  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  std::vector<std::pair<UnitId, ClusterLabel>> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view = line;
    if (line_no == 1 && view.substr(0, 3) == "\xEF\xBB\xBF") view.remove_prefix(3);
    if (trim(view).empty()) continue;
    if (!have_header) {
      const auto comma = view.find(',');
      if (comma == std::string_view::npos || trim(view.substr(0, comma)) != "unit" ||
          trim(view.substr(comma + 1)) != "cluster")
        throw Error(ErrorCode::MalformedRecord, "expected CSV header 'unit,cluster', got '" + line + "'");
      have_header = true;
      continue;
    }
    const auto comma = view.find(',');
    if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos)
      throw Error(ErrorCode::MalformedRecord,
                  "line " + std::to_string(line_no) + ": expected two fields, got '" + line + "'");
    std::string unit(trim(view.substr(0, comma)));
    std::string label(view.substr(comma + 1));
    if (unit.empty())
      throw Error(ErrorCode::MalformedRecord, "line " + std::to_string(line_no) + ": missing unit id");
    records.emplace_back(std::move(unit), std::move(label));
  }
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "no records in CSV input");
  return Partition(records);
}

Partition parse_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedRecord, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::MalformedRecord, "JSON input must be an array of records");
  if (doc.empty()) throw Error(ErrorCode::EmptyInput, "no records in JSON input");
  std::vector<std::pair<UnitId, ClusterLabel>> records;
  records.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& rec = doc[i];
    if (!rec.is_object() || !rec.contains("unit") || !rec.contains("cluster"))
      throw Error(ErrorCode::MalformedRecord, "record " + std::to_string(i) + " lacks 'unit' or 'cluster'");
    if (!rec["unit"].is_string() || !rec["cluster"].is_string())
      throw Error(ErrorCode::MalformedRecord, "record " + std::to_string(i) + ": 'unit' and 'cluster' must be strings");
    records.emplace_back(std::string(trim(rec["unit"].get<std::string>())), rec["cluster"].get<std::string>());
  }
  return Partition(records);
}

std::vector<UnitId> set_difference(const Partition& a, const Partition& b) {
  std::vector<UnitId> out;
  for (const auto& [unit, label] : a.assignments())
    if (!b.contains(unit)) out.push_back(unit);
  return out;
}

// Sorted distinct labels of `p` over `units`.
std::vector<ClusterLabel> labels_over(const Partition& p, const std::vector<UnitId>& units) {
  std::set<ClusterLabel> seen;
  for (const auto& u : units) seen.insert(p.cluster_of(u));
  return {seen.begin(), seen.end()};
}

std::uint32_t index_of(const std::vector<ClusterLabel>& sorted, const ClusterLabel& label) {
  return static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), label) - sorted.begin());
}

}  // namespace

Partition::Partition(const std::vector<std::pair<UnitId, ClusterLabel>>& records) {
  if (records.empty()) throw Error(ErrorCode::EmptyInput, "partition has no units");
  for (const auto& [unit, label] : records) {
    validate_unit(unit);
    validate_label(unit, label);
    if (!assignments_.emplace(unit, label).second)
      throw Error(ErrorCode::DuplicateUnit, "unit '" + unit + "' appears more than once");
  }
  if (assignments_.size() > kMaxUnits)
    throw Error(ErrorCode::TooManyUnits, std::to_string(assignments_.size()) + " units exceed the cap");
}

Partition::Partition(std::map<UnitId, ClusterLabel> assignments) : assignments_(std::move(assignments)) {
  if (assignments_.empty()) throw Error(ErrorCode::EmptyInput, "partition has no units");
  for (const auto& [unit, label] : assignments_) {
    validate_unit(unit);
    validate_label(unit, label);
  }
  if (assignments_.size() > kMaxUnits)
    throw Error(ErrorCode::TooManyUnits, std::to_string(assignments_.size()) + " units exceed the cap");
}

std::vector<Cluster> Partition::clusters() const {
  std::map<ClusterLabel, std::vector<UnitId>> grouped;
  for (const auto& [unit, label] : assignments_) grouped[label].push_back(unit);
  std::vector<Cluster> out;
  out.reserve(grouped.size());
  for (auto& [label, members] : grouped) out.push_back(Cluster{label, std::move(members)});
  return out;
}

std::vector<ClusterLabel> Partition::labels() const {
  std::set<ClusterLabel> seen;
  for (const auto& kv : assignments_) seen.insert(kv.second);
  return {seen.begin(), seen.end()};
}

std::vector<UnitId> Partition::units() const {
  std::vector<UnitId> out;
  out.reserve(assignments_.size());
  for (const auto& kv : assignments_) out.push_back(kv.first);
  return out;
}

std::size_t Partition::cluster_count() const { return labels().size(); }

const ClusterLabel& Partition::cluster_of(const UnitId& unit) const {
  const auto it = assignments_.find(unit);
  if (it == assignments_.end()) throw Error(ErrorCode::UnitSetMismatch, "unit '" + unit + "' is not in the partition");
  return it->second;
}

bool Partition::uses_reserved_label() const {
  return std::any_of(assignments_.begin(), assignments_.end(),
                     [](const auto& kv) { return is_reserved(kv.second); });
}

Partition Partition::restricted_to(const std::vector<UnitId>& units) const {
  std::map<UnitId, ClusterLabel> kept;
  for (const auto& u : units) kept.emplace(u, cluster_of(u));
  return Partition(std::move(kept));
}

Partition parse_partition(std::istream& in, InputFormat format) {
  Partition p = format == InputFormat::csv ? parse_csv(in) : parse_json(in);
  reject_reserved(p);
  return p;
}

Partition parse_partition(std::string_view text, InputFormat format) {
  std::istringstream in{std::string(text)};
  return parse_partition(in, format);
}

Partition read_partition_file(const std::string& path, std::optional<InputFormat> format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::EmptyInput, "cannot open '" + path + "'");
  if (!format) {
    const bool json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    format = json ? InputFormat::json : InputFormat::csv;
  }
  return parse_partition(in, *format);
}

AlignedPair::AlignedPair(Partition first, Partition second, std::vector<UnitId> persistent,
                         std::vector<UnitId> outgoers, std::vector<UnitId> newcomers, Partition u_prime,
                         Partition v_prime)
    : first_(std::move(first)),
      second_(std::move(second)),
      persistent_(std::move(persistent)),
      outgoers_(std::move(outgoers)),
      newcomers_(std::move(newcomers)),
      u_prime_(std::move(u_prime)),
      v_prime_(std::move(v_prime)) {}

AlignedPair AlignedPair::swapped() const { return align(second_, first_); }

AlignedPair align(const Partition& first, const Partition& second) {
  reject_reserved(first);
  reject_reserved(second);

  std::vector<UnitId> persistent;
  for (const auto& [unit, label] : first.assignments())
    if (second.contains(unit)) persistent.push_back(unit);
  if (persistent.empty()) throw Error(ErrorCode::NonOverlappingSets, "the two partitions share no units");

  auto outgoers = set_difference(first, second);
  auto newcomers = set_difference(second, first);
  if (first.size() + newcomers.size() > kMaxUnits)
    throw Error(ErrorCode::TooManyUnits, "union of unit sets exceeds the cap");

  auto u_map = first.assignments();
  for (const auto& u : newcomers) u_map.emplace(u, std::string(kNewcomerLabel));
  auto v_map = second.assignments();
  for (const auto& u : outgoers) v_map.emplace(u, std::string(kOutgoerLabel));

  return AlignedPair(first, second, std::move(persistent), std::move(outgoers), std::move(newcomers),
                     Partition(std::move(u_map)), Partition(std::move(v_map)));
}

ContingencyTable::ContingencyTable(std::size_t rows, std::size_t cols, std::vector<std::int64_t> counts,
                                   std::optional<std::size_t> newcomer_row, std::optional<std::size_t> outgoer_col)
    : rows_(rows),
      cols_(cols),
      counts_(std::move(counts)),
      row_marginals_(rows, 0),
      col_marginals_(cols, 0),
      newcomer_row_(newcomer_row),
      outgoer_col_(outgoer_col) {
  if (counts_.size() != rows * cols) throw std::invalid_argument("contingency table: counts size mismatch");
  if (newcomer_row_ && *newcomer_row_ + 1 != rows)
    throw std::invalid_argument("contingency table: newcomer row must be the last row");
  if (outgoer_col_ && *outgoer_col_ + 1 != cols)
    throw std::invalid_argument("contingency table: outgoer column must be the last column");
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const auto v = counts_[i * cols + j];
      if (v < 0) throw std::invalid_argument("contingency table: negative count");
      row_marginals_[i] += v;
      col_marginals_[j] += v;
      total_ += v;
    }
  }
  if (total_ > static_cast<std::int64_t>(kMaxUnits))
    throw Error(ErrorCode::TooManyUnits, std::to_string(total_) + " units exceed the cap");
}

ContingencyTable ContingencyTable::from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t q = r == 0 ? 0 : rows.front().size();
  std::vector<std::int64_t> flat;
  flat.reserve(r * q);
  for (const auto& row : rows) {
    if (row.size() != q) throw std::invalid_argument("contingency table: ragged rows");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return ContingencyTable(r, q, std::move(flat));
}

void ContingencyTable::set_labels(std::vector<ClusterLabel> row_labels, std::vector<ClusterLabel> col_labels) {
  if (row_labels.size() != rows_ || col_labels.size() != cols_)
    throw std::invalid_argument("contingency table: label count mismatch");
  row_labels_ = std::move(row_labels);
  col_labels_ = std::move(col_labels);
}

std::vector<std::vector<std::int64_t>> ContingencyTable::to_rows() const {
  std::vector<std::vector<std::int64_t>> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    out[i].assign(counts_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  counts_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  return out;
}

EncodedPair EncodedPair::transposed() const {
  return EncodedPair{cols, rows, col_count, row_count, outgoer_col, newcomer_row, col_labels, row_labels};
}

EncodedPair encode(const AlignedPair& pair, TableMode mode) {
  EncodedPair enc;
  if (mode == TableMode::core) {
    const auto& units = pair.persistent();
    enc.row_labels = labels_over(pair.first(), units);
    enc.col_labels = labels_over(pair.second(), units);
    enc.rows.reserve(units.size());
    enc.cols.reserve(units.size());
    for (const auto& u : units) {
      enc.rows.push_back(index_of(enc.row_labels, pair.first().cluster_of(u)));
      enc.cols.push_back(index_of(enc.col_labels, pair.second().cluster_of(u)));
    }
  } else {
    enc.row_labels = pair.first().labels();
    enc.col_labels = pair.second().labels();
    enc.newcomer_row = !pair.newcomers().empty();
    enc.outgoer_col = !pair.outgoers().empty();
    const auto newcomer_index = static_cast<std::uint32_t>(enc.row_labels.size());
    const auto outgoer_index = static_cast<std::uint32_t>(enc.col_labels.size());
    for (const auto& [unit, label] : pair.u_prime().assignments()) {
      enc.rows.push_back(pair.first().contains(unit) ? index_of(enc.row_labels, label) : newcomer_index);
      enc.cols.push_back(pair.second().contains(unit) ? index_of(enc.col_labels, pair.second().cluster_of(unit))
                                                      : outgoer_index);
    }
    if (enc.newcomer_row) enc.row_labels.emplace_back(kNewcomerLabel);
    if (enc.outgoer_col) enc.col_labels.emplace_back(kOutgoerLabel);
  }
  enc.row_count = static_cast<std::uint32_t>(enc.row_labels.size());
  enc.col_count = static_cast<std::uint32_t>(enc.col_labels.size());
  return enc;
}

ContingencyTable tabulate(const EncodedPair& encoded) {
  const std::size_t r = encoded.row_count;
  const std::size_t q = encoded.col_count;
  std::vector<std::int64_t> counts(r * q, 0);
  for (std::size_t k = 0; k < encoded.rows.size(); ++k) ++counts[encoded.rows[k] * q + encoded.cols[k]];
  std::optional<std::size_t> newcomer;
  std::optional<std::size_t> outgoer;
  if (encoded.newcomer_row) newcomer = r - 1;
  if (encoded.outgoer_col) outgoer = q - 1;
  return ContingencyTable(r, q, std::move(counts), newcomer, outgoer);
}

ContingencyTable contingency(const AlignedPair& pair, TableMode mode) {
  const EncodedPair enc = encode(pair, mode);
  ContingencyTable table = tabulate(enc);
  table.set_labels(enc.row_labels, enc.col_labels);
  return table;
}

}  // namespace pstab
