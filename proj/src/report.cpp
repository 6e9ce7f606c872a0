#include "pstab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "pstab/adjustment.hpp"
#include "pstab/errors.hpp"
#include "pstab/indices.hpp"

namespace pstab {

namespace {

bool is_classic(const std::string& code) {
  return code == "ri" || code == "fm" || code == "w1" || code == "w2" || code == "ari" || code == "aw1" ||
         code == "aw2";
}

IndexReport analytic_report(const AlignedPair& pair, const std::string& code) {
  const ContingencyTable core = contingency(pair, TableMode::core);
  const PairCounts pc = pair_counts(core);
  IndexReport rep;
  rep.index = code;
  if (code == "ari") {
    rep.raw = rand_index(pc);
    rep.expected = expected_rand_analytic(core).mean;
    rep.adjusted = adjusted_rand_analytic(core);
    rep.method = std::string(to_string(ExpectationMethod::hypergeometric));
  } else {
    const Variant v = code == "aw1" ? Variant::one : Variant::two;
    const Partition& conditioning = v == Variant::one ? pair.second() : pair.first();
    rep.raw = wallace(pc, v);
    rep.expected = expected_wallace_analytic(core, v).mean;
    rep.adjusted = adjusted_wallace_analytic(pc, conditioning, v);
    rep.method = std::string(to_string(ExpectationMethod::simpson));
  }
  rep.expected_se = 0.0;
  return rep;
}

IndexReport index_report(const AlignedPair& pair, const std::string& code, const CompareOptions& options) {
  if (is_classic(code) && !pair.same_units())
    throw Error(ErrorCode::UnitSetMismatch,
                "'" + code + "' needs identical unit sets; use mri, mw1 or mw2 for pairs with newcomers or outgoers");
  IndexReport rep;
  if (code == "ari" || code == "aw1" || code == "aw2") {
    rep = analytic_report(pair, code);
  } else {
    const auto kind = parse_index_code(code);
    if (!kind) throw Error(ErrorCode::MalformedRecord, "unknown index '" + code + "'");
    rep.index = code;
    rep.raw = evaluate(*kind, pair);
    if (options.adjust) {
      if (!options.seed) throw Error(ErrorCode::MalformedRecord, "--seed is required with --adjust");
      AdjustmentConfig cfg;
      cfg.repetitions = options.repetitions;
      cfg.seed = *options.seed;
      cfg.workers = options.workers;
      const auto expected = permutation_expectation(pair, *kind, cfg);
      rep.expected = expected.mean;
      rep.expected_se = expected.std_error;
      rep.adjusted = adjust(rep.raw, expected);
      rep.method = std::string(to_string(ExpectationMethod::permutation));
      rep.seed = cfg.seed;
      rep.repetitions = cfg.repetitions;
    }
  }
  rep.counts = unit_counts(pair);
  return rep;
}

std::string csv_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

std::string json_optional(const std::optional<double>& v) { return v ? format_number(*v) : std::string("null"); }

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

// Sorted labels with the reserved one (if any) moved to the end.
std::vector<ClusterLabel> ordered_labels(const std::set<ClusterLabel>& labels, std::string_view reserved,
                                         bool& has_reserved) {
  std::vector<ClusterLabel> out;
  has_reserved = false;
  for (const auto& l : labels) {
    if (l == reserved) has_reserved = true;
    else out.push_back(l);
  }
  if (has_reserved) out.emplace_back(reserved);
  return out;
}

}  // namespace

UnitCounts unit_counts(const AlignedPair& pair) {
  return UnitCounts{pair.persistent().size(), pair.newcomers().size(), pair.outgoers().size(),
                    pair.first().cluster_count(), pair.second().cluster_count()};
}

const std::vector<std::string>& known_index_codes() {
  static const std::vector<std::string> codes{"ri",  "fm",  "w1",  "w2",   "mri",  "mw1",  "mw2",
                                              "mwo1", "mwo2", "mwn1", "mwn2", "ari", "aw1", "aw2"};
  return codes;
}

std::vector<std::string> default_indices(const AlignedPair& pair) {
  std::vector<std::string> out;
  for (const auto& code : known_index_codes()) {
    if (is_classic(code) && !pair.same_units()) continue;
    if (code.rfind("mwo", 0) == 0 && !pair.newcomers().empty()) continue;
    if (code.rfind("mwn", 0) == 0 && !pair.outgoers().empty()) continue;
    out.push_back(code);
  }
  return out;
}

std::vector<IndexReport> compare(const AlignedPair& pair, const CompareOptions& options) {
  std::vector<IndexReport> reports;
  if (!options.indices.empty()) {
    for (const auto& code : options.indices) reports.push_back(index_report(pair, code, options));
    return reports;
  }
  // Defaults skip indices that are undefined for this particular input.
  for (const auto& code : default_indices(pair)) {
    try {
      reports.push_back(index_report(pair, code, options));
    } catch (const Error& e) {
      const auto c = e.code();
      if (c != ErrorCode::DegenerateIndex && c != ErrorCode::DegenerateAdjustment && c != ErrorCode::TooFewUnits)
        throw;
    }
  }
  return reports;
}

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  std::string s = buf;
  if (s == "-0.000000") s = "0.000000";
  return s;
}

void write_reports(std::ostream& out, const std::vector<IndexReport>& reports, ReportFormat format) {
  if (format == ReportFormat::csv) {
    out << "index,raw,expected,expected_se,adjusted,persistent,newcomers,outgoers\n";
    for (const auto& r : reports) {
      out << r.index << ',' << format_number(r.raw) << ',' << csv_optional(r.expected) << ','
          << csv_optional(r.expected_se) << ',' << csv_optional(r.adjusted) << ',' << r.counts.persistent << ','
          << r.counts.newcomers << ',' << r.counts.outgoers << '\n';
    }
    return;
  }
  out << "[";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    out << (i == 0 ? "\n" : ",\n");
    out << "  {\"index\": " << json_string(r.index) << ", \"raw\": " << format_number(r.raw)
        << ", \"expected\": " << json_optional(r.expected) << ", \"expected_se\": " << json_optional(r.expected_se)
        << ", \"adjusted\": " << json_optional(r.adjusted)
        << ", \"method\": " << (r.method ? json_string(*r.method) : std::string("null"))
        << ", \"persistent\": " << r.counts.persistent << ", \"newcomers\": " << r.counts.newcomers
        << ", \"outgoers\": " << r.counts.outgoers << ", \"clusters_first\": " << r.counts.clusters_first
        << ", \"clusters_second\": " << r.counts.clusters_second
        << ", \"seed\": " << (r.seed ? std::to_string(*r.seed) : std::string("null"))
        << ", \"repetitions\": " << (r.repetitions ? std::to_string(*r.repetitions) : std::string("null")) << "}";
  }
  out << (reports.empty() ? "]\n" : "\n]\n");
}

void write_grid(std::ostream& out, const std::vector<GridCell>& cells) {
  out << "clusters_first,clusters_second,units,mean,std_error\n";
  for (const auto& c : cells)
    out << c.clusters_first << ',' << c.clusters_second << ',' << c.units << ',' << format_number(c.mean) << ','
        << format_number(c.std_error) << '\n';
}

std::vector<TransitionRecord> emit_transitions(const AlignedPair& pair) {
  const ContingencyTable table = contingency(pair, TableMode::augmented);
  std::vector<TransitionRecord> out;
  for (std::size_t i = 0; i < table.rows(); ++i)
    for (std::size_t j = 0; j < table.cols(); ++j)
      if (table.at(i, j) != 0) out.push_back({table.row_labels()[i], table.col_labels()[j], table.at(i, j)});
  return out;
}

void write_transitions(std::ostream& out, const std::vector<TransitionRecord>& records) {
  out << "from_cluster,to_cluster,count\n";
  for (const auto& r : records) out << r.from_cluster << ',' << r.to_cluster << ',' << r.count << '\n';
}

std::vector<TransitionRecord> read_transitions(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::EmptyInput, "no transitions header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "from_cluster,to_cluster,count")
    throw Error(ErrorCode::MalformedRecord, "expected header 'from_cluster,to_cluster,count'");
  std::vector<TransitionRecord> out;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = csv_fields(line);
    if (f.size() != 3) throw Error(ErrorCode::MalformedRecord, "bad transition record '" + line + "'");
    std::size_t used = 0;
    long long count = 0;
    try {
      count = std::stoll(f[2], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != f[2].size() || count < 0)
      throw Error(ErrorCode::MalformedRecord, "bad transition count '" + f[2] + "'");
    out.push_back({f[0], f[1], count});
  }
  return out;
}

ContingencyTable table_from_transitions(const std::vector<TransitionRecord>& records) {
  std::set<ClusterLabel> from;
  std::set<ClusterLabel> to;
  for (const auto& r : records) {
    from.insert(r.from_cluster);
    to.insert(r.to_cluster);
  }
  bool newcomers = false;
  bool outgoers = false;
  const auto rows = ordered_labels(from, kNewcomerLabel, newcomers);
  const auto cols = ordered_labels(to, kOutgoerLabel, outgoers);
  std::vector<std::int64_t> counts(rows.size() * cols.size(), 0);
  for (const auto& r : records) {
    const auto i = static_cast<std::size_t>(std::find(rows.begin(), rows.end(), r.from_cluster) - rows.begin());
    const auto j = static_cast<std::size_t>(std::find(cols.begin(), cols.end(), r.to_cluster) - cols.begin());
    counts[i * cols.size() + j] += r.count;
  }
  std::optional<std::size_t> newcomer_row;
  std::optional<std::size_t> outgoer_col;
  if (newcomers) newcomer_row = rows.size() - 1;
  if (outgoers) outgoer_col = cols.size() - 1;
  ContingencyTable table(rows.size(), cols.size(), std::move(counts), newcomer_row, outgoer_col);
  table.set_labels(rows, cols);
  return table;
}

}  // namespace pstab
