#include "pstab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "pstab/errors.hpp"
#include "pstab/indices.hpp"
#include "pstab/partition.hpp"
#include "pstab/report.hpp"
#include "pstab/simulation.hpp"

namespace pstab {

namespace {

std::vector<int> parse_range(const std::string& text, const std::string& option) {
  std::vector<long long> parts;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoll(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidDesign, option + " expects A:B:STEP or a single integer, got '" + text + "'");
    }
  }
  if (parts.size() == 1) parts = {parts[0], parts[0], 1};
  if (parts.size() != 3)
    throw Error(ErrorCode::InvalidDesign, option + " expects A:B:STEP or a single integer, got '" + text + "'");
  for (const auto v : parts)
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
      throw Error(ErrorCode::InvalidDesign, option + " value out of range");
  return int_range(static_cast<int>(parts[0]), static_cast<int>(parts[1]), static_cast<int>(parts[2]));
}

IndexKind resolve_kind(const std::string& name, const std::optional<std::string>& variant,
                       const std::optional<std::string>& scope) {
  if (auto kind = parse_index_code(name)) {
    if (variant || scope)
      throw Error(ErrorCode::InvalidDesign, "--variant/--scope only apply to family names, not to '" + name + "'");
    return *kind;
  }
  const Variant v = variant.value_or("one") == "two" ? Variant::two : Variant::one;
  Scope s = Scope::general;
  if (scope == "outgoers_only" || scope == "outgoers") s = Scope::outgoers_only;
  else if (scope == "newcomers_only" || scope == "newcomers") s = Scope::newcomers_only;
  else if (scope && *scope != "general") throw Error(ErrorCode::InvalidDesign, "unknown scope '" + *scope + "'");

  const bool wallace_family = name == "wallace" || name == "modified_wallace";
  if (variant && !wallace_family)
    throw Error(ErrorCode::InvalidDesign, "--variant applies only to wallace and modified_wallace");
  if (scope && name != "modified_wallace")
    throw Error(ErrorCode::InvalidDesign, "--scope applies only to modified_wallace");

  if (name == "rand") return IndexKind::rand();
  if (name == "fowlkes_mallows") return IndexKind::fowlkes_mallows();
  if (name == "wallace") return IndexKind::wallace(v);
  if (name == "modified_rand") return IndexKind::modified_rand();
  if (name == "modified_wallace") return IndexKind::modified_wallace(v, s);
  throw Error(ErrorCode::InvalidDesign, "unknown index '" + name + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (piece.empty()) continue;
    std::transform(piece.begin(), piece.end(), piece.begin(), [](unsigned char c) { return std::tolower(c); });
    out.push_back(piece);
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Similarity and stability indices for two partitions of possibly different unit sets", "pstab"};
  app.require_subcommand(1);

  // compare
  std::string first_path;
  std::string second_path;
  std::string index_list;
  bool adjust_flag = false;
  std::size_t reps = 1000;
  std::optional<std::uint64_t> seed;
  std::string report_format = "csv";
  std::string input_format;
  unsigned workers = 0;
  auto* compare_cmd = app.add_subcommand("compare", "Compute indices for two partition files");
  compare_cmd->add_option("first", first_path, "Partition at the first time point (CSV or JSON)")->required();
  compare_cmd->add_option("second", second_path, "Partition at the second time point (CSV or JSON)")->required();
  compare_cmd->add_option("--indices", index_list, "Comma-separated list of index codes");
  compare_cmd->add_flag("--adjust", adjust_flag, "Attach permutation expectation and adjusted value");
  compare_cmd->add_option("--reps", reps, "Permutation replicates")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--seed", seed, "Seed for the permutation replicates");
  compare_cmd->add_option("--format", report_format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  compare_cmd->add_option("--input-format", input_format, "Force input format")->check(CLI::IsMember({"json", "csv"}));
  compare_cmd->add_option("--workers", workers, "Worker threads (0 = all cores)");

  // simulate
  std::string kind_name;
  std::optional<std::string> variant;
  std::optional<std::string> scope;
  std::string clusters_u = "8:24:2";
  std::string clusters_v = "8:24:2";
  std::string units = "100:220:20";
  std::size_t sim_reps = 300;
  bool sim_adjust = false;
  std::size_t adjust_reps = 1000;
  std::uint64_t sim_seed = 0;
  std::string out_path;
  unsigned sim_workers = 0;
  auto* simulate_cmd = app.add_subcommand("simulate", "Expected index values for random independent partitions");
  simulate_cmd->add_option("--index", kind_name, "Index code (ri, mw1, ...) or family name")->required();
  simulate_cmd->add_option("--variant", variant, "Wallace variant")->check(CLI::IsMember({"one", "two"}));
  simulate_cmd->add_option("--scope", scope, "Modified Wallace scope");
  simulate_cmd->add_option("--clusters-u", clusters_u, "Clusters in the first partition, A:B:STEP");
  simulate_cmd->add_option("--clusters-v", clusters_v, "Clusters in the second partition, A:B:STEP");
  simulate_cmd->add_option("--units", units, "Total units, A:B:STEP");
  simulate_cmd->add_option("--reps", sim_reps, "Random pairs per cell")->check(CLI::PositiveNumber);
  simulate_cmd->add_flag("--adjust", sim_adjust, "Report adjusted values");
  simulate_cmd->add_option("--adjust-reps", adjust_reps, "Permutation replicates per pair")->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", sim_seed, "Seed")->required();
  simulate_cmd->add_option("--out", out_path, "Write the grid here instead of standard output");
  simulate_cmd->add_option("--workers", sim_workers, "Worker threads (0 = all cores)");

  // transitions
  std::string t_first;
  std::string t_second;
  auto* transitions_cmd = app.add_subcommand("transitions", "Cluster-to-cluster transition counts");
  transitions_cmd->add_option("first", t_first, "Partition at the first time point")->required();
  transitions_cmd->add_option("second", t_second, "Partition at the second time point")->required();

  std::vector<const char*> argv{"pstab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    auto read = [&](const std::string& path) {
      std::optional<InputFormat> fmt;
      if (input_format == "json") fmt = InputFormat::json;
      if (input_format == "csv") fmt = InputFormat::csv;
      return read_partition_file(path, fmt);
    };

    if (compare_cmd->parsed()) {
      const AlignedPair pair = align(read(first_path), read(second_path));
      CompareOptions options;
      options.indices = split_list(index_list);
      for (const auto& code : options.indices) {
        const auto& known = known_index_codes();
        if (std::find(known.begin(), known.end(), code) == known.end()) {
          err << "error: unknown index '" << code << "'\n";
          return kExitUsage;
        }
      }
      if (adjust_flag && !seed) {
        err << "error: --seed is required with --adjust\n";
        return kExitUsage;
      }
      options.adjust = adjust_flag;
      options.repetitions = reps;
      options.seed = seed;
      options.workers = workers;
      const auto reports = compare(pair, options);
      write_reports(out, reports, report_format == "json" ? ReportFormat::json : ReportFormat::csv);
    } else if (simulate_cmd->parsed()) {
      SimulationDesign design;
      design.index = resolve_kind(kind_name, variant, scope);
      design.clusters_first = parse_range(clusters_u, "--clusters-u");
      design.clusters_second = parse_range(clusters_v, "--clusters-v");
      design.units = parse_range(units, "--units");
      design.repetitions = sim_reps;
      design.adjusted = sim_adjust;
      design.adjustment_reps = adjust_reps;
      design.seed = sim_seed;
      design.workers = sim_workers;
      const auto cells = expected_value_grid(design);
      if (out_path.empty()) {
        write_grid(out, cells);
      } else {
        std::ofstream file(out_path);
        if (!file) {
          err << "error: cannot write '" << out_path << "'\n";
          return kExitUsage;
        }
        write_grid(file, cells);
      }
    } else if (transitions_cmd->parsed()) {
      write_transitions(out, emit_transitions(align(read(t_first), read(t_second))));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace pstab
