#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glauberlab/graph.hpp"
#include "glauberlab/rng.hpp"

namespace glab {

/// Inserts vertices in index order; vertex i joins a random nonempty subset
/// (of size < max_clique) of the clique formed by a random earlier vertex u
/// and u's earlier neighbours. Index order is therefore a perfect ordering.
/// max_clique = 1 yields the edgeless graph.
Graph generate_random_chordal(std::size_t n, std::size_t max_clique, RngStream& rng);

struct GeneratorSpec {
  std::size_t n = 0;
  std::size_t max_clique = 0;
};

/// Parses "chordal:n=<int>,maxclique=<int>".
GeneratorSpec parse_generator(const std::string& spec);

struct ExperimentConfig {
  std::string command;  // gap | mix | couple | project | paths | verify-bounds | gen
  std::string graph_file;
  std::string generator;
  std::optional<std::size_t> colors;
  std::optional<double> epsilon;
  std::string lists;
  std::string dynamics = "glauber";
  std::optional<std::size_t> vertex;
  std::uint64_t seed = 1;
  std::size_t replicas = 200;
  std::size_t max_steps = 0;  // 0: 100 * omega * n^2
  std::size_t jobs = 1;
  std::size_t enum_cap = 200000;
  std::size_t matrix_cap = 2000;
  std::size_t branch_cap = 64;
  std::size_t pairs = 8;
  std::size_t corpus_max_n = 5;
  std::size_t assignments = 100;
  std::size_t tech_tuples = 10000;
  double threshold = 0.25;
  std::string out_dir;

  /// Canonical JSON echo (sorted keys, unset optionals omitted).
  std::string to_json() const;
  /// Unknown keys and ill-typed values throw Usage.
  static ExperimentConfig from_json(const std::string& text);
};

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const CsvTable&, const CsvTable&) = default;
};

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// `#`-prefixed header lines, then the column line and rows. Fields holding
/// commas or quotes are quoted.
void write_csv(std::ostream& out, const std::vector<std::string>& header, const CsvTable& table);

struct ParsedCsv {
  std::vector<std::string> header;  // without the leading "# "
  CsvTable table;
};

ParsedCsv parse_csv(std::istream& in);

struct PlotSeries {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
};

/// Writes <name>.dat (headerless "x y" lines) and <name>.schema.json per
/// nonempty series; returns the files written. With nothing to write, warns
/// on `warn` and writes nothing.
std::vector<std::string> emit_plot_data(const std::vector<PlotSeries>& series, const std::string& dir,
                                        std::ostream* warn = nullptr);

struct ExperimentResult {
  /// 0 success, 2 failed verdict.
  int exit_code = 0;
  std::vector<std::string> header;
  CsvTable table;
  std::vector<PlotSeries> plots;
  /// Human-readable summary lines.
  std::vector<std::string> notes;
  /// Extra named files (e.g. a generated graph).
  std::vector<std::pair<std::string, std::string>> files;
};

/// Runs the analysis named by cfg.command. Configuration problems throw
/// glab::Error (Usage for bad combinations).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Writes <command>.csv, plot files and extra files into cfg.out_dir, or the
/// CSV to `out` when out_dir is empty.
void write_experiment(const ExperimentConfig& cfg, const ExperimentResult& result, std::ostream& out,
                      std::ostream& warn);

}  // namespace glab
