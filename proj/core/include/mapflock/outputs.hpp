#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mapflock/config.hpp"
#include "mapflock/simulator.hpp"

namespace mapflock {

// Header "t,coverage_ratio,fiedler,alive,m0,m1,m2,rg_0,...", values in %.6g.
std::string metrics_csv(const RunResult& result);
std::string trajectory_csv(const RunResult& result);
// key=value lines: final metrics, convergence, seed, then the full config
// echo under the "config." prefix.
std::string run_summary(const RunResult& result, const ScenarioConfig& config);

struct OutputPaths {
  std::filesystem::path metrics;
  std::filesystem::path summary;
  std::filesystem::path trajectory;  // empty: not written
};

OutputPaths default_output_paths(const std::filesystem::path& dir, bool with_trajectory);

// Throws std::runtime_error naming the path on IO failure.
void write_outputs(const RunResult& result, const ScenarioConfig& config, const OutputPaths& paths);
void write_text_file(const std::filesystem::path& path, std::string_view text);
std::string read_text_file(const std::filesystem::path& path);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Throws std::out_of_range for an unknown column.
  std::size_t column(std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
std::map<std::string, std::string> parse_key_values(std::string_view text);

struct PlotOptions {
  std::vector<std::string> columns;  // empty: every column except the first
  std::string title;
  int width = 800;
  int height = 480;
};

// Line chart of the selected columns against the first column, one
// <polyline> per series.
std::string render_svg(const CsvTable& table, const PlotOptions& options);

}  // namespace mapflock
