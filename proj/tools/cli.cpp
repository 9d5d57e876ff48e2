#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "mapflock/errors.hpp"
#include "mapflock/experiments.hpp"
#include "mapflock/outputs.hpp"
#include "mapflock/simulator.hpp"

namespace mapflock::cli {
namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = "out";
  bool trajectories = false;
  int replicates = 5;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool sweep) {
  cmd->add_option("config", opts.config_path, "Scenario configuration file")->required();
  cmd->add_option("--seed", opts.seed, "Override the configured seed (first replicate seed for sweeps)");
  cmd->add_option("--out-dir", opts.out_dir, "Directory for output files")->capture_default_str();
  cmd->add_flag("--trajectories", opts.trajectories, "Also write per-step MAP trajectories");
  if (sweep) {
    cmd->add_option("--replicates", opts.replicates, "Seeds per sweep point")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }
}

ScenarioConfig load(const CommonOptions& opts) {
  auto config = load_config(opts.config_path);
  if (opts.seed) config.seed = *opts.seed;
  return config;
}

int do_run(const CommonOptions& opts, std::ostream& out) {
  const auto config = load(opts);
  const auto result = run(config, {opts.trajectories});
  const std::filesystem::path dir = opts.out_dir;
  write_outputs(result, config, default_output_paths(dir, opts.trajectories));
  out << run_summary(result, config);
  return 0;
}

int do_sweep(ExperimentSpec::Kind kind, const CommonOptions& opts, std::vector<double> values, double at,
             std::ostream& out) {
  ExperimentSpec spec;
  spec.kind = kind;
  spec.base = load(opts);
  spec.values = std::move(values);
  spec.failure_time = at;
  spec.seeds = replicate_seeds(spec.base.seed, opts.replicates);
  const std::filesystem::path dir = opts.out_dir;
  const auto points = run_sweep(spec, dir, opts.trajectories);
  write_text_file(dir / "sweep.csv", sweep_csv(spec, points));
  const auto summary = sweep_summary(spec, points);
  write_text_file(dir / "summary.txt", summary);
  out << summary;
  return 0;
}

int do_plot(const std::string& csv_path, const std::string& svg_path, const std::vector<std::string>& columns,
            const std::string& title) {
  const auto table = parse_csv(read_text_file(csv_path));
  write_text_file(svg_path, render_svg(table, {columns, title}));
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flocking-based aerial base-station formation simulator", "mapflock"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Single run: metrics CSV and summary");
  add_common(run_cmd, run_opts, false);

  CommonOptions maps_opts;
  std::vector<double> counts;
  auto* maps_cmd = app.add_subcommand("sweep-maps", "Sweep the fleet size");
  add_common(maps_cmd, maps_opts, true);
  maps_cmd->add_option("--counts", counts, "MAP counts")->required()->delimiter(',');

  CommonOptions fail_opts;
  std::vector<double> fractions;
  double at = 18.0;
  auto* fail_cmd = app.add_subcommand("sweep-failure", "Sweep the fraction of MAPs failing at one instant");
  add_common(fail_cmd, fail_opts, true);
  fail_cmd->add_option("--fractions", fractions, "Failure fractions in [0,1]")->required()->delimiter(',');
  fail_cmd->add_option("--at", at, "Failure time [s]")->capture_default_str();

  std::string csv_path, svg_path, title;
  std::vector<std::string> columns;
  auto* plot_cmd = app.add_subcommand("plot", "Render CSV columns as an SVG line chart");
  plot_cmd->add_option("csv", csv_path, "Input CSV (first column is the x axis)")->required();
  plot_cmd->add_option("--out", svg_path, "Output SVG path")->required();
  plot_cmd->add_option("--columns", columns, "Columns to plot (default: all but the first)")->delimiter(',');
  plot_cmd->add_option("--title", title, "Chart title");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "mapflock: " << e.what() << " (see --help)\n";
    return 2;
  }

  try {
    if (run_cmd->parsed()) return do_run(run_opts, out);
    if (maps_cmd->parsed()) return do_sweep(ExperimentSpec::Kind::MapCountSweep, maps_opts, counts, 0.0, out);
    if (fail_cmd->parsed()) return do_sweep(ExperimentSpec::Kind::FailureSweep, fail_opts, fractions, at, out);
    if (plot_cmd->parsed()) return do_plot(csv_path, svg_path, columns, title);
  } catch (const std::exception& e) {
    err << "mapflock: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace mapflock::cli
