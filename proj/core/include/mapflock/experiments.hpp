#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mapflock/config.hpp"
#include "mapflock/simulator.hpp"

namespace mapflock {

struct ExperimentSpec {
  enum class Kind { SingleRun, MapCountSweep, FailureSweep };

  Kind kind = Kind::SingleRun;
  ScenarioConfig base;
  std::vector<double> values;          // MAP counts or failure fractions
  double failure_time = 18.0;          // failure sweeps only
  std::vector<std::uint64_t> seeds;    // replicates per sweep point

  void validate() const;
};

// Seeds base, base+1, ..., base+count-1.
std::vector<std::uint64_t> replicate_seeds(std::uint64_t base, int count);

struct ReplicateOutcome {
  double value = 0.0;
  std::uint64_t seed = 0;
  std::vector<MetricsSample> samples;
  ConvergenceReport convergence;
  std::vector<AppliedFailure> failures;

  const MetricsSample& final_sample() const { return samples.back(); }
};

struct SweepPoint {
  double value = 0.0;
  std::vector<ReplicateOutcome> replicates;
  double mean_coverage = 0.0;
  double mean_lambda2 = 0.0;
  double mean_alive = 0.0;
};

// Configuration used for one replicate of one sweep point.
ScenarioConfig point_config(const ExperimentSpec& spec, double value, std::uint64_t seed);

// Runs every (value, seed) pair. Points run in parallel; each replicate's
// files go to out_dir/<kind>_<value>/seed_<seed>/ when out_dir is non-empty.
std::vector<SweepPoint> run_sweep(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                                  bool trajectories = false);

// One row per replicate plus a mean row per point.
std::string sweep_csv(const ExperimentSpec& spec, const std::vector<SweepPoint>& points);
std::string sweep_summary(const ExperimentSpec& spec, const std::vector<SweepPoint>& points);

}  // namespace mapflock
