#include "mapflock/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <thread>

#include "mapflock/errors.hpp"
#include "mapflock/outputs.hpp"

namespace mapflock {
namespace {

std::string g6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const char* kind_name(ExperimentSpec::Kind kind) {
  switch (kind) {
    case ExperimentSpec::Kind::SingleRun: return "run";
    case ExperimentSpec::Kind::MapCountSweep: return "maps";
    case ExperimentSpec::Kind::FailureSweep: return "failure";
  }
  return "run";
}

}  // namespace

void ExperimentSpec::validate() const {
  base.validate();
  if (kind != Kind::SingleRun && values.empty()) throw ConfigError("sweep needs at least one value");
  if (seeds.empty()) throw ConfigError("sweep needs at least one seed");
  for (double v : values) {
    if (kind == Kind::MapCountSweep && (v < 1.0 || v != std::floor(v))) {
      throw ConfigError("MAP counts must be positive integers");
    }
    if (kind == Kind::FailureSweep && !(v >= 0.0 && v <= 1.0)) {
      throw ConfigError("failure fractions must lie in [0, 1]");
    }
  }
  if (kind == Kind::FailureSweep && !(failure_time >= 0.0)) throw ConfigError("failure time must be >= 0");
}

std::vector<std::uint64_t> replicate_seeds(std::uint64_t base, int count) {
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < count; ++i) seeds.push_back(base + static_cast<std::uint64_t>(i));
  return seeds;
}

ScenarioConfig point_config(const ExperimentSpec& spec, double value, std::uint64_t seed) {
  ScenarioConfig config = spec.base;
  config.seed = seed;
  switch (spec.kind) {
    case ExperimentSpec::Kind::MapCountSweep:
      config.map_count = static_cast<int>(value);
      break;
    case ExperimentSpec::Kind::FailureSweep:
      config.failures = {{spec.failure_time, value}};
      break;
    case ExperimentSpec::Kind::SingleRun:
      break;
  }
  return config;
}

std::vector<SweepPoint> run_sweep(const ExperimentSpec& spec, const std::filesystem::path& out_dir,
                                  bool trajectories) {
  spec.validate();
  const std::vector<double> values = spec.kind == ExperimentSpec::Kind::SingleRun && spec.values.empty()
                                         ? std::vector<double>{0.0}
                                         : spec.values;

  std::vector<SweepPoint> points(values.size());
  for (std::size_t p = 0; p < values.size(); ++p) {
    points[p].value = values[p];
    points[p].replicates.resize(spec.seeds.size());
  }

  const std::size_t jobs = values.size() * spec.seeds.size();
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < jobs; job = next++) {
      const std::size_t p = job / spec.seeds.size();
      const std::size_t s = job % spec.seeds.size();
      try {
        const auto config = point_config(spec, values[p], spec.seeds[s]);
        auto result = run(config, {trajectories && !out_dir.empty()});
        if (!out_dir.empty()) {
          const auto dir = out_dir / (std::string(kind_name(spec.kind)) + "_" + g6(values[p])) /
                           ("seed_" + std::to_string(spec.seeds[s]));
          write_outputs(result, config, default_output_paths(dir, trajectories));
        }
        auto& rep = points[p].replicates[s];
        rep.value = values[p];
        rep.seed = spec.seeds[s];
        rep.samples = std::move(result.samples);
        rep.convergence = result.convergence;
        rep.failures = result.applied_failures;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const std::size_t threads = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, jobs);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  for (auto& point : points) {
    const double n = static_cast<double>(point.replicates.size());
    for (const auto& rep : point.replicates) {
      point.mean_coverage += rep.final_sample().coverage_ratio / n;
      point.mean_lambda2 += rep.final_sample().lambda2 / n;
      point.mean_alive += rep.final_sample().alive / n;
    }
  }
  return points;
}

std::string sweep_csv(const ExperimentSpec& spec, const std::vector<SweepPoint>& points) {
  const char* value_name = spec.kind == ExperimentSpec::Kind::FailureSweep ? "failure_fraction" : "map_count";
  std::string out = std::string(value_name) + ",seed,final_coverage_ratio,final_fiedler,alive,converged\n";
  for (const auto& point : points) {
    for (const auto& rep : point.replicates) {
      const auto& last = rep.final_sample();
      out += g6(point.value) + ',' + std::to_string(rep.seed) + ',' + g6(last.coverage_ratio) + ',' +
             g6(last.lambda2) + ',' + std::to_string(last.alive) + ',' + (rep.convergence.converged ? "1" : "0") +
             '\n';
    }
  }
  return out;
}

std::string sweep_summary(const ExperimentSpec& spec, const std::vector<SweepPoint>& points) {
  std::string out;
  out += std::string("kind=") + kind_name(spec.kind) + '\n';
  std::string seeds;
  for (auto s : spec.seeds) seeds += (seeds.empty() ? "" : ",") + std::to_string(s);
  out += "seeds=" + seeds + '\n';
  if (spec.kind == ExperimentSpec::Kind::FailureSweep) out += "failure_time=" + g6(spec.failure_time) + '\n';
  for (const auto& point : points) {
    const std::string key = "point_" + g6(point.value);
    out += key + ".mean_final_coverage_ratio=" + g6(point.mean_coverage) + '\n';
    out += key + ".mean_final_fiedler=" + g6(point.mean_lambda2) + '\n';
    out += key + ".mean_final_alive=" + g6(point.mean_alive) + '\n';
    if (spec.kind == ExperimentSpec::Kind::FailureSweep && !point.replicates.empty()) {
      // coverage on frozen positions either side of the injection
      double before = 0.0;
      double after = 0.0;
      for (const auto& rep : point.replicates) {
        if (rep.failures.empty()) continue;
        before += rep.failures.front().coverage_before;
        after += rep.failures.front().coverage_after;
      }
      const auto n = static_cast<double>(point.replicates.size());
      out += key + ".mean_coverage_before_failure=" + g6(before / n) + '\n';
      out += key + ".mean_coverage_after_failure=" + g6(after / n) + '\n';
    }
  }
  out += format_config(spec.base, "config.");
  return out;
}

}  // namespace mapflock
