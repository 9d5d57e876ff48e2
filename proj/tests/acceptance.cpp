// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Usage: mapflock_acceptance <configs-dir>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "checks.hpp"
#include "cli.hpp"
#include "mapflock/experiments.hpp"
#include "mapflock/outputs.hpp"

namespace fs = std::filesystem;
using namespace mapflock;

namespace {

// Pinned tolerances.
constexpr int kSeeds = 5;
constexpr double kNominalCoverageMin = 0.93;        // 80 and 100 MAPs
constexpr double kSparseCoverageLo = 0.55;          // 40 MAPs
constexpr double kSparseCoverageHi = 0.85;
constexpr double kFiedlerLo = 0.005;                // 100 MAPs
constexpr double kFiedlerHi = 0.06;
constexpr double kHalfFailureRecoveryMin = 0.75;    // 50% failure, final R_c
constexpr double kTenthFailureCoverageMin = 0.90;   // 10% failure, final R_c
constexpr double kTenthFailureRiseMin = 0.02;       // 10% failure, post-dip rise
constexpr double kFailureTime = 18.0;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "NOT ") + what;
  }
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const SweepPoint& point(const std::vector<SweepPoint>& points, double value) {
  return *std::find_if(points.begin(), points.end(), [&](const SweepPoint& p) { return p.value == value; });
}

double min_cluster_coverage(const MetricsSample& s) {
  return *std::min_element(s.cluster_coverage.begin(), s.cluster_coverage.end());
}

// Largest rise of R_c after its post-injection minimum.
double post_dip_rise(const ReplicateOutcome& rep, double dt) {
  const auto start = static_cast<std::size_t>(std::llround(kFailureTime / dt));
  std::size_t dip = start;
  for (std::size_t i = start; i < rep.samples.size(); ++i) {
    if (rep.samples[i].coverage_ratio < rep.samples[dip].coverage_ratio) dip = i;
  }
  double peak = rep.samples[dip].coverage_ratio;
  for (std::size_t i = dip; i < rep.samples.size(); ++i) peak = std::max(peak, rep.samples[i].coverage_ratio);
  return peak - rep.samples[dip].coverage_ratio;
}

Verdict nominal_coverage(const std::vector<SweepPoint>& sweep) {
  Verdict v;
  for (double l : {100.0, 80.0}) {
    const double rc = point(sweep, l).mean_coverage;
    v.require(rc >= kNominalCoverageMin, fmt("L=%g mean R_c %.4f >= %.2f", l, rc, kNominalCoverageMin));
  }
  return v;
}

Verdict sparse_coverage(const std::vector<SweepPoint>& sweep, double r0) {
  Verdict v;
  const auto& p = point(sweep, 40.0);
  v.require(p.mean_coverage >= kSparseCoverageLo && p.mean_coverage <= kSparseCoverageHi,
            fmt("L=40 mean R_c %.4f in [%.2f, %.2f]", p.mean_coverage, kSparseCoverageLo, kSparseCoverageHi));
  int short_runs = 0;
  for (const auto& rep : p.replicates) short_runs += min_cluster_coverage(rep.final_sample()) < r0 ? 1 : 0;
  v.require(short_runs == static_cast<int>(p.replicates.size()),
            fmt("%g/%g runs end with a cluster below r0", short_runs, p.replicates.size()));
  return v;
}

Verdict connectivity_threshold(const std::vector<SweepPoint>& sweep) {
  Verdict v;
  for (double l : {40.0, 60.0}) {
    bool all_zero = true;
    for (const auto& rep : point(sweep, l).replicates) all_zero = all_zero && rep.final_sample().lambda2 == 0.0;
    v.require(all_zero, fmt("L=%g lambda2 exactly 0 in every run", l));
  }
  for (double l : {80.0, 100.0}) {
    const double m = point(sweep, l).mean_lambda2;
    v.require(m > 0.0, fmt("L=%g mean lambda2 %.6f > 0", l, m));
  }
  double prev = -1.0;
  bool monotone = true;
  std::string series;
  for (double l : {40.0, 60.0, 80.0, 100.0}) {
    const double m = point(sweep, l).mean_lambda2;
    monotone = monotone && m >= prev;
    prev = m;
    series += (series.empty() ? "" : ",") + fmt("%.6f", m);
  }
  v.require(monotone, "mean lambda2 non-decreasing over 40,60,80,100 (" + series + ")");
  return v;
}

Verdict fiedler_magnitude(const std::vector<SweepPoint>& sweep) {
  Verdict v;
  const double m = point(sweep, 100.0).mean_lambda2;
  v.require(m >= kFiedlerLo && m <= kFiedlerHi, fmt("L=100 mean lambda2 %.6f in [%.3f, %.3f]", m, kFiedlerLo, kFiedlerHi));
  return v;
}

Verdict failure_resilience(const std::vector<SweepPoint>& sweep, double dt) {
  Verdict v;
  const auto& half = point(sweep, 0.5);
  int drops = 0;
  bool connected_after = false;
  for (const auto& rep : half.replicates) {
    if (!rep.failures.empty() && rep.failures.front().coverage_after < rep.failures.front().coverage_before) ++drops;
    connected_after = connected_after || rep.final_sample().lambda2 != 0.0;
  }
  v.require(drops == static_cast<int>(half.replicates.size()),
            fmt("50%%: R_c drops at injection in %g/%g runs", drops, half.replicates.size()));
  v.require(half.mean_coverage >= kHalfFailureRecoveryMin,
            fmt("50%%: mean final R_c %.4f >= %.2f", half.mean_coverage, kHalfFailureRecoveryMin));
  v.require(!connected_after, "50%: final lambda2 = 0 in every run");

  const auto& tenth = point(sweep, 0.1);
  double rise = 0.0;
  for (const auto& rep : tenth.replicates) rise += post_dip_rise(rep, dt);
  rise /= static_cast<double>(tenth.replicates.size());
  v.require(tenth.mean_coverage >= kTenthFailureCoverageMin,
            fmt("10%%: mean final R_c %.4f >= %.2f", tenth.mean_coverage, kTenthFailureCoverageMin));
  v.require(rise >= kTenthFailureRiseMin, fmt("10%%: mean post-dip rise %.4f >= %.2f", rise, kTenthFailureRiseMin));
  return v;
}

Verdict property_suite(const ScenarioConfig& nominal, const std::vector<SweepPoint>& failure_sweep) {
  Verdict v;
  auto add = [&v](const char* name, const checks::Result& r) {
    v.require(r.ok, r.ok ? std::string(name) : std::string(name) + " [" + r.detail + "]");
  };
  add("sigma gradient vs finite differences", checks::sigma_gradient_matches_fd(1, 100));
  add("action root and cutoff", checks::action_root_and_cutoff());
  add("Laplacian properties", checks::laplacian_properties(2, 100));
  add("lambda2 vs dense oracle", checks::fiedler_matches_oracle(3, 40, 150));
  add("MST vs brute force", checks::mst_matches_brute_force(4, 50, 7));
  add("assignment vs nearest-in-range", checks::assignment_matches_nearest(5, 500));
  add("assignment rho/eta invariance", checks::assignment_invariant_under_rescaling(6, 100));

  bool absorbing = true;
  std::string why;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    ScenarioConfig c = nominal;
    c.seed = static_cast<std::uint64_t>(seed);
    const auto r = checks::modes_absorbing(run(c, {.record_trajectory = true}).trajectory);
    if (!r.ok && absorbing) why = r.detail;
    absorbing = absorbing && r.ok;
  }
  v.require(absorbing, absorbing ? "modes absorbing" : "modes absorbing [" + why + "]");

  for (double start : {20.5, 22.0, 23.5}) add("two-MAP spacing", checks::two_map_spacing(start));
  add("determinism", checks::run_is_deterministic(nominal));

  bool monotone = true;
  for (const auto& p : failure_sweep) {
    for (const auto& rep : p.replicates) {
      for (const auto& f : rep.failures) monotone = monotone && f.coverage_after <= f.coverage_before;
    }
  }
  v.require(monotone, "failure monotonicity");
  return v;
}

int call_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "mapflock");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream o, e;
  const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), o, e);
  if (out != nullptr) *out = o.str();
  return code;
}

Verdict cli_contract(const fs::path& configs) {
  Verdict v;
  const fs::path dir = fs::temp_directory_path() / "mapflock_acceptance";
  fs::remove_all(dir);
  const std::string nominal = (configs / "nominal.conf").string();
  const std::string failure = (configs / "failure.conf").string();

  v.require(call_cli({"run", nominal, "--out-dir", (dir / "run").string()}) == 0, "run exits 0");
  const auto metrics = read_text_file(dir / "run" / "metrics.csv");
  const auto header = metrics.substr(0, metrics.find('\n'));
  v.require(header == "t,coverage_ratio,fiedler,alive,m0,m1,m2,rg_0,rg_1,rg_2,rg_3", "metrics header bit-exact");
  v.require(std::count(metrics.begin(), metrics.end(), '\n') == 602, "602 metrics lines");
  const auto summary = parse_key_values(read_text_file(dir / "run" / "summary.txt"));
  v.require(std::stod(summary.at("final_coverage_ratio")) >= 0.95, "nominal run final R_c >= 0.95");

  v.require(call_cli({"run", (dir / "run" / "summary.txt").string(), "--out-dir", (dir / "echo").string()}) == 0,
            "run from summary exits 0");
  v.require(read_text_file(dir / "echo" / "metrics.csv") == metrics, "config echo reproduces the run");

  std::string sweep_out;
  v.require(call_cli({"sweep-maps", nominal, "--counts", "40", "--replicates", "1", "--out-dir",
                      (dir / "maps").string()},
                     &sweep_out) == 0,
            "sweep-maps exits 0");
  v.require(parse_key_values(sweep_out)["point_40.mean_final_fiedler"] == "0", "sweep-maps 40 reports lambda2 0");

  v.require(call_cli({"sweep-failure", failure, "--fractions", "0.5", "--at", "18", "--replicates", "1",
                      "--out-dir", (dir / "fail").string()},
                     &sweep_out) == 0,
            "sweep-failure exits 0");
  v.require(parse_key_values(sweep_out)["point_0.5.mean_final_alive"] == "40", "sweep-failure leaves 40 alive");

  v.require(call_cli({"plot", (dir / "run" / "metrics.csv").string(), "--out", (dir / "plot.svg").string(),
                      "--columns", "coverage_ratio"}) == 0,
            "plot exits 0");
  v.require(read_text_file(dir / "plot.svg").find("<polyline") != std::string::npos, "plot has a polyline");
  fs::remove_all(dir);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: mapflock_acceptance <configs-dir>\n";
    return 2;
  }
  const fs::path configs = argv[1];
  const auto nominal = load_config(configs / "nominal.conf");

  ExperimentSpec maps;
  maps.kind = ExperimentSpec::Kind::MapCountSweep;
  maps.base = nominal;
  maps.values = {40, 60, 80, 100};
  maps.seeds = replicate_seeds(1, kSeeds);
  const auto map_sweep = run_sweep(maps, {});

  ExperimentSpec fail;
  fail.kind = ExperimentSpec::Kind::FailureSweep;
  fail.base = load_config(configs / "failure.conf");
  fail.values = {0.1, 0.5};
  fail.failure_time = kFailureTime;
  fail.seeds = replicate_seeds(1, kSeeds);
  const auto failure_sweep = run_sweep(fail, {});

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"nominal coverage", [&] { return nominal_coverage(map_sweep); }},
      {"under-provisioned coverage", [&] { return sparse_coverage(map_sweep, nominal.thresholds.r0); }},
      {"connectivity threshold", [&] { return connectivity_threshold(map_sweep); }},
      {"Fiedler magnitude", [&] { return fiedler_magnitude(map_sweep); }},
      {"failure resilience", [&] { return failure_resilience(failure_sweep, fail.base.dt); }},
      {"property suite", [&] { return property_suite(nominal, failure_sweep); }},
      {"CLI contract", [&] { return cli_contract(configs); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << v.detail << '\n';
  }
  return failed == 0 ? 0 : 1;
}
