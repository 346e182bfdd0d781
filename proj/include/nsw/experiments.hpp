#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "nsw/requests.hpp"
#include "nsw/routing.hpp"
#include "nsw/topology.hpp"

namespace nsw {

struct ExperimentConfig {
  int d = 7;
  int capacity = 2;        // R
  int path_budget = 20;    // k
  int trials = 500;        // M
  std::vector<int> failure_counts{0};
  std::uint64_t master_seed = 0;
  int threads = 0;         // 0 = hardware concurrency

  void validate() const;
};

struct AggregateStats {
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
};

// Mean and standard error (sample std / sqrt(M)); a single sample reports
// error 0.
AggregateStats aggregate(const std::vector<double>& samples);

struct TrialRecord {
  std::uint64_t failure_seed = 0;
  std::uint64_t matching_seed = 0;
  std::uint64_t order_seed = 0;
  std::vector<NodeId> failed;
  Matching matching;
  PlanMetrics metrics;
};

// One Monte Carlo trial: draw x failed nodes, a random perfect matching on
// the survivors, route, measure. Failure/matching/order randomness come
// from separate streams derived from (master_seed, x, trial).
TrialRecord run_trial(const Topology& base, const ExperimentConfig& cfg, int x,
                      int trial);

struct FailureSweepRow {
  int x = 0;
  AggregateStats served;
  AggregateStats hops;  // over trials that served at least one pair
};

// Served fraction and mean path length vs. failed-node count.
std::vector<FailureSweepRow> failure_sweep(const ExperimentConfig& cfg);

// Edge-load probability distribution under maximal load, no failures.
std::vector<std::pair<int, double>> load_distribution(const ExperimentConfig& cfg);

struct ScalingRow {
  int n = 0;
  double mean_required = 0.0;  // mean R_req over trials
  int worst_required = 0;
  int trials = 0;
};

// Per-link capacity demanded by full random matchings routed with unbounded
// capacity: each pair takes, among its k candidate paths, the one whose
// bottleneck edge load after placement is smallest (earliest candidate on
// ties). A trial's R_req is the maximum edge load of the finished plan.
std::vector<ScalingRow> scaling_sweep(int d_min, int d_max, int trials,
                                      std::uint64_t seed, int threads = 0,
                                      int path_budget = 20);

// CSV emission (deterministic byte output; first line is a '#' comment
// recording the configuration and master seed).
void write_failure_sweep_csv(std::ostream& os, const ExperimentConfig& cfg,
                             const std::vector<FailureSweepRow>& rows);
void write_load_distribution_csv(std::ostream& os, const ExperimentConfig& cfg,
                                 const std::vector<std::pair<int, double>>& rows);
void write_scaling_csv(std::ostream& os, std::uint64_t seed,
                       const std::vector<ScalingRow>& rows);

}  // namespace nsw
