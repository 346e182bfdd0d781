#include "nsw/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace nsw {

namespace {

// Runs fn(0..count-1) across workers; results land in index order, so the
// output is independent of scheduling and worker count.
template <class T, class Fn>
std::vector<T> run_indexed(int count, int threads, Fn&& fn) {
  std::vector<T> results(static_cast<std::size_t>(count));
  int workers = threads > 0 ? threads
                            : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) results[static_cast<std::size_t>(i)] = fn(i);
    return results;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) break;
        results[static_cast<std::size_t>(i)] = fn(i);
      }
    });
  }
  for (auto& th : pool) th.join();
  return results;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

constexpr std::uint64_t kFailureStream = 1;
constexpr std::uint64_t kMatchingStream = 2;
constexpr std::uint64_t kOrderStream = 3;
constexpr std::uint64_t kScalingStream = 4;

}  // namespace

void ExperimentConfig::validate() const {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (capacity < 1) throw std::invalid_argument("R must be >= 1");
  if (path_budget < 1) throw std::invalid_argument("k must be >= 1");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const int n = 1 << d;
  for (int x : failure_counts) {
    if (x < 0 || x >= n) throw std::invalid_argument("failure count must be in [0, n)");
  }
}

AggregateStats aggregate(const std::vector<double>& samples) {
  if (samples.empty()) throw std::domain_error("no samples to aggregate");
  const int m = static_cast<int>(samples.size());
  double sum = 0.0;
  for (double s : samples) sum += s;
  const double mean = sum / m;
  if (m == 1) return {mean, 0.0, 1};
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double sample_std = std::sqrt(ss / (m - 1));
  return {mean, sample_std / std::sqrt(static_cast<double>(m)), m};
}

TrialRecord run_trial(const Topology& base, const ExperimentConfig& cfg, int x,
                      int trial) {
  TrialRecord rec;
  rec.failure_seed = derive_seed(cfg.master_seed, kFailureStream,
                                 static_cast<std::uint64_t>(x),
                                 static_cast<std::uint64_t>(trial));
  rec.matching_seed = derive_seed(cfg.master_seed, kMatchingStream,
                                  static_cast<std::uint64_t>(x),
                                  static_cast<std::uint64_t>(trial));
  rec.order_seed = derive_seed(cfg.master_seed, kOrderStream,
                               static_cast<std::uint64_t>(x),
                               static_cast<std::uint64_t>(trial));

  if (x > 0) {
    Rng failure_rng(rec.failure_seed);
    std::vector<NodeId> nodes(static_cast<std::size_t>(base.node_count()));
    for (int z = 0; z < base.node_count(); ++z) nodes[static_cast<std::size_t>(z)] = z;
    failure_rng.shuffle(nodes);
    rec.failed.assign(nodes.begin(), nodes.begin() + x);
    std::sort(rec.failed.begin(), rec.failed.end());
  }
  const Topology damaged = base.with_failures(rec.failed);

  Rng matching_rng(rec.matching_seed);
  rec.matching = random_perfect_matching(damaged.surviving_nodes(), matching_rng);

  Rng order_rng(rec.order_seed);
  const RoutePlan plan =
      route_matching(damaged, rec.matching, cfg.capacity, cfg.path_budget, order_rng);
  rec.metrics = plan_metrics(plan, damaged);
  return rec;
}

std::vector<FailureSweepRow> failure_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  const Topology base = Topology::build_nested(cfg.d);
  std::vector<FailureSweepRow> rows;
  for (int x : cfg.failure_counts) {
    auto records = run_indexed<TrialRecord>(
        cfg.trials, cfg.threads,
        [&](int trial) { return run_trial(base, cfg, x, trial); });
    std::vector<double> served;
    std::vector<double> hops;
    for (const TrialRecord& rec : records) {
      served.push_back(rec.metrics.served_fraction);
      if (rec.metrics.mean_path_length) hops.push_back(*rec.metrics.mean_path_length);
    }
    FailureSweepRow row;
    row.x = x;
    row.served = aggregate(served);
    row.hops = hops.empty() ? AggregateStats{0.0, 0.0, 0} : aggregate(hops);
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::pair<int, double>> load_distribution(const ExperimentConfig& cfg) {
  cfg.validate();
  const Topology base = Topology::build_nested(cfg.d);
  auto records = run_indexed<TrialRecord>(
      cfg.trials, cfg.threads,
      [&](int trial) { return run_trial(base, cfg, /*x=*/0, trial); });
  std::map<int, long long> counts;
  long long total = 0;
  for (const TrialRecord& rec : records) {
    for (const auto& [load, count] : rec.metrics.load_histogram) {
      counts[load] += count;
      total += count;
    }
  }
  std::vector<std::pair<int, double>> out;
  for (const auto& [load, count] : counts) {
    out.emplace_back(load, static_cast<double>(count) / static_cast<double>(total));
  }
  return out;
}

std::vector<ScalingRow> scaling_sweep(int d_min, int d_max, int trials,
                                      std::uint64_t seed, int threads,
                                      int path_budget) {
  if (d_min < 1 || d_max < d_min) throw std::invalid_argument("bad dimension range");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::vector<ScalingRow> rows;
  for (int d = d_min; d <= d_max; ++d) {
    const Topology base = Topology::build_nested(d);
    auto required = run_indexed<int>(trials, threads, [&](int trial) {
      Rng matching_rng(derive_seed(seed, kScalingStream,
                                   static_cast<std::uint64_t>(d),
                                   static_cast<std::uint64_t>(trial)));
      const Matching m = random_perfect_matching(base.surviving_nodes(), matching_rng);
      Rng order_rng(derive_seed(seed, kOrderStream, static_cast<std::uint64_t>(d),
                                static_cast<std::uint64_t>(trial)));
      std::vector<std::pair<NodeId, NodeId>> order = m.pairs;
      order_rng.shuffle(order);

      std::vector<int> load(static_cast<std::size_t>(base.hypercube_edge_count()), 0);
      std::vector<int> rank(static_cast<std::size_t>(base.node_count()));
      int max_load = 0;
      for (const auto& [u, v] : order) {
        std::iota(rank.begin(), rank.end(), 0);
        order_rng.shuffle(rank);
        PathEnumerator en(base, u, v, rank);
        Path best;
        int best_bottleneck = 0;
        for (int i = 0; i < path_budget; ++i) {
          auto p = en.next();
          if (!p) break;
          int bottleneck = 0;
          for (std::size_t j = 0; j + 1 < p->nodes.size(); ++j) {
            const int e = base.hypercube_edge_index(p->nodes[j], p->nodes[j + 1]);
            bottleneck = std::max(bottleneck, load[static_cast<std::size_t>(e)] + 1);
          }
          if (best.nodes.empty() || bottleneck < best_bottleneck) {
            best_bottleneck = bottleneck;
            best = std::move(*p);
          }
          if (best_bottleneck == 1) break;  // cannot improve
        }
        for (std::size_t j = 0; j + 1 < best.nodes.size(); ++j) {
          const int e = base.hypercube_edge_index(best.nodes[j], best.nodes[j + 1]);
          ++load[static_cast<std::size_t>(e)];
        }
        max_load = std::max(max_load, best_bottleneck);
      }
      return max_load;
    });
    ScalingRow row;
    row.n = base.node_count();
    row.trials = trials;
    long long sum = 0;
    for (int r : required) {
      sum += r;
      row.worst_required = std::max(row.worst_required, r);
    }
    row.mean_required = static_cast<double>(sum) / static_cast<double>(trials);
    rows.push_back(row);
  }
  return rows;
}

void write_failure_sweep_csv(std::ostream& os, const ExperimentConfig& cfg,
                             const std::vector<FailureSweepRow>& rows) {
  os << "# failure-sweep d=" << cfg.d << " R=" << cfg.capacity
     << " k=" << cfg.path_budget << " M=" << cfg.trials
     << " seed=" << cfg.master_seed << "\n";
  os << "x,mean_served,stderr_served,mean_hops,stderr_hops,M\n";
  for (const auto& row : rows) {
    os << row.x << "," << format_double(row.served.mean) << ","
       << format_double(row.served.std_error) << "," << format_double(row.hops.mean)
       << "," << format_double(row.hops.std_error) << "," << row.served.samples
       << "\n";
  }
}

void write_load_distribution_csv(std::ostream& os, const ExperimentConfig& cfg,
                                 const std::vector<std::pair<int, double>>& rows) {
  os << "# edge-load d=" << cfg.d << " R=" << cfg.capacity << " k=" << cfg.path_budget
     << " M=" << cfg.trials << " seed=" << cfg.master_seed << "\n";
  os << "load,probability\n";
  for (const auto& [load, prob] : rows) {
    os << load << "," << format_double(prob) << "\n";
  }
}

void write_scaling_csv(std::ostream& os, std::uint64_t seed,
                       const std::vector<ScalingRow>& rows) {
  os << "# max-load-scaling seed=" << seed << "\n";
  os << "n,mean_max_load,worst_max_load,trials\n";
  for (const auto& row : rows) {
    os << row.n << "," << format_double(row.mean_required) << "," << row.worst_required
       << "," << row.trials << "\n";
  }
}

}  // namespace nsw
