#include <cmath>
#include <sstream>

#include "doctest.h"
#include "nsw/experiments.hpp"

using nsw::AggregateStats;
using nsw::ExperimentConfig;
using nsw::Topology;

TEST_CASE("aggregate") {
  SUBCASE("constant samples") {
    const AggregateStats s = nsw::aggregate({1.0, 1.0, 1.0});
    CHECK(s.mean == 1.0);
    CHECK(s.std_error == 0.0);
    CHECK(s.samples == 3);
  }
  SUBCASE("two-point spread") {
    const AggregateStats s = nsw::aggregate({0.0, 1.0});
    CHECK(s.mean == doctest::Approx(0.5));
    // sample std of {0,1} is sqrt(0.5), over sqrt(2) gives 0.5
    CHECK(s.std_error == doctest::Approx(0.5));
  }
  SUBCASE("single sample has zero error by convention") {
    const AggregateStats s = nsw::aggregate({0.7});
    CHECK(s.mean == doctest::Approx(0.7));
    CHECK(s.std_error == 0.0);
  }
  SUBCASE("empty input") {
    CHECK_THROWS_AS(nsw::aggregate({}), std::domain_error);
  }
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.d = 4;
  cfg.failure_counts = {0, 15};
  cfg.validate();
  cfg.failure_counts = {16};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.failure_counts = {-1};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("trials are reproducible from (config, x, index)") {
  const Topology base = Topology::build_nested(5);
  ExperimentConfig cfg;
  cfg.d = 5;
  cfg.capacity = 1;
  cfg.trials = 4;
  cfg.master_seed = 99;
  for (int x : {0, 5}) {
    for (int i = 0; i < 4; ++i) {
      const auto a = nsw::run_trial(base, cfg, x, i);
      const auto b = nsw::run_trial(base, cfg, x, i);
      CHECK(a.failed == b.failed);
      CHECK(a.matching == b.matching);
      CHECK(a.metrics.served_fraction == b.metrics.served_fraction);
      CHECK(static_cast<int>(a.failed.size()) == x);
    }
  }
}

TEST_CASE("failure and matching draws use separate streams") {
  const Topology base = Topology::build_nested(5);
  ExperimentConfig a, b;
  a.d = b.d = 5;
  a.master_seed = b.master_seed = 7;
  const auto ra = nsw::run_trial(base, a, 4, 0);
  // Same trial at a different x draws a different failure set but the
  // streams stay independent per (x, index) pair.
  const auto rb = nsw::run_trial(base, b, 4, 0);
  CHECK(ra.failed == rb.failed);
  CHECK(ra.matching == rb.matching);
}

TEST_CASE("failure sweep output is identical across worker counts") {
  ExperimentConfig cfg;
  cfg.d = 5;
  cfg.capacity = 1;
  cfg.trials = 24;
  cfg.failure_counts = {0, 4};
  cfg.master_seed = 2024;

  cfg.threads = 1;
  const auto rows1 = nsw::failure_sweep(cfg);
  cfg.threads = 4;
  const auto rows4 = nsw::failure_sweep(cfg);
  REQUIRE(rows1.size() == rows4.size());

  std::ostringstream os1, os4;
  nsw::write_failure_sweep_csv(os1, cfg, rows1);
  nsw::write_failure_sweep_csv(os4, cfg, rows4);
  CHECK(os1.str() == os4.str());

  for (const auto& row : rows1) {
    CHECK(row.served.mean >= 0.0);
    CHECK(row.served.mean <= 1.0);
    CHECK(row.served.std_error <= 1.0 / std::sqrt(static_cast<double>(cfg.trials)));
    CHECK(row.served.samples == cfg.trials);
  }
}

TEST_CASE("load distribution is a probability distribution") {
  ExperimentConfig cfg;
  cfg.d = 4;
  cfg.capacity = 2;
  cfg.trials = 10;
  cfg.master_seed = 3;
  const auto rows = nsw::load_distribution(cfg);
  double total = 0.0;
  for (const auto& [load, prob] : rows) {
    CHECK(load >= 0);
    CHECK(load <= cfg.capacity);
    CHECK(prob >= 0.0);
    total += prob;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("scaling sweep basics") {
  const auto rows = nsw::scaling_sweep(3, 4, 10, 11, /*threads=*/2);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 8);
  CHECK(rows[1].n == 16);
  for (const auto& row : rows) {
    CHECK(row.mean_required >= 1.0);  // nonempty requests always load some edge
    CHECK(row.worst_required >= 1);
    CHECK(row.trials == 10);
  }
  // Determinism across worker counts.
  const auto again = nsw::scaling_sweep(3, 4, 10, 11, /*threads=*/1);
  std::ostringstream a, b;
  nsw::write_scaling_csv(a, 11, rows);
  nsw::write_scaling_csv(b, 11, again);
  CHECK(a.str() == b.str());
}

TEST_CASE("csv headers carry the configuration comment") {
  ExperimentConfig cfg;
  cfg.d = 4;
  cfg.trials = 2;
  std::ostringstream os;
  nsw::write_failure_sweep_csv(os, cfg, nsw::failure_sweep(cfg));
  const std::string text = os.str();
  CHECK(text.rfind("# failure-sweep", 0) == 0);
  CHECK(text.find("x,mean_served,stderr_served,mean_hops,stderr_hops,M") !=
        std::string::npos);
}
