#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nsw/experiments.hpp"
#include "nsw/fidelity.hpp"
#include "nsw/graphstate.hpp"
#include "nsw/requests.hpp"
#include "nsw/routing.hpp"
#include "nsw/svg.hpp"
#include "nsw/topology.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

using nlohmann::json;

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + path);
  os << content;
}

// Every output file gets a sibling manifest recording the resolved run
// configuration, enough to reproduce it exactly.
void write_manifest(const std::string& out_path, const std::string& subcommand,
                    const json& config, std::uint64_t seed,
                    const std::vector<std::string>& outputs) {
  json m;
  m["tool"] = "nested-switch";
  m["version"] = kVersion;
  m["subcommand"] = subcommand;
  m["config"] = config;
  m["seed"] = seed;
  m["outputs"] = outputs;
  write_file(out_path + ".manifest.json", m.dump(2) + "\n");
}

void emit(const std::string& out, const std::string& content,
          const std::string& subcommand, const json& config, std::uint64_t seed) {
  if (out.empty() || out == "-") {
    std::cout << content;
  } else {
    write_file(out, content);
    write_manifest(out, subcommand, config, seed, {out});
  }
}

std::string rows_to_json(const std::vector<std::vector<std::pair<std::string, json>>>& rows) {
  json arr = json::array();
  for (const auto& row : rows) {
    json obj;
    for (const auto& [k, v] : row) obj[k] = v;
    arr.push_back(obj);
  }
  return arr.dump(2) + "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Nested quantum switch simulator"};
  app.require_subcommand(1);

  int threads = 0;
  std::string format = "csv";
  app.add_option("--threads", threads, "Worker thread cap (0 = machine parallelism)");
  app.add_option("--format", format, "Output format for sweep tables")
      ->check(CLI::IsMember({"csv", "json"}));

  // topology
  auto* cmd_topology = app.add_subcommand("topology", "Export the nested/hypercube edge list");
  int topo_d = 3;
  std::vector<int> topo_failed;
  std::string topo_out;
  cmd_topology->add_option("--d", topo_d, "Dimension (n = 2^d)")->required();
  cmd_topology->add_option("--fail", topo_failed, "Failed node ids to mask out");
  cmd_topology->add_option("--out", topo_out, "Output path (default stdout)");

  // route
  auto* cmd_route = app.add_subcommand("route", "Route one matching on the hypercube subgraph");
  int route_d = 3, route_r = 2, route_k = 20;
  std::uint64_t route_seed = 0;
  std::string route_matching_file, route_out;
  bool route_random = false;
  std::vector<int> route_failed;
  cmd_route->add_option("--d", route_d, "Dimension")->required();
  cmd_route->add_option("--R", route_r, "Per-edge Bell pair capacity");
  cmd_route->add_option("--k", route_k, "Candidate path budget");
  cmd_route->add_option("--seed", route_seed, "Seed for request order (and --random)");
  cmd_route->add_option("--matching", route_matching_file, "Matching file (one 'u v' per line)");
  cmd_route->add_flag("--random", route_random, "Use a random perfect matching");
  cmd_route->add_option("--fail", route_failed, "Failed node ids");
  cmd_route->add_option("--out", route_out, "Plan JSON output (default stdout)");

  // sweep-failures
  auto* cmd_sweep = app.add_subcommand("sweep-failures", "Served fraction vs failed nodes");
  nsw::ExperimentConfig sweep_cfg;
  std::string sweep_out, sweep_svg;
  cmd_sweep->add_option("--d", sweep_cfg.d, "Dimension")->required();
  cmd_sweep->add_option("--R", sweep_cfg.capacity, "Per-edge capacity");
  cmd_sweep->add_option("--k", sweep_cfg.path_budget, "Candidate path budget");
  cmd_sweep->add_option("--trials", sweep_cfg.trials, "Monte Carlo trials per point");
  cmd_sweep->add_option("--x", sweep_cfg.failure_counts, "Failed-node counts");
  cmd_sweep->add_option("--seed", sweep_cfg.master_seed, "Master seed");
  cmd_sweep->add_option("--out", sweep_out, "CSV/JSON output (default stdout)");
  cmd_sweep->add_option("--svg", sweep_svg, "Optional SVG plot path");

  // edge-load
  auto* cmd_load = app.add_subcommand("edge-load", "Edge load distribution under maximal load");
  nsw::ExperimentConfig load_cfg;
  std::string load_out, load_svg;
  cmd_load->add_option("--d", load_cfg.d, "Dimension")->required();
  cmd_load->add_option("--R", load_cfg.capacity, "Per-edge capacity");
  cmd_load->add_option("--k", load_cfg.path_budget, "Candidate path budget");
  cmd_load->add_option("--trials", load_cfg.trials, "Monte Carlo trials");
  cmd_load->add_option("--seed", load_cfg.master_seed, "Master seed");
  cmd_load->add_option("--out", load_out, "CSV/JSON output (default stdout)");
  cmd_load->add_option("--svg", load_svg, "Optional SVG plot path");

  // max-load-scaling
  auto* cmd_scaling = app.add_subcommand("max-load-scaling", "Required capacity vs network size");
  int scal_dmin = 3, scal_dmax = 10, scal_trials = 50, scal_k = 20;
  std::uint64_t scal_seed = 0;
  std::string scal_out, scal_svg;
  cmd_scaling->add_option("--d-min", scal_dmin, "Smallest dimension");
  cmd_scaling->add_option("--d-max", scal_dmax, "Largest dimension");
  cmd_scaling->add_option("--trials", scal_trials, "Matchings per size");
  cmd_scaling->add_option("--k", scal_k, "Candidate path budget");
  cmd_scaling->add_option("--seed", scal_seed, "Master seed");
  cmd_scaling->add_option("--out", scal_out, "CSV/JSON output (default stdout)");
  cmd_scaling->add_option("--svg", scal_svg, "Optional SVG plot path");

  // graphstate
  auto* cmd_gs = app.add_subcommand("graphstate", "Merged graph-state Bell pair capacity");
  int gs_dmin = 2, gs_dmax = 8, gs_trials = 100;
  std::uint64_t gs_seed = 0;
  std::string gs_out, gs_svg;
  cmd_gs->add_option("--d-min", gs_dmin, "Smallest dimension");
  cmd_gs->add_option("--d-max", gs_dmax, "Largest dimension");
  cmd_gs->add_option("--trials", gs_trials, "Trials per size");
  cmd_gs->add_option("--seed", gs_seed, "Master seed");
  cmd_gs->add_option("--out", gs_out, "CSV/JSON output (default stdout)");
  cmd_gs->add_option("--svg", gs_svg, "Optional SVG plot path");

  // fidelity
  auto* cmd_fid = app.add_subcommand("fidelity", "Werner end-to-end fidelity");
  double fid_p0 = 0.95, fid_pswap = 0.98, fid_t = 0.0, fid_T = 1.0;
  int fid_l = 0, fid_n = 0;
  std::string fid_out, fid_svg;
  cmd_fid->add_option("--p0", fid_p0, "Elementary link depolarizing parameter");
  cmd_fid->add_option("--p-swap", fid_pswap, "Swap depolarizing parameter");
  cmd_fid->add_option("--t", fid_t, "Storage time");
  cmd_fid->add_option("--T", fid_T, "Coherence time");
  cmd_fid->add_option("--L", fid_l, "Evaluate L = 1..L hops");
  cmd_fid->add_option("--n", fid_n, "Evaluate at the typical path length for n nodes");
  cmd_fid->add_option("--out", fid_out, "CSV output (default stdout)");
  cmd_fid->add_option("--svg", fid_svg, "Optional SVG plot path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  if (cmd_topology->parsed()) {
    const auto topo = nsw::Topology::build_nested(topo_d).with_failures(topo_failed);
    std::ostringstream os;
    nsw::write_edge_list(os, topo);
    json cfg{{"d", topo_d}, {"fail", topo_failed}};
    emit(topo_out, os.str(), "topology", cfg, 0);
    return 0;
  }

  if (cmd_route->parsed()) {
    const auto topo = nsw::Topology::build_nested(route_d).with_failures(route_failed);
    nsw::Matching m;
    if (route_random) {
      nsw::Rng rng(nsw::derive_seed(route_seed, 2, 0, 0));
      m = nsw::random_perfect_matching(topo.surviving_nodes(), rng);
    } else if (!route_matching_file.empty()) {
      std::ifstream is(route_matching_file);
      if (!is) throw std::runtime_error("cannot read matching file: " + route_matching_file);
      m = nsw::read_matching(is);
    } else {
      throw CLI::ValidationError("route", "either --matching or --random is required");
    }
    nsw::Rng order_rng(nsw::derive_seed(route_seed, 3, 0, 0));
    const auto plan = nsw::route_matching(topo, m, route_r, route_k, order_rng);
    const auto metrics = nsw::plan_metrics(plan, topo);

    json out;
    out["d"] = route_d;
    out["R"] = route_r;
    out["k"] = route_k;
    out["seed"] = route_seed;
    out["pairs"] = json::array();
    for (const auto& o : plan.outcomes) {
      json p;
      p["u"] = o.endpoints.first;
      p["v"] = o.endpoints.second;
      p["served"] = o.served;
      if (o.served) p["path"] = o.path.nodes;
      out["pairs"].push_back(p);
    }
    json loads = json::array();
    for (const auto& e : topo.hypercube_edges()) {
      if (topo.is_failed(e.a) || topo.is_failed(e.b)) continue;
      const int load = plan.load[static_cast<std::size_t>(topo.hypercube_edge_index(e.a, e.b))];
      if (load > 0) loads.push_back({{"u", e.a}, {"v", e.b}, {"load", load}});
    }
    out["loads"] = loads;
    out["metrics"] = {{"served_fraction", metrics.served_fraction},
                      {"max_edge_load", metrics.max_edge_load}};
    if (metrics.mean_path_length) out["metrics"]["mean_path_length"] = *metrics.mean_path_length;

    json cfg{{"d", route_d}, {"R", route_r}, {"k", route_k}, {"fail", route_failed}};
    emit(route_out, out.dump(2) + "\n", "route", cfg, route_seed);
    // Metrics as a CSV row on stderr-free stdout consumers can split on.
    std::cerr << "served_fraction,mean_path_length,max_edge_load\n"
              << metrics.served_fraction << ","
              << (metrics.mean_path_length ? std::to_string(*metrics.mean_path_length) : "")
              << "," << metrics.max_edge_load << "\n";
    return 0;
  }

  if (cmd_sweep->parsed()) {
    sweep_cfg.threads = threads;
    if (sweep_cfg.failure_counts.empty()) sweep_cfg.failure_counts = {0};
    const auto rows = nsw::failure_sweep(sweep_cfg);
    std::string content;
    if (format == "csv") {
      std::ostringstream os;
      nsw::write_failure_sweep_csv(os, sweep_cfg, rows);
      content = os.str();
    } else {
      std::vector<std::vector<std::pair<std::string, json>>> jr;
      for (const auto& r : rows) {
        jr.push_back({{"x", r.x},
                      {"mean_served", r.served.mean},
                      {"stderr_served", r.served.std_error},
                      {"mean_hops", r.hops.mean},
                      {"stderr_hops", r.hops.std_error},
                      {"M", r.served.samples}});
      }
      content = rows_to_json(jr);
    }
    json cfg{{"d", sweep_cfg.d},      {"R", sweep_cfg.capacity},
             {"k", sweep_cfg.path_budget}, {"trials", sweep_cfg.trials},
             {"x", sweep_cfg.failure_counts}, {"format", format}};
    emit(sweep_out, content, "sweep-failures", cfg, sweep_cfg.master_seed);
    if (!sweep_svg.empty()) {
      nsw::PlotSeries served{"served fraction", "#1f77b4", true, true, false, {}, {}, {}};
      nsw::PlotSeries hops{"mean hops", "#ff7f0e", true, true, false, {}, {}, {}};
      for (const auto& r : rows) {
        served.x.push_back(r.x);
        served.y.push_back(r.served.mean);
        served.y_err.push_back(r.served.std_error);
        hops.x.push_back(r.x);
        hops.y.push_back(r.hops.mean);
        hops.y_err.push_back(r.hops.std_error);
      }
      nsw::PlotSpec spec;
      spec.title = "Served fraction vs failed nodes (n=" +
                   std::to_string(1 << sweep_cfg.d) + ", R=" +
                   std::to_string(sweep_cfg.capacity) + ")";
      spec.x_label = "failed nodes x";
      spec.y_label = "served fraction / hops";
      write_file(sweep_svg, nsw::render_svg(spec, {served, hops}));
    }
    return 0;
  }

  if (cmd_load->parsed()) {
    load_cfg.threads = threads;
    load_cfg.failure_counts = {0};
    const auto rows = nsw::load_distribution(load_cfg);
    std::string content;
    if (format == "csv") {
      std::ostringstream os;
      nsw::write_load_distribution_csv(os, load_cfg, rows);
      content = os.str();
    } else {
      std::vector<std::vector<std::pair<std::string, json>>> jr;
      for (const auto& [load, prob] : rows) {
        jr.push_back({{"load", load}, {"probability", prob}});
      }
      content = rows_to_json(jr);
    }
    json cfg{{"d", load_cfg.d}, {"R", load_cfg.capacity}, {"k", load_cfg.path_budget},
             {"trials", load_cfg.trials}, {"format", format}};
    emit(load_out, content, "edge-load", cfg, load_cfg.master_seed);
    if (!load_svg.empty()) {
      nsw::PlotSeries bars{"probability", "#1f77b4", false, true, false, {}, {}, {}};
      for (const auto& [load, prob] : rows) {
        bars.x.push_back(load);
        bars.y.push_back(prob);
      }
      nsw::PlotSpec spec;
      spec.title = "Edge load distribution (n=" + std::to_string(1 << load_cfg.d) + ")";
      spec.x_label = "edge load";
      spec.y_label = "probability";
      write_file(load_svg, nsw::render_svg(spec, {bars}));
    }
    return 0;
  }

  if (cmd_scaling->parsed()) {
    const auto rows = nsw::scaling_sweep(scal_dmin, scal_dmax, scal_trials, scal_seed,
                                         threads, scal_k);
    std::string content;
    if (format == "csv") {
      std::ostringstream os;
      nsw::write_scaling_csv(os, scal_seed, rows);
      content = os.str();
    } else {
      std::vector<std::vector<std::pair<std::string, json>>> jr;
      for (const auto& r : rows) {
        jr.push_back({{"n", r.n},
                      {"mean_max_load", r.mean_required},
                      {"worst_max_load", r.worst_required},
                      {"trials", r.trials}});
      }
      content = rows_to_json(jr);
    }
    json cfg{{"d_min", scal_dmin}, {"d_max", scal_dmax}, {"trials", scal_trials},
             {"k", scal_k}, {"format", format}};
    emit(scal_out, content, "max-load-scaling", cfg, scal_seed);
    if (!scal_svg.empty()) {
      nsw::PlotSeries mean{"mean R_req", "#1f77b4", true, true, false, {}, {}, {}};
      nsw::PlotSeries worst{"worst R_req", "#d62728", false, true, false, {}, {}, {}};
      for (const auto& r : rows) {
        mean.x.push_back(r.n);
        mean.y.push_back(r.mean_required);
        worst.x.push_back(r.n);
        worst.y.push_back(r.worst_required);
      }
      nsw::PlotSpec spec;
      spec.title = "Required per-link capacity vs network size";
      spec.x_label = "n";
      spec.y_label = "R_req";
      spec.log_x = true;
      write_file(scal_svg, nsw::render_svg(spec, {mean, worst}));
    }
    return 0;
  }

  if (cmd_gs->parsed()) {
    const auto rows = nsw::capacity_sweep(gs_dmin, gs_dmax, gs_trials, gs_seed);
    std::string content;
    if (format == "csv") {
      std::ostringstream os;
      os << "# graphstate d=[" << gs_dmin << "," << gs_dmax << "] trials=" << gs_trials
         << " seed=" << gs_seed << "\n";
      os << "n,mean_S,stderr,n_over_log2\n";
      char buf[128];
      for (const auto& r : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f\n", r.n, r.mean_pairs,
                      r.std_error, r.theoretical);
        os << buf;
      }
      content = os.str();
    } else {
      std::vector<std::vector<std::pair<std::string, json>>> jr;
      for (const auto& r : rows) {
        jr.push_back({{"n", r.n},
                      {"mean_S", r.mean_pairs},
                      {"stderr", r.std_error},
                      {"n_over_log2", r.theoretical}});
      }
      content = rows_to_json(jr);
    }
    json cfg{{"d_min", gs_dmin}, {"d_max", gs_dmax}, {"trials", gs_trials},
             {"format", format}};
    emit(gs_out, content, "graphstate", cfg, gs_seed);
    if (!gs_svg.empty()) {
      nsw::PlotSeries sim{"simulation", "#d62728", false, true, false, {}, {}, {}};
      nsw::PlotSeries theory{"n/log^2 n", "#555555", true, false, true, {}, {}, {}};
      for (const auto& r : rows) {
        sim.x.push_back(r.n);
        sim.y.push_back(r.mean_pairs);
        sim.y_err.push_back(r.std_error);
        theory.x.push_back(r.n);
        theory.y.push_back(r.theoretical);
      }
      nsw::PlotSpec spec;
      spec.title = "Merged graph-state Bell pair capacity";
      spec.x_label = "n";
      spec.y_label = "simultaneous Bell pairs S";
      spec.log_x = true;
      write_file(gs_svg, nsw::render_svg(spec, {sim, theory}));
    }
    return 0;
  }

  if (cmd_fid->parsed()) {
    nsw::WernerParams params;
    params.p0 = fid_p0;
    params.p_swap = fid_pswap;
    params.t = fid_t;
    params.T = fid_T;
    params.validate();
    int l_max;
    if (fid_n > 0) {
      l_max = nsw::fidelity_vs_network_size(params, fid_n).hops;
    } else {
      l_max = fid_l > 0 ? fid_l : 4;
    }
    std::ostringstream os;
    os << "# fidelity p0=" << fid_p0 << " p_swap=" << fid_pswap << " t=" << fid_t
       << " T=" << fid_T << "\n";
    os << "L,p_L,F_L\n";
    std::vector<double> xs, ys;
    char buf[128];
    for (int l = 1; l <= l_max; ++l) {
      const auto r = nsw::end_to_end(params, l);
      std::snprintf(buf, sizeof(buf), "%d,%.12f,%.12f\n", l, r.p, r.fidelity);
      os << buf;
      xs.push_back(l);
      ys.push_back(r.fidelity);
    }
    json cfg{{"p0", fid_p0}, {"p_swap", fid_pswap}, {"t", fid_t}, {"T", fid_T},
             {"L", l_max}, {"n", fid_n}};
    emit(fid_out, os.str(), "fidelity", cfg, 0);
    if (!fid_svg.empty()) {
      nsw::PlotSeries curve{"F_L", "#1f77b4", true, true, false, xs, ys, {}};
      nsw::PlotSpec spec;
      spec.title = "End-to-end fidelity";
      spec.x_label = "hops L";
      spec.y_label = "F_L";
      write_file(fid_svg, nsw::render_svg(spec, {curve}));
    }
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
