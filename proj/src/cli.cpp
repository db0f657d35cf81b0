#include "signed_louvain/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "signed_louvain/csv.hpp"
#include "signed_louvain/graph.hpp"
#include "signed_louvain/metrics.hpp"
#include "signed_louvain/ssbm.hpp"

namespace signed_louvain::cli {

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

unsigned default_jobs() {
  if (const char* env = std::getenv("SIGNED_LOUVAIN_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(0..count-1) on up to `jobs` threads. Callers write results into
/// preallocated slots so output order never depends on scheduling.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string network_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

/// Writes to `--out` when given, otherwise to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

csv::Table versioned_table(std::vector<std::string> header) {
  csv::Table table;
  table.comments.push_back(" schema=" + std::to_string(csv::kSchemaVersion));
  table.rows.push_back(std::move(header));
  return table;
}

// detect --------------------------------------------------------------------

struct DetectOptions {
  std::string input;
  std::string engine = "signed";
  std::optional<unsigned> dpos, dneg;
  double gamma_pos = 1.0;
  double gamma_neg = 1.0;
  std::uint64_t seed = 0;
  int runs = 1;
  std::string out;
  std::string format = "csv";
  unsigned jobs = 1;
};

int run_detect(const DetectOptions& opt, std::ostream& out, std::ostream& err) {
  EngineConfig config;
  if (opt.engine == "hop") {
    config = EngineConfig::hop(opt.dpos.value_or(1), opt.dneg.value_or(2));
  } else {
    if (opt.dpos || opt.dneg) throw UsageError("--dpos/--dneg require --engine hop");
    config = engine_from_name(opt.engine);
  }
  config.resolution = {opt.gamma_pos, opt.gamma_neg};
  if (opt.runs < 1) throw UsageError("--runs must be at least 1");
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  const LoadedGraph loaded = load_edge_list_file(opt.input);
  std::vector<RunReport> reports(static_cast<std::size_t>(opt.runs));
  parallel_for(reports.size(), opt.jobs, [&](std::size_t r) {
    EngineConfig run_config = config;
    run_config.seed = opt.seed + r;
    reports[r] = optimize(loaded.graph, run_config);
  });

  std::size_t best = 0;
  double q_sum = 0.0, time_sum = 0.0;
  for (std::size_t r = 0; r < reports.size(); ++r) {
    q_sum += reports[r].modularity;
    time_sum += reports[r].wall_time_seconds;
    if (reports[r].modularity > reports[best].modularity) best = r;
  }
  const double runs = static_cast<double>(reports.size());
  const RunReport& chosen = reports[best];

  err << "engine=" << chosen.engine << '\n'
      << "runs=" << reports.size() << '\n'
      << "q_mean=" << csv::format_number(q_sum / runs) << '\n'
      << "q_best=" << csv::format_number(chosen.modularity) << '\n'
      << "wall_time_mean=" << csv::format_number(time_sum / runs) << '\n'
      << "levels=" << chosen.levels << '\n'
      << "best_seed=" << chosen.seed << '\n';

  Sink sink(opt.out, out);
  const auto& labels = loaded.labels.labels();
  if (opt.format == "json") {
    nlohmann::ordered_json doc;
    doc["schema"] = csv::kSchemaVersion;
    doc["engine"] = chosen.engine;
    doc["seed"] = chosen.seed;
    doc["modularity"] = chosen.modularity;
    doc["q_mean"] = q_sum / runs;
    doc["wall_time_mean"] = time_sum / runs;
    doc["levels"] = chosen.levels;
    nlohmann::ordered_json partition = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < labels.size(); ++i) partition[labels[i]] = chosen.partition[i];
    doc["partition"] = std::move(partition);
    sink.stream() << doc.dump(2) << '\n';
  } else {
    csv::Table table = versioned_table({"node", "community"});
    for (std::size_t i = 0; i < labels.size(); ++i) {
      table.rows.push_back({labels[i], std::to_string(chosen.partition[i])});
    }
    csv::write(sink.stream(), table);
  }
  return kOk;
}

// sweep ---------------------------------------------------------------------

struct SweepOptions {
  std::string sizes = "30,20,10";
  double grid_max = 0.8;
  double grid_step = 0.1;
  int seeds_per_cell = 10;
  std::string engines = "classic,relaxed,signed";
  std::uint64_t seed = 0;
  std::string out;
  unsigned jobs = 1;
};

std::vector<double> grid_values(double max, double step) {
  if (!(step > 0.0) || !(max >= 0.0) || max > 1.0) throw UsageError("grid needs 0 < step and 0 <= max <= 1");
  const auto count = static_cast<std::size_t>(std::floor(max / step + 1e-9)) + 1;
  std::vector<double> out;
  for (std::size_t k = 0; k < count; ++k) out.push_back(std::round(static_cast<double>(k) * step * 1e9) / 1e9);
  return out;
}

int run_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err) {
  const auto engine_names = split_list(opt.engines);
  if (engine_names.empty()) throw UsageError("--engines must name at least one engine");
  std::vector<EngineConfig> engines;
  for (const auto& name : engine_names) {
    try {
      engines.push_back(engine_from_name(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  std::vector<std::size_t> sizes;
  for (const auto& s : split_list(opt.sizes)) {
    try {
      sizes.push_back(std::stoul(s));
    } catch (const std::exception&) {
      throw UsageError("bad block size `" + s + "`");
    }
  }
  if (opt.seeds_per_cell < 1) throw UsageError("--seeds-per-cell must be at least 1");
  const auto grid = grid_values(opt.grid_max, opt.grid_step);
  SsbmSpec probe{sizes, 0.0, 0.0, 0};
  try {
    probe.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  struct Sample {
    std::vector<double> nmi;
    std::vector<bool> empty;
  };
  const std::size_t cells = grid.size() * grid.size();
  const auto seeds = static_cast<std::size_t>(opt.seeds_per_cell);
  std::vector<Sample> samples(cells * seeds);
  parallel_for(samples.size(), opt.jobs, [&](std::size_t task) {
    const std::size_t cell = task / seeds, s = task % seeds;
    const std::size_t a = cell / grid.size(), b = cell % grid.size();
    const std::uint64_t seed = mix_seed(opt.seed, a, b, s);
    const auto instance = generate_ssbm({sizes, grid[a], grid[b], seed});
    auto& sample = samples[task];
    for (const auto& engine : engines) {
      EngineConfig config = engine;
      config.seed = seed;
      try {
        const auto report = optimize(instance.graph, config);
        sample.nmi.push_back(nmi(report.partition, instance.planted));
        sample.empty.push_back(false);
      } catch (const EmptyNetworkError&) {
        sample.nmi.push_back(0.0);
        sample.empty.push_back(true);
      }
    }
  });

  csv::Table table = versioned_table({"p_in", "p_out", "engine", "mean_nmi", "seeds", "empty_runs", "status"});
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const std::size_t a = cell / grid.size(), b = cell % grid.size();
    for (std::size_t e = 0; e < engines.size(); ++e) {
      double total = 0.0;
      std::size_t empty = 0;
      for (std::size_t s = 0; s < seeds; ++s) {
        const auto& sample = samples[cell * seeds + s];
        total += sample.nmi[e];
        if (sample.empty[e]) ++empty;
      }
      const char* status = empty == 0 ? "ok" : (empty == seeds ? "empty_network" : "partial_empty");
      table.rows.push_back({csv::format_number(grid[a]), csv::format_number(grid[b]), engine_names[e],
                            csv::format_number(total / static_cast<double>(seeds)), std::to_string(seeds),
                            std::to_string(empty), status});
    }
  }
  Sink sink(opt.out, out);
  csv::write(sink.stream(), table);
  err << "cells=" << cells << " engines=" << engines.size() << " seeds_per_cell=" << seeds << '\n';
  return kOk;
}

// bench ---------------------------------------------------------------------

struct BenchOptions {
  std::vector<std::string> inputs;
  std::string engines = "L,RL,SLd,SLe";
  int runs = 10;
  std::uint64_t seed = 0;
  std::string out;
  unsigned jobs = 1;
};

int run_bench(const BenchOptions& opt, std::ostream& out, std::ostream& err) {
  const auto engine_names = split_list(opt.engines);
  if (engine_names.empty()) throw UsageError("--engines must name at least one engine");
  std::vector<EngineConfig> engines;
  for (const auto& name : engine_names) {
    try {
      engines.push_back(engine_from_name(name));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (opt.runs < 1) throw UsageError("--runs must be at least 1");
  const auto runs = static_cast<std::size_t>(opt.runs);

  int status = kOk;
  struct Network {
    std::string name;
    SignedGraph graph;
  };
  std::vector<Network> networks;
  for (const auto& path : opt.inputs) {
    try {
      networks.push_back({network_name(path), load_edge_list_file(path).graph});
      if (!(networks.back().graph.total_weight() > 0.0)) {
        err << "error: " << path << ": empty network\n";
        networks.pop_back();
        status = kFailure;
      }
    } catch (const std::exception& e) {
      err << "error: " << path << ": " << e.what() << '\n';
      status = kFailure;
    }
  }

  // Every run rebuilds its own candidate structures; nothing is shared
  // between runs except the immutable input graph.
  std::vector<RunReport> reports(networks.size() * engines.size() * runs);
  parallel_for(reports.size(), opt.jobs, [&](std::size_t task) {
    const std::size_t r = task % runs;
    const std::size_t e = (task / runs) % engines.size();
    const std::size_t g = task / (runs * engines.size());
    EngineConfig config = engines[e];
    config.seed = opt.seed + r;
    reports[task] = optimize(networks[g].graph, config);
  });

  csv::Table table = versioned_table({"network", "engine", "run", "q", "wall_time_seconds"});
  for (std::size_t g = 0; g < networks.size(); ++g) {
    for (std::size_t e = 0; e < engines.size(); ++e) {
      double q = 0.0, t = 0.0;
      for (std::size_t r = 0; r < runs; ++r) {
        const auto& rep = reports[(g * engines.size() + e) * runs + r];
        q += rep.modularity;
        t += rep.wall_time_seconds;
        table.rows.push_back({networks[g].name, engine_names[e], std::to_string(r), csv::format_number(rep.modularity),
                              csv::format_number(rep.wall_time_seconds)});
      }
      const double k = static_cast<double>(runs);
      table.rows.push_back({networks[g].name, engine_names[e], "mean", csv::format_number(q / k),
                            csv::format_number(t / k)});
    }
  }
  Sink sink(opt.out, out);
  csv::write(sink.stream(), table);
  return status;
}

// stats ---------------------------------------------------------------------

struct StatsOptions {
  std::vector<std::string> inputs;
  std::string format = "text";
  std::string out;
};

int run_stats(const StatsOptions& opt, std::ostream& out, std::ostream& err) {
  int status = kOk;
  std::vector<std::pair<std::string, GraphStats>> rows;
  for (const auto& path : opt.inputs) {
    try {
      rows.emplace_back(network_name(path), graph_stats(load_edge_list_file(path).graph));
    } catch (const std::exception& e) {
      err << "error: " << path << ": " << e.what() << '\n';
      status = kFailure;
    }
  }

  Sink sink(opt.out, out);
  auto& os = sink.stream();
  if (opt.format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& [name, s] : rows) {
      doc.push_back({{"network", name},
                     {"nodes", s.nodes},
                     {"edges", s.edges},
                     {"pos_share", s.pos_share},
                     {"density", s.density},
                     {"avg_distance", s.avg_distance},
                     {"diameter", s.diameter}});
    }
    os << doc.dump(2) << '\n';
  } else if (opt.format == "csv") {
    csv::Table table =
        versioned_table({"network", "nodes", "edges", "pos_share", "density", "avg_distance", "diameter"});
    for (const auto& [name, s] : rows) {
      table.rows.push_back({name, std::to_string(s.nodes), std::to_string(s.edges), csv::format_number(s.pos_share),
                            csv::format_number(s.density), csv::format_number(s.avg_distance),
                            std::to_string(s.diameter)});
    }
    csv::write(os, table);
  } else {
    os << std::left << std::setw(20) << "network" << std::right << std::setw(10) << "nodes" << std::setw(18)
       << "edges (+%)" << std::setw(12) << "density" << std::setw(10) << "avg dist" << std::setw(10) << "diameter"
       << '\n';
    for (const auto& [name, s] : rows) {
      std::ostringstream edges;
      edges << s.edges << " (" << std::lround(100.0 * s.pos_share) << "%)";
      os << std::left << std::setw(20) << name << std::right << std::setw(10) << s.nodes << std::setw(18)
         << edges.str() << std::setw(12) << std::setprecision(3) << s.density << std::setw(10)
         << std::setprecision(3) << s.avg_distance << std::setw(10) << s.diameter << '\n';
    }
  }
  return status;
}

}  // namespace

EngineConfig engine_from_name(std::string_view name) {
  if (name == "classic" || name == "L") return EngineConfig::classic();
  if (name == "relaxed" || name == "RL") return EngineConfig::relaxed();
  if (name == "signed" || name == "SLd") return EngineConfig::signed_default();
  if (name == "signed-ext" || name == "SLe") return EngineConfig::signed_extended();
  throw std::invalid_argument("unknown engine `" + std::string(name) + "`");
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Community detection on signed networks", "signed-louvain"};
  app.require_subcommand(1);
  const unsigned jobs_default = default_jobs();

  DetectOptions detect;
  unsigned dpos = 0, dneg = 0;
  auto* detect_cmd = app.add_subcommand("detect", "Detect communities in an edge list");
  detect_cmd->add_option("--input", detect.input, "Edge list path")->required()->check(CLI::ExistingFile);
  detect_cmd->add_option("--engine", detect.engine, "classic|relaxed|signed|signed-ext|hop")
      ->check(CLI::IsMember({"classic", "relaxed", "signed", "signed-ext", "hop", "L", "RL", "SLd", "SLe"}));
  auto* dpos_opt = detect_cmd->add_option("--dpos", dpos, "Positive hop radius (hop engine)")->check(CLI::PositiveNumber);
  auto* dneg_opt = detect_cmd->add_option("--dneg", dneg, "Negative hop radius (hop engine)")->check(CLI::PositiveNumber);
  detect_cmd->add_option("--gamma-pos", detect.gamma_pos, "Positive resolution")->check(CLI::NonNegativeNumber);
  detect_cmd->add_option("--gamma-neg", detect.gamma_neg, "Negative resolution")->check(CLI::NonNegativeNumber);
  detect_cmd->add_option("--seed", detect.seed, "Seed of the first run");
  detect_cmd->add_option("--runs", detect.runs, "Independent runs; the best partition is written");
  detect_cmd->add_option("--out", detect.out, "Partition output path (default: stdout)");
  detect_cmd->add_option("--format", detect.format)->check(CLI::IsMember({"csv", "json"}));
  detect_cmd->add_option("--jobs", detect.jobs, "Concurrent runs")->default_val(jobs_default);

  SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "NMI recovery sweep over an SSBM (p_in, p_out) grid");
  sweep_cmd->add_option("--sizes", sweep.sizes, "Comma-separated block sizes");
  sweep_cmd->add_option("--grid-max", sweep.grid_max);
  sweep_cmd->add_option("--grid-step", sweep.grid_step);
  sweep_cmd->add_option("--seeds-per-cell", sweep.seeds_per_cell);
  sweep_cmd->add_option("--engines", sweep.engines, "Comma-separated engine names");
  sweep_cmd->add_option("--seed", sweep.seed);
  sweep_cmd->add_option("--out", sweep.out);
  sweep_cmd->add_option("--jobs", sweep.jobs)->default_val(jobs_default);

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Modularity and wall time over repeated runs");
  bench_cmd->add_option("--inputs", bench.inputs, "Edge list paths")->required();
  bench_cmd->add_option("--engines", bench.engines, "Comma-separated engines (L,RL,SLd,SLe)");
  bench_cmd->add_option("--runs", bench.runs);
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_option("--out", bench.out);
  bench_cmd->add_option("--jobs", bench.jobs)->default_val(jobs_default);

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "Structural statistics of edge lists");
  stats_cmd->add_option("--inputs", stats.inputs, "Edge list paths")->required();
  stats_cmd->add_option("--format", stats.format)->check(CLI::IsMember({"csv", "json", "text"}));
  stats_cmd->add_option("--out", stats.out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*detect_cmd) {
      if (dpos_opt->count() > 0) detect.dpos = dpos;
      if (dneg_opt->count() > 0) detect.dneg = dneg;
      return run_detect(detect, out, err);
    }
    if (*sweep_cmd) return run_sweep(sweep, out, err);
    if (*bench_cmd) return run_bench(bench, out, err);
    if (*stats_cmd) return run_stats(stats, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace signed_louvain::cli
