// gcsim: run one simulation or a BER sweep and write the result files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "gcsim/config.hpp"
#include "gcsim/sweep.hpp"

namespace fs = std::filesystem;
using namespace gcsim;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid electrical/optical NoC simulator with gain-competition attacks"};

  std::string config_path;
  bool sweep = false;
  std::optional<double> ber;
  std::optional<std::string> traffic;
  std::optional<std::string> topology;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> cycles;
  std::optional<std::string> detect;
  std::optional<std::string> mitigate;
  std::string out_dir = ".";
  std::string format = "both";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());

  app.add_option("--config", config_path, "Config file (key: value lines)")->check(CLI::ExistingFile);
  app.add_flag("--sweep", sweep, "Run the ber x traffic x topology x seed grid");
  app.add_option("--ber", ber, "Attack BER (restricts the sweep grid to this value)");
  app.add_option("--traffic", traffic, "random|bitreversal|shuffle|hotspot");
  app.add_option("--topology", topology, "mesh|butterfly|omega|baseline");
  app.add_option("--seed", seed, "Base seed");
  app.add_option("--cycles", cycles, "Simulated cycles including warmup");
  app.add_option("--detect", detect, "Enable detection: threshold (default) or pilot")
      ->expected(0, 1)
      ->default_str("threshold");
  app.add_option("--mitigate", mitigate, "reroute-electrical|reroute-fabric|wavelength-shift|none");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--format", format, "csv|json|both")->check(CLI::IsMember({"csv", "json", "both"}));
  app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig experiment = config_path.empty() ? parse_config("") : load_config(config_path);
    NetworkConfig& net = experiment.network;
    SweepSpec& grid = experiment.sweep;

    if (ber) {
      if (*ber < 0 || *ber > 1) throw ConfigError("--ber: value out of range [0,1]");
      net.attack.ber = *ber;
      grid.bers = {*ber};
    }
    if (traffic) {
      auto t = parse_traffic(*traffic);
      if (!t) throw ConfigError("--traffic: unknown pattern '" + *traffic + "'");
      net.traffic.pattern = *t;
      grid.traffics = {*t};
    }
    if (topology) {
      auto f = parse_topology_name(*topology);
      if (!f) throw ConfigError("--topology: unknown topology '" + *topology + "'");
      net.fabric = *f;
      grid.topologies = {*f};
    }
    if (seed) net.seed = *seed;
    if (cycles) net.cycles = *cycles;
    if (detect) {
      std::string mode = detect->empty() ? "threshold" : *detect;
      auto d = parse_detector(mode);
      if (!d) throw ConfigError("--detect: unknown detector '" + mode + "'");
      net.detector.mode = *d;
    }
    if (mitigate) {
      auto m = parse_mitigation(*mitigate);
      if (!m) throw ConfigError("--mitigate: unknown action '" + *mitigate + "'");
      net.mitigation.action = *m;
      if (*m != MitigationAction::None && net.detector.mode == DetectorMode::Off)
        net.detector.mode = DetectorMode::RetxThreshold;
    }
    if (!sweep) grid.seeds = 1;

    // Re-parse the resolved text so overrides get the same validation as files.
    const std::string resolved = serialize_config(experiment);
    experiment = parse_config(resolved);

    SweepResult result;
    if (sweep) {
      result = run_sweep(experiment, jobs);
    } else {
      SweepPoint point;
      point.ber = experiment.network.attack.ber;
      point.traffic = experiment.network.traffic.pattern;
      point.topology = experiment.network.fabric;
      point.seed = experiment.network.seed;
      point.config = experiment.network;
      result = run_points({point}, 1, false);
    }

    const fs::path dir(out_dir);
    fs::create_directories(dir);
    write_file(dir / "config.resolved", resolved);
    if (format != "json") write_file(dir / "results.csv", to_csv(result.rows));
    if (format != "csv") write_file(dir / "results.json", to_json(result, experiment));
    write_file(dir / "alarms.csv", alarms_csv(result));

    if (!sweep) {
      const SweepRow& row = result.rows.front();
      std::printf("gat %.6g flits/cycle, gad %s cycles, energy %.6g uJ, retransmissions %.0f, alarms %.0f\n",
                  row.gat, row.gad ? format_number(*row.gad).c_str() : "n/a", row.energy_total,
                  row.retx_count, row.alarms);
    } else {
      std::printf("%zu runs, %zu rows written to %s\n", result.points.size(), result.rows.size(),
                  dir.string().c_str());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
