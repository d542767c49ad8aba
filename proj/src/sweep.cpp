#include "gcsim/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include <json.hpp>

#include "gcsim/engine.hpp"

namespace gcsim {

std::vector<SweepPoint> expand_sweep(const ExperimentConfig& experiment) {
  const SweepSpec& s = experiment.sweep;
  std::vector<SweepPoint> points;
  for (double ber : s.bers)
    for (TrafficPattern traffic : s.traffics)
      for (FabricKind topology : s.topologies)
        for (std::uint32_t i = 0; i < s.seeds; ++i) {
          SweepPoint p;
          p.ber = ber;
          p.traffic = traffic;
          p.topology = topology;
          p.seed = experiment.network.seed + i;
          p.config = experiment.network;
          p.config.attack.ber = ber;
          p.config.traffic.pattern = traffic;
          p.config.fabric = topology;
          p.config.seed = p.seed;
          points.push_back(std::move(p));
        }
  return points;
}

SweepRow make_row(const SweepPoint& point, const MetricsReport& report) {
  SweepRow row;
  row.ber = point.ber;
  row.traffic = point.traffic;
  row.topology = point.topology;
  row.seed = point.seed;
  row.config_hash = config_hash(point.config);
  row.gat = report.gat;
  row.throughput_per_ip = report.throughput_per_ip;
  row.gad = report.gad;
  row.energy_total = report.energy.total;
  row.retx_count = static_cast<double>(report.retransmissions);
  row.alarms = static_cast<double>(report.alarms.size());
  if (report.detection_window) row.detection_window = static_cast<double>(*report.detection_window);
  return row;
}

namespace {

auto key_of(const SweepRow& r) { return std::make_tuple(r.ber, r.traffic, r.topology); }

/// Mean over the rows that have a value; absent when none do.
std::optional<double> mean_present(const std::vector<std::optional<double>>& values) {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& v : values)
    if (v) {
      sum += *v;
      ++n;
    }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

std::vector<SweepRow> average_rows(const std::vector<SweepRow>& rows) {
  std::map<std::tuple<double, TrafficPattern, FabricKind>, std::vector<const SweepRow*>> groups;
  for (const auto& r : rows)
    if (r.seed) groups[key_of(r)].push_back(&r);

  std::vector<SweepRow> out;
  for (const auto& [key, members] : groups) {
    SweepRow avg;
    avg.ber = std::get<0>(key);
    avg.traffic = std::get<1>(key);
    avg.topology = std::get<2>(key);
    avg.config_hash = members.front()->config_hash;
    const double n = static_cast<double>(members.size());
    std::vector<std::optional<double>> gads, windows;
    for (const SweepRow* m : members) {
      avg.gat += m->gat / n;
      avg.throughput_per_ip += m->throughput_per_ip / n;
      avg.energy_total += m->energy_total / n;
      avg.retx_count += m->retx_count / n;
      avg.alarms += m->alarms / n;
      gads.push_back(m->gad);
      windows.push_back(m->detection_window);
    }
    avg.gad = mean_present(gads);
    avg.detection_window = mean_present(windows);
    out.push_back(std::move(avg));
  }
  return out;
}

SweepResult run_points(std::vector<SweepPoint> points, unsigned jobs, bool with_averages) {
  std::vector<MetricsReport> reports(points.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = points.size();

  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        reports[i] = run(points[i].config);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  if (error) {
    const SweepPoint& p = points[error_index];
    std::string what = "unknown error";
    try {
      std::rethrow_exception(error);
    } catch (const std::exception& e) {
      what = e.what();
    } catch (...) {
    }
    throw std::runtime_error("sweep point ber=" + format_number(p.ber) +
                             " traffic=" + std::string(to_string(p.traffic)) +
                             " topology=" + std::string(topology_name(p.topology)) +
                             " seed=" + std::to_string(p.seed) + " failed: " + what);
  }

  SweepResult result;
  std::vector<std::size_t> order(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = points[a];
    const auto& y = points[b];
    return std::tie(x.ber, x.traffic, x.topology, x.seed) <
           std::tie(y.ber, y.traffic, y.topology, y.seed);
  });
  for (std::size_t i : order) {
    result.rows.push_back(make_row(points[i], reports[i]));
    result.points.push_back(std::move(points[i]));
    result.reports.push_back(std::move(reports[i]));
  }
  if (with_averages) {
    auto averaged = average_rows(result.rows);
    result.rows.insert(result.rows.end(), averaged.begin(), averaged.end());
  }
  return result;
}

SweepResult run_sweep(const ExperimentConfig& experiment, unsigned jobs) {
  return run_points(expand_sweep(experiment), jobs, true);
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_number(r.ber) << ',' << to_string(r.traffic) << ',' << topology_name(r.topology)
        << ',' << (r.seed ? std::to_string(*r.seed) : std::string("mean")) << ','
        << r.config_hash << ',' << format_number(r.gat) << ',' << format_number(r.throughput_per_ip)
        << ',' << opt(r.gad) << ',' << format_number(r.energy_total) << ','
        << format_number(r.retx_count) << ',' << format_number(r.alarms) << ','
        << opt(r.detection_window) << '\n';
  }
  return out.str();
}

std::string alarms_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "ber,traffic,topology,seed,config_hash,link,window,estimated_ber,cycle\n";
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const SweepPoint& p = result.points[i];
    for (const Alarm& a : result.reports[i].alarms) {
      out << format_number(p.ber) << ',' << to_string(p.traffic) << ','
          << topology_name(p.topology) << ',' << p.seed << ',' << config_hash(p.config) << ','
          << to_string(a.link) << ',' << a.window << ',' << format_number(a.estimated_ber) << ','
          << a.raised_cycle << '\n';
    }
  }
  return out.str();
}

namespace {

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json report_json(const MetricsReport& r) {
  nlohmann::ordered_json j;
  j["gat"] = r.gat;
  j["gat_per_node_sum"] = r.gat_per_node_sum;
  j["throughput_per_ip"] = r.throughput_per_ip;
  j["gad"] = opt_json(r.gad);
  j["energy"] = {{"router", r.energy.router},
                 {"electrical_link", r.energy.electrical_link},
                 {"conversion", r.energy.conversion},
                 {"optical_link", r.energy.optical_link},
                 {"total", r.energy.total}};
  auto links = nlohmann::ordered_json::array();
  for (const auto& l : r.links)
    links.push_back({{"link", to_string(l.link)},
                     {"crossings", l.crossings},
                     {"failures", l.failures},
                     {"retransmission_fraction", l.retransmission_fraction}});
  j["links"] = std::move(links);
  j["injected"] = r.injected;
  j["delivered"] = r.delivered;
  j["retransmissions"] = r.retransmissions;
  auto alarms = nlohmann::ordered_json::array();
  for (const auto& a : r.alarms)
    alarms.push_back({{"link", to_string(a.link)},
                      {"window", a.window},
                      {"estimated_ber", a.estimated_ber},
                      {"cycle", a.raised_cycle}});
  j["alarms"] = std::move(alarms);
  j["detection_window"] = r.detection_window ? nlohmann::ordered_json(*r.detection_window)
                                             : nlohmann::ordered_json(nullptr);
  j["gat_after_alarm"] = opt_json(r.gat_after_alarm);
  j["mitigation_failures"] = r.mitigation_failures;
  j["conservation"] = {{"injected", r.conservation.injected},
                       {"delivered", r.conservation.delivered},
                       {"in_flight", r.conservation.in_flight},
                       {"retained", r.conservation.retained}};
  return j;
}

}  // namespace

std::string to_json(const SweepResult& result, const ExperimentConfig& experiment) {
  nlohmann::ordered_json root;
  root["config"] = serialize_config(experiment);
  auto runs = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < result.points.size(); ++i) {
    const SweepPoint& p = result.points[i];
    nlohmann::ordered_json run;
    run["ber"] = p.ber;
    run["traffic"] = to_string(p.traffic);
    run["topology"] = topology_name(p.topology);
    run["seed"] = p.seed;
    run["config_hash"] = config_hash(p.config);
    run["report"] = report_json(result.reports[i]);
    runs.push_back(std::move(run));
  }
  root["runs"] = std::move(runs);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : result.rows) {
    rows.push_back({{"ber", r.ber},
                    {"traffic", to_string(r.traffic)},
                    {"topology", topology_name(r.topology)},
                    {"seed", r.seed ? nlohmann::ordered_json(*r.seed) : nlohmann::ordered_json("mean")},
                    {"config_hash", r.config_hash},
                    {"gat", r.gat},
                    {"throughput_per_ip", r.throughput_per_ip},
                    {"gad", opt_json(r.gad)},
                    {"energy_total", r.energy_total},
                    {"retx_count", r.retx_count},
                    {"alarms", r.alarms},
                    {"detection_window", opt_json(r.detection_window)}});
  }
  root["rows"] = std::move(rows);
  return root.dump(2) + "\n";
}

}  // namespace gcsim
