#include "gcsim/config.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace gcsim {

namespace {

constexpr std::array<std::string_view, 4> kFabricNames = {"direct", "butterfly", "omega", "baseline"};
constexpr std::array<std::string_view, 4> kTopologyNames = {"mesh", "butterfly", "omega", "baseline"};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

/// Thrown by value parsers; the caller adds key and line.
struct BadValue {
  std::string reason;
};

std::uint64_t to_u64(std::string_view s) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw BadValue{"expected a non-negative integer"};
  return v;
}

std::uint32_t to_u32(std::string_view s) {
  const std::uint64_t v = to_u64(s);
  if (v > 0xffffffffu) throw BadValue{"integer too large"};
  return static_cast<std::uint32_t>(v);
}

std::uint32_t to_positive(std::string_view s) {
  const std::uint32_t v = to_u32(s);
  if (v == 0) throw BadValue{"must be at least 1"};
  return v;
}

double to_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw BadValue{"expected a number"};
  return v;
}

double to_unit(std::string_view s) {
  const double v = to_double(s);
  if (!(v >= 0 && v <= 1)) throw BadValue{"out of range [0,1]"};
  return v;
}

double to_non_negative(std::string_view s) {
  const double v = to_double(s);
  if (!(v >= 0)) throw BadValue{"must be non-negative"};
  return v;
}

bool to_bool(std::string_view s) {
  if (s == "true" || s == "yes" || s == "1") return true;
  if (s == "false" || s == "no" || s == "0") return false;
  throw BadValue{"expected true or false"};
}

std::vector<NodeId> to_node_list(std::string_view s) {
  std::vector<NodeId> out;
  for (auto item : split(s, ',')) out.push_back(to_u32(item));
  return out;
}

std::string join_nodes(const std::vector<NodeId>& nodes) {
  std::string out;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(nodes[i]);
  }
  return out;
}

template <typename Enum, std::size_t N>
Enum to_enum(std::string_view s, const std::array<std::string_view, N>& names) {
  for (std::size_t i = 0; i < N; ++i)
    if (s == names[i]) return static_cast<Enum>(i);
  std::string expected;
  for (std::size_t i = 0; i < N; ++i) expected += (i ? "|" : "") + std::string(names[i]);
  throw BadValue{"expected one of " + expected};
}

// Cluster layout halves; both must be given together.
struct PendingLayout {
  std::optional<std::vector<std::vector<NodeId>>> clusters;
  std::optional<std::vector<NodeId>> attach;
};

struct ParseState : ExperimentConfig {
  PendingLayout pending;
};

struct Key {
  std::string_view name;
  std::function<void(ParseState&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

const std::vector<Key>& keys() {
  using C = ExperimentConfig;
  using S = ParseState;
  using SV = std::string_view;
  static const std::vector<Key> table = {
      {"topology.kind",
       [](S&, SV v) {
         if (v != "mesh") throw BadValue{"only mesh is supported"};
       },
       [](const C&) { return std::string("mesh"); }},
      {"topology.width", [](S& c, SV v) { c.network.topology.width = to_u32(v); },
       [](const C& c) { return std::to_string(c.network.topology.width); }},
      {"topology.height", [](S& c, SV v) { c.network.topology.height = to_u32(v); },
       [](const C& c) { return std::to_string(c.network.topology.height); }},
      {"topology.clusters",
       [](S& c, SV v) {
         if (v == "default") return;
         std::vector<std::vector<NodeId>> clusters;
         for (auto group : split(v, ';')) clusters.push_back(to_node_list(group));
         c.pending.clusters = std::move(clusters);
       },
       [](const C& c) {
         if (!c.network.topology.layout) return std::string("default");
         std::string out;
         for (const auto& group : c.network.topology.layout->clusters) {
           if (!out.empty()) out += "; ";
           out += join_nodes(group);
         }
         return out;
       }},
      {"topology.hub_attach",
       [](S& c, SV v) {
         if (v == "default") return;
         c.pending.attach = to_node_list(v);
       },
       [](const C& c) {
         if (!c.network.topology.layout) return std::string("default");
         return join_nodes(c.network.topology.layout->hub_attach);
       }},
      {"fabric.kind", [](S& c, SV v) { c.network.fabric = to_enum<FabricKind>(v, kFabricNames); },
       [](const C& c) { return std::string(to_string(c.network.fabric)); }},
      {"traffic.pattern",
       [](S& c, SV v) {
         auto p = parse_traffic(v);
         if (!p) throw BadValue{"expected random|bitreversal|shuffle|hotspot"};
         c.network.traffic.pattern = *p;
       },
       [](const C& c) { return std::string(to_string(c.network.traffic.pattern)); }},
      {"traffic.injection_rate", [](S& c, SV v) { c.network.traffic.injection_rate = to_unit(v); },
       [](const C& c) { return format_number(c.network.traffic.injection_rate); }},
      {"traffic.hotspot_node", [](S& c, SV v) { c.network.traffic.hotspot_node = to_u32(v); },
       [](const C& c) { return std::to_string(c.network.traffic.hotspot_node); }},
      {"traffic.hotspot_fraction",
       [](S& c, SV v) { c.network.traffic.hotspot_fraction = to_unit(v); },
       [](const C& c) { return format_number(c.network.traffic.hotspot_fraction); }},
      {"attack.enabled", [](S& c, SV v) { c.network.attack.enabled = to_bool(v); },
       [](const C& c) { return std::string(c.network.attack.enabled ? "true" : "false"); }},
      {"attack.hub",
       [](S& c, SV v) {
         if (!v.empty() && v.front() == 'H') v.remove_prefix(1);
         c.network.attack.malicious_hub = to_u32(v);
       },
       [](const C& c) { return "H" + std::to_string(c.network.attack.malicious_hub); }},
      {"attack.links",
       [](S& c, SV v) {
         c.network.attack.links.clear();
         if (v.empty() || v == "none") return;
         for (auto item : split(v, ',')) {
           auto id = parse_link_id(item);
           if (!id || !id->optical()) throw BadValue{"'" + std::string(item) + "' is not an optical link"};
           c.network.attack.links.push_back(*id);
         }
       },
       [](const C& c) {
         if (c.network.attack.links.empty()) return std::string("none");
         std::string out;
         for (const auto& l : c.network.attack.links) out += (out.empty() ? "" : ", ") + to_string(l);
         return out;
       }},
      {"attack.ber", [](S& c, SV v) { c.network.attack.ber = to_unit(v); },
       [](const C& c) { return format_number(c.network.attack.ber); }},
      {"attack.channel", [](S& c, SV v) { c.network.attack.channel = to_u32(v); },
       [](const C& c) { return std::to_string(c.network.attack.channel); }},
      {"attack.decay", [](S& c, SV v) { c.network.attack.decay = to_non_negative(v); },
       [](const C& c) { return format_number(c.network.attack.decay); }},
      {"attack.floor_ber", [](S& c, SV v) { c.network.attack.floor_ber = to_unit(v); },
       [](const C& c) { return format_number(c.network.attack.floor_ber); }},
      {"optical.channels", [](S& c, SV v) { c.network.channels = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.channels); }},
      {"defense.detector",
       [](S& c, SV v) {
         auto m = parse_detector(v);
         if (!m) throw BadValue{"expected off|threshold|pilot"};
         c.network.detector.mode = *m;
       },
       [](const C& c) { return std::string(to_string(c.network.detector.mode)); }},
      {"defense.window", [](S& c, SV v) { c.network.detector.window = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.detector.window); }},
      {"defense.threshold",
       [](S& c, SV v) {
         const double t = to_double(v);
         if (!(t > 0 && t < 1)) throw BadValue{"out of range (0,1)"};
         c.network.detector.threshold = t;
       },
       [](const C& c) { return format_number(c.network.detector.threshold); }},
      {"defense.mitigation",
       [](S& c, SV v) {
         auto a = parse_mitigation(v);
         if (!a) throw BadValue{"expected none|reroute-electrical|reroute-fabric|wavelength-shift"};
         c.network.mitigation.action = *a;
       },
       [](const C& c) { return std::string(to_string(c.network.mitigation.action)); }},
      {"defense.probe_period", [](S& c, SV v) { c.network.detector.probe_period = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.detector.probe_period); }},
      {"defense.shift_probes",
       [](S& c, SV v) { c.network.mitigation.probes_per_channel = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.mitigation.probes_per_channel); }},
      {"packet.flit_bits", [](S& c, SV v) { c.network.flit_bits = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.flit_bits); }},
      {"packet.flits", [](S& c, SV v) { c.network.packet_flits = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.packet_flits); }},
      {"router.buffer_depth", [](S& c, SV v) { c.network.buffer_depth = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.buffer_depth); }},
      {"hub.queue_packets", [](S& c, SV v) { c.network.hub_queue_packets = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.hub_queue_packets); }},
      {"timing.router_latency", [](S& c, SV v) { c.network.timing.router_latency = to_u32(v); },
       [](const C& c) { return std::to_string(c.network.timing.router_latency); }},
      {"timing.link_latency", [](S& c, SV v) { c.network.timing.link_latency = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.timing.link_latency); }},
      {"timing.optical_latency",
       [](S& c, SV v) { c.network.timing.optical_latency = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.timing.optical_latency); }},
      {"timing.ack_latency", [](S& c, SV v) { c.network.timing.ack_latency = to_u32(v); },
       [](const C& c) { return std::to_string(c.network.timing.ack_latency); }},
      {"sim.cycles", [](S& c, SV v) { c.network.cycles = to_positive(v); },
       [](const C& c) { return std::to_string(c.network.cycles); }},
      {"sim.warmup", [](S& c, SV v) { c.network.warmup = to_u64(v); },
       [](const C& c) { return std::to_string(c.network.warmup); }},
      {"sim.drain", [](S& c, SV v) { c.network.drain = to_u64(v); },
       [](const C& c) { return std::to_string(c.network.drain); }},
      {"sim.seed", [](S& c, SV v) { c.network.seed = to_u64(v); },
       [](const C& c) { return std::to_string(c.network.seed); }},
      {"energy.router", [](S& c, SV v) { c.network.energy.router = to_non_negative(v); },
       [](const C& c) { return format_number(c.network.energy.router); }},
      {"energy.electrical_link",
       [](S& c, SV v) { c.network.energy.electrical_link = to_non_negative(v); },
       [](const C& c) { return format_number(c.network.energy.electrical_link); }},
      {"energy.conversion", [](S& c, SV v) { c.network.energy.conversion = to_non_negative(v); },
       [](const C& c) { return format_number(c.network.energy.conversion); }},
      {"energy.optical_link", [](S& c, SV v) { c.network.energy.optical_link = to_non_negative(v); },
       [](const C& c) { return format_number(c.network.energy.optical_link); }},
      {"routing.electrical_fallback",
       [](S& c, SV v) { c.network.electrical_fallback = to_bool(v); },
       [](const C& c) { return std::string(c.network.electrical_fallback ? "true" : "false"); }},
      {"sweep.bers",
       [](S& c, SV v) {
         std::vector<double> bers;
         for (auto item : split(v, ',')) bers.push_back(to_unit(item));
         for (std::size_t i = 1; i < bers.size(); ++i)
           if (!(bers[i] > bers[i - 1])) throw BadValue{"BER grid must be strictly increasing"};
         c.sweep.bers = std::move(bers);
       },
       [](const C& c) {
         std::string out;
         for (double b : c.sweep.bers) out += (out.empty() ? "" : ", ") + format_number(b);
         return out;
       }},
      {"sweep.traffics",
       [](S& c, SV v) {
         c.sweep.traffics.clear();
         for (auto item : split(v, ',')) {
           auto p = parse_traffic(item);
           if (!p) throw BadValue{"unknown traffic '" + std::string(item) + "'"};
           c.sweep.traffics.push_back(*p);
         }
       },
       [](const C& c) {
         std::string out;
         for (auto t : c.sweep.traffics) out += (out.empty() ? "" : ", ") + std::string(to_string(t));
         return out;
       }},
      {"sweep.topologies",
       [](S& c, SV v) {
         c.sweep.topologies.clear();
         for (auto item : split(v, ',')) {
           auto k = parse_topology_name(item);
           if (!k) throw BadValue{"unknown topology '" + std::string(item) + "'"};
           c.sweep.topologies.push_back(*k);
         }
       },
       [](const C& c) {
         std::string out;
         for (auto k : c.sweep.topologies)
           out += (out.empty() ? "" : ", ") + std::string(topology_name(k));
         return out;
       }},
      {"sweep.seeds", [](S& c, SV v) { c.sweep.seeds = to_positive(v); },
       [](const C& c) { return std::to_string(c.sweep.seeds); }},
  };
  return table;
}

std::string serialize_keys(const ExperimentConfig& config, bool include_sweep) {
  std::string out;
  for (const Key& k : keys()) {
    if (!include_sweep && k.name.substr(0, 6) == "sweep.") continue;
    out += std::string(k.name) + ": " + k.get(config) + "\n";
  }
  return out;
}

}  // namespace

std::string_view to_string(FabricKind k) { return kFabricNames[static_cast<std::size_t>(k)]; }

std::optional<FabricKind> parse_fabric(std::string_view name) {
  for (std::size_t i = 0; i < kFabricNames.size(); ++i)
    if (name == kFabricNames[i]) return static_cast<FabricKind>(i);
  return std::nullopt;
}

std::string_view topology_name(FabricKind k) { return kTopologyNames[static_cast<std::size_t>(k)]; }

std::optional<FabricKind> parse_topology_name(std::string_view name) {
  for (std::size_t i = 0; i < kTopologyNames.size(); ++i)
    if (name == kTopologyNames[i]) return static_cast<FabricKind>(i);
  return parse_fabric(name);
}

ClusterLayout TopologyConfig::resolved_layout() const {
  return layout ? *layout : default_cluster_layout(width, height);
}

std::string format_number(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), ptr);
}

ExperimentConfig parse_config(std::string_view text) {
  ParseState state;
  PendingLayout& pending = state.pending;

  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  std::optional<int> clusters_line, attach_line;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    std::string_view line = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key: value'");
    const std::string_view key = trim(line.substr(0, colon));
    const std::string_view value = trim(line.substr(colon + 1));

    const Key* match = nullptr;
    for (const Key& k : keys())
      if (k.name == key) match = &k;
    if (!match)
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    if (auto it = seen.find(key); it != seen.end())
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) +
                        "' already set on line " + std::to_string(it->second));
    seen.emplace(std::string(key), line_no);
    if (key == "topology.clusters") clusters_line = line_no;
    if (key == "topology.hub_attach") attach_line = line_no;

    try {
      match->set(state, value);
    } catch (const BadValue& bad) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) +
                        "': value '" + std::string(value) + "' " + bad.reason);
    }
  }

  if (pending.clusters.has_value() != pending.attach.has_value()) {
    const bool missing_attach = pending.clusters.has_value();
    throw ConfigError("line " + std::to_string(missing_attach ? *clusters_line : *attach_line) +
                      ": key '" + (missing_attach ? "topology.clusters" : "topology.hub_attach") +
                      "' needs '" + (missing_attach ? "topology.hub_attach" : "topology.clusters") +
                      "' as well");
  }
  ExperimentConfig config = static_cast<ExperimentConfig&&>(std::move(state));
  if (pending.clusters)
    config.network.topology.layout = ClusterLayout{*pending.clusters, *pending.attach};

  auto problems = validate(config.network);
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) {
      const std::string key = p.substr(0, p.find(':'));
      const auto it = seen.find(key);
      msg += "\n  ";
      msg += it != seen.end() ? "line " + std::to_string(it->second) : std::string("default");
      msg += ": key '" + key + "'" + p.substr(key.size());
    }
    throw ConfigError(msg);
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  try {
    return parse_config(text.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& config) { return serialize_keys(config, true); }

std::string config_hash(const NetworkConfig& config) {
  ExperimentConfig wrapper{config, {}};
  const std::string text = serialize_keys(wrapper, false);
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace gcsim
