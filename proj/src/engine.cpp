#include "gcsim/engine.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <set>

#include "gcsim/defense.hpp"
#include "gcsim/optical.hpp"
#include "gcsim/rng.hpp"
#include "gcsim/traffic.hpp"

namespace gcsim {

namespace {

struct Flit {
  PacketId packet = 0;
  std::uint32_t seq = 0;
};

struct BufferedFlit {
  Flit flit;
  Cycle ready = 0;
};

/// Fixed-capacity FIFO.
template <typename T>
class Ring {
 public:
  explicit Ring(std::size_t capacity = 0) : data_(capacity) {}
  std::size_t size() const { return count_; }
  std::size_t capacity() const { return data_.size(); }
  bool empty() const { return count_ == 0; }
  bool full() const { return count_ == data_.size(); }
  T& front() { return data_[head_]; }
  const T& at(std::size_t i) const { return data_[(head_ + i) % data_.size()]; }
  void push(const T& v) {
    data_[(head_ + count_) % data_.size()] = v;
    ++count_;
  }
  void pop() {
    head_ = (head_ + 1) % data_.size();
    --count_;
  }

 private:
  std::vector<T> data_;
  std::size_t head_ = 0;
  std::size_t count_ = 0;
};

struct InputPort {
  Ring<BufferedFlit> buf;
  int route = -1;  // output port held by the packet at the front
};

struct OutputPort {
  bool exists = false;
  int owner = -1;  // input port holding the output until its tail passes
  std::uint32_t credits = 0;
  int rr = 0;
};

struct Router {
  std::array<InputPort, kPortCount> in;
  std::array<OutputPort, kPortCount> out;
  std::uint32_t flits = 0;
};

struct WheelItem {
  enum class Kind : std::uint8_t { RouterFlit, HubFlit, RouterCredit, HubCredit };
  Kind kind;
  std::uint8_t port = 0;
  std::uint32_t index = 0;
  Flit flit;
};

enum class EntryState : std::uint8_t { Reserved, Assembling, Ready, InFlight, Retrying };

/// A packet (or pilot probe) held by the node that sends on an optical link.
/// The entry stays until a crossing succeeds: it is the retention copy.
struct Entry {
  std::uint64_t token = 0;
  PacketId packet = 0;
  bool probe = false;
  EntryState state = EntryState::Reserved;
  Cycle ready = 0;
  std::uint32_t assembled = 0;
  bool next_reserved = false;
};

struct Crossing {
  std::uint64_t token;
  Cycle completes;
};

struct LinkState {
  std::deque<Entry> queue;
  std::vector<Crossing> in_flight;
  Cycle free_at = 0;
  std::uint32_t channel = 0;
  double failure_probability = 0;
  Rng rng;
  Rng survey_rng;
  std::uint64_t crossings = 0;
  std::uint64_t failures = 0;
  bool mitigated = false;

  std::size_t data_entries() const {
    return static_cast<std::size_t>(
        std::count_if(queue.begin(), queue.end(), [](const Entry& e) { return !e.probe; }));
  }
  Entry* find(std::uint64_t token) {
    for (auto& e : queue)
      if (e.token == token) return &e;
    return nullptr;
  }
  void erase(std::uint64_t token) {
    queue.erase(std::find_if(queue.begin(), queue.end(),
                             [&](const Entry& e) { return e.token == token; }));
  }
};

struct EgressEntry {
  PacketId packet = 0;
  bool ready = false;
  Cycle ready_at = 0;
};

struct HubState {
  Ring<BufferedFlit> ingress;
  std::uint64_t assembling = 0;  // token of the entry being filled
  std::uint32_t assembling_link = 0;
  std::deque<EgressEntry> egress;
  std::uint32_t egress_sent = 0;
  std::uint32_t credits = 0;  // free slots in the attach router's HubLink input
};

struct SourceQueue {
  std::deque<PacketId> packets;
  std::uint32_t next_seq = 0;
};

struct LinkEvent {
  std::uint32_t link;
  bool failed;
  bool probe;
};

constexpr Port kOpposite[kPortCount] = {Port::South, Port::North, Port::West,
                                        Port::East,  Port::Local, Port::HubLink};

}  // namespace

struct Simulator::Impl {
  NetworkConfig config;
  Network net;
  AttackSpec attack;  // links resolved to fabric link ids
  RoutingPolicy policy;
  AvoidSet avoid;
  Detector detector;

  Cycle now = 0;
  bool injection_enabled = true;
  std::uint32_t rtt = 0;
  std::uint32_t hop_delay = 0;

  std::vector<Router> routers;
  std::vector<HubState> hubs;
  std::vector<LinkState> links;
  std::vector<SourceQueue> sources;
  std::vector<Rng> traffic_rng;
  std::vector<std::vector<WheelItem>> wheel;

  std::vector<PacketRecord> packets;
  std::uint64_t next_token = 1;
  std::uint64_t injected_total = 0;
  std::uint64_t delivered_total = 0;

  std::vector<LinkEvent> cycle_events;
  EventLog log;
  bool tracing = false;
  std::vector<OpticalEvent> trace;

  explicit Impl(const NetworkConfig& cfg)
      : config(cfg),
        net(build_network(cfg)),
        detector(cfg.detector, net.fabric.links().size(), cfg.flit_bits, cfg.packet_flits) {
    policy.electrical_fallback = cfg.electrical_fallback;
    policy.allow_relay = false;
    rtt = round_trip_delay(LinkId{}, cfg.timing);
    hop_delay = cfg.timing.router_latency + cfg.timing.link_latency;

    attack = cfg.attack;
    attack.links.clear();
    for (const LinkId& l : cfg.attack.links)
      attack.links.push_back(net.fabric.links()[*net.fabric.find(l)].id);

    const std::uint32_t nodes = net.mesh.node_count();
    routers.resize(nodes);
    for (NodeId n = 0; n < nodes; ++n) {
      Router& r = routers[n];
      for (int p = 0; p < kPortCount; ++p) {
        const auto port = static_cast<Port>(p);
        bool exists = false;
        if (port == Port::Local) exists = true;
        else if (port == Port::HubLink) exists = net.mesh.hub_at(n).has_value();
        else exists = net.mesh.neighbor(n, port).has_value();
        if (!exists) continue;
        r.in[p].buf = Ring<BufferedFlit>(cfg.buffer_depth);
        r.out[p].exists = true;
        r.out[p].credits = cfg.buffer_depth;
      }
    }
    hubs.resize(net.mesh.hub_count());
    for (auto& h : hubs) {
      h.ingress = Ring<BufferedFlit>(cfg.buffer_depth);
      h.credits = cfg.buffer_depth;
    }
    links.resize(net.fabric.links().size());
    for (std::uint32_t i = 0; i < links.size(); ++i) {
      links[i].rng = Rng::substream(cfg.seed, Rng::Domain::Link, i);
      links[i].survey_rng = Rng::substream(cfg.seed, Rng::Domain::Probe, i);
      refresh_probability(i);
    }
    sources.resize(nodes);
    for (NodeId n = 0; n < nodes; ++n)
      traffic_rng.push_back(Rng::substream(cfg.seed, Rng::Domain::Traffic, n));
    wheel.resize(std::max(hop_delay, cfg.timing.link_latency) + 2);

    log.node_count = nodes;
    log.flits_per_node.assign(nodes, 0);
    for (const auto& l : net.fabric.links()) log.links.push_back({l.id, 0, 0});
  }

  bool measuring() const { return now >= config.warmup && now < config.cycles; }

  void refresh_probability(std::uint32_t li) {
    const LinkId& id = net.fabric.links()[li].id;
    links[li].failure_probability = retransmit_probability(
        channel_ber(attack, id, links[li].channel), config.flit_bits, config.packet_flits);
  }

  void schedule(Cycle at, const WheelItem& item) { wheel[at % wheel.size()].push_back(item); }

  void record(OpticalEvent::Kind kind, std::uint32_t link, PacketId packet) {
    if (tracing) trace.push_back({kind, link, packet, now});
  }

  // --- phase 1 -------------------------------------------------------------

  PacketId create_packet(NodeId src, NodeId dst) {
    PacketRecord rec;
    rec.src = src;
    rec.dst = dst;
    rec.created = now;
    auto plan = plan_route(net, src, dst, avoid, policy);
    if (!plan) {
      ++log.mitigation_failures;
      plan = plan_route(net, src, dst, {}, RoutingPolicy{});
    }
    rec.plan = std::move(*plan);
    rec.leg = rec.plan.optical ? Leg::ToSourceHub : Leg::ToDestination;
    rec.path.push_back(PathHop::node(src));
    const auto id = static_cast<PacketId>(packets.size());
    packets.push_back(std::move(rec));
    sources[src].packets.push_back(id);
    ++injected_total;
    if (measuring()) ++log.injected;
    return id;
  }

  void inject_traffic() {
    const std::uint32_t nodes = net.mesh.node_count();
    if (injection_enabled && now < config.cycles) {
      for (NodeId n = 0; n < nodes; ++n) {
        if (!maybe_inject(config.traffic, config.packet_flits, traffic_rng[n])) continue;
        const NodeId dst = pick_destination(config.traffic, n, nodes, traffic_rng[n]);
        if (dst != n) create_packet(n, dst);
      }
    }
    for (NodeId n = 0; n < nodes; ++n) {
      SourceQueue& q = sources[n];
      if (q.packets.empty()) continue;
      InputPort& local = routers[n].in[port_index(Port::Local)];
      if (local.buf.full()) continue;
      local.buf.push({{q.packets.front(), q.next_seq}, now});
      ++routers[n].flits;
      if (++q.next_seq == config.packet_flits) {
        q.packets.pop_front();
        q.next_seq = 0;
      }
    }
  }

  // --- phase 2 -------------------------------------------------------------

  void deliver_wheel() {
    auto& slot = wheel[now % wheel.size()];
    for (const WheelItem& item : slot) {
      switch (item.kind) {
        case WheelItem::Kind::RouterFlit:
          routers[item.index].in[item.port].buf.push({item.flit, now});
          ++routers[item.index].flits;
          break;
        case WheelItem::Kind::HubFlit:
          hubs[item.index].ingress.push({item.flit, now});
          break;
        case WheelItem::Kind::RouterCredit:
          ++routers[item.index].out[item.port].credits;
          break;
        case WheelItem::Kind::HubCredit:
          ++hubs[item.index].credits;
          break;
      }
    }
    slot.clear();
  }

  void return_credit(NodeId n, int in_port) {
    const auto port = static_cast<Port>(in_port);
    if (port == Port::Local) return;
    if (port == Port::HubLink) {
      schedule(now + 1, {WheelItem::Kind::HubCredit, 0, *net.mesh.hub_at(n), {}});
      return;
    }
    const NodeId up = *net.mesh.neighbor(n, port);
    schedule(now + 1, {WheelItem::Kind::RouterCredit,
                       static_cast<std::uint8_t>(port_index(kOpposite[in_port])), up, {}});
  }

  void eject(NodeId n, const Flit& f) {
    PacketRecord& rec = packets[f.packet];
    if (f.seq != rec.flits_delivered) rec.in_order = false;
    ++rec.flits_delivered;
    if (measuring()) {
      ++log.flits_received;
      ++log.flits_per_node[n];
      if (log.first_alarm) ++log.flits_after_alarm;
    }
    if (f.seq + 1 == config.packet_flits) {
      rec.delivered = now;
      ++delivered_total;
      if (measuring())
        log.deliveries.push_back({rec.dst, rec.created, now, rec.retransmissions});
    }
  }

  void advance_router(NodeId n) {
    Router& r = routers[n];
    for (int i = 0; i < kPortCount; ++i) {
      InputPort& in = r.in[i];
      if (in.buf.empty() || in.route >= 0) continue;
      const BufferedFlit& bf = in.buf.front();
      if (bf.flit.seq != 0) continue;
      const PacketRecord& rec = packets[bf.flit.packet];
      in.route = port_index(next_port(net.mesh, n, rec.dst, rec.plan, rec.leg));
    }

    for (int o = 0; o < kPortCount; ++o) {
      OutputPort& out = r.out[o];
      if (!out.exists) continue;
      int winner = -1;
      if (out.owner >= 0) {
        InputPort& in = r.in[out.owner];
        if (!in.buf.empty() && in.buf.front().ready <= now) winner = out.owner;
      } else {
        for (int k = 0; k < kPortCount; ++k) {
          const int i = (out.rr + k) % kPortCount;
          InputPort& in = r.in[i];
          if (in.route != o || in.buf.empty()) continue;
          const BufferedFlit& bf = in.buf.front();
          if (bf.flit.seq == 0 && bf.ready <= now) {
            winner = i;
            break;
          }
        }
      }
      if (winner < 0) continue;
      const auto port = static_cast<Port>(o);
      if (port != Port::Local && out.credits == 0) continue;

      InputPort& in = r.in[winner];
      const Flit f = in.buf.front().flit;
      in.buf.pop();
      --r.flits;
      return_credit(n, winner);
      const bool head = f.seq == 0;
      const bool tail = f.seq + 1 == config.packet_flits;
      if (head) {
        out.owner = winner;
        out.rr = (winner + 1) % kPortCount;
      }
      if (tail) {
        out.owner = -1;
        in.route = -1;
      }
      if (measuring()) ++log.energy.router;

      PacketRecord& rec = packets[f.packet];
      if (port == Port::Local) {
        eject(n, f);
      } else if (port == Port::HubLink) {
        --out.credits;
        if (measuring()) ++log.energy.electrical_link;
        const HubId h = *net.mesh.hub_at(n);
        if (head) {
          rec.path.push_back(PathHop::hub(h));
          rec.leg = Leg::ToDestination;
        }
        schedule(now + hop_delay, {WheelItem::Kind::HubFlit, 0, h, f});
      } else {
        --out.credits;
        if (measuring()) ++log.energy.electrical_link;
        const NodeId next = *net.mesh.neighbor(n, port);
        if (head) rec.path.push_back(PathHop::node(next));
        schedule(now + hop_delay, {WheelItem::Kind::RouterFlit,
                                   static_cast<std::uint8_t>(port_index(kOpposite[o])), next, f});
      }
    }
  }

  // --- phase 3 -------------------------------------------------------------

  /// Position of `link` in the packet's fabric path.
  std::size_t hop_of(const PacketRecord& rec, std::uint32_t link) const {
    return static_cast<std::size_t>(std::find(rec.plan.links.begin(), rec.plan.links.end(), link) -
                                    rec.plan.links.begin());
  }

  void complete_crossings() {
    for (std::uint32_t li = 0; li < links.size(); ++li) {
      LinkState& L = links[li];
      if (L.in_flight.empty()) continue;
      for (std::size_t k = 0; k < L.in_flight.size();) {
        if (L.in_flight[k].completes != now) {
          ++k;
          continue;
        }
        const std::uint64_t token = L.in_flight[k].token;
        L.in_flight.erase(L.in_flight.begin() + static_cast<std::ptrdiff_t>(k));
        finish_crossing(li, token);
      }
    }
  }

  void finish_crossing(std::uint32_t li, std::uint64_t token) {
    LinkState& L = links[li];
    Entry* e = L.find(token);
    const bool failed =
        sample_transmission(L.failure_probability, L.rng) == TxOutcome::Failed;
    cycle_events.push_back({li, failed, e->probe});
    if (e->probe) {
      L.erase(token);
      return;
    }
    if (measuring()) {
      ++log.links[li].crossings;
      if (failed) ++log.links[li].failures;
    }
    PacketRecord& rec = packets[e->packet];
    if (failed) {
      e->state = EntryState::Retrying;
      e->ready = now + rtt;
      ++rec.retransmissions;
      if (measuring()) ++log.retransmissions;
      record(OpticalEvent::Kind::Failed, li, e->packet);
      return;
    }
    record(OpticalEvent::Kind::Delivered, li, e->packet);
    const PacketId pid = e->packet;
    L.erase(token);

    rec.path.push_back(PathHop::link(li));
    const auto& link = net.fabric.links()[li];
    if (net.fabric.is_hub(link.to)) rec.path.push_back(PathHop::hub(link.to));
    const std::size_t hop = hop_of(rec, li);
    if (hop + 1 == rec.plan.links.size()) {
      for (auto& eg : hubs[rec.plan.dst_hub].egress) {
        if (eg.packet == pid && !eg.ready) {
          eg.ready = true;
          eg.ready_at = now + 1;
          break;
        }
      }
      return;
    }
    LinkState& next = links[rec.plan.links[hop + 1]];
    for (auto& ne : next.queue) {
      if (!ne.probe && ne.packet == pid && ne.state == EntryState::Reserved) {
        ne.state = EntryState::Ready;
        ne.ready = now + 1;
        break;
      }
    }
  }

  void assemble_ingress() {
    for (HubId h = 0; h < hubs.size(); ++h) {
      HubState& hub = hubs[h];
      if (hub.ingress.empty() || hub.ingress.front().ready > now) continue;
      const Flit f = hub.ingress.front().flit;
      const PacketRecord& rec = packets[f.packet];
      if (f.seq == 0) {
        const std::uint32_t li = rec.plan.links.front();
        LinkState& L = links[li];
        if (L.data_entries() >= config.hub_queue_packets) continue;
        Entry e;
        e.token = next_token++;
        e.packet = f.packet;
        e.state = EntryState::Assembling;
        L.queue.push_back(e);
        hub.assembling = e.token;
        hub.assembling_link = li;
      }
      Entry* e = links[hub.assembling_link].find(hub.assembling);
      ++e->assembled;
      if (f.seq + 1 == config.packet_flits) {
        e->state = EntryState::Ready;
        e->ready = now + 1;
      }
      hub.ingress.pop();
      schedule(now + 1, {WheelItem::Kind::RouterCredit, static_cast<std::uint8_t>(port_index(Port::HubLink)),
                         net.mesh.attach_node(h), {}});
    }
  }

  void emit_probes() {
    if (config.detector.mode != DetectorMode::PilotTone) return;
    if (now % config.detector.probe_period != 0) return;
    for (auto& L : links) {
      Entry e;
      e.token = next_token++;
      e.probe = true;
      e.state = EntryState::Ready;
      e.ready = now;
      L.queue.push_back(e);
    }
  }

  bool reserve_next(const Entry& e, std::uint32_t li) {
    const PacketRecord& rec = packets[e.packet];
    const std::size_t hop = hop_of(rec, li);
    if (hop + 1 == rec.plan.links.size()) {
      HubState& dst = hubs[rec.plan.dst_hub];
      if (dst.egress.size() >= config.hub_queue_packets) return false;
      dst.egress.push_back({e.packet, false, 0});
      return true;
    }
    LinkState& next = links[rec.plan.links[hop + 1]];
    if (next.data_entries() >= config.hub_queue_packets) return false;
    Entry r;
    r.token = next_token++;
    r.packet = e.packet;
    r.state = EntryState::Reserved;
    next.queue.push_back(r);
    return true;
  }

  void start_crossings() {
    const std::uint32_t p = config.packet_flits;
    for (std::uint32_t li = 0; li < links.size(); ++li) {
      LinkState& L = links[li];
      if (L.free_at > now || L.queue.empty()) continue;
      for (Entry& e : L.queue) {
        if (e.state != EntryState::Ready || e.ready > now) continue;
        if (!e.probe && !e.next_reserved) {
          if (!reserve_next(e, li)) continue;
          e.next_reserved = true;
        }
        e.state = EntryState::InFlight;
        L.in_flight.push_back({e.token, now + p - 1 + config.timing.optical_latency});
        L.free_at = now + p;
        if (measuring()) {
          const auto& link = net.fabric.links()[li];
          log.energy.optical_link += p;
          if (net.fabric.is_hub(link.from)) log.energy.conversion += p;
          if (net.fabric.is_hub(link.to)) log.energy.conversion += p;
        }
        if (!e.probe) record(OpticalEvent::Kind::Start, li, e.packet);
        break;
      }
    }
  }

  void stream_egress() {
    for (HubId h = 0; h < hubs.size(); ++h) {
      HubState& hub = hubs[h];
      if (hub.egress.empty() || hub.credits == 0) continue;
      EgressEntry& front = hub.egress.front();
      if (!front.ready || front.ready_at > now) continue;
      const Flit f{front.packet, hub.egress_sent};
      const NodeId attach = net.mesh.attach_node(h);
      if (f.seq == 0) packets[f.packet].path.push_back(PathHop::node(attach));
      --hub.credits;
      if (measuring()) ++log.energy.electrical_link;
      schedule(now + config.timing.link_latency,
               {WheelItem::Kind::RouterFlit, static_cast<std::uint8_t>(port_index(Port::HubLink)),
                attach, f});
      if (++hub.egress_sent == config.packet_flits) {
        hub.egress.pop_front();
        hub.egress_sent = 0;
      }
    }
  }

  // --- phase 4 -------------------------------------------------------------

  void release_retransmissions() {
    for (std::uint32_t li = 0; li < links.size(); ++li) {
      LinkState& L = links[li];
      for (std::size_t k = 0; k < L.queue.size();) {
        Entry& e = L.queue[k];
        if (e.state == EntryState::Retrying && e.ready <= now) {
          Entry moved = e;
          moved.state = EntryState::Ready;
          moved.ready = now;
          L.queue.erase(L.queue.begin() + static_cast<std::ptrdiff_t>(k));
          L.queue.push_back(moved);
          record(OpticalEvent::Kind::Requeued, li, moved.packet);
          continue;
        }
        ++k;
      }
    }
  }

  // --- phase 5 -------------------------------------------------------------

  void apply_defense() {
    for (const LinkEvent& ev : cycle_events) {
      const bool counts = config.detector.mode == DetectorMode::PilotTone ? ev.probe : !ev.probe;
      if (!counts) continue;
      const LinkId& id = net.fabric.links()[ev.link].id;
      auto alarm = detector.observe(ev.link, id, ev.failed, now);
      if (!alarm) continue;
      log.alarms.push_back(*alarm);
      if (!log.first_alarm) log.first_alarm = now;
      respond(ev.link, *alarm);
    }
    cycle_events.clear();
  }

  void respond(std::uint32_t li, const Alarm& alarm) {
    LinkState& L = links[li];
    if (L.mitigated || config.mitigation.action == MitigationAction::None) return;
    L.mitigated = true;
    const LinkId& id = net.fabric.links()[li].id;
    auto survey = [&](std::uint32_t channel) {
      const double p = retransmit_probability(channel_ber(attack, id, channel), config.flit_bits,
                                              config.packet_flits);
      std::uint32_t failed = 0;
      for (std::uint32_t i = 0; i < config.mitigation.probes_per_channel; ++i)
        if (sample_transmission(p, L.survey_rng) == TxOutcome::Failed) ++failed;
      return static_cast<double>(failed) / config.mitigation.probes_per_channel;
    };
    const MitigationUpdate update = mitigate(config.mitigation, alarm, config.channels, survey);
    if (update.avoid) avoid.insert(*update.avoid);
    if (update.allow_relay) policy.allow_relay = true;
    if (update.channel) {
      L.channel = *update.channel;
      refresh_probability(li);
    }
  }

  void step() {
    inject_traffic();
    deliver_wheel();
    for (NodeId n = 0; n < routers.size(); ++n)
      if (routers[n].flits) advance_router(n);
    complete_crossings();
    assemble_ingress();
    emit_probes();
    start_crossings();
    stream_egress();
    release_retransmissions();
    apply_defense();
    ++now;
  }

  Conservation census() const {
    // 1 = in flight, 2 = retained awaiting retransmission
    std::vector<std::uint8_t> mark(packets.size(), 0);
    auto in_flight = [&](PacketId p) {
      if (mark[p] == 0) mark[p] = 1;
    };
    for (const auto& s : sources)
      for (PacketId p : s.packets) in_flight(p);
    for (const auto& r : routers)
      for (const auto& in : r.in)
        for (std::size_t i = 0; i < in.buf.size(); ++i) in_flight(in.buf.at(i).flit.packet);
    for (const auto& slot : wheel)
      for (const auto& item : slot)
        if (item.kind == WheelItem::Kind::RouterFlit || item.kind == WheelItem::Kind::HubFlit)
          in_flight(item.flit.packet);
    for (const auto& h : hubs) {
      for (std::size_t i = 0; i < h.ingress.size(); ++i) in_flight(h.ingress.at(i).flit.packet);
      for (const auto& eg : h.egress)
        if (eg.ready) in_flight(eg.packet);
    }
    for (const auto& L : links) {
      for (const auto& e : L.queue) {
        if (e.probe || e.state == EntryState::Reserved) continue;
        if (e.state == EntryState::Retrying) mark[e.packet] = 2;
        else in_flight(e.packet);
      }
    }
    Conservation c;
    c.injected = injected_total;
    c.delivered = delivered_total;
    for (auto m : mark) {
      if (m == 1) ++c.in_flight;
      if (m == 2) ++c.retained;
    }
    return c;
  }
};

Simulator::Simulator(const NetworkConfig& config) : impl_(std::make_unique<Impl>(config)) {}
Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

void Simulator::step() { impl_->step(); }

MetricsReport Simulator::run() {
  Impl& s = *impl_;
  while (s.now < s.config.cycles) s.step();
  const bool was_enabled = s.injection_enabled;
  s.injection_enabled = false;
  const Cycle limit = s.config.cycles + s.config.drain;
  while (s.now < limit && s.injected_total != s.delivered_total) s.step();
  s.injection_enabled = was_enabled;

  s.log.measured_cycles = s.config.cycles - s.config.warmup;
  if (s.log.first_alarm && *s.log.first_alarm < s.config.cycles)
    s.log.cycles_after_alarm = s.config.cycles - std::max(*s.log.first_alarm, s.config.warmup);
  MetricsReport report = finalize(s.log, s.config);
  report.conservation = s.census();
  return report;
}

Cycle Simulator::now() const { return impl_->now; }
const NetworkConfig& Simulator::config() const { return impl_->config; }
const Network& Simulator::network() const { return impl_->net; }

PacketId Simulator::inject(NodeId src, NodeId dst) { return impl_->create_packet(src, dst); }
void Simulator::set_injection_enabled(bool enabled) { impl_->injection_enabled = enabled; }

const std::vector<PacketRecord>& Simulator::packets() const { return impl_->packets; }
const AvoidSet& Simulator::avoid_set() const { return impl_->avoid; }
std::uint32_t Simulator::link_channel(std::uint32_t link) const { return impl_->links[link].channel; }

Conservation Simulator::census() const { return impl_->census(); }
bool Simulator::idle() const { return impl_->injected_total == impl_->delivered_total; }

void Simulator::set_trace(bool enabled) { impl_->tracing = enabled; }
const std::vector<OpticalEvent>& Simulator::trace() const { return impl_->trace; }
const EventLog& Simulator::log() const { return impl_->log; }

MetricsReport run(const NetworkConfig& config) { return Simulator(config).run(); }

}  // namespace gcsim
