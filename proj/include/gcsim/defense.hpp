#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "gcsim/metrics.hpp"
#include "gcsim/types.hpp"

namespace gcsim {

enum class DetectorMode : std::uint8_t { Off, RetxThreshold, PilotTone };
enum class MitigationAction : std::uint8_t { None, RerouteElectrical, RerouteFabric, WavelengthShift };

std::string_view to_string(DetectorMode m);
std::string_view to_string(MitigationAction a);
std::optional<DetectorMode> parse_detector(std::string_view name);
std::optional<MitigationAction> parse_mitigation(std::string_view name);

struct DetectorSpec {
  DetectorMode mode = DetectorMode::Off;
  std::uint64_t window = 1000;       // crossings per link per window
  double threshold = 5e-4;           // estimated BER that raises an alarm
  std::uint64_t probe_period = 100;  // cycles between pilot probes

  friend bool operator==(const DetectorSpec&, const DetectorSpec&) = default;
};

struct MitigationSpec {
  MitigationAction action = MitigationAction::None;
  std::uint32_t probes_per_channel = 64;  // wavelength-shift channel survey

  friend bool operator==(const MitigationSpec&, const MitigationSpec&) = default;
};

/// Inverts the retransmission formula: (failures / crossings) / (f * p).
double estimate_ber(std::uint64_t failures, std::uint64_t crossings, std::uint32_t flit_bits,
                    std::uint32_t packet_flits);

/// Windowed per-link retransmission monitor.
class Detector {
 public:
  Detector(const DetectorSpec& spec, std::size_t link_count, std::uint32_t flit_bits,
           std::uint32_t packet_flits);

  /// Records one completed crossing of optical link `index`. Returns an alarm
  /// when this crossing closes a window whose estimate exceeds the threshold.
  std::optional<Alarm> observe(std::size_t index, const LinkId& link, bool failed, Cycle now);

  std::uint64_t windows_closed(std::size_t index) const { return state_[index].window; }

 private:
  struct LinkState {
    std::uint64_t crossings = 0;
    std::uint64_t failures = 0;
    std::uint64_t window = 0;
  };

  DetectorSpec spec_;
  std::uint32_t flit_bits_;
  std::uint32_t packet_flits_;
  std::vector<LinkState> state_;
};

/// Channel index farthest from `attacker`; the lowest index wins ties.
std::uint32_t select_channel(std::uint32_t channels, std::uint32_t attacker);

/// Channel with the highest observed failure fraction; lowest index on ties.
std::uint32_t estimate_attacker_channel(std::uint32_t channels,
                                        const std::function<double(std::uint32_t)>& failure_fraction);

/// Routing/channel change requested in response to an alarm.
struct MitigationUpdate {
  std::optional<LinkId> avoid;
  bool allow_relay = false;
  std::optional<std::uint32_t> channel;
};

/// `failure_fraction(c)` surveys channel c on the alarmed link; it is only
/// consulted for WavelengthShift.
MitigationUpdate mitigate(const MitigationSpec& spec, const Alarm& alarm, std::uint32_t channels,
                          const std::function<double(std::uint32_t)>& failure_fraction);

}  // namespace gcsim
