#include "gcsim/defense.hpp"

#include <array>

namespace gcsim {

namespace {

constexpr std::array<std::string_view, 3> kDetectorNames = {"off", "threshold", "pilot"};
constexpr std::array<std::string_view, 4> kMitigationNames = {
    "none", "reroute-electrical", "reroute-fabric", "wavelength-shift"};

}  // namespace

std::string_view to_string(DetectorMode m) { return kDetectorNames[static_cast<std::size_t>(m)]; }
std::string_view to_string(MitigationAction a) {
  return kMitigationNames[static_cast<std::size_t>(a)];
}

std::optional<DetectorMode> parse_detector(std::string_view name) {
  for (std::size_t i = 0; i < kDetectorNames.size(); ++i)
    if (name == kDetectorNames[i]) return static_cast<DetectorMode>(i);
  return std::nullopt;
}

std::optional<MitigationAction> parse_mitigation(std::string_view name) {
  for (std::size_t i = 0; i < kMitigationNames.size(); ++i)
    if (name == kMitigationNames[i]) return static_cast<MitigationAction>(i);
  return std::nullopt;
}

double estimate_ber(std::uint64_t failures, std::uint64_t crossings, std::uint32_t flit_bits,
                    std::uint32_t packet_flits) {
  if (crossings == 0) return 0;
  const double fraction = static_cast<double>(failures) / static_cast<double>(crossings);
  return fraction / (static_cast<double>(flit_bits) * static_cast<double>(packet_flits));
}

Detector::Detector(const DetectorSpec& spec, std::size_t link_count, std::uint32_t flit_bits,
                   std::uint32_t packet_flits)
    : spec_(spec), flit_bits_(flit_bits), packet_flits_(packet_flits), state_(link_count) {}

std::optional<Alarm> Detector::observe(std::size_t index, const LinkId& link, bool failed,
                                       Cycle now) {
  if (spec_.mode == DetectorMode::Off) return std::nullopt;
  LinkState& s = state_[index];
  ++s.crossings;
  if (failed) ++s.failures;
  if (s.crossings < spec_.window) return std::nullopt;

  ++s.window;
  const double estimate = estimate_ber(s.failures, s.crossings, flit_bits_, packet_flits_);
  s.crossings = 0;
  s.failures = 0;
  if (estimate > spec_.threshold) return Alarm{link, s.window, estimate, now};
  return std::nullopt;
}

std::uint32_t select_channel(std::uint32_t channels, std::uint32_t attacker) {
  std::uint32_t best = 0;
  std::uint32_t best_distance = 0;
  for (std::uint32_t c = 0; c < channels; ++c) {
    const std::uint32_t d = c > attacker ? c - attacker : attacker - c;
    if (d > best_distance) {
      best = c;
      best_distance = d;
    }
  }
  return best;
}

std::uint32_t estimate_attacker_channel(
    std::uint32_t channels, const std::function<double(std::uint32_t)>& failure_fraction) {
  std::uint32_t worst = 0;
  double worst_fraction = -1;
  for (std::uint32_t c = 0; c < channels; ++c) {
    const double f = failure_fraction(c);
    if (f > worst_fraction) {
      worst = c;
      worst_fraction = f;
    }
  }
  return worst;
}

MitigationUpdate mitigate(const MitigationSpec& spec, const Alarm& alarm, std::uint32_t channels,
                          const std::function<double(std::uint32_t)>& failure_fraction) {
  MitigationUpdate update;
  switch (spec.action) {
    case MitigationAction::None:
      break;
    case MitigationAction::RerouteElectrical:
      update.avoid = alarm.link;
      break;
    case MitigationAction::RerouteFabric:
      update.avoid = alarm.link;
      update.allow_relay = true;
      break;
    case MitigationAction::WavelengthShift:
      update.channel = select_channel(channels, estimate_attacker_channel(channels, failure_fraction));
      break;
  }
  return update;
}

}  // namespace gcsim
