#include "gcsim/types.hpp"

#include <charconv>

namespace gcsim {

namespace {

constexpr std::string_view kPortNames[kPortCount] = {"North", "South", "East",
                                                     "West",  "Local", "HubLink"};

std::optional<std::uint32_t> parse_uint(std::string_view s) {
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

std::string_view to_string(Port p) { return kPortNames[port_index(p)]; }

std::string to_string(const LinkId& id) {
  switch (id.kind) {
    case LinkId::Kind::Electrical:
      return "N" + std::to_string(id.a) + "." + std::string(kPortNames[id.b % kPortCount]);
    case LinkId::Kind::HubPair:
      return "H" + std::to_string(id.a) + "->H" + std::to_string(id.b);
    case LinkId::Kind::StageLine:
      return "S" + std::to_string(id.a) + "." + std::to_string(id.b);
  }
  return {};
}

std::optional<LinkId> parse_link_id(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  if (text.front() == 'H') {
    auto arrow = text.find("->");
    if (arrow == std::string_view::npos || arrow + 3 > text.size() || text[arrow + 2] != 'H')
      return std::nullopt;
    auto from = parse_uint(text.substr(1, arrow - 1));
    auto to = parse_uint(text.substr(arrow + 3));
    if (!from || !to) return std::nullopt;
    return LinkId::hub_pair(*from, *to);
  }
  if (text.front() == 'S' || text.front() == 'N') {
    auto dot = text.find('.');
    if (dot == std::string_view::npos) return std::nullopt;
    auto first = parse_uint(text.substr(1, dot - 1));
    if (!first) return std::nullopt;
    auto rest = text.substr(dot + 1);
    if (text.front() == 'S') {
      auto line = parse_uint(rest);
      if (!line) return std::nullopt;
      return LinkId::stage_line(*first, *line);
    }
    for (int p = 0; p < kPortCount; ++p)
      if (rest == kPortNames[p]) return LinkId::electrical(*first, static_cast<Port>(p));
  }
  return std::nullopt;
}

}  // namespace gcsim
