#pragma once

// Plain-text configuration: one `key = value` per line, '#' starts a comment.
// Keys not mentioned keep their defaults; unknown keys are rejected.

#include <charconv>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "vodmesh/errors.hpp"
#include "vodmesh/numfmt.hpp"
#include "vodmesh/sim_config.hpp"

namespace vodmesh {

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view s) {
  s = trim(s);
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw InvalidConfig("'" + std::string(s) + "' is not a valid number");
  return v;
}

struct ConfigKey {
  std::string name;
  std::function<void(SimConfig&, std::string_view)> set;
  std::function<std::string(const SimConfig&)> get;
};

inline ConfigKey int_key(std::string name, int SimConfig::*m, int lo, int hi = std::numeric_limits<int>::max()) {
  return {name,
          [=](SimConfig& c, std::string_view v) {
            const int x = parse_number<int>(v);
            if (x < lo || x > hi)
              throw InvalidConfig(name + "=" + std::to_string(x) + " is outside [" + std::to_string(lo) + ", " +
                                  (hi == std::numeric_limits<int>::max() ? std::string("inf") : std::to_string(hi)) +
                                  "]");
            c.*m = x;
          },
          [=](const SimConfig& c) { return std::to_string(c.*m); }};
}

// `lo_open` excludes the lower bound.
inline ConfigKey real_key(std::string name, double SimConfig::*m, double lo, bool lo_open,
                          double hi = std::numeric_limits<double>::infinity(), bool hi_open = false) {
  return {name,
          [=](SimConfig& c, std::string_view v) {
            const double x = parse_number<double>(v);
            const bool ok = (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
            if (!ok)
              throw InvalidConfig(name + "=" + format_real(x) + " is outside " + (lo_open ? "(" : "[") +
                                  format_real(lo) + ", " + format_real(hi) + (hi_open ? ")" : "]"));
            c.*m = x;
          },
          [=](const SimConfig& c) { return format_real(c.*m); }};
}

inline const std::vector<ConfigKey>& config_keys() {
  constexpr double inf = std::numeric_limits<double>::infinity();
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> k;
    k.push_back(int_key("ports_per_partition", &SimConfig::ports_per_partition, 1));
    k.push_back(int_key("partition_count", &SimConfig::partition_count, 1));
    k.push_back(real_key("port_access_time", &SimConfig::port_access_time, 0, true));
    k.push_back(int_key("levels", &SimConfig::levels, 3));
    k.push_back(int_key("peers_per_level", &SimConfig::peers_per_level, 1, 63));
    k.push_back(real_key("frame_rate", &SimConfig::frame_rate, 0, true));
    k.push_back(int_key("gop_length", &SimConfig::gop_length, 1));
    k.push_back(real_key("link_min_kbps", &SimConfig::link_min_kbps, 0, true));
    k.push_back(real_key("link_max_kbps", &SimConfig::link_max_kbps, 0, true));
    k.push_back(int_key("viewers_min", &SimConfig::viewers_min, 1));
    k.push_back(int_key("viewers_max", &SimConfig::viewers_max, 1));
    k.push_back(real_key("sim_time", &SimConfig::sim_time, 0, true));
    k.push_back(int_key("proxy_count", &SimConfig::proxy_count, 1));
    k.push_back(int_key("archive_count", &SimConfig::archive_count, 1));
    k.push_back(int_key("billing_count", &SimConfig::billing_count, 0));
    k.push_back(real_key("storage_link_kbps", &SimConfig::storage_link_kbps, 0, true));
    k.push_back(real_key("intermediate_link_kbps", &SimConfig::intermediate_link_kbps, 0, true));
    k.push_back(real_key("viewer_link_kbps", &SimConfig::viewer_link_kbps, 0, true));
    k.push_back(real_key("link_jitter_kbps", &SimConfig::link_jitter_kbps, 0, false));
    k.push_back(int_key("adjacency_size", &SimConfig::adjacency_size, kMinAdjacency, kMaxAdjacency));
    k.push_back({"class_rates",
                 [](SimConfig& c, std::string_view v) {
                   std::vector<double> rates;
                   std::size_t pos = 0;
                   while (pos <= v.size()) {
                     const auto comma = v.find(',', pos);
                     const auto item = v.substr(pos, comma == std::string_view::npos ? v.npos : comma - pos);
                     const double r = parse_number<double>(item);
                     if (!(r >= 0.0)) throw InvalidConfig("class_rates entries must be >= 0");
                     rates.push_back(r);
                     if (comma == std::string_view::npos) break;
                     pos = comma + 1;
                   }
                   c.class_rates = std::move(rates);
                 },
                 [](const SimConfig& c) {
                   std::string s;
                   for (std::size_t i = 0; i < c.class_rates.size(); ++i)
                     s += (i ? "," : "") + format_real(c.class_rates[i]);
                   return s;
                 }});
    k.push_back(real_key("playback_kbps", &SimConfig::playback_kbps, 0, true));
    k.push_back({"holding",
                 [](SimConfig& c, std::string_view v) {
                   v = trim(v);
                   if (v == "exponential") c.holding = HoldingMode::Exponential;
                   else if (v == "fixed") c.holding = HoldingMode::Fixed;
                   else throw InvalidConfig("holding must be 'exponential' or 'fixed'");
                 },
                 [](const SimConfig& c) {
                   return std::string(c.holding == HoldingMode::Exponential ? "exponential" : "fixed");
                 }});
    k.push_back(real_key("popularity_exponent", &SimConfig::popularity_exponent, 0, false));
    k.push_back(int_key("asset_count", &SimConfig::asset_count, 1));
    k.push_back(real_key("asset_duration", &SimConfig::asset_duration, 0, true));
    k.push_back(real_key("avg_bitrate_kbps", &SimConfig::avg_bitrate_kbps, 0, true));
    k.push_back({"placement",
                 [](SimConfig& c, std::string_view v) {
                   v = trim(v);
                   if (v == "uniform") c.placement = PlacementProfile::Uniform;
                   else if (v == "tiered") c.placement = PlacementProfile::Tiered;
                   else throw InvalidConfig("placement must be 'uniform' or 'tiered'");
                 },
                 [](const SimConfig& c) {
                   return std::string(c.placement == PlacementProfile::Uniform ? "uniform" : "tiered");
                 }});
    k.push_back(real_key("share_fraction", &SimConfig::share_fraction, 0, true, 1, true));
    k.push_back(real_key("level1_fraction", &SimConfig::level1_fraction, 0, true, 1, false));
    k.push_back(int_key("cache_capacity", &SimConfig::cache_capacity, 1));
    k.push_back(real_key("cache_half_life", &SimConfig::cache_half_life, 0, true, inf, false));
    k.push_back(real_key("disk_bandwidth_kbps", &SimConfig::disk_bandwidth_kbps, 0, true));
    k.push_back(int_key("admission_threshold", &SimConfig::admission_threshold, 1));
    k.push_back(real_key("query_latency", &SimConfig::query_latency, 0, true));
    k.push_back(real_key("propagation_delay", &SimConfig::propagation_delay, 0, false));
    k.push_back(real_key("session_window", &SimConfig::session_window, 0, true));
    k.push_back(real_key("throughput_bucket", &SimConfig::throughput_bucket, 0, true));
    k.push_back(int_key("sweep_trials", &SimConfig::sweep_trials, 1));
    k.push_back(real_key("validate_erlang_load", &SimConfig::validate_erlang_load, 0, true));
    k.push_back(int_key("validate_arrivals", &SimConfig::validate_arrivals, 1));
    k.push_back(int_key("validate_trials", &SimConfig::validate_trials, 1));
    k.push_back({"seed",
                 [](SimConfig& c, std::string_view v) { c.seed = parse_number<std::uint64_t>(v); },
                 [](const SimConfig& c) { return std::to_string(c.seed); }});
    return k;
  }();
  return keys;
}

inline void apply_setting(SimConfig& c, std::string_view key, std::string_view value, int line) {
  for (const auto& k : config_keys())
    if (k.name == key) {
      try {
        k.set(c, value);
      } catch (const InvalidConfig& e) {
        throw InvalidConfig(e.what(), line);
      }
      return;
    }
  throw InvalidConfig("unknown key '" + std::string(key) + "'", line);
}

inline std::pair<std::string_view, std::string_view> split_setting(std::string_view text, int line) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) throw InvalidConfig("malformed line, expected key=value", line);
  const auto key = trim(text.substr(0, eq));
  const auto value = trim(text.substr(eq + 1));
  if (key.empty()) throw InvalidConfig("malformed line, empty key", line);
  if (value.empty()) throw InvalidConfig("malformed line, empty value for '" + std::string(key) + "'", line);
  return {key, value};
}

}  // namespace detail

// File settings first, then `overrides` ("key=value" each) on top.
inline SimConfig parse_config(std::string_view text, const std::vector<std::string>& overrides = {}) {
  SimConfig c;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    ++line_no;
    const auto nl = text.find('\n', pos);
    auto line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto [key, value] = detail::split_setting(line, line_no);
    detail::apply_setting(c, key, value, line_no);
  }
  for (const auto& o : overrides) {
    try {
      const auto [key, value] = detail::split_setting(o, 0);
      detail::apply_setting(c, key, value, 0);
    } catch (const InvalidConfig& e) {
      throw InvalidConfig(std::string("override '") + o + "': " + e.what());
    }
  }
  validate(c);
  return c;
}

// Every key in canonical order; parse_config(to_config_text(c)) == c.
inline std::string to_config_text(const SimConfig& c) {
  std::string out;
  for (const auto& k : detail::config_keys()) out += k.name + "=" + k.get(c) + "\n";
  return out;
}

inline std::vector<std::pair<std::string, std::string>> config_items(const SimConfig& c) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : detail::config_keys()) out.emplace_back(k.name, k.get(c));
  return out;
}

}  // namespace vodmesh
