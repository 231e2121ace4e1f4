#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace eaas {

/// Clock time as whole minutes since midnight, 0..1439.
using Minutes = int;

inline constexpr Minutes kMinutesPerDay = 24 * 60;

/// Parses "HH:MM" (24-hour). Throws ConfigError on anything else.
Minutes parse_clock(std::string_view text);

/// Formats minutes-since-midnight as zero-padded "HH:MM".
std::string format_clock(Minutes minutes);

/// Half-open stay interval on a single day.
///
/// Every window produced by make() or the parsers satisfies
/// 0 <= start < end <= 1439. Aggregate initialization bypasses the check so
/// that raw, possibly bad, input can still be described and handed to
/// validate_instance().
struct TimeWindow {
  Minutes start = 0;
  Minutes end = 0;

  /// Checked construction. Throws DomainError when start >= end or either
  /// bound is outside the clock.
  static TimeWindow make(Minutes start, Minutes end);

  /// Parses "HH:MM-HH:MM".
  static TimeWindow parse(std::string_view text);

  Minutes duration() const noexcept { return end - start; }
  bool valid() const noexcept;
  bool contains(const TimeWindow& inner) const noexcept {
    return inner.start >= start && inner.end <= end;
  }
  std::string to_string() const;

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

/// Planar position in meters.
struct Location {
  double x = 0.0;
  double y = 0.0;

  bool finite() const noexcept;

  friend bool operator==(const Location&, const Location&) = default;
};

/// A provider's advertisement to share energy during its stay.
///
/// Energy is expressed in percent of a common reference battery, so capacity
/// and requested energy are directly comparable.
struct EnergyService {
  std::string id;
  std::string owner_id;
  double capacity = 0.0;
  Location location;
  TimeWindow window;

  friend bool operator==(const EnergyService&, const EnergyService&) = default;
};

/// A consumer's demand for energy while it stays in the microcell.
struct EnergyRequest {
  std::string id;
  std::string owner_id;
  double battery_level = 0.0;
  double requested_energy = 0.0;
  TimeWindow window;
  Location location;

  friend bool operator==(const EnergyRequest&, const EnergyRequest&) = default;
};

enum class Attribute { BatteryLevel = 0, RequestedEnergy = 1, StayTime = 2, TimeOfProvision = 3 };

/// Incentive model constants. Defaults are the crowd-sourced values.
struct ModelConstants {
  /// Indexed by Attribute.
  std::array<double, 4> attribute_weights{0.27, 0.28, 0.23, 0.22};
  std::array<TimeWindow, 4> tp_boundaries{TimeWindow{9 * 60, 11 * 60}, TimeWindow{11 * 60, 13 * 60},
                                          TimeWindow{13 * 60, 15 * 60}, TimeWindow{15 * 60, 17 * 60}};
  std::array<double, 4> tp_rewards{0.18, 0.23, 0.26, 0.21};
  double bl_low_threshold = 20.0;
  double bl_high_threshold = 80.0;
  double bl_reward_extreme = 1.0;
  double bl_reward_mid = 0.5;
  /// 15 feet.
  double max_energy_distance = 4.572;

  double weight(Attribute a) const noexcept { return attribute_weights[static_cast<int>(a)]; }

  /// Throws ConfigError if the periods are not contiguous or a value is not finite.
  void check() const;

  friend bool operator==(const ModelConstants&, const ModelConstants&) = default;
};

enum class Subject { Service, Request };

/// One violated invariant found by validate_instance().
struct Finding {
  Subject subject = Subject::Request;
  std::string id;
  std::string field;
  std::string message;
};

/// Reports every violated type invariant of a service and its requests.
std::vector<Finding> validate_instance(const EnergyService& service,
                                       const std::vector<EnergyRequest>& requests);

// JSON forms. Windows and clock times are written as "HH:MM" strings.
nlohmann::json to_json(const ModelConstants& constants);
/// Missing keys keep their defaults; unknown keys are rejected.
ModelConstants constants_from_json(const nlohmann::json& doc);
ModelConstants load_constants(const std::string& path);
void save_constants(const ModelConstants& constants, const std::string& path);

nlohmann::json to_json(const EnergyService& service);
nlohmann::json to_json(const EnergyRequest& request);
EnergyService service_from_json(const nlohmann::json& doc);
EnergyRequest request_from_json(const nlohmann::json& doc);

}  // namespace eaas
