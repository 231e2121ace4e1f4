#include "eaas/model.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "eaas/errors.hpp"

namespace eaas {

using nlohmann::json;

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

double require_number(const json& doc, const char* key) {
  if (!doc.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  const double value = doc.get<double>();
  if (!std::isfinite(value)) throw ConfigError(std::string("'") + key + "' must be finite");
  return value;
}

std::string require_string(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(std::string("missing key '") + key + "'");
  if (!it->is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return it->get<std::string>();
}

double require_field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ConfigError(std::string("missing key '") + key + "'");
  return require_number(*it, key);
}

}  // namespace

Minutes parse_clock(std::string_view text) {
  // Accept H:MM as well as HH:MM.
  const auto colon = text.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon > 2 || text.size() != colon + 3) {
    throw ConfigError("invalid clock time '" + std::string(text) + "', expected HH:MM");
  }
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (i != colon && !is_digit(text[i])) {
      throw ConfigError("invalid clock time '" + std::string(text) + "', expected HH:MM");
    }
  }
  int hours = 0;
  for (std::size_t i = 0; i < colon; ++i) hours = hours * 10 + (text[i] - '0');
  const int mins = (text[colon + 1] - '0') * 10 + (text[colon + 2] - '0');
  if (hours > 23 || mins > 59) {
    throw ConfigError("clock time '" + std::string(text) + "' out of range 00:00-23:59");
  }
  return hours * 60 + mins;
}

std::string format_clock(Minutes minutes) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

TimeWindow TimeWindow::make(Minutes start, Minutes end) {
  TimeWindow w{start, end};
  if (!w.valid()) {
    throw DomainError("invalid time window [" + std::to_string(start) + ", " + std::to_string(end) +
                      "]: need 0 <= start < end <= 1439");
  }
  return w;
}

TimeWindow TimeWindow::parse(std::string_view text) {
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) {
    throw ConfigError("invalid window '" + std::string(text) + "', expected HH:MM-HH:MM");
  }
  const Minutes start = parse_clock(text.substr(0, dash));
  const Minutes end = parse_clock(text.substr(dash + 1));
  if (start >= end) throw ConfigError("window '" + std::string(text) + "' must have start < end");
  return TimeWindow{start, end};
}

bool TimeWindow::valid() const noexcept {
  return start >= 0 && end < kMinutesPerDay && start < end;
}

std::string TimeWindow::to_string() const { return format_clock(start) + "-" + format_clock(end); }

bool Location::finite() const noexcept { return std::isfinite(x) && std::isfinite(y); }

void ModelConstants::check() const {
  for (double w : attribute_weights) {
    if (!std::isfinite(w)) throw ConfigError("attribute weights must be finite");
  }
  for (double r : tp_rewards) {
    if (!std::isfinite(r)) throw ConfigError("tp_rewards must be finite");
  }
  for (std::size_t i = 0; i < tp_boundaries.size(); ++i) {
    if (!tp_boundaries[i].valid()) throw ConfigError("tp_boundaries[" + std::to_string(i) + "] is empty");
    if (i > 0 && tp_boundaries[i].start != tp_boundaries[i - 1].end) {
      throw ConfigError("tp_boundaries must be contiguous: " + tp_boundaries[i - 1].to_string() + " then " +
                        tp_boundaries[i].to_string());
    }
  }
  if (!std::isfinite(bl_low_threshold) || !std::isfinite(bl_high_threshold) ||
      bl_low_threshold > bl_high_threshold) {
    throw ConfigError("battery thresholds must be finite with low <= high");
  }
  if (!std::isfinite(bl_reward_extreme) || !std::isfinite(bl_reward_mid)) {
    throw ConfigError("battery rewards must be finite");
  }
  if (!std::isfinite(max_energy_distance) || max_energy_distance < 0) {
    throw ConfigError("max_energy_distance_m must be a finite non-negative distance");
  }
}

std::vector<Finding> validate_instance(const EnergyService& service,
                                       const std::vector<EnergyRequest>& requests) {
  std::vector<Finding> findings;
  auto add = [&](Subject subject, const std::string& id, std::string field, std::string message) {
    findings.push_back({subject, id, std::move(field), std::move(message)});
  };

  if (!std::isfinite(service.capacity) || service.capacity <= 0) {
    add(Subject::Service, service.id, "capacity", "capacity must be > 0");
  } else if (service.capacity > 100) {
    add(Subject::Service, service.id, "capacity", "capacity must be <= 100 (battery percent)");
  }
  if (!service.location.finite()) add(Subject::Service, service.id, "location", "non-finite coordinates");
  if (!service.window.valid()) {
    add(Subject::Service, service.id, "window", "window must satisfy 00:00 <= start < end <= 23:59");
  }

  for (const auto& r : requests) {
    if (!(r.battery_level >= 0 && r.battery_level <= 100)) {
      add(Subject::Request, r.id, "battery_level", "battery level must lie in [0, 100]");
    }
    if (!std::isfinite(r.requested_energy) || r.requested_energy <= 0) {
      add(Subject::Request, r.id, "requested_energy", "requested energy must be > 0");
    }
    if (!r.window.valid()) {
      add(Subject::Request, r.id, "window", "window must satisfy 00:00 <= start < end <= 23:59");
    }
    if (!r.location.finite()) add(Subject::Request, r.id, "location", "non-finite coordinates");
  }
  return findings;
}

json to_json(const ModelConstants& c) {
  json boundaries = json::array();
  for (const auto& w : c.tp_boundaries) boundaries.push_back(w.to_string());
  return json{
      {"attribute_weights",
       {{"bl", c.attribute_weights[0]},
        {"re", c.attribute_weights[1]},
        {"st", c.attribute_weights[2]},
        {"tp", c.attribute_weights[3]}}},
      {"tp_rewards", c.tp_rewards},
      {"tp_boundaries", boundaries},
      {"bl_low_threshold", c.bl_low_threshold},
      {"bl_high_threshold", c.bl_high_threshold},
      {"bl_reward_extreme", c.bl_reward_extreme},
      {"bl_reward_mid", c.bl_reward_mid},
      {"max_energy_distance_m", c.max_energy_distance},
  };
}

ModelConstants constants_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("constants document must be a JSON object");
  ModelConstants c;
  for (const auto& [key, value] : doc.items()) {
    if (key == "attribute_weights") {
      if (!value.is_object()) throw ConfigError("'attribute_weights' must be an object");
      static const std::array<const char*, 4> names{"bl", "re", "st", "tp"};
      for (const auto& [wkey, wvalue] : value.items()) {
        std::size_t i = 0;
        while (i < names.size() && wkey != names[i]) ++i;
        if (i == names.size()) throw ConfigError("unknown key 'attribute_weights." + wkey + "'");
        c.attribute_weights[i] = require_number(wvalue, ("attribute_weights." + wkey).c_str());
      }
    } else if (key == "tp_rewards") {
      if (!value.is_array() || value.size() != 4) throw ConfigError("'tp_rewards' must be an array of 4 numbers");
      for (std::size_t i = 0; i < 4; ++i) c.tp_rewards[i] = require_number(value[i], "tp_rewards");
    } else if (key == "tp_boundaries") {
      if (!value.is_array() || value.size() != 4) {
        throw ConfigError("'tp_boundaries' must be an array of 4 \"HH:MM-HH:MM\" strings");
      }
      for (std::size_t i = 0; i < 4; ++i) {
        if (!value[i].is_string()) throw ConfigError("'tp_boundaries' entries must be strings");
        c.tp_boundaries[i] = TimeWindow::parse(value[i].get<std::string>());
      }
    } else if (key == "bl_low_threshold") {
      c.bl_low_threshold = require_number(value, "bl_low_threshold");
    } else if (key == "bl_high_threshold") {
      c.bl_high_threshold = require_number(value, "bl_high_threshold");
    } else if (key == "bl_reward_extreme") {
      c.bl_reward_extreme = require_number(value, "bl_reward_extreme");
    } else if (key == "bl_reward_mid") {
      c.bl_reward_mid = require_number(value, "bl_reward_mid");
    } else if (key == "max_energy_distance_m") {
      c.max_energy_distance = require_number(value, "max_energy_distance_m");
    } else {
      throw ConfigError("unknown constants key '" + key + "'");
    }
  }
  c.check();
  return c;
}

ModelConstants load_constants(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open constants file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return constants_from_json(doc);
}

void save_constants(const ModelConstants& constants, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot write constants file");
  out << to_json(constants).dump(2) << '\n';
  if (!out) throw IoError(path, "write failed");
}

json to_json(const EnergyService& s) {
  return json{{"type", "service"},
              {"id", s.id},
              {"owner_id", s.owner_id},
              {"capacity", s.capacity},
              {"x", s.location.x},
              {"y", s.location.y},
              {"start", format_clock(s.window.start)},
              {"end", format_clock(s.window.end)}};
}

json to_json(const EnergyRequest& r) {
  return json{{"type", "request"},
              {"id", r.id},
              {"owner_id", r.owner_id},
              {"battery_level", r.battery_level},
              {"requested_energy", r.requested_energy},
              {"start", format_clock(r.window.start)},
              {"end", format_clock(r.window.end)},
              {"x", r.location.x},
              {"y", r.location.y}};
}

namespace {

void expect_type(const json& doc, const char* type) {
  if (!doc.is_object()) throw ConfigError(std::string(type) + " must be a JSON object");
  auto it = doc.find("type");
  if (it != doc.end() && *it != type) {
    throw ConfigError(std::string("expected type '") + type + "', got " + it->dump());
  }
}

// Windows are parsed without the start < end check so that bad records reach
// validate_instance() and are reported there.
TimeWindow raw_window(const json& doc) {
  return TimeWindow{parse_clock(require_string(doc, "start")), parse_clock(require_string(doc, "end"))};
}

std::string id_field(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) return {};
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw ConfigError(std::string("'") + key + "' must be a string");
}

}  // namespace

EnergyService service_from_json(const json& doc) {
  expect_type(doc, "service");
  EnergyService s;
  s.id = id_field(doc, "id");
  if (s.id.empty()) throw ConfigError("service is missing 'id'");
  s.owner_id = id_field(doc, "owner_id");
  s.capacity = require_field(doc, "capacity");
  s.location = {require_field(doc, "x"), require_field(doc, "y")};
  s.window = raw_window(doc);
  return s;
}

EnergyRequest request_from_json(const json& doc) {
  expect_type(doc, "request");
  EnergyRequest r;
  r.id = id_field(doc, "id");
  if (r.id.empty()) throw ConfigError("request is missing 'id'");
  r.owner_id = id_field(doc, "owner_id");
  r.battery_level = require_field(doc, "battery_level");
  r.requested_energy = require_field(doc, "requested_energy");
  r.window = raw_window(doc);
  r.location = {require_field(doc, "x"), require_field(doc, "y")};
  return r;
}

}  // namespace eaas
