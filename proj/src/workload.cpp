#include "eaas/workload.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>

#include "eaas/errors.hpp"

namespace eaas {

using nlohmann::json;

namespace {

// Independent generator streams derived from the one user seed.
enum class Stream : std::uint32_t { Services = 1, Requests = 2, Ingestion = 3 };

std::mt19937_64 make_rng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return std::mt19937_64(seq);
}

int draw(std::mt19937_64& rng, IntRange range) { return std::uniform_int_distribution<int>(range.lo, range.hi)(rng); }

Location draw_in_disk(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return {r * std::cos(theta), r * std::sin(theta)};
}

std::string numbered(const char* prefix, std::size_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s-%06zu", prefix, n);
  return buf;
}

void check_range(const IntRange& r, const char* name, int floor, int ceiling) {
  if (r.lo > r.hi) throw ConfigError(std::string(name) + " is empty (lo > hi)");
  if (r.lo < floor || r.hi > ceiling) {
    throw ConfigError(std::string(name) + " must lie within [" + std::to_string(floor) + ", " +
                      std::to_string(ceiling) + "]");
  }
}

json range_json(const IntRange& r) { return json::array({r.lo, r.hi}); }

IntRange range_from_json(const json& doc, const std::string& key) {
  if (!doc.is_array() || doc.size() != 2 || !doc[0].is_number_integer() || !doc[1].is_number_integer()) {
    throw ConfigError("'" + key + "' must be [lo, hi] integers");
  }
  return {doc[0].get<int>(), doc[1].get<int>()};
}

std::string trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t begin = 0;
  while (true) {
    const auto comma = line.find(',', begin);
    fields.push_back(trim(std::string_view(line).substr(begin, comma == std::string::npos ? comma : comma - begin)));
    if (comma == std::string::npos) break;
    begin = comma + 1;
  }
  return fields;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r\n") == std::string::npos; }

bool valid_iso_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  const int year = std::stoi(s.substr(0, 4));
  const int month = std::stoi(s.substr(5, 2));
  const int day = std::stoi(s.substr(8, 2));
  if (month < 1 || month > 12 || day < 1) return false;
  static constexpr int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
  return day <= kDays[month - 1] + (month == 2 && leap ? 1 : 0);
}

// HH:MM with optional :SS; seconds are dropped.
Minutes parse_record_time(const std::string& text) {
  std::string_view view(text);
  if (view.size() == 8 && view[5] == ':') {
    const char a = view[6], b = view[7];
    if (a < '0' || a > '5' || b < '0' || b > '9') throw ConfigError("bad seconds");
    view = view.substr(0, 5);
  }
  return parse_clock(view);
}

double parse_coordinate(const std::string& text) {
  std::size_t used = 0;
  double value = std::stod(text, &used);
  if (used != text.size() || !std::isfinite(value)) throw std::invalid_argument("trailing characters");
  return value;
}

}  // namespace

void WorkloadSpec::check() const {
  check_range(service_duration_range, "service_duration_range", 1, kMinutesPerDay - 1);
  check_range(request_duration_range, "request_duration_range", 1, kMinutesPerDay - 1);
  check_range(provided_energy_range, "provided_energy_range", 1, 100);
  check_range(requested_energy_range, "requested_energy_range", 1, 100);
  check_range(battery_level_range, "battery_level_range", 0, 100);
  if (!day_window.valid()) throw ConfigError("day_window must satisfy start < end");
  if (service_duration_range.lo > day_window.duration()) {
    throw ConfigError("service_duration_range.lo exceeds the length of day_window");
  }
  if (!std::isfinite(cell_radius) || cell_radius < 0) throw ConfigError("cell_radius must be >= 0");
  if (!csv_date.empty() && !valid_iso_date(csv_date)) throw ConfigError("csv_date must be YYYY-MM-DD");
}

json to_json(const WorkloadSpec& s) {
  json doc{{"seed", s.seed},
           {"num_services", s.num_services},
           {"num_requests", s.num_requests},
           {"service_duration_range", range_json(s.service_duration_range)},
           {"request_duration_range", range_json(s.request_duration_range)},
           {"provided_energy_range", range_json(s.provided_energy_range)},
           {"requested_energy_range", range_json(s.requested_energy_range)},
           {"battery_level_range", range_json(s.battery_level_range)},
           {"day_window", s.day_window.to_string()},
           {"cell_radius", s.cell_radius}};
  if (!s.requests_csv.empty()) doc["requests_csv"] = s.requests_csv;
  if (!s.csv_date.empty()) doc["csv_date"] = s.csv_date;
  return doc;
}

WorkloadSpec workload_spec_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("workload spec must be a JSON object");
  WorkloadSpec s;
  auto count = [](const json& v, const std::string& key) -> std::uint64_t {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError("'" + key + "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  for (const auto& [key, value] : doc.items()) {
    if (key == "seed") {
      s.seed = count(value, key);
    } else if (key == "num_services") {
      s.num_services = count(value, key);
    } else if (key == "num_requests") {
      s.num_requests = count(value, key);
    } else if (key == "service_duration_range") {
      s.service_duration_range = range_from_json(value, key);
    } else if (key == "request_duration_range") {
      s.request_duration_range = range_from_json(value, key);
    } else if (key == "provided_energy_range") {
      s.provided_energy_range = range_from_json(value, key);
    } else if (key == "requested_energy_range") {
      s.requested_energy_range = range_from_json(value, key);
    } else if (key == "battery_level_range") {
      s.battery_level_range = range_from_json(value, key);
    } else if (key == "day_window") {
      if (!value.is_string()) throw ConfigError("'day_window' must be \"HH:MM-HH:MM\"");
      s.day_window = TimeWindow::parse(value.get<std::string>());
    } else if (key == "cell_radius") {
      if (!value.is_number()) throw ConfigError("'cell_radius' must be a number");
      s.cell_radius = value.get<double>();
    } else if (key == "requests_csv") {
      if (!value.is_string()) throw ConfigError("'requests_csv' must be a path string");
      s.requests_csv = value.get<std::string>();
    } else if (key == "csv_date") {
      if (!value.is_string()) throw ConfigError("'csv_date' must be a string");
      s.csv_date = value.get<std::string>();
    } else {
      throw ConfigError("unknown workload spec key '" + key + "'");
    }
  }
  s.check();
  return s;
}

WorkloadSpec load_workload_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open workload spec");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return workload_spec_from_json(doc);
}

std::vector<TransactionRecord> parse_transactions(std::istream& csv) {
  std::vector<TransactionRecord> records;
  std::string line;
  std::size_t row = 0;

  // Header: first non-blank line.
  std::map<std::string, std::size_t> column;
  while (std::getline(csv, line)) {
    ++row;
    if (blank(line)) continue;
    const auto names = split_csv(line);
    for (std::size_t i = 0; i < names.size(); ++i) column[names[i]] = i;
    break;
  }
  if (column.empty()) return records;
  const std::size_t header_row = row;
  for (const char* required : {"date", "time", "x", "y", "shop_id"}) {
    if (!column.contains(required)) throw ParseError(header_row, required, "missing column in header");
  }
  const std::size_t width = std::max({column["date"], column["time"], column["x"], column["y"], column["shop_id"]}) + 1;

  while (std::getline(csv, line)) {
    ++row;
    if (blank(line)) continue;
    const auto fields = split_csv(line);
    if (fields.size() < width) throw ParseError(row, "*", "expected at least " + std::to_string(width) + " fields");

    TransactionRecord rec;
    rec.date = fields[column["date"]];
    if (!valid_iso_date(rec.date)) throw ParseError(row, "date", "invalid ISO date '" + rec.date + "'");
    const std::string& time = fields[column["time"]];
    try {
      rec.time = parse_record_time(time);
    } catch (const ConfigError&) {
      throw ParseError(row, "time", "invalid clock time '" + time + "'");
    }
    for (const char* axis : {"x", "y"}) {
      const std::string& text = fields[column[axis]];
      try {
        (axis[0] == 'x' ? rec.location.x : rec.location.y) = parse_coordinate(text);
      } catch (const std::exception&) {
        throw ParseError(row, axis, "invalid coordinate '" + text + "'");
      }
    }
    rec.row = row;
    rec.shop_id = fields[column["shop_id"]];
    if (rec.shop_id.empty()) throw ParseError(row, "shop_id", "empty shop id");
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<EnergyRequest> requests_from_transactions(const std::vector<TransactionRecord>& records,
                                                      const WorkloadSpec& spec) {
  spec.check();
  auto rng = make_rng(spec.seed, Stream::Ingestion);
  std::vector<EnergyRequest> requests;
  requests.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const Minutes start = rec.time;
    const int duration = draw(rng, spec.request_duration_range);
    // Stays are clipped at the end of the experiment day, or at the end of the
    // clock for transactions logged after it.
    const Minutes limit = start < spec.day_window.end ? spec.day_window.end : kMinutesPerDay - 1;
    const Minutes end = std::min(start + duration, limit);
    if (end <= start) throw ParseError(rec.row, "time", "transaction at 23:59 leaves no room for a stay");

    EnergyRequest r;
    r.id = numbered("er", i + 1);
    r.owner_id = numbered("c", i + 1);
    r.battery_level = draw(rng, spec.battery_level_range);
    r.requested_energy = draw(rng, spec.requested_energy_range);
    r.window = TimeWindow::make(start, end);
    r.location = rec.location;
    requests.push_back(std::move(r));
  }
  return requests;
}

std::vector<EnergyRequest> ingest_transactions(std::istream& csv, const WorkloadSpec& spec) {
  return requests_from_transactions(parse_transactions(csv), spec);
}

std::vector<EnergyService> generate_services(const WorkloadSpec& spec) {
  spec.check();
  auto rng = make_rng(spec.seed, Stream::Services);
  const IntRange duration_range{spec.service_duration_range.lo,
                                std::min(spec.service_duration_range.hi, spec.day_window.duration())};
  std::vector<EnergyService> services;
  services.reserve(spec.num_services);
  for (std::size_t i = 0; i < spec.num_services; ++i) {
    const int duration = draw(rng, duration_range);
    const Minutes start = draw(rng, {spec.day_window.start, spec.day_window.end - duration});
    EnergyService s;
    s.id = numbered("es", i + 1);
    s.owner_id = numbered("p", i + 1);
    s.capacity = draw(rng, spec.provided_energy_range);
    s.location = draw_in_disk(rng, spec.cell_radius);
    s.window = TimeWindow::make(start, start + duration);
    services.push_back(std::move(s));
  }
  return services;
}

std::vector<EnergyRequest> generate_requests(const WorkloadSpec& spec, std::size_t count) {
  spec.check();
  auto rng = make_rng(spec.seed, Stream::Requests);
  std::vector<EnergyRequest> requests;
  requests.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Minutes start = draw(rng, {spec.day_window.start, spec.day_window.end - 1});
    const int duration = draw(rng, spec.request_duration_range);
    EnergyRequest r;
    r.id = numbered("er", i + 1);
    r.owner_id = numbered("c", i + 1);
    r.battery_level = draw(rng, spec.battery_level_range);
    r.requested_energy = draw(rng, spec.requested_energy_range);
    r.window = TimeWindow::make(start, std::min(start + duration, spec.day_window.end));
    r.location = draw_in_disk(rng, spec.cell_radius);
    requests.push_back(std::move(r));
  }
  return requests;
}

std::vector<EnergyRequest> load_or_generate_requests(const WorkloadSpec& spec) {
  if (spec.requests_csv.empty()) return generate_requests(spec, spec.num_requests);
  std::ifstream in(spec.requests_csv);
  if (!in) throw IoError(spec.requests_csv, "cannot open transaction log");
  auto records = parse_transactions(in);
  if (!spec.csv_date.empty()) {
    std::erase_if(records, [&](const TransactionRecord& r) { return r.date != spec.csv_date; });
  }
  return requests_from_transactions(records, spec);
}

void write_fixtures(std::ostream& out, const Fixtures& fixtures) {
  for (const auto& s : fixtures.services) out << to_json(s).dump() << '\n';
  for (const auto& r : fixtures.requests) out << to_json(r).dump() << '\n';
}

Fixtures read_fixtures(std::istream& in) {
  Fixtures fixtures;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (blank(line)) continue;
    json doc;
    try {
      doc = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(row, "*", std::string("invalid JSON: ") + e.what());
    }
    const auto type = doc.is_object() ? doc.value("type", std::string{}) : std::string{};
    try {
      if (type == "service") {
        fixtures.services.push_back(service_from_json(doc));
      } else if (type == "request") {
        fixtures.requests.push_back(request_from_json(doc));
      } else {
        throw ParseError(row, "type", "expected \"service\" or \"request\"");
      }
    } catch (const ConfigError& e) {
      throw ParseError(row, "*", e.what());
    }
  }
  return fixtures;
}

}  // namespace eaas
