#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "eaas/model.hpp"
#include "json.hpp"

namespace eaas {

/// Closed integer range [lo, hi].
struct IntRange {
  int lo = 0;
  int hi = 0;

  bool contains(double v) const noexcept { return v >= lo && v <= hi; }
  friend bool operator==(const IntRange&, const IntRange&) = default;
};

/// Parameters of a synthetic experiment. Defaults follow the experiment table:
/// services stay 10-200 min, requests 5-30 min, capacity 50-100 %, requests
/// 1-100 %, battery 1-80 %.
///
/// Energy and battery values are drawn as whole percents. Every range is
/// sampled uniformly.
struct WorkloadSpec {
  std::uint64_t seed = 1;
  std::size_t num_services = 2000;
  /// Requests generated for the experiment day when no CSV is given.
  std::size_t num_requests = 560;
  IntRange service_duration_range{10, 200};
  IntRange request_duration_range{5, 30};
  IntRange provided_energy_range{50, 100};
  IntRange requested_energy_range{1, 100};
  IntRange battery_level_range{1, 80};
  TimeWindow day_window{9 * 60, 17 * 60};
  /// Radius (m) of the microcell disk centred on the origin.
  double cell_radius = 5.0;
  /// Optional transaction log to use instead of generated requests.
  std::string requests_csv;
  /// Restricts the transaction log to one ISO date; empty keeps every row.
  std::string csv_date;

  /// Throws ConfigError on an empty or out-of-domain range.
  void check() const;

  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

nlohmann::json to_json(const WorkloadSpec& spec);
/// Missing keys keep their defaults; unknown keys are rejected.
WorkloadSpec workload_spec_from_json(const nlohmann::json& doc);
WorkloadSpec load_workload_spec(const std::string& path);

/// One row of a point-of-sale log.
struct TransactionRecord {
  std::string date;
  Minutes time = 0;
  Location location;
  std::string shop_id;
  /// Source line, header is row 1.
  std::size_t row = 0;
};

/// Reads a `date,time,x,y,shop_id` CSV (any column order, extra columns
/// ignored). Blank input yields no records. Throws ParseError naming the row
/// and column of the first malformed field.
std::vector<TransactionRecord> parse_transactions(std::istream& csv);

/// Turns each transaction into a request: the stay starts at the transaction
/// time and lasts a drawn duration, and battery level and requested energy
/// are drawn from the spec ranges. Deterministic for a fixed (input, seed).
std::vector<EnergyRequest> ingest_transactions(std::istream& csv, const WorkloadSpec& spec);
std::vector<EnergyRequest> requests_from_transactions(const std::vector<TransactionRecord>& records,
                                                      const WorkloadSpec& spec);

std::vector<EnergyService> generate_services(const WorkloadSpec& spec);
std::vector<EnergyRequest> generate_requests(const WorkloadSpec& spec, std::size_t count);

/// Requests for an experiment run: the CSV named by the spec (optionally
/// filtered to csv_date) or `num_requests` generated ones.
std::vector<EnergyRequest> load_or_generate_requests(const WorkloadSpec& spec);

/// Services and requests as exchanged through JSON-lines fixture files.
struct Fixtures {
  std::vector<EnergyService> services;
  std::vector<EnergyRequest> requests;
};

/// One object per line, each tagged with "type": "service" or "request".
void write_fixtures(std::ostream& out, const Fixtures& fixtures);
Fixtures read_fixtures(std::istream& in);

}  // namespace eaas
