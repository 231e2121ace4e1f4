#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "eaas/composition.hpp"
#include "eaas/workload.hpp"
#include "json.hpp"

namespace eaas {

/// Stay-time bucket edges in minutes: [10,50) [50,100) [100,150) [150,200].
inline const std::vector<int> kDefaultBucketEdges{10, 50, 100, 150, 200};

struct ExperimentOptions {
  std::size_t bf_limit = kDefaultBruteForceLimit;
  /// Strictly increasing; the last bucket is closed on the right.
  std::vector<int> bucket_edges = kDefaultBucketEdges;
  /// When set, an instance too large for brute force aborts the run instead
  /// of being skipped for BF.
  bool strict_bf = false;
};

/// Outcome of one algorithm on one service.
struct InstanceRow {
  std::string service_id;
  Algorithm algorithm = Algorithm::IB;
  Minutes stay_time = 0;
  std::size_t scored = 0;
  std::size_t accepted = 0;
  double total_reward = 0.0;
  double remaining_energy = 0.0;
  double exec_us = 0.0;
  std::uint64_t scored_hash = 0;
};

/// Averages of one algorithm over one stay-time bucket.
struct SeriesPoint {
  Algorithm algorithm = Algorithm::IB;
  int bucket_lo = 0;
  int bucket_hi = 0;
  double avg_reward = 0.0;
  double avg_remaining_energy = 0.0;
  double avg_exec_us = 0.0;
  std::size_t n = 0;
};

struct ExperimentReport {
  WorkloadSpec spec;
  ModelConstants constants;
  std::vector<Algorithm> algorithms;
  ExperimentOptions options;

  std::vector<SeriesPoint> series;
  /// Ordered by (service position, algorithm position).
  std::vector<InstanceRow> instances;

  /// Services whose scored set exceeded the brute-force limit.
  std::vector<std::string> bf_skipped;
  /// Services where FCFS earned strictly more than IB. Legal, but expected rare.
  std::vector<std::string> fcfs_beats_ib;
  /// Services where IB earned strictly more than BF. Always a bug.
  std::vector<std::string> ib_exceeds_bf;
};

/// Order-sensitive FNV-1a digest of a scored set (ids, energies, rewards).
std::uint64_t scored_set_hash(std::span<const ScoredRequest> scored);

/// Buckets the rows by stay time and averages each (algorithm, bucket) cell.
/// Empty cells and rows outside every bucket are left out.
std::vector<SeriesPoint> aggregate(const std::vector<InstanceRow>& rows, const std::vector<Algorithm>& algorithms,
                                   const std::vector<int>& bucket_edges);

/// Runs selection once per generated service, then every requested algorithm
/// on that same scored set, timing only the composition call.
ExperimentReport run_experiment(const WorkloadSpec& spec, const std::vector<Algorithm>& algorithms,
                                const ModelConstants& constants, const ExperimentOptions& options = {});

/// Same as run_experiment() but over explicit services and requests.
ExperimentReport run_experiment(const WorkloadSpec& spec, const std::vector<EnergyService>& services,
                                const std::vector<EnergyRequest>& requests, const std::vector<Algorithm>& algorithms,
                                const ModelConstants& constants, const ExperimentOptions& options = {});

enum class ReportFormat { Csv, Json };
ReportFormat parse_report_format(std::string_view name);

/// algorithm,bucket_lo,bucket_hi,avg_reward,avg_remaining_energy,avg_exec_us,n
void write_report_csv(const ExperimentReport& report, std::ostream& out);
std::vector<SeriesPoint> read_report_csv(std::istream& in);

nlohmann::json to_json(const ExperimentReport& report);
ExperimentReport report_from_json(const nlohmann::json& doc);

/// Throws IoError naming `path` when the destination cannot be written.
void write_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

}  // namespace eaas
