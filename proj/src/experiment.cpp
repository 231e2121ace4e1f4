#include "eaas/experiment.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "eaas/errors.hpp"

namespace eaas {

using nlohmann::json;

namespace {

constexpr std::string_view kCsvHeader = "algorithm,bucket_lo,bucket_hi,avg_reward,avg_remaining_energy,avg_exec_us,n";

void check_edges(const std::vector<int>& edges) {
  if (edges.size() < 2) throw ConfigError("bucket edges need at least two values");
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] <= edges[i - 1]) throw ConfigError("bucket edges must be strictly increasing");
  }
}

// Index of the bucket holding `stay`, or -1.
int bucket_of(Minutes stay, const std::vector<int>& edges) {
  const std::size_t last = edges.size() - 1;
  for (std::size_t i = 0; i < last; ++i) {
    const bool upper_ok = (i + 1 == last) ? stay <= edges[i + 1] : stay < edges[i + 1];
    if (stay >= edges[i] && upper_ok) return static_cast<int>(i);
  }
  return -1;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void fnv(std::uint64_t& h, const void* data, std::size_t size) {
  const auto* bytes = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < size; ++i) {
    h ^= bytes[i];
    h *= 0x100000001b3ULL;
  }
}

bool greater(double a, double b) { return a > b + 1e-12; }

}  // namespace

std::uint64_t scored_set_hash(std::span<const ScoredRequest> scored) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& s : scored) {
    fnv(h, s.request.id.data(), s.request.id.size());
    const auto energy = std::bit_cast<std::uint64_t>(s.request.requested_energy);
    const auto reward = std::bit_cast<std::uint64_t>(s.reward.total);
    fnv(h, &energy, sizeof energy);
    fnv(h, &reward, sizeof reward);
    fnv(h, &s.request.window.start, sizeof s.request.window.start);
    fnv(h, &s.request.window.end, sizeof s.request.window.end);
  }
  return h;
}

std::vector<SeriesPoint> aggregate(const std::vector<InstanceRow>& rows, const std::vector<Algorithm>& algorithms,
                                   const std::vector<int>& bucket_edges) {
  check_edges(bucket_edges);
  std::vector<SeriesPoint> series;
  for (Algorithm algorithm : algorithms) {
    for (std::size_t b = 0; b + 1 < bucket_edges.size(); ++b) {
      SeriesPoint point;
      point.algorithm = algorithm;
      point.bucket_lo = bucket_edges[b];
      point.bucket_hi = bucket_edges[b + 1];
      double reward = 0.0, remaining = 0.0, exec = 0.0;
      for (const auto& row : rows) {
        if (row.algorithm != algorithm || bucket_of(row.stay_time, bucket_edges) != static_cast<int>(b)) continue;
        reward += row.total_reward;
        remaining += row.remaining_energy;
        exec += row.exec_us;
        ++point.n;
      }
      if (point.n == 0) continue;
      const double n = static_cast<double>(point.n);
      point.avg_reward = reward / n;
      point.avg_remaining_energy = remaining / n;
      point.avg_exec_us = exec / n;
      series.push_back(point);
    }
  }
  return series;
}

ExperimentReport run_experiment(const WorkloadSpec& spec, const std::vector<EnergyService>& services,
                                const std::vector<EnergyRequest>& requests, const std::vector<Algorithm>& algorithms,
                                const ModelConstants& constants, const ExperimentOptions& options) {
  constants.check();
  check_edges(options.bucket_edges);

  ExperimentReport report;
  report.spec = spec;
  report.constants = constants;
  report.options = options;
  for (Algorithm a : algorithms) {
    if (std::find(report.algorithms.begin(), report.algorithms.end(), a) == report.algorithms.end()) {
      report.algorithms.push_back(a);
    }
  }
  if (report.algorithms.empty()) return report;

  const bool wants_bf =
      std::find(report.algorithms.begin(), report.algorithms.end(), Algorithm::BF) != report.algorithms.end();
  std::size_t bf_runs = 0;

  for (const auto& service : services) {
    const auto scored = select_nearby(service, requests, constants);
    const std::uint64_t hash = scored_set_hash(scored);

    if (wants_bf && scored.size() > options.bf_limit) {
      if (options.strict_bf) {
        throw ConfigError("service " + service.id + " has " + std::to_string(scored.size()) +
                          " scored requests, above the brute-force limit of " + std::to_string(options.bf_limit) +
                          "; lower the request count or drop bf from the algorithms");
      }
      report.bf_skipped.push_back(service.id);
    }

    double ib = -1.0, fcfs = -1.0, bf = -1.0;
    for (Algorithm algorithm : report.algorithms) {
      if (algorithm == Algorithm::BF && scored.size() > options.bf_limit) continue;
      if (scored_set_hash(scored) != hash) throw std::logic_error("scored set changed between algorithm runs");

      const auto t0 = std::chrono::steady_clock::now();
      const CompositionPlan plan = compose(algorithm, service, scored, options.bf_limit);
      const auto t1 = std::chrono::steady_clock::now();

      InstanceRow row;
      row.service_id = service.id;
      row.algorithm = algorithm;
      row.stay_time = service.window.duration();
      row.scored = scored.size();
      row.accepted = plan.accepted.size();
      row.total_reward = plan.total_reward;
      row.remaining_energy = plan.remaining_energy;
      row.exec_us = std::chrono::duration<double, std::micro>(t1 - t0).count();
      row.scored_hash = hash;
      report.instances.push_back(std::move(row));

      switch (algorithm) {
        case Algorithm::IB:
          ib = plan.total_reward;
          break;
        case Algorithm::FCFS:
          fcfs = plan.total_reward;
          break;
        case Algorithm::BF:
          bf = plan.total_reward;
          ++bf_runs;
          break;
      }
    }
    if (ib >= 0 && fcfs >= 0 && greater(fcfs, ib)) report.fcfs_beats_ib.push_back(service.id);
    if (ib >= 0 && bf >= 0 && greater(ib, bf)) report.ib_exceeds_bf.push_back(service.id);
  }

  if (wants_bf && bf_runs == 0 && !services.empty()) {
    throw ConfigError("brute force skipped on every service (limit " + std::to_string(options.bf_limit) +
                      "); lower the request count or drop bf from the algorithms");
  }

  report.series = aggregate(report.instances, report.algorithms, options.bucket_edges);
  return report;
}

ExperimentReport run_experiment(const WorkloadSpec& spec, const std::vector<Algorithm>& algorithms,
                                const ModelConstants& constants, const ExperimentOptions& options) {
  spec.check();
  const auto services = generate_services(spec);
  const auto requests = load_or_generate_requests(spec);
  return run_experiment(spec, services, requests, algorithms, constants, options);
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw ConfigError("unknown report format '" + std::string(name) + "' (expected csv or json)");
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& p : report.series) {
    out << to_string(p.algorithm) << ',' << p.bucket_lo << ',' << p.bucket_hi << ',' << fmt12(p.avg_reward) << ','
        << fmt12(p.avg_remaining_energy) << ',' << fmt12(p.avg_exec_us) << ',' << p.n << '\n';
  }
}

std::vector<SeriesPoint> read_report_csv(std::istream& in) {
  std::vector<SeriesPoint> series;
  std::string line;
  std::size_t row = 0;
  if (!std::getline(in, line)) return series;
  ++row;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ParseError(row, "*", "unexpected report header");
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 7) throw ParseError(row, "*", "expected 7 fields");
    SeriesPoint p;
    try {
      p.algorithm = parse_algorithm(f[0]);
      p.bucket_lo = std::stoi(f[1]);
      p.bucket_hi = std::stoi(f[2]);
      p.avg_reward = std::stod(f[3]);
      p.avg_remaining_energy = std::stod(f[4]);
      p.avg_exec_us = std::stod(f[5]);
      p.n = std::stoul(f[6]);
    } catch (const std::exception& e) {
      throw ParseError(row, "*", e.what());
    }
    series.push_back(p);
  }
  return series;
}

json to_json(const ExperimentReport& report) {
  json algorithms = json::array();
  for (Algorithm a : report.algorithms) algorithms.push_back(to_string(a));

  json series = json::array();
  for (const auto& p : report.series) {
    series.push_back({{"algorithm", to_string(p.algorithm)},
                      {"bucket_lo", p.bucket_lo},
                      {"bucket_hi", p.bucket_hi},
                      {"avg_reward", p.avg_reward},
                      {"avg_remaining_energy", p.avg_remaining_energy},
                      {"avg_exec_us", p.avg_exec_us},
                      {"n", p.n}});
  }
  json instances = json::array();
  for (const auto& r : report.instances) {
    instances.push_back({{"service_id", r.service_id},
                         {"algorithm", to_string(r.algorithm)},
                         {"stay_time", r.stay_time},
                         {"scored", r.scored},
                         {"accepted", r.accepted},
                         {"total_reward", r.total_reward},
                         {"remaining_energy", r.remaining_energy},
                         {"exec_us", r.exec_us},
                         {"scored_hash", r.scored_hash}});
  }
  return {{"config",
           {{"workload", to_json(report.spec)},
            {"constants", to_json(report.constants)},
            {"seed", report.spec.seed},
            {"algorithms", algorithms},
            {"bf_limit", report.options.bf_limit},
            {"bucket_edges", report.options.bucket_edges},
            {"strict_bf", report.options.strict_bf}}},
          {"series", series},
          {"instances", instances},
          {"bf_skipped", report.bf_skipped},
          {"fcfs_beats_ib", report.fcfs_beats_ib},
          {"ib_exceeds_bf", report.ib_exceeds_bf}};
}

ExperimentReport report_from_json(const json& doc) {
  try {
    ExperimentReport report;
    const auto& config = doc.at("config");
    report.spec = workload_spec_from_json(config.at("workload"));
    report.constants = constants_from_json(config.at("constants"));
    for (const auto& a : config.at("algorithms")) report.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    report.options.bf_limit = config.at("bf_limit").get<std::size_t>();
    report.options.bucket_edges = config.at("bucket_edges").get<std::vector<int>>();
    report.options.strict_bf = config.at("strict_bf").get<bool>();

    for (const auto& p : doc.at("series")) {
      SeriesPoint s;
      s.algorithm = parse_algorithm(p.at("algorithm").get<std::string>());
      s.bucket_lo = p.at("bucket_lo").get<int>();
      s.bucket_hi = p.at("bucket_hi").get<int>();
      s.avg_reward = p.at("avg_reward").get<double>();
      s.avg_remaining_energy = p.at("avg_remaining_energy").get<double>();
      s.avg_exec_us = p.at("avg_exec_us").get<double>();
      s.n = p.at("n").get<std::size_t>();
      report.series.push_back(s);
    }
    for (const auto& r : doc.at("instances")) {
      InstanceRow row;
      row.service_id = r.at("service_id").get<std::string>();
      row.algorithm = parse_algorithm(r.at("algorithm").get<std::string>());
      row.stay_time = r.at("stay_time").get<int>();
      row.scored = r.at("scored").get<std::size_t>();
      row.accepted = r.at("accepted").get<std::size_t>();
      row.total_reward = r.at("total_reward").get<double>();
      row.remaining_energy = r.at("remaining_energy").get<double>();
      row.exec_us = r.at("exec_us").get<double>();
      row.scored_hash = r.at("scored_hash").get<std::uint64_t>();
      report.instances.push_back(std::move(row));
    }
    report.bf_skipped = doc.at("bf_skipped").get<std::vector<std::string>>();
    report.fcfs_beats_ib = doc.at("fcfs_beats_ib").get<std::vector<std::string>>();
    report.ib_exceeds_bf = doc.at("ib_exceeds_bf").get<std::vector<std::string>>();
    return report;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed report document: ") + e.what());
  }
}

void write_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError(path, "cannot open report for writing");
  if (format == ReportFormat::Csv) {
    write_report_csv(report, out);
  } else {
    out << to_json(report).dump(2) << '\n';
  }
  out.flush();
  if (!out) throw IoError(path, "failed writing report");
}

}  // namespace eaas
