// eaas: compose energy service requests and benchmark the schedulers.
//
//   eaas generate --spec workload.json --out fixtures.jsonl
//   eaas compose  --service service.json --requests fixtures.jsonl --algo ib
//   eaas bench    --spec workload.json --algos ib,fcfs,bf --format csv --out report.csv
//
// Exit codes: 0 success, 1 validation or configuration error, 2 I/O error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "eaas/composition.hpp"
#include "eaas/errors.hpp"
#include "eaas/experiment.hpp"
#include "eaas/workload.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

nlohmann::json read_json_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return nlohmann::json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw eaas::IoError(arg, "cannot open");
  return nlohmann::json::parse(in);
}

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int run_generate(const std::string& spec_path, const std::string& out_path) {
  const auto spec = eaas::load_workload_spec(spec_path);
  eaas::Fixtures fixtures{eaas::generate_services(spec), eaas::load_or_generate_requests(spec)};
  std::ofstream out(out_path);
  if (!out) throw eaas::IoError(out_path, "cannot open output");
  eaas::write_fixtures(out, fixtures);
  out.flush();
  if (!out) throw eaas::IoError(out_path, "failed writing fixtures");
  std::cerr << "wrote " << fixtures.services.size() << " services and " << fixtures.requests.size()
            << " requests to " << out_path << '\n';
  return kExitOk;
}

int run_compose(const std::string& service_arg, const std::string& requests_path, const std::string& algo,
                const std::string& constants_path, std::size_t bf_limit, std::uint64_t seed) {
  const auto algorithm = eaas::parse_algorithm(algo);
  const auto constants = constants_path.empty() ? eaas::ModelConstants{} : eaas::load_constants(constants_path);
  const auto service = eaas::service_from_json(read_json_arg(service_arg));

  std::ifstream in(requests_path);
  if (!in) throw eaas::IoError(requests_path, "cannot open requests");
  std::vector<eaas::EnergyRequest> requests;
  if (ends_with(requests_path, ".csv")) {
    eaas::WorkloadSpec spec;
    spec.seed = seed;
    requests = eaas::ingest_transactions(in, spec);
  } else {
    requests = eaas::read_fixtures(in).requests;
  }

  const auto findings = eaas::validate_instance(service, requests);
  if (!findings.empty()) {
    for (const auto& f : findings) {
      std::cerr << (f.subject == eaas::Subject::Service ? "service " : "request ") << f.id << ": " << f.field << ": "
                << f.message << '\n';
    }
    return kExitInvalid;
  }

  const auto scored = eaas::select_nearby(service, requests, constants);
  const auto plan = eaas::compose(algorithm, service, scored, bf_limit);
  std::cout << eaas::to_json(plan).dump(2) << '\n';
  return kExitOk;
}

struct BenchArgs {
  std::string spec_path;
  std::string algos = "ib,fcfs";
  std::string format = "csv";
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::size_t bf_limit = eaas::kDefaultBruteForceLimit;
  std::string constants_path;
  std::string buckets;
  bool bf_strict = false;
};

int run_bench(const BenchArgs& args) {
  auto spec = eaas::load_workload_spec(args.spec_path);
  if (args.seed) spec.seed = *args.seed;
  const auto constants =
      args.constants_path.empty() ? eaas::ModelConstants{} : eaas::load_constants(args.constants_path);

  std::vector<eaas::Algorithm> algorithms;
  for (const auto& name : split_list(args.algos)) algorithms.push_back(eaas::parse_algorithm(name));

  eaas::ExperimentOptions options;
  options.bf_limit = args.bf_limit;
  options.strict_bf = args.bf_strict;
  if (!args.buckets.empty()) {
    options.bucket_edges.clear();
    for (const auto& edge : split_list(args.buckets)) {
      try {
        options.bucket_edges.push_back(std::stoi(edge));
      } catch (const std::exception&) {
        throw eaas::ConfigError("invalid bucket edge '" + edge + "'");
      }
    }
  }
  const auto format = eaas::parse_report_format(args.format);

  const auto report = eaas::run_experiment(spec, algorithms, constants, options);
  eaas::write_report(report, format, args.out_path);

  std::cerr << "instances: " << report.instances.size() << ", bf skipped: " << report.bf_skipped.size()
            << ", fcfs > ib: " << report.fcfs_beats_ib.size() << ", ib > bf: " << report.ib_exceeds_bf.size()
            << '\n';
  return report.ib_exceeds_bf.empty() ? kExitOk : kExitInvalid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Incentive-based composition of wireless energy service requests"};
  app.require_subcommand(1);

  std::string gen_spec, gen_out;
  auto* generate = app.add_subcommand("generate", "Emit workload fixtures as JSON lines");
  generate->add_option("--spec", gen_spec, "Workload spec (JSON)")->required();
  generate->add_option("--out", gen_out, "Output fixtures file")->required();

  std::string service_arg, requests_path, algo, compose_constants;
  std::size_t compose_bf_limit = eaas::kDefaultBruteForceLimit;
  std::uint64_t compose_seed = 1;
  auto* compose = app.add_subcommand("compose", "Compose one service and print the plan as JSON");
  compose->add_option("--service", service_arg, "Service JSON file or inline JSON object")->required();
  compose->add_option("--requests", requests_path, "Requests (JSON lines fixtures or transaction CSV)")->required();
  compose->add_option("--algo", algo, "ib, fcfs or bf")->required();
  compose->add_option("--constants", compose_constants, "Model constants (JSON)");
  compose->add_option("--bf-limit", compose_bf_limit, "Brute-force size guard");
  compose->add_option("--seed", compose_seed, "Seed for draws when ingesting a CSV");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run the full experiment and write a report");
  bench->add_option("--spec", bench_args.spec_path, "Workload spec (JSON)")->required();
  bench->add_option("--algos", bench_args.algos, "Comma-separated subset of ib,fcfs,bf");
  bench->add_option("--format", bench_args.format, "csv or json");
  bench->add_option("--out", bench_args.out_path, "Report destination")->required();
  bench->add_option("--seed", bench_args.seed, "Override the spec seed");
  bench->add_option("--bf-limit", bench_args.bf_limit, "Brute-force size guard");
  bench->add_option("--constants", bench_args.constants_path, "Model constants (JSON)");
  bench->add_option("--buckets", bench_args.buckets, "Stay-time bucket edges, e.g. 10,50,100,150,200");
  bench->add_flag("--bf-strict", bench_args.bf_strict, "Fail instead of skipping BF on oversized instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*generate) return run_generate(gen_spec, gen_out);
    if (*compose) {
      return run_compose(service_arg, requests_path, algo, compose_constants, compose_bf_limit, compose_seed);
    }
    return run_bench(bench_args);
  } catch (const eaas::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
