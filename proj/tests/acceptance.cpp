// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   eaas_acceptance          run every criterion
//   eaas_acceptance 3        run criterion 3 only
//
// Exit status is non-zero when any selected criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eaas/composition.hpp"
#include "eaas/experiment.hpp"
#include "eaas/incentive.hpp"
#include "support.hpp"

using namespace eaas;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// 1. reward(IB) <= reward(BF) and reward(FCFS) <= reward(BF) on every small instance.
Outcome oracle_dominance() {
  constexpr int kInstances = 1000;
  constexpr std::size_t kMaxScored = 12;
  const ModelConstants c;
  std::mt19937_64 rng(1);
  const auto t0 = Clock::now();
  int violations = 0, oracle_mismatch = 0;
  std::size_t largest = 0;
  for (int i = 0; i < kInstances; ++i) {
    const auto inst = eaas::testing::random_instance(rng, kMaxScored);
    const auto scored = select_nearby(inst.service, inst.requests, c);
    largest = std::max(largest, scored.size());
    const double bf = compose_bf(inst.service, scored).total_reward;
    if (compose_ib(inst.service, scored).total_reward > bf) ++violations;
    if (compose_fcfs(inst.service, scored).total_reward > bf) ++violations;
    if (std::abs(bf - eaas::testing::oracle_best_reward(inst.service, scored)) > 1e-12) ++oracle_mismatch;
  }
  const double elapsed = seconds_since(t0);
  const bool pass = violations == 0 && oracle_mismatch == 0 && elapsed < 60.0 && largest <= kMaxScored;
  return {pass, fmt("%d instances (max %zu scored), %d dominance violations, %d BF/oracle mismatches, %.2f s (< 60 s)",
                    kInstances, largest, violations, oracle_mismatch, elapsed)};
}

// 2. IB vs FCFS on contended instances drawn from the experiment-table ranges.
Outcome directional_reproduction() {
  constexpr double kMinRewardGain = 0.05;
  const ModelConstants c;
  double ib_reward = 0, fcfs_reward = 0, ib_energy = 0, fcfs_energy = 0, scored = 0;
  std::size_t instances = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    WorkloadSpec spec;
    spec.seed = seed;
    spec.num_services = 200;
    const auto report = run_experiment(spec, {Algorithm::IB, Algorithm::FCFS}, c);
    for (const auto& row : report.instances) {
      if (row.algorithm == Algorithm::IB) {
        ib_reward += row.total_reward;
        ib_energy += row.remaining_energy;
        scored += static_cast<double>(row.scored);
        ++instances;
      } else {
        fcfs_reward += row.total_reward;
        fcfs_energy += row.remaining_energy;
      }
    }
  }
  const double n = static_cast<double>(instances);
  const double mean_scored = scored / n;
  const double reward_gain = (ib_reward - fcfs_reward) / fcfs_reward;
  const double energy_cut = (fcfs_energy - ib_energy) / fcfs_energy;
  const bool contended = instances >= 200 && mean_scored >= 10;
  const bool pass = contended && ib_reward >= fcfs_reward && reward_gain >= kMinRewardGain && ib_energy <= fcfs_energy;
  return {pass, fmt("%zu instances, %.1f scored/service; mean reward IB %.4f vs FCFS %.4f (gain %+.2f%%, need >= "
                    "%+.0f%%); mean remaining IB %.3f vs FCFS %.3f (reduction %+.2f%%, need >= 0)",
                    instances, mean_scored, ib_reward / n, fcfs_reward / n, 100 * reward_gain, 100 * kMinRewardGain,
                    ib_energy / n, fcfs_energy / n, 100 * energy_cut)};
}

// 3. Worked incentive example and the published constants.
Outcome golden_values() {
  const ModelConstants c;
  const auto service = eaas::testing::make_service(100, {9 * 60, 11 * 60});
  const auto request = eaas::testing::make_request("golden", {9 * 60, 9 * 60 + 30}, 50, 10);
  const auto b = reward_request(request, service, c);
  const double oracle = eaas::testing::spreadsheet_total(10000, 5000, 7500, 1800);
  const bool components = b.reward_bl == 1.0 && b.reward_re == 0.5 && b.reward_st == 0.75 && b.reward_tp == 0.18;
  const bool total = std::abs(b.total - 0.6221) <= 1e-9 && std::abs(b.total - oracle) <= 1e-9;
  const bool constants = c.attribute_weights == std::array<double, 4>{0.27, 0.28, 0.23, 0.22} &&
                         c.tp_rewards == std::array<double, 4>{0.18, 0.23, 0.26, 0.21};
  return {components && total && constants,
          fmt("components (%.2f, %.2f, %.2f, %.2f), total %.10f, oracle %.10f, constants %s", b.reward_bl,
              b.reward_re, b.reward_st, b.reward_tp, b.total, oracle, constants ? "match" : "differ")};
}

// 4. verify_plan accepts every emitted plan.
Outcome plan_validity() {
  constexpr int kPlans = 10000;
  const ModelConstants c;
  std::mt19937_64 rng(4);
  int plans = 0, invalid = 0;
  while (plans < kPlans) {
    const auto inst = eaas::testing::random_instance(rng, 12);
    const auto scored = select_nearby(inst.service, inst.requests, c);
    for (Algorithm a : {Algorithm::IB, Algorithm::FCFS, Algorithm::BF}) {
      if (!verify_plan(inst.service, compose(a, inst.service, scored), c).empty()) ++invalid;
      ++plans;
    }
  }
  return {invalid == 0, fmt("%d fuzzed plans, %d with violations", plans, invalid)};
}

std::vector<ScoredRequest> scaling_instance(const EnergyService& service, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const ModelConstants c;
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  std::vector<EnergyRequest> requests;
  for (std::size_t i = 0; i < n; ++i) {
    const int len = uni(5, 30);
    const int start = uni(service.window.start, service.window.end - len);
    requests.push_back(eaas::testing::make_request(fmt("er-%06zu", i), {start, start + len}, uni(1, 100), uni(1, 80),
                                                   {0.5, 0.5}));
  }
  return select_nearby(service, requests, c);
}

double time_per_call(const std::function<void()>& fn, int reps) {
  const auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) fn();
  return seconds_since(t0) / reps;
}

// 5. IB is fast at scale; BF grows exponentially.
Outcome scaling_shape() {
  const auto wide = eaas::testing::make_service(100, {0, 1439});
  const auto big = scaling_instance(wide, 10000, 5);
  const double ib_seconds = time_per_call([&] { (void)compose_ib(wide, big); }, 3);

  const auto service = eaas::testing::make_service(100, {9 * 60, 12 * 60 + 20});
  const auto ten = scaling_instance(service, 10, 6);
  const auto twenty = scaling_instance(service, 20, 7);
  const double bf10 = time_per_call([&] { (void)compose_bf(service, ten); }, 2000);
  const double bf20 = time_per_call([&] { (void)compose_bf(service, twenty); }, 5);
  const double ratio = bf20 / bf10;

  const bool pass = big.size() == 10000 && ib_seconds < 1.0 && ten.size() == 10 && twenty.size() == 20 &&
                    ratio > 256.0;
  return {pass, fmt("IB n=%zu: %.4f s (< 1 s); BF n=10: %.1f us, n=20: %.1f us, ratio %.0f (> 256)", big.size(),
                    ib_seconds, bf10 * 1e6, bf20 * 1e6, ratio)};
}

std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string out, line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() == 7) cells.erase(cells.begin() + 5);
    for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + cells[i];
    out += '\n';
  }
  return out;
}

// 6. Repeated bench runs agree byte-for-byte outside the timing column.
Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path();
  const fs::path spec = dir / "eaas_acceptance_spec.json";
  std::ofstream(spec) << R"({"num_services": 400, "num_requests": 80})";

  std::string outputs[2];
  for (int i = 0; i < 2; ++i) {
    const fs::path out = dir / ("eaas_acceptance_run" + std::to_string(i) + ".csv");
    const std::string cmd = std::string(EAAS_CLI_PATH) + " bench --spec " + spec.string() +
                            " --algos ib,fcfs,bf --format csv --seed 2024 --out " + out.string() + " 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "bench exited with an error"};
    std::ifstream in(out, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    outputs[i] = ss.str();
    fs::remove(out);
  }
  fs::remove(spec);
  const auto a = without_timing(outputs[0]);
  const auto b = without_timing(outputs[1]);
  const bool pass = !a.empty() && a == b && a.find("BF,") != std::string::npos;
  return {pass, fmt("%zu bytes per run (timing column removed), %s", a.size(), a == b ? "identical" : "DIFFERENT")};
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "oracle dominance", oracle_dominance},
    {2, "directional reproduction", directional_reproduction},
    {3, "incentive golden values", golden_values},
    {4, "plan validity", plan_validity},
    {5, "scaling shape", scaling_shape},
    {6, "bench determinism", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  int failures = 0, ran = 0;
  for (const auto& criterion : kCriteria) {
    if (only != 0 && criterion.id != only) continue;
    ++ran;
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::cout << (outcome.pass ? "[PASS] " : "[FAIL] ") << criterion.id << ". " << criterion.name << ": "
              << outcome.detail << std::endl;
  }
  if (ran == 0) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return failures == 0 ? 0 : 1;
}
