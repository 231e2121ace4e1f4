#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eaas/selection.hpp"
#include "json.hpp"

namespace eaas {

enum class Algorithm { IB, FCFS, BF };

std::string_view to_string(Algorithm algorithm);
/// Accepts "ib", "fcfs", "bf" in any case. Throws ConfigError otherwise.
Algorithm parse_algorithm(std::string_view name);

/// A feasible schedule for one provider.
///
/// `accepted` is in service order (ascending start). Accepted stays never
/// overlap, although one may begin exactly when the previous one ends.
struct CompositionPlan {
  Algorithm algorithm = Algorithm::IB;
  std::string service_id;
  std::vector<ScoredRequest> accepted;
  double total_reward = 0.0;
  double remaining_energy = 0.0;
};

inline constexpr std::size_t kDefaultBruteForceLimit = 20;

/// Incentive-based greedy: orders by start time, then reward (high first),
/// then id, and scans once with a time cursor and an energy remainder.
CompositionPlan compose_ib(const EnergyService& service, std::span<const ScoredRequest> scored);

/// Same scan as compose_ib() but ordered by start time then id; rewards are
/// only summed for reporting.
CompositionPlan compose_fcfs(const EnergyService& service, std::span<const ScoredRequest> scored);

struct BruteForceResult {
  CompositionPlan plan;
  std::uint64_t subsets_visited = 0;
  std::uint64_t feasible_subsets = 0;
};

/// Exhaustive search over every subset of `scored` for the feasible one with
/// the highest reward. Ties go to fewer requests, then to the
/// lexicographically smaller sorted id list. Throws LimitError when
/// scored.size() > limit.
BruteForceResult brute_force_search(const EnergyService& service, std::span<const ScoredRequest> scored,
                                    std::size_t limit = kDefaultBruteForceLimit);

CompositionPlan compose_bf(const EnergyService& service, std::span<const ScoredRequest> scored,
                           std::size_t limit = kDefaultBruteForceLimit);

CompositionPlan compose(Algorithm algorithm, const EnergyService& service, std::span<const ScoredRequest> scored,
                        std::size_t bf_limit = kDefaultBruteForceLimit);

enum class ViolationKind {
  Overlap,
  EnergyBudget,
  RemainingEnergy,
  RewardSum,
  RewardMismatch,
  OutsideWindow,
  OutOfRange,
  Unaffordable,
  DuplicateRequest,
  ServiceMismatch,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string request_id;
  std::string message;
};

/// Re-checks a plan from scratch: non-overlap, energy budget, remaining
/// energy and reward accounting, and the selection gates and reward of each
/// accepted request. Empty result means the plan is valid.
std::vector<Violation> verify_plan(const EnergyService& service, const CompositionPlan& plan,
                                   const ModelConstants& constants);

/// {algorithm, service_id, accepted: [{request_id, start, end,
/// requested_energy, reward_total}], total_reward, remaining_energy}
nlohmann::json to_json(const CompositionPlan& plan);

}  // namespace eaas
