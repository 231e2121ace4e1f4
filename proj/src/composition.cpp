#include "eaas/composition.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "eaas/errors.hpp"

namespace eaas {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::IB:
      return "IB";
    case Algorithm::FCFS:
      return "FCFS";
    case Algorithm::BF:
      return "BF";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "ib") return Algorithm::IB;
  if (lower == "fcfs") return Algorithm::FCFS;
  if (lower == "bf") return Algorithm::BF;
  throw ConfigError("unknown algorithm '" + std::string(name) + "' (expected ib, fcfs or bf)");
}

namespace {

using Order = std::vector<const ScoredRequest*>;

Order pointers(std::span<const ScoredRequest> scored) {
  Order order;
  order.reserve(scored.size());
  for (const auto& s : scored) order.push_back(&s);
  return order;
}

// One pass over `order` with a time cursor and an energy remainder.
CompositionPlan scan(const EnergyService& service, const Order& order, Algorithm algorithm) {
  CompositionPlan plan;
  plan.algorithm = algorithm;
  plan.service_id = service.id;

  Minutes cursor = service.window.start;
  double energy = service.capacity;
  for (const ScoredRequest* s : order) {
    const auto& r = s->request;
    if (r.window.start < cursor || r.requested_energy > energy) continue;
    plan.accepted.push_back(*s);
    plan.total_reward += s->reward.total;
    cursor = r.window.end;
    energy -= r.requested_energy;
  }
  plan.remaining_energy = energy;
  return plan;
}

}  // namespace

CompositionPlan compose_ib(const EnergyService& service, std::span<const ScoredRequest> scored) {
  Order order = pointers(scored);
  std::stable_sort(order.begin(), order.end(), [](const ScoredRequest* a, const ScoredRequest* b) {
    if (a->request.window.start != b->request.window.start) return a->request.window.start < b->request.window.start;
    if (a->reward.total != b->reward.total) return a->reward.total > b->reward.total;
    return a->request.id < b->request.id;
  });
  return scan(service, order, Algorithm::IB);
}

CompositionPlan compose_fcfs(const EnergyService& service, std::span<const ScoredRequest> scored) {
  Order order = pointers(scored);
  std::stable_sort(order.begin(), order.end(), [](const ScoredRequest* a, const ScoredRequest* b) {
    if (a->request.window.start != b->request.window.start) return a->request.window.start < b->request.window.start;
    return a->request.id < b->request.id;
  });
  return scan(service, order, Algorithm::FCFS);
}

BruteForceResult brute_force_search(const EnergyService& service, std::span<const ScoredRequest> scored,
                                    std::size_t limit) {
  const std::size_t n = scored.size();
  if (n > limit) throw LimitError(n, limit);
  if (n >= 63) throw LimitError(n, 62);

  // Enumerate in start order so each subset is checked with a single forward
  // pass, mirroring the arithmetic of the greedy scan.
  Order order = pointers(scored);
  std::stable_sort(order.begin(), order.end(), [](const ScoredRequest* a, const ScoredRequest* b) {
    const auto& ra = a->request;
    const auto& rb = b->request;
    if (ra.window.start != rb.window.start) return ra.window.start < rb.window.start;
    if (ra.window.end != rb.window.end) return ra.window.end < rb.window.end;
    return ra.id < rb.id;
  });

  auto sorted_ids = [&](std::uint64_t mask) {
    std::vector<std::string_view> ids;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) ids.push_back(order[std::countr_zero(m)]->request.id);
    std::sort(ids.begin(), ids.end());
    return ids;
  };

  BruteForceResult result;
  std::uint64_t best_mask = 0;
  double best_reward = 0.0;
  int best_count = 0;

  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < subsets; ++mask) {
    ++result.subsets_visited;
    Minutes cursor = service.window.start;
    double energy = service.capacity;
    double reward = 0.0;
    bool feasible = true;
    for (std::uint64_t m = mask; m != 0; m &= m - 1) {
      const ScoredRequest* s = order[std::countr_zero(m)];
      const auto& r = s->request;
      if (r.window.start < cursor || r.requested_energy > energy) {
        feasible = false;
        break;
      }
      cursor = r.window.end;
      energy -= r.requested_energy;
      reward += s->reward.total;
    }
    if (!feasible) continue;
    ++result.feasible_subsets;

    const int count = std::popcount(mask);
    bool better = reward > best_reward;
    if (!better && reward == best_reward) {
      better = count < best_count || (count == best_count && sorted_ids(mask) < sorted_ids(best_mask));
    }
    if (better) {
      best_mask = mask;
      best_reward = reward;
      best_count = count;
    }
  }

  Order chosen;
  for (std::uint64_t m = best_mask; m != 0; m &= m - 1) chosen.push_back(order[std::countr_zero(m)]);
  result.plan = scan(service, chosen, Algorithm::BF);
  return result;
}

CompositionPlan compose_bf(const EnergyService& service, std::span<const ScoredRequest> scored, std::size_t limit) {
  return brute_force_search(service, scored, limit).plan;
}

CompositionPlan compose(Algorithm algorithm, const EnergyService& service, std::span<const ScoredRequest> scored,
                        std::size_t bf_limit) {
  switch (algorithm) {
    case Algorithm::IB:
      return compose_ib(service, scored);
    case Algorithm::FCFS:
      return compose_fcfs(service, scored);
    case Algorithm::BF:
      return compose_bf(service, scored, bf_limit);
  }
  throw ConfigError("unknown algorithm");
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Overlap:
      return "overlap";
    case ViolationKind::EnergyBudget:
      return "energy_budget";
    case ViolationKind::RemainingEnergy:
      return "remaining_energy";
    case ViolationKind::RewardSum:
      return "reward_sum";
    case ViolationKind::RewardMismatch:
      return "reward_mismatch";
    case ViolationKind::OutsideWindow:
      return "outside_window";
    case ViolationKind::OutOfRange:
      return "out_of_range";
    case ViolationKind::Unaffordable:
      return "unaffordable";
    case ViolationKind::DuplicateRequest:
      return "duplicate_request";
    case ViolationKind::ServiceMismatch:
      return "service_mismatch";
  }
  return "?";
}

std::vector<Violation> verify_plan(const EnergyService& service, const CompositionPlan& plan,
                                   const ModelConstants& constants) {
  std::vector<Violation> out;
  auto add = [&](ViolationKind kind, std::string id, std::string message) {
    out.push_back({kind, std::move(id), std::move(message)});
  };

  if (plan.service_id != service.id) {
    add(ViolationKind::ServiceMismatch, {}, "plan is for service '" + plan.service_id + "', not '" + service.id + "'");
  }

  std::set<std::string_view> seen;
  for (const auto& s : plan.accepted) {
    const auto& r = s.request;
    if (!seen.insert(r.id).second) add(ViolationKind::DuplicateRequest, r.id, "request accepted twice");
    if (!is_temporally_composable(r, service)) {
      add(ViolationKind::OutsideWindow, r.id,
          "stay " + r.window.to_string() + " outside provider stay " + service.window.to_string());
    }
    if (!is_within_range(r, service, constants)) {
      add(ViolationKind::OutOfRange, r.id,
          "distance " + std::to_string(distance(r.location, service.location)) + " m exceeds range");
    }
    if (!is_affordable(r, service)) add(ViolationKind::Unaffordable, r.id, "request exceeds provider capacity");

    if (is_temporally_composable(r, service) && is_affordable(r, service) && r.window.valid()) {
      try {
        const RewardBreakdown expected = reward_request(r, service, constants);
        if (std::abs(expected.total - s.reward.total) > 1e-12) {
          add(ViolationKind::RewardMismatch, r.id,
              "stored reward " + std::to_string(s.reward.total) + " != " + std::to_string(expected.total));
        }
      } catch (const DomainError& e) {
        add(ViolationKind::RewardMismatch, r.id, e.what());
      }
    }
  }

  std::vector<const ScoredRequest*> by_start;
  for (const auto& s : plan.accepted) by_start.push_back(&s);
  std::stable_sort(by_start.begin(), by_start.end(), [](const ScoredRequest* a, const ScoredRequest* b) {
    return a->request.window.start < b->request.window.start;
  });
  for (std::size_t i = 1; i < by_start.size(); ++i) {
    const auto& prev = by_start[i - 1]->request;
    const auto& cur = by_start[i]->request;
    if (prev.window.end > cur.window.start) {
      add(ViolationKind::Overlap, cur.id,
          "stay " + cur.window.to_string() + " overlaps " + prev.id + " " + prev.window.to_string());
    }
  }

  double energy = service.capacity;
  bool over_budget = false;
  for (const auto* s : by_start) {
    if (s->request.requested_energy > energy) over_budget = true;
    energy -= s->request.requested_energy;
  }
  if (over_budget) {
    add(ViolationKind::EnergyBudget, {},
        "accepted energy " + std::to_string(service.capacity - energy) + " exceeds capacity " +
            std::to_string(service.capacity));
  }
  if (std::abs(plan.remaining_energy - energy) > 1e-9 * std::max(1.0, service.capacity)) {
    add(ViolationKind::RemainingEnergy, {},
        "remaining energy " + std::to_string(plan.remaining_energy) + " != " + std::to_string(energy));
  }

  double reward = 0.0;
  for (const auto& s : plan.accepted) reward += s.reward.total;
  if (std::abs(plan.total_reward - reward) > 1e-12) {
    add(ViolationKind::RewardSum, {},
        "total reward " + std::to_string(plan.total_reward) + " != sum " + std::to_string(reward));
  }
  return out;
}

nlohmann::json to_json(const CompositionPlan& plan) {
  nlohmann::json accepted = nlohmann::json::array();
  for (const auto& s : plan.accepted) {
    accepted.push_back({{"request_id", s.request.id},
                        {"start", format_clock(s.request.window.start)},
                        {"end", format_clock(s.request.window.end)},
                        {"requested_energy", s.request.requested_energy},
                        {"reward_total", s.reward.total}});
  }
  return {{"algorithm", to_string(plan.algorithm)},
          {"service_id", plan.service_id},
          {"accepted", accepted},
          {"total_reward", plan.total_reward},
          {"remaining_energy", plan.remaining_energy}};
}

}  // namespace eaas
