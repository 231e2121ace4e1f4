#pragma once

#include <vector>

#include "eaas/incentive.hpp"
#include "eaas/model.hpp"

namespace eaas {

/// A request that survived the selection gates, with its reward against the
/// service it was scored for.
struct ScoredRequest {
  EnergyRequest request;
  RewardBreakdown reward;

  friend bool operator==(const ScoredRequest&, const ScoredRequest&) = default;
};

/// Euclidean distance in meters.
double distance(const Location& a, const Location& b);

/// Inclusive containment of the consumer stay in the provider stay.
bool is_temporally_composable(const EnergyRequest& request, const EnergyService& service);

bool is_within_range(const EnergyRequest& request, const EnergyService& service, const ModelConstants& constants);

/// Compares against the full advertised capacity, not a running remainder.
bool is_affordable(const EnergyRequest& request, const EnergyService& service);

/// All three gates at once.
bool passes_selection(const EnergyRequest& request, const EnergyService& service, const ModelConstants& constants);

/// Keeps the requests that pass the temporal, spatial and energy gates, in
/// input order, each paired with its reward.
std::vector<ScoredRequest> select_nearby(const EnergyService& service, const std::vector<EnergyRequest>& requests,
                                         const ModelConstants& constants);

}  // namespace eaas
