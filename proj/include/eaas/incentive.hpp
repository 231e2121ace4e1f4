#pragma once

#include <span>

#include "eaas/model.hpp"

namespace eaas {

/// Per-attribute rewards of one request and their weighted total.
struct RewardBreakdown {
  double reward_bl = 0.0;
  double reward_re = 0.0;
  double reward_st = 0.0;
  double reward_tp = 0.0;
  double total = 0.0;

  friend bool operator==(const RewardBreakdown&, const RewardBreakdown&) = default;
};

/// Extreme reward when the battery is strictly below the low or strictly above
/// the high threshold, mid reward otherwise.
double reward_battery_level(double battery_level, const ModelConstants& constants);

/// requested / capacity. Throws DomainError when the request cannot be afforded.
double reward_requested_energy(double requested, double capacity);

/// |consumer stay - provider stay| / provider stay, so shorter consumer stays
/// earn more. The consumer window must lie inside the provider window.
double reward_stay_time(const TimeWindow& consumer_window, const TimeWindow& provider_window);

/// Reward of the provision period containing the consumer's start time.
/// Starts before the first period count as the first period, starts at or
/// after the end of the last period count as the last.
double reward_time_of_provision(const TimeWindow& consumer_window, const ModelConstants& constants);

/// Index (0..3) of the provision period used by reward_time_of_provision().
int provision_period(Minutes start, const ModelConstants& constants);

/// Weighted sum of the four attribute rewards for a request served by `service`.
RewardBreakdown reward_request(const EnergyRequest& request, const EnergyService& service,
                               const ModelConstants& constants);

/// Recomputes the weighted total from the stored components.
double weighted_total(const RewardBreakdown& components, const ModelConstants& constants);

/// Sum of request totals; zero for an empty composition.
double provider_reward(std::span<const RewardBreakdown> breakdowns);

}  // namespace eaas
